//! JSON payloads shared by `POST /analyze` and the `hyg` command line.

use std::collections::BTreeMap;

use hypergame::arena::profile_at;
use hypergame::{
    bisim_minimize, gamma, outcome_from_gamma, outcome_profile, solve_arena, Error, GameGraph, GrundyValue,
    ImpartialOutcome, OutcomeProfile, Player, Sector,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Analysis {
    pub root: String,
    pub positions: usize,
    pub profile: OutcomeProfile,
    pub sector: Sector,
    pub nonlosing: Vec<Player>,
    pub winner: Option<Player>,
    pub impartial: bool,
    /// Sector of the subgame rooted at each position.
    pub sectors: BTreeMap<String, Sector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GrundyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimized: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GrundyReport {
    pub root: String,
    pub value: GrundyValue,
    pub outcome: ImpartialOutcome,
    pub marking: BTreeMap<String, GrundyValue>,
    pub classes: usize,
}

pub fn analyze(g: &GameGraph, minimize: bool) -> Analysis {
    let profile = outcome_profile(g);
    let sector = profile.sector().expect("fixpoint profiles are consistent");
    let sol = solve_arena(g);
    let sectors = (0..g.len())
        .map(|p| {
            let s = profile_at(&sol, p).sector().expect("arena profiles are consistent");
            (g.id(p).to_string(), s)
        })
        .collect();
    Analysis {
        root: g.root_id().to_string(),
        positions: g.len(),
        profile,
        sector,
        nonlosing: sector.nonlosing(),
        winner: sector.winner(),
        impartial: g.is_impartial(),
        sectors,
        gamma: grundy(g).ok(),
        minimized: minimize.then(|| bisim_minimize(g).graph.len()),
    }
}

pub fn grundy(g: &GameGraph) -> hypergame::Result<GrundyReport> {
    let m = gamma(g)?;
    let value = m.root().clone();
    Ok(GrundyReport {
        root: m.graph().root_id().to_string(),
        outcome: outcome_from_gamma(&value),
        value,
        marking: m.iter().map(|(id, v)| (id.to_string(), v.clone())).collect(),
        classes: m.classes().len(),
    })
}

/// Machine-readable details of a load or validation failure.
pub fn diagnostics(e: &Error) -> Vec<Value> {
    match e {
        Error::Syntax { line, column, message } => {
            vec![json!({ "kind": "syntax", "line": line, "column": column, "message": message })]
        }
        Error::InvalidGraph(report) => report
            .violations
            .iter()
            .map(|v| {
                let mut d = serde_json::to_value(v).expect("violations serialize");
                d["message"] = Value::String(v.to_string());
                d
            })
            .collect(),
        other => vec![json!({ "message": other.to_string() })],
    }
}
