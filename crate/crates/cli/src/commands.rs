use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use hypergame::corpus::{
    catalog, generate, mixed_corpus, parse, serialize, serialize_document, GameDocument, GeneratorParams,
};
use hypergame::grundy::efficient_equiv;
use hypergame::{
    bisim_minimize, classify, contextual_probe, conway_sim, sum, synthesize_nonlosing, synthesize_winning,
    verify_strategy, Claim, Error, GameGraph, Player, StrategyBundle,
};
use hyg_service::report::{self, diagnostics};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_DOCUMENT: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_MODE: u8 = 4;
pub const EXIT_VERIFY: u8 = 5;
pub const EXIT_EOF: u8 = 130;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub diagnostics: Vec<Value>,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            diagnostics: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.message, "exitCode": self.code, "diagnostics": self.diagnostics })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidGraph(_) => EXIT_INVALID,
            Error::NotImpartial | Error::NotWellFounded => EXIT_MODE,
            Error::Strategy(_) => EXIT_VERIFY,
            _ => EXIT_DOCUMENT,
        };
        Failure {
            code,
            message: e.to_string(),
            diagnostics: diagnostics(&e),
        }
    }
}

pub type Outcome = Result<String, Failure>;

/// Loads `catalog:NAME`, `-` for stdin, or a HYG file.
pub fn load(input: &str) -> Result<GameGraph, Failure> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(catalog(name)?);
    }
    let text = if input == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(input)
    }
    .map_err(|e| Failure::new(EXIT_DOCUMENT, format!("cannot read `{input}`: {e}")))?;
    Ok(parse(&text)?)
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payloads serialize");
    s.push('\n');
    s
}

fn join<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        return "none".into();
    }
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub fn analyze(input: &str, json: bool, minimize: bool) -> Outcome {
    let g = load(input)?;
    let a = report::analyze(&g, minimize);
    if json {
        return Ok(to_json(&a));
    }
    let p = a.profile;
    let mut out = String::new();
    writeln!(out, "root: {} ({} positions)", a.root, a.positions).unwrap();
    writeln!(out, "profile: x⊵0={} 0⋫x={} 0⊵x={} x⋫0={}", p.a, p.b, p.c, p.d).unwrap();
    writeln!(out, "sector: {}", a.sector).unwrap();
    writeln!(out, "non-losing: {}", join(&a.nonlosing)).unwrap();
    writeln!(out, "winner: {}", a.winner.map_or("none".into(), |w| w.to_string())).unwrap();
    if let Some(gm) = &a.gamma {
        writeln!(out, "gamma: {} ({})", gm.value, gm.outcome).unwrap();
    }
    if let Some(m) = a.minimized {
        writeln!(out, "minimized: {m} positions").unwrap();
    }
    Ok(out)
}

pub fn grundy(input: &str, json: bool) -> Outcome {
    let g = load(input)?;
    let r = report::grundy(&g)?;
    if json {
        return Ok(to_json(&r));
    }
    let width = r.marking.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (id, v) in &r.marking {
        writeln!(out, "{id:width$}  {v}").unwrap();
    }
    writeln!(out, "root {}: {} ({}), {} classes", r.root, r.value, r.outcome, r.classes).unwrap();
    Ok(out)
}

/// Writes `text` to `out`, or returns it for stdout.
pub fn emit(text: String, out: Option<&PathBuf>) -> Outcome {
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::new(1, format!("cannot write `{}`: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn sum_cmd(a: &str, b: &str, out: Option<&PathBuf>) -> Outcome {
    emit(serialize(&sum(&load(a)?, &load(b)?)), out)
}

pub fn neg(a: &str, out: Option<&PathBuf>) -> Outcome {
    emit(serialize(&load(a)?.negate()), out)
}

pub fn minimize(a: &str, out: Option<&PathBuf>) -> Outcome {
    emit(serialize(&bisim_minimize(&load(a)?).graph), out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivMode {
    Impartial,
    Conway,
    Contexts { count: usize, seed: u64 },
}

/// Catalog games tried first, in order, before seeded random contexts.
pub const FIXED_CONTEXTS: [&str; 7] = ["zero", "star1", "star2", "star3", "one", "minus_one", "c"];

pub fn contexts(count: usize, seed: u64) -> Vec<(String, GameGraph)> {
    let mut out: Vec<(String, GameGraph)> = FIXED_CONTEXTS
        .iter()
        .take(count)
        .map(|n| (n.to_string(), catalog(n).expect("fixed contexts are in the catalog")))
        .collect();
    let extra = count.saturating_sub(out.len());
    for (i, g) in mixed_corpus(extra, 6, seed).into_iter().enumerate() {
        out.push((format!("random#{i}"), g));
    }
    out
}

fn verdict(eq: bool) -> String {
    if eq { "equivalent" } else { "not equivalent" }.to_string()
}

pub fn equiv(a: &str, b: &str, mode: EquivMode, json: bool) -> Outcome {
    let (x, y) = (load(a)?, load(b)?);
    let (text, body) = match mode {
        EquivMode::Impartial => {
            let eq = efficient_equiv(&x, &y)?;
            (verdict(eq), json!({ "mode": "impartial", "equivalent": eq }))
        }
        EquivMode::Conway => {
            let eq = conway_sim(&x, &y)?;
            (verdict(eq), json!({ "mode": "conway", "equivalent": eq }))
        }
        EquivMode::Contexts { count, seed } => {
            let family = contexts(count, seed);
            let graphs: Vec<GameGraph> = family.iter().map(|(_, g)| g.clone()).collect();
            let base = json!({ "mode": "contexts", "contexts": count, "seed": seed });
            match contextual_probe(&x, &y, &graphs) {
                None => {
                    let mut body = base;
                    body["equivalent"] = Value::Null;
                    body["witness"] = Value::Null;
                    (format!("indistinguishable over {count} contexts (seed {seed})"), body)
                }
                Some(i) => {
                    let (name, z) = &family[i];
                    let (sx, sy) = (classify(&sum(&x, z)), classify(&sum(&y, z)));
                    let game: Value = serde_json::from_str(&serialize(z)).expect("serialized graphs are JSON");
                    let mut body = base;
                    body["equivalent"] = Value::Bool(false);
                    body["witness"] = json!({ "name": name, "index": i, "game": game, "sectors": [sx, sy] });
                    (format!("not equivalent: context {name} separates them (x+z is {sx}, y+z is {sy})"), body)
                }
            }
        }
    };
    Ok(if json { to_json(&body) } else { text + "\n" })
}

#[derive(Serialize)]
struct StrategyReport {
    player: Player,
    claim: Option<Claim>,
    roles: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

pub fn strategy(input: &str, player: Player, verify: bool, json: bool) -> Outcome {
    let g = load(input)?;
    let found: Option<(Claim, StrategyBundle)> = synthesize_winning(&g, player)
        .map(|b| (Claim::Winning, b))
        .or_else(|| synthesize_nonlosing(&g, player).map(|b| (Claim::Nonlosing, b)));
    let mut report = StrategyReport {
        player,
        claim: found.as_ref().map(|(c, _)| *c),
        roles: found.as_ref().map(|(_, b)| b.named(&g)).unwrap_or_default(),
        verified: None,
    };
    if verify {
        if let Some((claim, bundle)) = &found {
            let ok = verify_strategy(&g, bundle, player, *claim).map_err(Error::from)?;
            if !ok {
                return Err(Failure::new(EXIT_VERIFY, format!("synthesized {claim} strategy for {player} failed verification")));
            }
            report.verified = Some(true);
        }
    }
    if json {
        return Ok(to_json(&report));
    }
    let Some(claim) = report.claim else {
        return Ok("none\n".into());
    };
    let mut out = format!("{claim} strategy for {player}");
    if report.verified == Some(true) {
        out.push_str(", verified");
    }
    out.push('\n');
    for (role, choices) in &report.roles {
        let moves: Vec<String> = choices.iter().map(|(p, q)| format!("{p}→{q}")).collect();
        writeln!(out, "{role}: {}", if moves.is_empty() { "(no moves needed)".into() } else { moves.join(" ") }).unwrap();
    }
    Ok(out)
}

pub fn gen(params: &GeneratorParams, name: Option<&str>, out: Option<&PathBuf>) -> Outcome {
    let g = generate(params)?;
    let text = match name {
        Some(n) => serialize_document(&GameDocument::named(g, n)),
        None => serialize(&g),
    };
    emit(text, out)
}
