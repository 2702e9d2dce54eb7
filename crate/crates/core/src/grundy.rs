//! Grundy values for impartial games and hypergames.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{sum, GameGraph, MoveSets, RawGame};
use crate::order::{classify, contextual_probe, well_behaved, Sector};

/// A natural number, or `∞_K` for a finite set `K` of naturals (plain `∞`
/// when `K` is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GrundyValue {
    Nat(usize),
    Inf(BTreeSet<usize>),
}

impl GrundyValue {
    pub fn inf<I: IntoIterator<Item = usize>>(k: I) -> Self {
        GrundyValue::Inf(k.into_iter().collect())
    }

    pub fn as_nat(&self) -> Option<usize> {
        match self {
            GrundyValue::Nat(n) => Some(*n),
            GrundyValue::Inf(_) => None,
        }
    }

    pub fn is_nat(&self) -> bool {
        matches!(self, GrundyValue::Nat(_))
    }
}

impl fmt::Display for GrundyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrundyValue::Nat(n) => write!(f, "{n}"),
            GrundyValue::Inf(k) if k.is_empty() => f.write_str("inf"),
            GrundyValue::Inf(k) => {
                f.write_str("inf{")?;
                for (i, x) in k.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseGrundyError(String);

impl fmt::Display for ParseGrundyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid Grundy value `{}`", self.0)
    }
}

impl std::error::Error for ParseGrundyError {}

fn parse_nat(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for GrundyValue {
    type Err = ParseGrundyError;

    /// Accepts the canonical forms only: `3`, `inf`, `inf{0,3}` with the
    /// set strictly ascending and no spaces.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || ParseGrundyError(s.to_string());
        if let Some(n) = parse_nat(s) {
            return Ok(GrundyValue::Nat(n));
        }
        if s == "inf" {
            return Ok(GrundyValue::Inf(BTreeSet::new()));
        }
        let body = s
            .strip_prefix("inf{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut k = BTreeSet::new();
        let mut last = None;
        for part in body.split(',') {
            let n = parse_nat(part).ok_or_else(bad)?;
            if last.is_some_and(|l| n <= l) {
                return Err(bad());
            }
            last = Some(n);
            k.insert(n);
        }
        Ok(GrundyValue::Inf(k))
    }
}

impl Serialize for GrundyValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GrundyValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least natural not in `s`.
pub fn mex<I: IntoIterator<Item = usize>>(s: I) -> usize {
    let mut present: Vec<bool> = Vec::new();
    for x in s {
        if x >= present.len() {
            present.resize(x + 1, false);
        }
        present[x] = true;
    }
    present.iter().position(|&b| !b).unwrap_or(present.len())
}

pub fn nim_sum(m: usize, n: usize) -> usize {
    m ^ n
}

pub fn gen_nim_sum(v: &GrundyValue, w: &GrundyValue) -> GrundyValue {
    match (v, w) {
        (GrundyValue::Nat(a), GrundyValue::Nat(b)) => GrundyValue::Nat(nim_sum(*a, *b)),
        (GrundyValue::Nat(a), GrundyValue::Inf(k)) | (GrundyValue::Inf(k), GrundyValue::Nat(a)) => {
            GrundyValue::Inf(k.iter().map(|&x| nim_sum(x, *a)).collect())
        }
        (GrundyValue::Inf(_), GrundyValue::Inf(_)) => GrundyValue::Inf(BTreeSet::new()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImpartialOutcome {
    WinII,
    WinI,
    Draw,
}

impl ImpartialOutcome {
    pub fn sector(self) -> Sector {
        match self {
            ImpartialOutcome::WinII => Sector::WinII,
            ImpartialOutcome::WinI => Sector::WinI,
            ImpartialOutcome::Draw => Sector::NlAll,
        }
    }
}

impl fmt::Display for ImpartialOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn outcome_from_gamma(v: &GrundyValue) -> ImpartialOutcome {
    match v {
        GrundyValue::Nat(0) => ImpartialOutcome::WinII,
        GrundyValue::Nat(_) => ImpartialOutcome::WinI,
        GrundyValue::Inf(k) if k.contains(&0) => ImpartialOutcome::WinI,
        GrundyValue::Inf(_) => ImpartialOutcome::Draw,
    }
}

/// The positions the impartial analysis runs on: the whole graph when every
/// position is impartial, otherwise its reachable part if that is.
fn impartial_part(g: &GameGraph) -> Result<GameGraph> {
    if g.is_impartial_everywhere() {
        Ok(g.clone())
    } else if g.is_impartial() {
        Ok(g.reachable())
    } else {
        Err(Error::NotImpartial)
    }
}

/// Classical Grundy value of a well-founded impartial game.
pub fn grundy_wf(g: &GameGraph) -> Result<usize> {
    if !g.is_impartial() {
        return Err(Error::NotImpartial);
    }
    if !g.is_wellfounded() {
        return Err(Error::NotWellFounded);
    }
    let mut memo: Vec<Option<usize>> = vec![None; g.len()];
    let mut stack = vec![g.root()];
    while let Some(&p) = stack.last() {
        if memo[p].is_some() {
            stack.pop();
            continue;
        }
        let pending: Vec<usize> = g.left(p).iter().copied().filter(|&q| memo[q].is_none()).collect();
        if pending.is_empty() {
            memo[p] = Some(mex(g.left(p).iter().map(|&q| memo[q].unwrap())));
            stack.pop();
        } else {
            stack.extend(pending);
        }
    }
    Ok(memo[g.root()].unwrap())
}

/// A marking by naturals or ⊥ (`None`), indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMarking(pub Vec<Option<usize>>);

impl PartialMarking {
    pub fn bottom(n: usize) -> Self {
        PartialMarking(vec![None; n])
    }

    pub fn get(&self, p: usize) -> Option<usize> {
        self.0[p]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn defined_values(g: &GameGraph, f: &PartialMarking, p: usize) -> Vec<usize> {
    g.left(p).iter().filter_map(|&q| f.get(q)).collect()
}

/// Every ⊥-marked successor of `p` can move to a position marked `m`.
fn bottoms_reach(g: &GameGraph, f: &PartialMarking, p: usize, m: usize) -> bool {
    g.left(p)
        .iter()
        .filter(|&&y| f.get(y).is_none())
        .all(|&y| g.left(y).iter().any(|&z| f.get(z) == Some(m)))
}

/// One application of the operator `T` on the left-move graph.
pub fn t_step(g: &GameGraph, f: &PartialMarking) -> PartialMarking {
    PartialMarking(
        (0..g.len())
            .map(|p| {
                let m = mex(defined_values(g, f, p));
                bottoms_reach(g, f, p, m).then_some(m)
            })
            .collect(),
    )
}

/// Membership in the space the operator acts on: every natural mark is the
/// mex of the defined successor marks and is reachable in one step from
/// every ⊥-marked successor.
pub fn in_domain(g: &GameGraph, f: &PartialMarking) -> bool {
    (0..g.len()).all(|p| match f.get(p) {
        None => true,
        Some(n) => mex(defined_values(g, f, p)) == n && bottoms_reach(g, f, p, n),
    })
}

pub fn is_t_fixpoint(g: &GameGraph, f: &PartialMarking) -> bool {
    t_step(g, f) == *f
}

/// Least fixpoint of `T`, iterated from the everywhere-⊥ marking.
pub fn gamma0(g: &GameGraph) -> Result<PartialMarking> {
    let g = impartial_part(g)?;
    Ok(gamma0_on(&g))
}

fn gamma0_on(g: &GameGraph) -> PartialMarking {
    let mut f = PartialMarking::bottom(g.len());
    // Each position changes at most once, from ⊥ to a natural.
    for _ in 0..=g.len() + 1 {
        let next = t_step(g, &f);
        if next == f {
            return f;
        }
        f = next;
    }
    panic!("T iteration failed to stabilize");
}

/// A total marking by Grundy values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyMarking {
    graph: GameGraph,
    values: Vec<GrundyValue>,
}

impl GrundyMarking {
    /// Extends a partial marking: each ⊥ position gets `∞_K`, `K` the set
    /// of natural marks among its successors.
    pub fn from_partial(g: &GameGraph, f: &PartialMarking) -> Self {
        let values = (0..g.len())
            .map(|p| match f.get(p) {
                Some(n) => GrundyValue::Nat(n),
                None => GrundyValue::Inf(g.left(p).iter().filter_map(|&q| f.get(q)).collect()),
            })
            .collect();
        GrundyMarking {
            graph: g.clone(),
            values,
        }
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn root(&self) -> &GrundyValue {
        &self.values[self.graph.root()]
    }

    pub fn value(&self, p: usize) -> &GrundyValue {
        &self.values[p]
    }

    pub fn get(&self, id: &str) -> Option<&GrundyValue> {
        self.graph.index_of(id).map(|p| &self.values[p])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &GrundyValue)> {
        self.graph.ids().iter().map(String::as_str).zip(&self.values)
    }

    /// Positions grouped by value.
    pub fn classes(&self) -> BTreeMap<GrundyValue, Vec<String>> {
        let mut out: BTreeMap<GrundyValue, Vec<String>> = BTreeMap::new();
        for (id, v) in self.iter() {
            out.entry(v.clone()).or_default().push(id.to_string());
        }
        out
    }

    /// Largest natural occurring anywhere in the marking, including inside
    /// `∞_K` sets.
    pub fn max_nat(&self) -> Option<usize> {
        self.values
            .iter()
            .flat_map(|v| match v {
                GrundyValue::Nat(n) => vec![*n],
                GrundyValue::Inf(k) => k.iter().copied().collect(),
            })
            .max()
    }
}

pub fn gamma(g: &GameGraph) -> Result<GrundyMarking> {
    let g = impartial_part(g)?;
    let f = gamma0_on(&g);
    Ok(GrundyMarking::from_partial(&g, &f))
}

fn star_ids(n: usize) -> Vec<String> {
    (0..=n).map(|k| format!("*{k}")).collect()
}

/// The Nim chain `*n`.
pub fn star(n: usize) -> GameGraph {
    canonical_graph(n, None)
}

fn canonical_graph(chain: usize, core: Option<&BTreeSet<usize>>) -> GameGraph {
    let ids = star_ids(chain);
    let mut raw = RawGame::new(match core {
        Some(_) => "*inf".to_string(),
        None => ids[chain].clone(),
    });
    for k in 0..=chain {
        raw = raw.position(ids[k].clone(), MoveSets::impartial(ids[..k].iter().cloned()));
    }
    if let Some(k) = core {
        let mut moves = vec!["*inf".to_string()];
        moves.extend(k.iter().map(|&x| ids[x].clone()));
        raw = raw.position("*inf", MoveSets::impartial(moves));
    }
    raw.build().expect("canonical graphs are well-formed")
}

/// The canonical game of a value: a Nim chain, or an `∞` core with a
/// self-move and moves into a shared Nim chain.
pub fn make_canonical(v: &GrundyValue) -> GameGraph {
    match v {
        GrundyValue::Nat(n) => star(*n),
        GrundyValue::Inf(k) if k.is_empty() => RawGame::new("*inf")
            .position("*inf", MoveSets::impartial(["*inf"]))
            .build()
            .expect("canonical graphs are well-formed"),
        GrundyValue::Inf(k) => canonical_graph(*k.iter().max().unwrap(), Some(k)),
    }
}

pub fn impartial_equiv(g1: &GameGraph, g2: &GameGraph) -> Result<bool> {
    Ok(gamma(g1)?.root() == gamma(g2)?.root())
}

/// Context bound for [`efficient_equiv`]: one more than the largest natural
/// in either marking.
pub fn context_bound(m1: &GrundyMarking, m2: &GrundyMarking) -> usize {
    1 + m1.max_nat().into_iter().chain(m2.max_nat()).max().unwrap_or(0)
}

/// Impartial equivalence decided through outcomes only: the well-behaved
/// case via `x + y` against zero, otherwise by probing Nim contexts.
pub fn efficient_equiv(g1: &GameGraph, g2: &GameGraph) -> Result<bool> {
    let m1 = gamma(g1)?;
    let m2 = gamma(g2)?;
    let (w1, w2) = (well_behaved(g1), well_behaved(g2));
    if w1 != w2 {
        return Ok(false);
    }
    if w1 {
        return Ok(classify(&sum(g1, g2)) == Sector::WinII);
    }
    let contexts: Vec<GameGraph> = (0..=context_bound(&m1, &m2)).map(star).collect();
    Ok(contextual_probe(g1, g2, &contexts).is_none())
}
