//! The coinductive order on hypergames.
//!
//! `⊵` ("ge") and `⋫` ("nge") are computed together as the greatest fixpoint
//! of the operator [`phi_step`] over the positions of the graphs being
//! compared. Outcome profiles and the nine sectors are read off those two
//! relations against the game zero.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bisim::disjoint_union;
use crate::error::{Error, Result};
use crate::graph::{difference, sum, zero, GameGraph};

/// Disjoint union of the positions of several graphs.
#[derive(Debug, Clone)]
pub struct Universe {
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    roots: Vec<usize>,
    labels: Vec<String>,
}

impl Universe {
    pub fn new(graphs: &[&GameGraph]) -> Self {
        let (left, right, offsets) = disjoint_union(graphs);
        let roots = graphs
            .iter()
            .zip(&offsets)
            .map(|(g, off)| off + g.root())
            .collect();
        let labels = graphs
            .iter()
            .enumerate()
            .flat_map(|(k, g)| g.ids().iter().map(move |id| format!("{k}:{id}")))
            .collect();
        Universe {
            left,
            right,
            offsets,
            roots,
            labels,
        }
    }

    /// `g1` and `g2`, where a missing `g2` stands for zero.
    pub fn pair(g1: &GameGraph, g2: Option<&GameGraph>) -> Self {
        match g2 {
            Some(g2) => Universe::new(&[g1, g2]),
            None => Universe::new(&[g1, &zero()]),
        }
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    /// Universe index of the root of graph `k`.
    pub fn root(&self, k: usize) -> usize {
        self.roots[k]
    }

    /// Universe index of position `p` of graph `k`.
    pub fn index(&self, k: usize, p: usize) -> usize {
        self.offsets[k] + p
    }

    /// `"k:id"` for graph `k`, position `id`.
    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn left(&self, x: usize) -> &[usize] {
        &self.left[x]
    }

    pub fn right(&self, x: usize) -> &[usize] {
        &self.right[x]
    }
}

/// A candidate for (⊵, ⋫) as two dense boolean matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationPair {
    n: usize,
    ge: Vec<bool>,
    nge: Vec<bool>,
}

impl RelationPair {
    pub fn full(n: usize) -> Self {
        RelationPair {
            n,
            ge: vec![true; n * n],
            nge: vec![true; n * n],
        }
    }

    pub fn empty(n: usize) -> Self {
        RelationPair {
            n,
            ge: vec![false; n * n],
            nge: vec![false; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ge(&self, x: usize, y: usize) -> bool {
        self.ge[x * self.n + y]
    }

    pub fn nge(&self, x: usize, y: usize) -> bool {
        self.nge[x * self.n + y]
    }

    pub fn set_ge(&mut self, x: usize, y: usize, v: bool) {
        self.ge[x * self.n + y] = v;
    }

    pub fn set_nge(&mut self, x: usize, y: usize, v: bool) {
        self.nge[x * self.n + y] = v;
    }

    /// Componentwise inclusion.
    pub fn is_subset_of(&self, other: &RelationPair) -> bool {
        self.n == other.n
            && self.ge.iter().zip(&other.ge).all(|(a, b)| !a || *b)
            && self.nge.iter().zip(&other.nge).all(|(a, b)| !a || *b)
    }

    /// Pairs in the first component, lexicographic.
    pub fn ge_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(&self.ge)
    }

    /// Pairs in the second component, lexicographic.
    pub fn nge_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(&self.nge)
    }

    fn pairs(&self, bits: &[bool]) -> Vec<(usize, usize)> {
        (0..self.n * self.n)
            .filter(|&i| bits[i])
            .map(|i| (i / self.n, i % self.n))
            .collect()
    }
}

/// One application of the operator:
/// x ⊵' y iff every x^R has y ⋫ x^R and every y^L has y^L ⋫ x;
/// x ⋫' y iff some x^R has y ⊵ x^R or some y^L has y^L ⊵ x.
pub fn phi_step(rp: &RelationPair, u: &Universe) -> RelationPair {
    let n = u.len();
    assert_eq!(rp.size(), n, "relation pair does not match universe");
    let mut next = RelationPair::empty(n);
    for x in 0..n {
        for y in 0..n {
            let ge = u.right(x).iter().all(|&xr| rp.nge(y, xr))
                && u.left(y).iter().all(|&yl| rp.nge(yl, x));
            let nge = u.right(x).iter().any(|&xr| rp.ge(y, xr))
                || u.left(y).iter().any(|&yl| rp.ge(yl, x));
            next.set_ge(x, y, ge);
            next.set_nge(x, y, nge);
        }
    }
    next
}

/// Greatest fixpoint over the whole universe: synchronous iteration from
/// the full relation pair.
pub fn gfp(u: &Universe) -> RelationPair {
    let mut current = RelationPair::full(u.len());
    loop {
        let next = phi_step(&current, u);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Greatest fixpoint over the positions of `g1` and `g2` (zero if absent).
pub fn gfp_relations(g1: &GameGraph, g2: Option<&GameGraph>) -> (Universe, RelationPair) {
    let u = Universe::pair(g1, g2);
    let rp = gfp(&u);
    (u, rp)
}

/// Demand-driven greatest fixpoint.
///
/// The value of a pair `(x, y)` only depends on the pairs `(y, x^R)` and
/// `(y^L, x)`, so the fixpoint restricted to the dependency closure of the
/// queried pairs coincides with the global one. This keeps queries about
/// large sum graphs cheap: comparisons against zero touch O(n) pairs.
pub struct LocalGfp {
    index: HashMap<(usize, usize), usize>,
    ge: Vec<bool>,
    nge: Vec<bool>,
}

impl LocalGfp {
    pub fn solve(u: &Universe, seeds: &[(usize, usize)]) -> Self {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &s in seeds {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(s) {
                e.insert(pairs.len());
                pairs.push(s);
            }
        }
        // deps[i] = (pairs (y, x^R), pairs (y^L, x))
        let mut deps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut cursor = 0;
        while cursor < pairs.len() {
            let (x, y) = pairs[cursor];
            let mut intern = |p: (usize, usize)| -> usize {
                if let Some(&i) = index.get(&p) {
                    return i;
                }
                let i = pairs.len();
                index.insert(p, i);
                pairs.push(p);
                i
            };
            let a: Vec<usize> = u.right(x).iter().map(|&xr| intern((y, xr))).collect();
            let b: Vec<usize> = u.left(y).iter().map(|&yl| intern((yl, x))).collect();
            deps.push((a, b));
            cursor += 1;
        }
        let m = pairs.len();
        let mut ge = vec![true; m];
        let mut nge = vec![true; m];
        loop {
            let mut next_ge = vec![false; m];
            let mut next_nge = vec![false; m];
            for i in 0..m {
                let (a, b) = &deps[i];
                next_ge[i] = a.iter().chain(b).all(|&j| nge[j]);
                next_nge[i] = a.iter().chain(b).any(|&j| ge[j]);
            }
            if next_ge == ge && next_nge == nge {
                break;
            }
            ge = next_ge;
            nge = next_nge;
        }
        LocalGfp { index, ge, nge }
    }

    pub fn ge(&self, x: usize, y: usize) -> bool {
        self.ge[self.index[&(x, y)]]
    }

    pub fn nge(&self, x: usize, y: usize) -> bool {
        self.nge[self.index[&(x, y)]]
    }
}

/// `g1 ⊵ g2`.
pub fn ge(g1: &GameGraph, g2: &GameGraph) -> bool {
    let u = Universe::new(&[g1, g2]);
    let (x, y) = (u.root(0), u.root(1));
    LocalGfp::solve(&u, &[(x, y)]).ge(x, y)
}

/// `g1 ⋫ g2`.
pub fn nge(g1: &GameGraph, g2: &GameGraph) -> bool {
    let u = Universe::new(&[g1, g2]);
    let (x, y) = (u.root(0), u.root(1));
    LocalGfp::solve(&u, &[(x, y)]).nge(x, y)
}

/// The four root facts against zero: a = x⊵0, b = 0⋫x, c = 0⊵x, d = x⋫0.
///
/// Equivalently, a/b/c/d say that Left-as-second, Left-as-first,
/// Right-as-second and Right-as-first have non-losing strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomeProfile {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl OutcomeProfile {
    pub fn new(a: bool, b: bool, c: bool, d: bool) -> Self {
        OutcomeProfile { a, b, c, d }
    }

    pub fn as_array(&self) -> [bool; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_consistent(&self) -> bool {
        (self.a || self.d) && (self.b || self.c)
    }

    pub fn sector(&self) -> Result<Sector> {
        Sector::from_profile(*self)
    }

    /// Non-losing players, in the order L, R, I, II.
    pub fn nonlosing(&self) -> Vec<Player> {
        Player::ALL
            .into_iter()
            .filter(|&p| self.has_nonlosing(p))
            .collect()
    }

    pub fn has_nonlosing(&self, player: Player) -> bool {
        match player {
            Player::L => self.a && self.b,
            Player::R => self.c && self.d,
            Player::I => self.b && self.d,
            Player::II => self.a && self.c,
        }
    }
}

impl Serialize for OutcomeProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OutcomeProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c, d] = <[bool; 4]>::deserialize(d)?;
        Ok(OutcomeProfile { a, b, c, d })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    L,
    R,
    I,
    II,
}

impl Player {
    pub const ALL: [Player; 4] = [Player::L, Player::R, Player::I, Player::II];
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::L => "L",
            Player::R => "R",
            Player::I => "I",
            Player::II => "II",
        })
    }
}

impl std::str::FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "L" => Ok(Player::L),
            "R" => Ok(Player::R),
            "I" => Ok(Player::I),
            "II" => Ok(Player::II),
            other => Err(format!("unknown player `{other}` (expected L, R, I or II)")),
        }
    }
}

/// The nine regions of the space of hypergames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    WinL,
    WinR,
    WinI,
    WinII,
    #[serde(rename = "NL_L_II")]
    NlLII,
    #[serde(rename = "NL_L_I")]
    NlLI,
    #[serde(rename = "NL_R_I")]
    NlRI,
    #[serde(rename = "NL_R_II")]
    NlRII,
    #[serde(rename = "NL_All")]
    NlAll,
}

impl Sector {
    pub const ALL: [Sector; 9] = [
        Sector::WinL,
        Sector::WinR,
        Sector::WinI,
        Sector::WinII,
        Sector::NlLII,
        Sector::NlLI,
        Sector::NlRI,
        Sector::NlRII,
        Sector::NlAll,
    ];

    pub fn from_profile(p: OutcomeProfile) -> Result<Sector> {
        let s = match p.as_array() {
            [true, true, false, false] => Sector::WinL,
            [false, false, true, true] => Sector::WinR,
            [true, false, true, false] => Sector::WinII,
            [false, true, false, true] => Sector::WinI,
            [true, true, true, false] => Sector::NlLII,
            [true, true, false, true] => Sector::NlLI,
            [true, false, true, true] => Sector::NlRII,
            [false, true, true, true] => Sector::NlRI,
            [true, true, true, true] => Sector::NlAll,
            _ => return Err(Error::InconsistentProfile(p)),
        };
        Ok(s)
    }

    pub fn profile(self) -> OutcomeProfile {
        let [a, b, c, d] = match self {
            Sector::WinL => [true, true, false, false],
            Sector::WinR => [false, false, true, true],
            Sector::WinII => [true, false, true, false],
            Sector::WinI => [false, true, false, true],
            Sector::NlLII => [true, true, true, false],
            Sector::NlLI => [true, true, false, true],
            Sector::NlRII => [true, false, true, true],
            Sector::NlRI => [false, true, true, true],
            Sector::NlAll => [true, true, true, true],
        };
        OutcomeProfile { a, b, c, d }
    }

    pub fn nonlosing(self) -> Vec<Player> {
        self.profile().nonlosing()
    }

    /// The player with a winning strategy, for the four Win sectors.
    pub fn winner(self) -> Option<Player> {
        match self {
            Sector::WinL => Some(Player::L),
            Sector::WinR => Some(Player::R),
            Sector::WinI => Some(Player::I),
            Sector::WinII => Some(Player::II),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::WinL => "WinL",
            Sector::WinR => "WinR",
            Sector::WinI => "WinI",
            Sector::WinII => "WinII",
            Sector::NlLII => "NL_L_II",
            Sector::NlLI => "NL_L_I",
            Sector::NlRI => "NL_R_I",
            Sector::NlRII => "NL_R_II",
            Sector::NlAll => "NL_All",
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn outcome_profile(g: &GameGraph) -> OutcomeProfile {
    let u = Universe::pair(g, None);
    let (x, z) = (u.root(0), u.root(1));
    let sol = LocalGfp::solve(&u, &[(x, z), (z, x)]);
    OutcomeProfile {
        a: sol.ge(x, z),
        b: sol.nge(z, x),
        c: sol.ge(z, x),
        d: sol.nge(x, z),
    }
}

/// Same as [`outcome_profile`] but from the dense global fixpoint.
pub fn outcome_profile_dense(g: &GameGraph) -> OutcomeProfile {
    let (u, rp) = gfp_relations(g, None);
    let (x, z) = (u.root(0), u.root(1));
    OutcomeProfile {
        a: rp.ge(x, z),
        b: rp.nge(z, x),
        c: rp.ge(z, x),
        d: rp.nge(x, z),
    }
}

/// Sector of `g`. Profiles computed from the fixpoint always satisfy the
/// consistency constraint, so a failure here is an internal bug.
pub fn classify(g: &GameGraph) -> Sector {
    let p = outcome_profile(g);
    p.sector()
        .unwrap_or_else(|e| panic!("internal inconsistency: {e}"))
}

pub fn equidetermined(g1: &GameGraph, g2: &GameGraph) -> bool {
    classify(g1) == classify(g2)
}

/// Conway's equivalence `∼` on well-founded games.
pub fn conway_sim(g1: &GameGraph, g2: &GameGraph) -> Result<bool> {
    if !g1.is_wellfounded() || !g2.is_wellfounded() {
        return Err(Error::NotWellFounded);
    }
    let u = Universe::new(&[g1, g2]);
    let (x, y) = (u.root(0), u.root(1));
    let sol = LocalGfp::solve(&u, &[(x, y), (y, x)]);
    Ok(sol.ge(x, y) && sol.ge(y, x))
}

/// `g - g` lies in the same sector as zero.
pub fn well_behaved(g: &GameGraph) -> bool {
    classify(&difference(g, g)) == Sector::WinII
}

/// Index of the first context `z` for which `g1 + z` and `g2 + z` are not
/// equidetermined. `None` only means the given contexts cannot tell the
/// two games apart.
pub fn contextual_probe(g1: &GameGraph, g2: &GameGraph, contexts: &[GameGraph]) -> Option<usize> {
    contexts
        .iter()
        .position(|z| !equidetermined(&sum(g1, z), &sum(g2, z)))
}
