//! Finite game graphs.
//!
//! A position is determined by its Left and Right options. Positions are
//! stored in ascending id order, so position indices are stable and every
//! traversal over a graph is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

/// Moves of one position as declared in a document, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveSets {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl MoveSets {
    pub fn new<S: Into<String>>(
        left: impl IntoIterator<Item = S>,
        right: impl IntoIterator<Item = S>,
    ) -> Self {
        MoveSets {
            left: left.into_iter().map(Into::into).collect(),
            right: right.into_iter().map(Into::into).collect(),
        }
    }

    pub fn impartial<S: Into<String>>(moves: impl IntoIterator<Item = S>) -> Self {
        let moves: Vec<String> = moves.into_iter().map(Into::into).collect();
        MoveSets {
            left: moves.clone(),
            right: moves,
        }
    }
}

/// An unchecked game description: positions in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGame {
    pub root: String,
    pub positions: Vec<(String, MoveSets)>,
}

impl RawGame {
    pub fn new(root: impl Into<String>) -> Self {
        RawGame {
            root: root.into(),
            positions: Vec::new(),
        }
    }

    pub fn position(mut self, id: impl Into<String>, moves: MoveSets) -> Self {
        self.positions.push((id.into(), moves));
        self
    }

    pub fn build(self) -> Result<GameGraph> {
        GameGraph::from_raw(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    MissingRoot { root: String },
    DuplicatePosition { id: String },
    DanglingTarget { from: String, side: Side, target: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "graph has no positions"),
            Violation::MissingRoot { root } => write!(f, "root `{root}` is not a declared position"),
            Violation::DuplicatePosition { id } => write!(f, "position `{id}` is declared twice"),
            Violation::DanglingTarget { from, side, target } => {
                write!(f, "position `{from}` has a {side} move to undeclared `{target}`")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lists every violation of the graph invariants in `raw`. Repeated targets
/// inside one move list are not violations; they are merged on load.
pub fn validate(raw: &RawGame) -> ValidationReport {
    let mut violations = Vec::new();
    if raw.positions.is_empty() {
        violations.push(Violation::Empty);
    }
    let mut declared = BTreeSet::new();
    for (id, _) in &raw.positions {
        if !declared.insert(id.as_str()) {
            violations.push(Violation::DuplicatePosition { id: id.clone() });
        }
    }
    if !raw.positions.is_empty() && !declared.contains(raw.root.as_str()) {
        violations.push(Violation::MissingRoot {
            root: raw.root.clone(),
        });
    }
    for (id, moves) in &raw.positions {
        for (side, targets) in [(Side::L, &moves.left), (Side::R, &moves.right)] {
            let mut seen = BTreeSet::new();
            for t in targets {
                if !declared.contains(t.as_str()) && seen.insert(t.as_str()) {
                    violations.push(Violation::DanglingTarget {
                        from: id.clone(),
                        side,
                        target: t.clone(),
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// A finite game graph with a distinguished root. Always valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameGraph {
    ids: Vec<String>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    root: usize,
}

impl GameGraph {
    pub fn from_raw(raw: RawGame) -> Result<Self> {
        let report = validate(&raw);
        if !report.is_valid() {
            return Err(Error::InvalidGraph(report));
        }
        let index: HashMap<&str, usize> = raw
            .positions
            .iter()
            .enumerate()
            .map(|(i, (id, _))| (id.as_str(), i))
            .collect();
        let resolve = |targets: &[String]| targets.iter().map(|t| index[t.as_str()]).collect();
        let left = raw.positions.iter().map(|(_, m)| resolve(&m.left)).collect();
        let right = raw.positions.iter().map(|(_, m)| resolve(&m.right)).collect();
        let root = index[raw.root.as_str()];
        let ids = raw.positions.iter().map(|(id, _)| id.clone()).collect();
        Ok(Self::assemble(ids, left, right, root))
    }

    /// Builds a graph from already-resolved adjacency. Ids must be unique;
    /// positions are re-sorted by id and move lists deduplicated.
    pub(crate) fn assemble(
        ids: Vec<String>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
        root: usize,
    ) -> Self {
        let n = ids.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        let mut rank = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let remap = |v: &[usize]| {
            let mut w: Vec<usize> = v.iter().map(|&x| rank[x]).collect();
            w.sort_unstable();
            w.dedup();
            w
        };
        GameGraph {
            left: order.iter().map(|&o| remap(&left[o])).collect(),
            right: order.iter().map(|&o| remap(&right[o])).collect(),
            ids: order.iter().map(|&o| ids[o].clone()).collect(),
            root: rank[root],
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_id(&self) -> &str {
        &self.ids[self.root]
    }

    pub fn id(&self, p: usize) -> &str {
        &self.ids[p]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|x| x.as_str().cmp(id)).ok()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownPosition(id.to_string()))
    }

    pub fn left(&self, p: usize) -> &[usize] {
        &self.left[p]
    }

    pub fn right(&self, p: usize) -> &[usize] {
        &self.right[p]
    }

    pub fn moves(&self, p: usize, side: Side) -> &[usize] {
        match side {
            Side::L => &self.left[p],
            Side::R => &self.right[p],
        }
    }

    /// Union of Left and Right options, ascending.
    pub fn successors(&self, p: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.left[p].iter().chain(&self.right[p]).copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn to_raw(&self) -> RawGame {
        let names = |v: &[usize]| v.iter().map(|&q| self.ids[q].clone()).collect::<Vec<_>>();
        RawGame {
            root: self.ids[self.root].clone(),
            positions: (0..self.len())
                .map(|p| {
                    (
                        self.ids[p].clone(),
                        MoveSets {
                            left: names(&self.left[p]),
                            right: names(&self.right[p]),
                        },
                    )
                })
                .collect(),
        }
    }

    /// The same positions with a different root.
    pub fn with_root(&self, id: &str) -> Result<GameGraph> {
        let root = self.require(id)?;
        Ok(GameGraph {
            root,
            ..self.clone()
        })
    }

    /// Marks the positions reachable from `from` along Left or Right moves.
    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(p) = queue.pop_front() {
            for &q in self.left[p].iter().chain(&self.right[p]) {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    /// Restriction to the positions reachable from the root.
    pub fn reachable(&self) -> GameGraph {
        let keep = self.reachable_from(self.root);
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> GameGraph {
        let mut new_index = vec![usize::MAX; self.len()];
        let mut next = 0;
        for p in 0..self.len() {
            if keep[p] {
                new_index[p] = next;
                next += 1;
            }
        }
        let map = |v: &[usize]| v.iter().map(|&q| new_index[q]).collect::<Vec<_>>();
        let kept = (0..self.len()).filter(|&p| keep[p]);
        GameGraph {
            ids: kept.clone().map(|p| self.ids[p].clone()).collect(),
            left: kept.clone().map(|p| map(&self.left[p])).collect(),
            right: kept.map(|p| map(&self.right[p])).collect(),
            root: new_index[self.root],
        }
    }

    /// True iff Left and Right have the same options at every reachable position.
    pub fn is_impartial(&self) -> bool {
        let reach = self.reachable_from(self.root);
        (0..self.len()).all(|p| !reach[p] || self.left[p] == self.right[p])
    }

    /// True iff Left and Right have the same options at every position,
    /// reachable or not.
    pub fn is_impartial_everywhere(&self) -> bool {
        (0..self.len()).all(|p| self.left[p] == self.right[p])
    }

    /// True iff no cycle is reachable from the root.
    pub fn is_wellfounded(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; self.len()];
        let mut stack = vec![(self.root, 0usize)];
        mark[self.root] = Mark::Open;
        while let Some(top) = stack.last_mut() {
            let (p, next) = *top;
            let succ = self.successors(p);
            if next < succ.len() {
                top.1 += 1;
                let q = succ[next];
                match mark[q] {
                    Mark::Open => return false,
                    Mark::New => {
                        mark[q] = Mark::Open;
                        stack.push((q, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[p] = Mark::Done;
                stack.pop();
            }
        }
        true
    }

    /// Exchanges the roles of Left and Right at every position.
    pub fn negate(&self) -> GameGraph {
        GameGraph {
            ids: self.ids.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
            root: self.root,
        }
    }
}

fn escape_component(id: &str) -> String {
    let mut out = String::with_capacity(id.len());
    for ch in id.chars() {
        if ch == '|' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out
}

/// Id of the sum position made of `p` and `q`: `"p|q"`, with `|` and `\`
/// inside either component escaped by a backslash.
pub fn pair_id(p: &str, q: &str) -> String {
    format!("{}|{}", escape_component(p), escape_component(q))
}

/// Disjunctive sum. Returns the graph and, for each of its positions, the
/// pair of component positions it stands for.
pub fn sum_with_pairs(g1: &GameGraph, g2: &GameGraph) -> (GameGraph, Vec<(usize, usize)>) {
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut left: Vec<Vec<usize>> = Vec::new();
    let mut right: Vec<Vec<usize>> = Vec::new();
    let start = (g1.root, g2.root);
    index.insert(start, 0);
    pairs.push(start);
    let mut cursor = 0;
    while cursor < pairs.len() {
        let (p, q) = pairs[cursor];
        let mut out = [Vec::new(), Vec::new()];
        for (k, side) in [Side::L, Side::R].into_iter().enumerate() {
            let targets = g1
                .moves(p, side)
                .iter()
                .map(|&p2| (p2, q))
                .chain(g2.moves(q, side).iter().map(|&q2| (p, q2)));
            for t in targets {
                let next = pairs.len();
                let ix = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    next
                });
                out[k].push(ix);
            }
        }
        let [l, r] = out;
        left.push(l);
        right.push(r);
        cursor += 1;
    }
    let ids: Vec<String> = pairs.iter().map(|&(p, q)| pair_id(g1.id(p), g2.id(q))).collect();
    // `assemble` re-sorts positions by id; carry the pair list through the
    // same permutation.
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
    let sorted_pairs = order.iter().map(|&o| pairs[o]).collect();
    (GameGraph::assemble(ids, left, right, 0), sorted_pairs)
}

/// Disjunctive sum `g1 + g2`, materializing only pairs reachable from the
/// pair of roots.
pub fn sum(g1: &GameGraph, g2: &GameGraph) -> GameGraph {
    sum_with_pairs(g1, g2).0
}

/// `g1 - g2`, i.e. `g1 + (-g2)`.
pub fn difference(g1: &GameGraph, g2: &GameGraph) -> GameGraph {
    sum(g1, &g2.negate())
}

/// The one-position game with no moves.
pub fn zero() -> GameGraph {
    GameGraph {
        ids: vec!["0".to_string()],
        left: vec![vec![]],
        right: vec![vec![]],
        root: 0,
    }
}
