//! Outcome analysis on the arena of (position, side to move) nodes.
//!
//! This is a second, independent route to the outcome profile: non-losing
//! regions are safety fixpoints and winning regions are reachability
//! attractors, both solved with predecessor counters.

use std::collections::VecDeque;

use crate::graph::{GameGraph, Side};
use crate::order::OutcomeProfile;

fn side_index(s: Side) -> usize {
    match s {
        Side::L => 0,
        Side::R => 1,
    }
}

fn node(p: usize, mover: Side) -> usize {
    2 * p + side_index(mover)
}

fn node_parts(v: usize) -> (usize, Side) {
    (v / 2, if v.is_multiple_of(2) { Side::L } else { Side::R })
}

/// Per-node flags for both sides, plus attractor ranks for the winning
/// regions: a winning node of rank `k` forces the opponent to be stuck
/// within `k` moves.
#[derive(Debug, Clone)]
pub struct ArenaSolution {
    nonlosing: [Vec<bool>; 2],
    winning: [Vec<bool>; 2],
    rank: [Vec<usize>; 2],
}

impl ArenaSolution {
    pub fn positions(&self) -> usize {
        self.nonlosing[0].len() / 2
    }

    /// `side` survives (wins or draws) from `p` with `mover` to move.
    pub fn nonlosing(&self, side: Side, p: usize, mover: Side) -> bool {
        self.nonlosing[side_index(side)][node(p, mover)]
    }

    /// `side` can force the opponent to get stuck from `p` with `mover` to move.
    pub fn winning(&self, side: Side, p: usize, mover: Side) -> bool {
        self.winning[side_index(side)][node(p, mover)]
    }

    /// Attractor rank of a winning node, `None` outside the winning region.
    pub fn rank(&self, side: Side, p: usize, mover: Side) -> Option<usize> {
        let v = node(p, mover);
        let s = side_index(side);
        self.winning[s][v].then(|| self.rank[s][v])
    }
}

struct Arena {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Arena {
    fn new(g: &GameGraph) -> Self {
        let n = 2 * g.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for p in 0..g.len() {
            for mover in [Side::L, Side::R] {
                let v = node(p, mover);
                for &q in g.moves(p, mover) {
                    let w = node(q, mover.opponent());
                    succ[v].push(w);
                    pred[w].push(v);
                }
            }
        }
        Arena { succ, pred }
    }

    /// Greatest set of nodes from which `side` never gets stuck.
    fn nonlosing(&self, side: Side) -> Vec<bool> {
        let n = self.succ.len();
        let mut alive = vec![true; n];
        let mut count: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut queue = VecDeque::new();
        for v in 0..n {
            if node_parts(v).1 == side && count[v] == 0 {
                alive[v] = false;
                queue.push_back(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &self.pred[w] {
                if !alive[v] {
                    continue;
                }
                if node_parts(v).1 == side {
                    count[v] -= 1;
                    if count[v] > 0 {
                        continue;
                    }
                }
                alive[v] = false;
                queue.push_back(v);
            }
        }
        alive
    }

    /// Least set of nodes from which `side` forces the opponent to get
    /// stuck, with breadth-first attractor ranks.
    fn winning(&self, side: Side) -> (Vec<bool>, Vec<usize>) {
        let n = self.succ.len();
        let mut won = vec![false; n];
        let mut rank = vec![usize::MAX; n];
        let mut count: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut queue = VecDeque::new();
        for v in 0..n {
            if node_parts(v).1 != side && count[v] == 0 {
                won[v] = true;
                rank[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &self.pred[w] {
                if won[v] {
                    continue;
                }
                if node_parts(v).1 != side {
                    count[v] -= 1;
                    if count[v] > 0 {
                        continue;
                    }
                }
                won[v] = true;
                rank[v] = rank[w] + 1;
                queue.push_back(v);
            }
        }
        (won, rank)
    }
}

pub fn solve_arena(g: &GameGraph) -> ArenaSolution {
    let arena = Arena::new(g);
    let (wl, rl) = arena.winning(Side::L);
    let (wr, rr) = arena.winning(Side::R);
    ArenaSolution {
        nonlosing: [arena.nonlosing(Side::L), arena.nonlosing(Side::R)],
        winning: [wl, wr],
        rank: [rl, rr],
    }
}

/// Profile read off the arena at the root.
pub fn profile_from_arena(g: &GameGraph) -> OutcomeProfile {
    profile_at(&solve_arena(g), g.root())
}

/// Profile of the subgame rooted at `p`.
pub fn profile_at(sol: &ArenaSolution, p: usize) -> OutcomeProfile {
    OutcomeProfile {
        a: sol.nonlosing(Side::L, p, Side::R),
        b: sol.nonlosing(Side::L, p, Side::L),
        c: sol.nonlosing(Side::R, p, Side::L),
        d: sol.nonlosing(Side::R, p, Side::R),
    }
}
