#![allow(dead_code)]

use hypergame::corpus::{generate, mixed_corpus, GeneratorParams};
use hypergame::grundy::{t_step, PartialMarking};
use hypergame::{GameGraph, MoveSets, RawGame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_2024;

/// 2000 graphs of at most 12 positions, cyclic and acyclic, partizan and
/// impartial.
pub fn main_corpus() -> Vec<GameGraph> {
    mixed_corpus(2000, 12, CORPUS_SEED)
}

pub fn random_graphs(count: usize, max_positions: usize, impartial: Option<bool>, acyclic: Option<bool>, seed: u64) -> Vec<GameGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let params = GeneratorParams {
                positions: rng.gen_range(1..=max_positions),
                density: rng.gen_range(0.15..0.5),
                impartial: impartial.unwrap_or_else(|| rng.gen_bool(0.5)),
                acyclic: acyclic.unwrap_or_else(|| rng.gen_bool(0.5)),
                seed: rng.gen(),
            };
            generate(&params).unwrap()
        })
        .collect()
}

pub fn game(root: &str, rows: &[(&str, &[&str], &[&str])]) -> GameGraph {
    let mut raw = RawGame::new(root);
    for &(id, l, r) in rows {
        raw = raw.position(id, MoveSets::new(l.iter().copied(), r.iter().copied()));
    }
    raw.build().unwrap()
}

pub fn impartial_game(root: &str, rows: &[(&str, &[&str])]) -> GameGraph {
    let mut raw = RawGame::new(root);
    for &(id, m) in rows {
        raw = raw.position(id, MoveSets::impartial(m.iter().copied()));
    }
    raw.build().unwrap()
}

/// A cycle with an exit: `t` moves to `u` or `o`, `u` only back to `t`,
/// `o` to the terminal `z`. Marking `t=0, u=1, o=1, z=0` is a fixpoint of
/// `T` but `t` is a draw.
pub fn two_fixpoint_graph() -> GameGraph {
    impartial_game("t", &[("t", &["u", "o"]), ("u", &["t"]), ("o", &["z"]), ("z", &[])])
}

/// Every fixpoint of `T` on an impartial graph, by exhaustive enumeration of
/// markings with values in `⊥, 0..=out-degree`.
pub fn all_t_fixpoints(g: &GameGraph) -> Vec<PartialMarking> {
    let n = g.len();
    let options: Vec<Vec<Option<usize>>> = (0..n)
        .map(|p| std::iter::once(None).chain((0..=g.left(p).len()).map(Some)).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let f = PartialMarking((0..n).map(|p| options[p][idx[p]]).collect());
        if t_step(g, &f) == f {
            out.push(f);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Classical Grundy values by naive recursion, for well-founded impartial
/// graphs only.
pub fn naive_grundy(g: &GameGraph, p: usize) -> usize {
    let vals: Vec<usize> = g.left(p).iter().map(|&q| naive_grundy(g, q)).collect();
    (0..).find(|v| !vals.contains(v)).unwrap()
}
