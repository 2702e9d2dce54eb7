//! Seeded random game graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GameGraph, MoveSets, RawGame};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub positions: usize,
    /// Probability of each possible edge, per side.
    pub density: f64,
    pub impartial: bool,
    /// Only edges from a position to higher-indexed ones.
    pub acyclic: bool,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(positions: usize, density: f64, seed: u64) -> Self {
        GeneratorParams {
            positions,
            density,
            impartial: false,
            acyclic: false,
            seed,
        }
    }

    pub fn impartial(mut self, yes: bool) -> Self {
        self.impartial = yes;
        self
    }

    pub fn acyclic(mut self, yes: bool) -> Self {
        self.acyclic = yes;
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.positions == 0 {
            return Err(Error::Params("position count must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Params(format!("density {} is outside [0, 1]", self.density)));
        }
        Ok(())
    }
}

/// Id of position `i` among `n`: `p` followed by `i` zero-padded to the
/// width of `n - 1`.
pub fn position_id(i: usize, n: usize) -> String {
    let width = (n.max(2) - 1).to_string().len();
    format!("p{i:0width$}")
}

/// A random graph rooted at position 0, the same for the same parameters.
pub fn generate(params: &GeneratorParams) -> Result<GameGraph> {
    params.check()?;
    let n = params.positions;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let ids: Vec<String> = (0..n).map(|i| position_id(i, n)).collect();
    let mut raw = RawGame::new(ids[0].clone());
    for i in 0..n {
        let targets = if params.acyclic { i + 1..n } else { 0..n };
        let mut left = Vec::new();
        let mut right = Vec::new();
        for j in targets {
            if rng.gen_bool(params.density) {
                left.push(ids[j].clone());
            }
            if !params.impartial && rng.gen_bool(params.density) {
                right.push(ids[j].clone());
            }
        }
        let moves = if params.impartial {
            MoveSets::impartial(left)
        } else {
            MoveSets::new(left, right)
        };
        raw = raw.position(ids[i].clone(), moves);
    }
    Ok(raw.build().expect("generated graphs are well-formed"))
}

/// `count` graphs with up to `max_positions` positions, cycling through the
/// four combinations of the impartial and acyclic flags.
pub fn mixed_corpus(count: usize, max_positions: usize, seed: u64) -> Vec<GameGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let params = GeneratorParams {
                positions: rng.gen_range(1..=max_positions.max(1)),
                density: rng.gen_range(0.1..0.45),
                impartial: k % 2 == 1,
                acyclic: (k / 2) % 2 == 1,
                seed: rng.gen(),
            };
            generate(&params).expect("corpus parameters are valid")
        })
        .collect()
}
