//! Hyperbisimulation via partition refinement over the two edge labels
//! (Left moves and Right moves).

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::GameGraph;

/// Disjoint nonempty blocks covering `0..n`. Each block is sorted and blocks
/// are ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    fn from_assignment(block_of: &[usize]) -> Self {
        let mut by_block: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &b) in block_of.iter().enumerate() {
            by_block.entry(b).or_default().push(p);
        }
        let mut blocks: Vec<Vec<usize>> = by_block.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0; block_of.len()];
        for (i, b) in blocks.iter().enumerate() {
            for &p in b {
                block_of[p] = i;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, p: usize) -> usize {
        self.block_of[p]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn same_block(&self, p: usize, q: usize) -> bool {
        self.block_of[p] == self.block_of[q]
    }
}

fn predecessors(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); succ.len()];
    for (p, targets) in succ.iter().enumerate() {
        for &q in targets {
            pred[q].push(p);
        }
    }
    pred
}

/// Coarsest partition of `0..n` that is stable for both edge relations,
/// i.e. the largest bisimulation of the two-label transition system.
///
/// Splitters are taken from an ordered set keyed by (size, members), so
/// the smallest pending block is always refined against first.
pub fn coarsest_bisimulation(left: &[Vec<usize>], right: &[Vec<usize>]) -> Partition {
    let n = left.len();
    let preds = [predecessors(left), predecessors(right)];
    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut pending: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    if n > 0 {
        pending.insert((n, (0..n).collect()));
    }
    let mut marked = vec![false; n];

    while let Some(splitter) = pending.pop_first() {
        for pred in &preds {
            let mut touched = BTreeSet::new();
            let mut hits = Vec::new();
            for &s in &splitter.1 {
                for &p in &pred[s] {
                    if !marked[p] {
                        marked[p] = true;
                        hits.push(p);
                        touched.insert(block_of[p]);
                    }
                }
            }
            for b in touched {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    blocks[b].iter().partition(|&&p| marked[p]);
                if outside.is_empty() {
                    continue;
                }
                let fresh = blocks.len();
                for &p in &inside {
                    block_of[p] = fresh;
                }
                pending.insert((inside.len(), inside.clone()));
                pending.insert((outside.len(), outside.clone()));
                blocks[b] = outside;
                blocks.push(inside);
            }
            for p in hits {
                marked[p] = false;
            }
        }
    }
    Partition::from_assignment(&block_of)
}

/// A minimized graph and the map from each reachable original position id
/// to the id of its class representative (the smallest id in the class).
#[derive(Debug, Clone)]
pub struct Minimized {
    pub graph: GameGraph,
    pub class_of: BTreeMap<String, String>,
}

/// Quotient of the reachable part of `g` by its largest hyperbisimulation.
pub fn bisim_minimize(g: &GameGraph) -> Minimized {
    let r = g.reachable();
    let left: Vec<Vec<usize>> = (0..r.len()).map(|p| r.left(p).to_vec()).collect();
    let right: Vec<Vec<usize>> = (0..r.len()).map(|p| r.right(p).to_vec()).collect();
    let part = coarsest_bisimulation(&left, &right);
    let reps: Vec<usize> = part.blocks().iter().map(|b| b[0]).collect();
    let ids: Vec<String> = reps.iter().map(|&p| r.id(p).to_string()).collect();
    let lift = |v: &[usize]| v.iter().map(|&q| part.block_of(q)).collect::<Vec<_>>();
    let qleft = reps.iter().map(|&p| lift(r.left(p))).collect();
    let qright = reps.iter().map(|&p| lift(r.right(p))).collect();
    let graph = GameGraph::assemble(ids, qleft, qright, part.block_of(r.root()));
    let class_of = (0..r.len())
        .map(|p| (r.id(p).to_string(), r.id(reps[part.block_of(p)]).to_string()))
        .collect();
    Minimized { graph, class_of }
}

/// Disjoint union of the adjacency of several graphs; graph `k` occupies
/// indices `offsets[k]..offsets[k] + graphs[k].len()`.
pub(crate) fn disjoint_union(graphs: &[&GameGraph]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<usize>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut offsets = Vec::with_capacity(graphs.len());
    for g in graphs {
        let off = left.len();
        offsets.push(off);
        for p in 0..g.len() {
            left.push(g.left(p).iter().map(|&q| q + off).collect());
            right.push(g.right(p).iter().map(|&q| q + off).collect());
        }
    }
    (left, right, offsets)
}

/// True iff the roots of `g1` and `g2` are related by a hyperbisimulation.
pub fn hyperbisimilar(g1: &GameGraph, g2: &GameGraph) -> bool {
    let (left, right, offsets) = disjoint_union(&[g1, g2]);
    let part = coarsest_bisimulation(&left, &right);
    part.same_block(offsets[0] + g1.root(), offsets[1] + g2.root())
}
