//! Named example games.
//!
//! Besides the names in [`NAMES`], lookups accept `starN`, `inf{k1,k2,..}`,
//! the aliases `0`, `1`, `-1` and `*N`, and a `@ID` suffix that re-roots a
//! game at position `ID` (for example `traffic_jam@C`).

use std::collections::BTreeSet;

use crate::corpus::format::{GameDocument, Meta};
use crate::error::{Error, Result};
use crate::graph::{GameGraph, MoveSets, RawGame};
use crate::grundy::{make_canonical, star, GrundyValue};

/// Names listed by the catalog.
pub const NAMES: &[&str] = &[
    "zero",
    "one",
    "minus_one",
    "star1",
    "star2",
    "star3",
    "a",
    "b",
    "a0",
    "b0",
    "c",
    "c1",
    "d",
    "inf",
    "traffic_jam",
];

const TRAFFIC_JAM_SOURCE: &str = "edge list transcribed by hand from a drawing of the traffic jam \
    game; checked by reproducing its Grundy classes {C,D,K}=0 {A,E,G}=1 {B,F,H}=2 L=3 {N,O}=inf \
    I=inf{1,2} J=inf{2} M=inf{2,3}";

/// Traffic jam edges, one row per position.
const TRAFFIC_JAM: &[(&str, &[&str])] = &[
    ("A", &["B", "C"]),
    ("B", &["C", "E"]),
    ("C", &[]),
    ("D", &["B", "E"]),
    ("E", &["C", "H"]),
    ("F", &["E", "C"]),
    ("G", &["D"]),
    ("H", &["G", "D", "I"]),
    ("I", &["E", "F", "J", "N"]),
    ("J", &["F", "O"]),
    ("K", &["G"]),
    ("L", &["K", "G", "H"]),
    ("M", &["L", "H", "I"]),
    ("N", &["M", "J"]),
    ("O", &["N"]),
];

fn build(root: &str, positions: &[(&str, &[&str], &[&str])]) -> GameGraph {
    let mut raw = RawGame::new(root);
    for &(id, l, r) in positions {
        raw = raw.position(id, MoveSets::new(l.iter().copied(), r.iter().copied()));
    }
    raw.build().expect("catalog games are well-formed")
}

pub fn traffic_jam() -> GameGraph {
    let mut raw = RawGame::new("A");
    for &(id, moves) in TRAFFIC_JAM {
        raw = raw.position(id, MoveSets::impartial(moves.iter().copied()));
    }
    raw.build().expect("catalog games are well-formed")
}

fn base(name: &str) -> Option<GameGraph> {
    let g = match name {
        "zero" | "0" => crate::graph::zero(),
        "one" | "1" => build("1", &[("1", &["0"], &[]), ("0", &[], &[])]),
        "minus_one" | "-1" => build("-1", &[("-1", &[], &["0"]), ("0", &[], &[])]),
        "a" | "b" => build(name, &[("a", &["b"], &[]), ("b", &[], &["a"])]),
        "a0" | "b0" => build(
            name,
            &[("a0", &["b0"], &["0"]), ("b0", &["0"], &["a0"]), ("0", &[], &[])],
        ),
        "c" => build("c", &[("c", &["c"], &["c"])]),
        "c1" => build("c1", &[("c1", &["c1"], &["0"]), ("0", &[], &[])]),
        "d" => build(
            "d",
            &[("d", &["d'"], &["d'"]), ("d'", &["d'", "0"], &["d'", "0"]), ("0", &[], &[])],
        ),
        "traffic_jam" => traffic_jam(),
        _ => {
            if let Some(n) = name.strip_prefix("star").or_else(|| name.strip_prefix('*')) {
                let n = n.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(n);
                return n.parse().ok().map(star);
            }
            if name.starts_with("inf") {
                return name.parse::<GrundyValue>().ok().map(|v| make_canonical(&v));
            }
            return None;
        }
    };
    Some(g)
}

/// The game called `name`.
pub fn catalog(name: &str) -> Result<GameGraph> {
    let unknown = || Error::UnknownGame(name.to_string());
    match name.rsplit_once('@') {
        Some((game, root)) => base(game).ok_or_else(unknown)?.with_root(root),
        None => base(name).ok_or_else(unknown),
    }
}

/// The game with metadata, as served and exported.
pub fn catalog_document(name: &str) -> Result<GameDocument> {
    let graph = catalog(name)?;
    let source = name.starts_with("traffic_jam").then(|| TRAFFIC_JAM_SOURCE.to_string());
    Ok(GameDocument {
        graph,
        meta: Meta {
            name: Some(name.to_string()),
            source,
        },
    })
}

/// The canonical `∞_K` game.
pub fn inf_k<I: IntoIterator<Item = usize>>(k: I) -> GameGraph {
    make_canonical(&GrundyValue::Inf(k.into_iter().collect::<BTreeSet<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisim::hyperbisimilar;

    #[test]
    fn every_listed_name_resolves() {
        for name in NAMES {
            let g = catalog(name).unwrap();
            assert_eq!(g.reachable().root_id(), g.root_id());
        }
        assert!(matches!(catalog("nope"), Err(Error::UnknownGame(_))));
        assert!(matches!(catalog("star"), Err(Error::UnknownGame(_))));
    }

    #[test]
    fn shapes() {
        let c = catalog("c").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.left(0), &[0]);
        let a0 = catalog("a0").unwrap();
        let r = a0.root();
        assert_eq!(a0.id(a0.left(r)[0]), "b0");
        assert_eq!(a0.id(a0.right(r)[0]), "0");
        assert_eq!(catalog("b").unwrap().root_id(), "b");
        assert!(hyperbisimilar(&catalog("one").unwrap().negate(), &catalog("minus_one").unwrap()));
        assert_eq!(catalog("star(4)").unwrap(), catalog("*4").unwrap());
        assert_eq!(inf_k([1, 2]), catalog("inf{1,2}").unwrap());
    }

    #[test]
    fn traffic_jam_shape() {
        let g = catalog("traffic_jam").unwrap();
        assert_eq!(g.len(), 15);
        assert!(g.is_impartial());
        assert_eq!(g.reachable().len(), 15);
        let from_i = catalog("traffic_jam@I").unwrap().reachable();
        assert_eq!(from_i.len(), 14);
        assert!(from_i.index_of("A").is_none());
        assert!(catalog("traffic_jam@Z").is_err());
    }
}
