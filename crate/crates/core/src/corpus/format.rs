//! The HYG document format.
//!
//! A document is one JSON object:
//!
//! ```text
//! {"hyg":1,"meta":{"name":"..."},"positions":{"a":{"left":["b"],"right":[]},"b":{"moves":[]}},"root":"a"}
//! ```
//!
//! `meta` is optional. A position lists either `left` and `right` (each
//! defaulting to empty) or a shared `moves` list. Canonical output has
//! sorted keys and sorted move lists, no whitespace, and a trailing newline;
//! it uses `moves` exactly when every position is impartial.

use std::collections::HashSet;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{GameGraph, MoveSets, RawGame};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Meta {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.source.is_none()
    }
}

/// A parsed document: the graph and its optional metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDocument {
    pub graph: GameGraph,
    pub meta: Meta,
}

impl GameDocument {
    pub fn new(graph: GameGraph) -> Self {
        GameDocument {
            graph,
            meta: Meta::default(),
        }
    }

    pub fn named(graph: GameGraph, name: impl Into<String>) -> Self {
        GameDocument {
            graph,
            meta: Meta {
                name: Some(name.into()),
                source: None,
            },
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PositionFields {
    left: Option<Vec<String>>,
    right: Option<Vec<String>>,
    moves: Option<Vec<String>>,
}

struct PositionDoc(MoveSets);

impl<'de> Deserialize<'de> for PositionDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = PositionFields::deserialize(d)?;
        match (f.moves, f.left, f.right) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(de::Error::custom(
                "`moves` cannot be combined with `left` or `right`",
            )),
            (Some(m), None, None) => Ok(PositionDoc(MoveSets::impartial(m))),
            (None, l, r) => Ok(PositionDoc(MoveSets {
                left: l.unwrap_or_default(),
                right: r.unwrap_or_default(),
            })),
        }
    }
}

/// Positions in document order; a repeated id is an error.
struct Positions(Vec<(String, MoveSets)>);

impl<'de> Deserialize<'de> for Positions {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;

        impl<'de> Visitor<'de> for V {
            type Value = Positions;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping position ids to moves")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Positions, A::Error> {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                while let Some(id) = map.next_key::<String>()? {
                    if !seen.insert(id.clone()) {
                        return Err(de::Error::custom(format!("position `{id}` is declared twice")));
                    }
                    let PositionDoc(m) = map.next_value()?;
                    out.push((id, m));
                }
                Ok(Positions(out))
            }
        }

        d.deserialize_map(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DocFields {
    hyg: u64,
    root: String,
    positions: Positions,
    #[serde(default)]
    meta: Option<Meta>,
}

pub fn parse_document(text: &str) -> Result<GameDocument> {
    let doc: DocFields = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    if doc.hyg != VERSION {
        return Err(Error::Document(format!(
            "unsupported format version {} (expected {VERSION})",
            doc.hyg
        )));
    }
    let graph = RawGame {
        root: doc.root,
        positions: doc.positions.0,
    }
    .build()?;
    Ok(GameDocument {
        graph,
        meta: doc.meta.unwrap_or_default(),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn parse(text: &str) -> Result<GameGraph> {
    parse_document(text).map(|d| d.graph)
}

pub fn serialize_document(doc: &GameDocument) -> String {
    let g = &doc.graph;
    let impartial = g.is_impartial_everywhere();
    let names = |v: &[usize]| Value::from(v.iter().map(|&q| g.id(q)).collect::<Vec<_>>());
    let mut positions = Map::new();
    for p in 0..g.len() {
        let entry = if impartial {
            json!({ "moves": names(g.left(p)) })
        } else {
            json!({ "left": names(g.left(p)), "right": names(g.right(p)) })
        };
        positions.insert(g.id(p).to_string(), entry);
    }
    let mut top = Map::new();
    top.insert("hyg".into(), VERSION.into());
    top.insert("root".into(), g.root_id().into());
    top.insert("positions".into(), Value::Object(positions));
    if !doc.meta.is_empty() {
        top.insert("meta".into(), serde_json::to_value(&doc.meta).expect("meta serializes"));
    }
    let mut out = Value::Object(top).to_string();
    out.push('\n');
    out
}

pub fn serialize(g: &GameGraph) -> String {
    serialize_document(&GameDocument::new(g.clone()))
}
