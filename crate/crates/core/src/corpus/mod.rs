//! Serialization, the named example catalog, and random generation.

pub mod catalog;
pub mod format;
pub mod generate;

pub use catalog::{catalog, catalog_document, traffic_jam, NAMES};
pub use format::{parse, parse_document, serialize, serialize_document, GameDocument, Meta};
pub use generate::{generate, mixed_corpus, GeneratorParams};
