use thiserror::Error;

use crate::graph::{Side, ValidationReport};
use crate::order::OutcomeProfile;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid game graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("unknown position `{0}`")]
    UnknownPosition(String),

    #[error("game is not impartial")]
    NotImpartial,

    #[error("game is not well-founded (its move graph has a cycle)")]
    NotWellFounded,

    #[error("inconsistent outcome profile {0:?}")]
    InconsistentProfile(OutcomeProfile),

    #[error("unknown catalog game `{0}`")]
    UnknownGame(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed document: {0}")]
    Document(String),

    #[error("invalid generator parameters: {0}")]
    Params(String),

    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// Failures while simulating or checking positional strategies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy for {side:?} has no choice at obligated position `{position}`")]
    Undefined { position: String, side: Side },

    #[error("strategy for {side:?} chooses illegal move `{position}` -> `{target}`")]
    Illegal {
        position: String,
        target: String,
        side: Side,
    },

    #[error("strategy is for {found:?}, expected {expected:?}")]
    WrongSide { expected: Side, found: Side },

    #[error("strategy bundle lacks role {0}")]
    MissingRole(String),
}
