//! Solvers for Conway games and hypergames on finite position graphs.
//!
//! A game is a [`GameGraph`]: positions with Left and Right options and a
//! root, possibly with cycles. The crate decides the coinductive order
//! `⊵`/`⋫` ([`order`]), classifies games into the nine outcome sectors,
//! synthesizes and checks positional strategies ([`strategy`]) against an
//! independent arena solver ([`arena`]), and computes generalized Grundy
//! values for impartial games ([`grundy`]).
//!
//! ```
//! use hypergame::{classify, corpus::catalog, Sector};
//!
//! assert_eq!(classify(&catalog("c").unwrap()), Sector::NlAll);
//! assert_eq!(classify(&catalog("d").unwrap()), Sector::WinII);
//! ```

pub mod arena;
pub mod bisim;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod grundy;
pub mod order;
pub mod strategy;

pub use arena::{profile_from_arena, solve_arena, ArenaSolution};
pub use bisim::{bisim_minimize, hyperbisimilar, Minimized, Partition};
pub use error::{Error, Result, StrategyError};
pub use graph::{difference, pair_id, sum, validate, zero, GameGraph, MoveSets, RawGame, Side};
pub use grundy::{
    gamma, gamma0, gen_nim_sum, grundy_wf, make_canonical, mex, nim_sum, outcome_from_gamma,
    GrundyMarking, GrundyValue, ImpartialOutcome, PartialMarking,
};
pub use order::{
    classify, conway_sim, contextual_probe, equidetermined, ge, nge, outcome_profile, well_behaved,
    OutcomeProfile, Player, Sector,
};
pub use strategy::{
    copycat, play, synthesize_nonlosing, synthesize_winning, verify_strategy, Claim, Match,
    MatchStatus, PlayOutcome, PlayVerdict, PositionalStrategy, Role, StrategyBundle,
};
