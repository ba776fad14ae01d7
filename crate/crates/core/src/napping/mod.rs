//! Novelty adaptation principles.
//!
//! The adaptation layer sits on top of a trained policy. The policy's embedding
//! space is partitioned into Voronoi cells around *anchors*: model states at
//! which the baseline action was judged unacceptable. Each `(anchor, baseline
//! action)` pair owns an [`AdaptationPrinciple`], a shrinking set of candidate
//! replacement actions. A principle is *open* while several candidates remain and
//! *closed* once a single action survives.
//!
//! [`PrincipleStore::select`] picks the action to play for a model state and
//! [`PrincipleStore::update`] folds the observed transition back into the store.

mod eval;
mod store;

use thiserror::Error;

pub use eval::{eval_cartpole, eval_crossroad, eval_mountaincar, mechanical_energy, EvalSpec};
pub use store::{
    AdaptationPrinciple, PrincipleEntry, PrincipleKey, PrincipleStatus, PrincipleStore,
    StoreSnapshot, UpdateOutcome,
};

use crate::envs::Domain;

#[derive(Debug, Error, PartialEq)]
pub enum NappingError {
    #[error("anchor set is empty")]
    EmptyAnchorSet,
    #[error("model state has dimension {found}, store uses {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("action {action} out of range ({count} actions)")]
    InvalidAction { action: usize, count: usize },
    #[error("action {action} is not a candidate of principle {key:?}")]
    NotACandidate { key: PrincipleKey, action: usize },
    #[error("eval for {expected} applied to a {found} transition")]
    DomainMismatch { expected: Domain, found: Domain },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("snapshot: {0}")]
    Snapshot(String),
}
