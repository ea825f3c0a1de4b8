//! Basic uncertain information (BUI) arithmetic, possibility-degree ordering
//! and a generalized TODIM ranking method over BUI assessments.
//!
//! The pipeline, bottom up:
//!
//! * [`bui`]: `<x;c>` values, their interval images and the `⊕`/`⊖` operators.
//! * [`possibility`]: `P(A ≥ B)` for intervals and BUI values, outranking and
//!   possibility-based ranking.
//! * [`aggregation`]: base means on `[0, 1]^m` and their certainty lift.
//! * [`todim`]: dominance, overall performance, normalization and ranking.
//! * [`audit`]: randomized weight-consistency and weight-monotonicity checks.
//! * [`problem`]: the JSON/CSV problem format and group aggregation.

pub mod aggregation;
pub mod audit;
pub mod bui;
pub mod error;
pub mod interval;
pub mod matrix;
pub mod params;
pub mod possibility;
pub mod problem;
pub mod todim;

/// Tolerance for componentwise equality and for the indifference band
/// around a possibility degree of 0.5.
pub const EPS: f64 = 1e-12;

pub use aggregation::{
    arithmetic_bui_mean, base_apply, bui_lift, certainty_transform, AggregationFunction,
    BaseAggregation, WeightVector,
};
pub use audit::{audit_weight_properties, replay_trial, AuditConfig, AuditReport};
pub use bui::{
    bui_add, bui_sub, clamp_to_bui, from_interval, to_interval, Bui, ExtendedBui, UnitInterval,
};
pub use error::{Error, ErrorClass, Result, Violation};
pub use interval::Interval;
pub use matrix::DecisionMatrix;
pub use params::{Direction, Profile, TodimParams, ValueFunctions};
pub use possibility::{
    bui_possibility, interval_possibility, outrank, rank_by_possibility, OutrankRelation,
    PossibilityDegree, PossibilityMatrix,
};
pub use problem::{aggregate_group, load_problem, DecisionProblemDocument, GroupInput};
pub use todim::{
    criterion_dominance, dominance_matrix, normalize, overall_performance, pair_dominance, rank,
    relative_weights, DominanceMatrix, RankingReport,
};
