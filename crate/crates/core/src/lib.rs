//! Greedy approximability toolkit for cardinality-constrained maximization of
//! set functions.
//!
//! The crate is organised around [`SetFunction`], an exact-rational oracle over
//! a finite ground set of at most 64 elements:
//!
//! * [`setfn`]: ground sets, oracles, adaptive and non-adaptive greedy, brute
//!   force optima and approximation-ratio measurement.
//! * [`audit`]: exhaustive, witness-producing auditors for the weak
//!   submodularity ratio, α-augmentability, γ-α-augmentability and the rank
//!   quotient of independence systems, plus certifiers for the greedy bounds.
//! * [`families`]: the explicit worst-case and separating functions
//!   (the critical function `F_{γ,α,k}`, `f^γ`, `f^q`, `|X|²`) and weighted rank
//!   oracles, plus a JSON instance-description format.
//! * [`mcflow`]: multi-sink multi-commodity flow: instances, Edmonds–Karp max
//!   flow, an exact simplex LP evaluator and the lower-bound graphs `G_k`.
//!
//! All values are exact [`Rational`]s; floating point only shows up when
//! comparing against `e`-based limits.

pub mod audit;
pub mod error;
pub mod families;
pub mod mcflow;
pub mod rational;
pub mod setfn;

pub use audit::{
    AuditConfig, AuditReport, Existential, IndependenceSystem, Scope, Verdict, Witness,
};
pub use error::{Error, Result};
pub use rational::{ExtRational, Rational};
pub use setfn::{
    approximation_ratio, brute_force_optimum, greedy_adaptive, greedy_nonadaptive,
    saturation_cardinality, GreedyTrace, GreedyVariant, GroundSet, OptimumRecord, SetFunction,
    Subset, TiePolicy,
};
