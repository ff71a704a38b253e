//! Ground sets, oracles, greedy solvers and brute-force optima.

mod greedy;
mod ground;
mod optimum;
mod oracle;

pub use greedy::{
    greedy_adaptive, greedy_nonadaptive, saturated_chain, saturation_cardinality, GreedyTrace,
    GreedyVariant, TiePolicy,
};
pub(crate) use greedy::{run_chain, Stop};
pub use ground::{GroundSet, Subset, MAX_ELEMENTS};
pub use optimum::{
    approximation_ratio, brute_force_optimum, brute_force_optimum_with_limit, optimum_profile,
    optimum_profile_with_limit, OptimumRecord, RatioReport, RatioRow, BRUTE_FORCE_LIMIT,
};
pub use oracle::{FnOracle, Modular, SetFunction, ValueTable, TABLE_LIMIT};
