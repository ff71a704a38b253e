//! Multi-sink multi-commodity flow.
//!
//! An instance is a directed graph with a source `s`, sinks `T` and one
//! capacity map `μ_i` per commodity. For `X ⊆ T` the objective is the largest
//! `Σ_{t∈X} min_i ex_{θ_i}(t)` over independent s-T-flows `θ_i`, computed
//! exactly by a rational linear program.

mod generators;
mod instance;
pub mod lp;
mod maxflow;
mod objective;

pub use generators::{
    gk_base, gk_greedy_value, gk_optimum_value, gk_ratio_closed_form, make_three_sink_instance,
    make_lower_bound_instance, make_lower_bound_instance_perturbed, make_two_sink_instance,
};
pub use instance::FlowInstance;
pub use lp::{LpError, Perturbed};
pub use maxflow::max_flow;
pub use objective::{
    evaluate_objective, evaluate_objective_perturbed, lp_size, FlowObjective, PerturbedTrace,
    LP_VAR_LIMIT,
};
