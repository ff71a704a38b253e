//! Explicit set functions: the critical function, the class separators,
//! weighted rank oracles and a JSON descriptor format that builds any of them
//! (including the flow objectives from [`crate::mcflow`]).

mod critical;
mod descriptor;
mod rank;
mod separators;

pub use critical::{
    critical_closed_form_ratio, critical_limit, CriticalFunction, CriticalParams, InnerMax,
};
pub use descriptor::Descriptor;
pub use rank::{weighted_rank_oracle, WeightedRank};
pub use separators::{make_f_gamma, make_f_q, make_square_cardinality, FQ};
