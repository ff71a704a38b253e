//! Fixtures shared by the solver benchmarks.

use augment_core::families::{CriticalFunction, CriticalParams};
use augment_core::mcflow::{make_lower_bound_instance, FlowInstance};
use augment_core::rational::{int, ratio};

/// `F_{1/2,1,k}`.
pub fn critical(k: usize) -> CriticalFunction {
    let p = CriticalParams::new(ratio(1, 2), int(1), k).expect("valid parameters");
    CriticalFunction::new(p).expect("k ≤ 32")
}

/// `G_k` for `α` commodities.
pub fn gk(alpha: usize, k: usize) -> FlowInstance {
    make_lower_bound_instance(alpha, k).expect("valid parameters")
}
