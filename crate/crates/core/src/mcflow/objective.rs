//! The multi-commodity objective
//! `f(X) = max Σ_{t∈X} d_t` such that every commodity `i` has an s-T-flow
//! `θ_i` with `ex_{θ_i}(t) ≥ d_t` for all `t ∈ X`.

use num_traits::{One, Zero};

use super::instance::FlowInstance;
use super::lp::{LinearProgram, LpScalar, Perturbed, Relation};
use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};
use crate::setfn::{run_chain, GroundSet, SetFunction, Stop, Subset, TiePolicy};

/// Ceiling on the number of LP variables (arc flows plus demands).
pub const LP_VAR_LIMIT: usize = 5000;

/// Capacity of an arc for one commodity; `None` is `+∞`.
trait Capacity: LpScalar {
    fn of(inst: &FlowInstance, commodity: usize, arc: usize) -> Option<Self>;
}

impl Capacity for Rational {
    fn of(inst: &FlowInstance, commodity: usize, arc: usize) -> Option<Self> {
        inst.capacity(commodity, arc).finite().cloned()
    }
}

impl Capacity for Perturbed {
    fn of(inst: &FlowInstance, commodity: usize, arc: usize) -> Option<Self> {
        let a = inst.capacity(commodity, arc).finite()?.clone();
        Some(Perturbed::new(a, inst.epsilon(commodity, arc)))
    }
}

fn check_bounded(inst: &FlowInstance, x: Subset) -> Result<()> {
    for t in x.iter() {
        let v = inst.sinks[t];
        if (0..inst.commodities()).all(|i| inst.has_infinite_path(i, v)) {
            return Err(Error::UnboundedFlow { sink: t });
        }
    }
    Ok(())
}

/// Number of LP variables the evaluation of `X` needs.
pub fn lp_size(inst: &FlowInstance, x: Subset) -> usize {
    let arcs: usize = (0..inst.commodities())
        .map(|i| (0..inst.arcs.len()).filter(|&e| carries(inst, i, e)).count())
        .sum();
    arcs + x.len()
}

fn carries(inst: &FlowInstance, commodity: usize, arc: usize) -> bool {
    let (u, v) = inst.arcs[arc];
    u != v
        && match inst.capacity(commodity, arc) {
            ExtRational::Infinite => true,
            ExtRational::Finite(c) => !c.is_zero() || !inst.epsilon(commodity, arc).is_zero(),
        }
}

fn build<S: Capacity>(inst: &FlowInstance, x: Subset) -> Result<LinearProgram<S>> {
    if let Some(i) = x.iter().find(|&i| i >= inst.sinks.len()) {
        return Err(Error::param(format!("sink index {i} out of range")));
    }
    let size = lp_size(inst, x);
    if size > LP_VAR_LIMIT {
        return Err(Error::SizeLimit {
            what: "flow LP variables",
            n: size,
            limit: LP_VAR_LIMIT,
        });
    }
    check_bounded(inst, x)?;

    let mut lp = LinearProgram::new(0);
    let mut demand = vec![None; inst.sinks.len()];
    for t in x.iter() {
        demand[t] = Some(lp.num_vars);
        lp.objective.push((lp.num_vars, Rational::one()));
        lp.num_vars += 1;
    }
    for i in 0..inst.commodities() {
        // excess[v]: signed flow variables entering (+1) or leaving (−1) v.
        let mut excess: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); inst.vertices];
        for (e, &(u, v)) in inst.arcs.iter().enumerate() {
            if !carries(inst, i, e) {
                continue;
            }
            let var = lp.num_vars;
            lp.num_vars += 1;
            if let Some(cap) = S::of(inst, i, e) {
                lp.add(vec![(var, Rational::one())], Relation::Le, cap);
            }
            excess[v].push((var, Rational::one()));
            excess[u].push((var, -Rational::one()));
        }
        for (v, mut row) in excess.into_iter().enumerate() {
            if v == inst.source {
                continue;
            }
            match inst.sinks.iter().position(|&t| t == v) {
                Some(t) => {
                    if let Some(d) = demand[t] {
                        row.push((d, -Rational::one()));
                    }
                    if !row.is_empty() {
                        lp.add(row, Relation::Ge, S::nil());
                    }
                }
                None if !row.is_empty() => lp.add(row, Relation::Eq, S::nil()),
                None => {}
            }
        }
    }
    Ok(lp)
}

/// Exact `f(X)` for a set of sink indices.
pub fn evaluate_objective(inst: &FlowInstance, x: Subset) -> Result<Rational> {
    Ok(build::<Rational>(inst, x)?.solve()?.value)
}

/// `f(X)` with every arc's capacity shifted by its `ε` coefficient.
pub fn evaluate_objective_perturbed(inst: &FlowInstance, x: Subset) -> Result<Perturbed> {
    Ok(build::<Perturbed>(inst, x)?.solve()?.value)
}

/// A validated flow instance seen as a set function over its sinks.
#[derive(Clone, Debug)]
pub struct FlowObjective {
    inst: FlowInstance,
    ground: GroundSet,
}

/// Greedy trace over perturbed values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedTrace {
    pub picks: Vec<usize>,
    pub values: Vec<Perturbed>,
    pub ties: Vec<Vec<usize>>,
}

impl FlowObjective {
    /// Checks the instance, that `f(T)` is finite and that the largest LP is
    /// within [`LP_VAR_LIMIT`]; evaluation of any `X` cannot fail afterwards.
    pub fn new(inst: FlowInstance) -> Result<Self> {
        inst.validate()?;
        let all = Subset::full(inst.sinks.len());
        check_bounded(&inst, all)?;
        let size = lp_size(&inst, all);
        if size > LP_VAR_LIMIT {
            return Err(Error::SizeLimit {
                what: "flow LP variables",
                n: size,
                limit: LP_VAR_LIMIT,
            });
        }
        Ok(FlowObjective {
            ground: inst.ground()?,
            inst,
        })
    }

    pub fn instance(&self) -> &FlowInstance {
        &self.inst
    }

    pub fn perturbed_value(&self, x: Subset) -> Perturbed {
        evaluate_objective_perturbed(&self.inst, x).expect("validated instance")
    }

    /// Adaptive greedy on the perturbed objective for `k` steps.
    pub fn perturbed_greedy(&self, k: usize, policy: &TiePolicy) -> Result<PerturbedTrace> {
        if k > self.n() {
            return Err(Error::InvalidCardinality { k, n: self.n() });
        }
        let chain = run_chain(self.n(), k, policy, Stop::AfterK, |s| self.perturbed_value(s));
        Ok(PerturbedTrace {
            picks: chain.picks,
            values: chain.values,
            ties: chain.ties,
        })
    }
}

impl SetFunction for FlowObjective {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, set: Subset) -> Rational {
        evaluate_objective(&self.inst, set).expect("validated instance")
    }
}
