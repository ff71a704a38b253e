//! Hand-built flow instances: the lower-bound graphs `G_k` and two small
//! separating examples.

use num_traits::{One, Zero};

use super::instance::FlowInstance;
use crate::error::{Error, Result};
use crate::rational::{int, pow, ExtRational, Rational};

fn fin(r: Rational) -> ExtRational {
    ExtRational::Finite(r)
}

/// `x = k/(k−1)`.
pub fn gk_base(k: usize) -> Rational {
    Rational::new(k.into(), (k - 1).into())
}

fn check_gk(alpha: usize, k: usize) -> Result<()> {
    if alpha == 0 || k < 2 {
        return Err(Error::param(format!(
            "G_k needs α ≥ 1 and k ≥ 2, got α={alpha}, k={k}"
        )));
    }
    Ok(())
}

/// `G_k` for `α` commodities.
///
/// Vertices are `s, v_1..v_{αk}, t_1..t_{2αk}` in that order and the sinks are
/// listed as `t_1..t_{2αk}`, so lowest-index tie-breaking makes the greedy
/// take the lower sinks `t_1, t_2, …` first. With `x = k/(k−1)`:
///
/// * `s→v_j` and `v_j→t_j` carry `x^{αk−j+1}` in every commodity;
/// * `s→t` for an upper sink `t` in block `i` carries 1 in commodity `i` and
///   `∞` in the others;
/// * `v_j→t` for such a `t` carries `x^{αk−j+1}/k` in commodity `i` only.
///
/// Block `i` holds `t_{(α+i−1)k+1}, …, t_{(α+i)k}`.
pub fn make_lower_bound_instance(alpha: usize, k: usize) -> Result<FlowInstance> {
    build_gk(alpha, k, false)
}

/// [`make_lower_bound_instance`] with `t_j`'s limiting arcs raised by
/// `ε·(2αk − j)`, so that the intended greedy order wins every tie strictly.
pub fn make_lower_bound_instance_perturbed(alpha: usize, k: usize) -> Result<FlowInstance> {
    build_gk(alpha, k, true)
}

fn build_gk(alpha: usize, k: usize, perturb: bool) -> Result<FlowInstance> {
    check_gk(alpha, k)?;
    if 2 * alpha * k > crate::setfn::MAX_ELEMENTS {
        return Err(Error::param(format!("2αk = {} sinks exceed 64", 2 * alpha * k)));
    }
    let low = alpha * k;
    let x = gk_base(k);
    let kr = int(k as i64);
    let cap = |j: usize| pow(&x, low - j + 1);
    let v = |j: usize| j;
    let t = |j: usize| low + j;
    let block = |u: usize| (u - 1) / k - alpha;

    let mut labels = vec!["s".to_string()];
    labels.extend((1..=low).map(|j| format!("v{j}")));
    labels.extend((1..=2 * low).map(|j| format!("t{j}")));

    let mut arcs = Vec::new();
    let mut caps: Vec<Vec<ExtRational>> = vec![Vec::new(); alpha];
    let mut eps: Vec<Vec<ExtRational>> = vec![Vec::new(); alpha];
    let mut push = |arc: (usize, usize), per: &dyn Fn(usize) -> (ExtRational, Rational)| {
        arcs.push(arc);
        for i in 0..alpha {
            let (c, e) = per(i);
            caps[i].push(c);
            eps[i].push(fin(e));
        }
    };
    let lift = |j: usize| {
        if perturb {
            int((2 * low - j) as i64)
        } else {
            Rational::zero()
        }
    };

    for j in 1..=low {
        push((0, v(j)), &|_| (fin(cap(j)), lift(j)));
        push((v(j), t(j)), &|_| (fin(cap(j)), lift(j)));
    }
    for u in low + 1..=2 * low {
        let owner = block(u);
        push((0, t(u)), &|i| {
            if i == owner {
                (fin(Rational::one()), lift(u))
            } else {
                (ExtRational::Infinite, Rational::zero())
            }
        });
    }
    for j in 1..=low {
        for u in low + 1..=2 * low {
            let owner = block(u);
            let c = cap(j) / &kr;
            push((v(j), t(u)), &|i| {
                if i == owner {
                    (fin(c.clone()), Rational::zero())
                } else {
                    (fin(Rational::zero()), Rational::zero())
                }
            });
        }
    }

    Ok(FlowInstance {
        vertices: 1 + 3 * low,
        labels: Some(labels),
        source: 0,
        sinks: (1..=2 * low).map(t).collect(),
        arcs,
        capacities: caps,
        epsilon: perturb.then_some(eps),
    })
}

/// `α·x^{αk}/(x^{αk} − 1)`.
pub fn gk_ratio_closed_form(alpha: usize, k: usize) -> Result<Rational> {
    check_gk(alpha, k)?;
    let p = pow(&gk_base(k), alpha * k);
    Ok(int(alpha as i64) * &p / (p - Rational::one()))
}

/// `k(x^{αk} − 1)`, the value of the first `αk` greedy picks.
pub fn gk_greedy_value(alpha: usize, k: usize) -> Result<Rational> {
    check_gk(alpha, k)?;
    Ok(int(k as i64) * (pow(&gk_base(k), alpha * k) - Rational::one()))
}

/// `αk·x^{αk}`, the value of the `αk` upper sinks.
pub fn gk_optimum_value(alpha: usize, k: usize) -> Result<Rational> {
    check_gk(alpha, k)?;
    Ok(int((alpha * k) as i64) * pow(&gk_base(k), alpha * k))
}

/// The three-sink instance whose objective has weak submodularity ratio 0.
///
/// Commodity 1 may use `s→v1, s→t3, v1→t1, v1→t2`; every other commodity
/// uses the remaining four arcs; all usable capacities are 1. The sinks are
/// listed as `t2, t1, t3` so that the greedy's first pick is `t2` under
/// lowest-index ties.
pub fn make_three_sink_instance(alpha: usize) -> Result<FlowInstance> {
    if alpha < 2 {
        return Err(Error::param(format!("need at least 2 commodities, got {alpha}")));
    }
    let labels = ["s", "v1", "v2", "t1", "t2", "t3"].map(String::from).to_vec();
    let arcs = vec![(0, 1), (0, 2), (0, 3), (0, 5), (1, 3), (1, 4), (2, 4), (2, 5)];
    let first = [true, false, false, true, true, true, false, false];
    let capacities = (0..alpha)
        .map(|i| {
            first
                .iter()
                .map(|&own| fin(if own == (i == 0) { int(1) } else { int(0) }))
                .collect()
        })
        .collect();
    Ok(FlowInstance {
        vertices: 6,
        labels: Some(labels),
        source: 0,
        sinks: vec![4, 3, 5],
        arcs,
        capacities,
        epsilon: None,
    })
}

/// `s→v` with capacity 3 and `v→t1`, `v→t2` with capacity 2, in every
/// commodity: `f` is 0, 2, 2, 3 on `∅, {t1}, {t2}, {t1,t2}`.
pub fn make_two_sink_instance(alpha: usize) -> Result<FlowInstance> {
    if alpha == 0 {
        return Err(Error::param("need at least one commodity"));
    }
    let row = vec![fin(int(3)), fin(int(2)), fin(int(2))];
    Ok(FlowInstance {
        vertices: 4,
        labels: Some(["s", "v", "t1", "t2"].map(String::from).to_vec()),
        source: 0,
        sinks: vec![2, 3],
        arcs: vec![(0, 1), (1, 2), (1, 3)],
        capacities: vec![row; alpha],
        epsilon: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcflow::{evaluate_objective, max_flow, FlowObjective};
    use crate::rational::ratio;
    use crate::setfn::{greedy_adaptive, SetFunction, Subset, TiePolicy};

    #[test]
    fn g2_shape() {
        let g = make_lower_bound_instance(1, 2).unwrap();
        g.validate().unwrap();
        assert_eq!(g.vertices, 7);
        assert_eq!(g.sinks.len(), 4);
        assert_eq!(g.capacities[0][0], fin(int(4)));
        assert_eq!(g.vertex_label(g.sinks[0]), "t1");
        assert_eq!(max_flow(&g, 0, Subset::singleton(0)).unwrap(), int(4));
    }

    #[test]
    fn geometric_identity() {
        for k in 2..6 {
            let x = gk_base(k);
            for n in 1..=2 * k {
                let sum = (1..=n).fold(Rational::zero(), |acc, j| acc + pow(&x, j));
                assert_eq!(Rational::one() + sum / int(k as i64), pow(&x, n));
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(gk_ratio_closed_form(1, 2).unwrap(), ratio(4, 3));
        assert_eq!(gk_ratio_closed_form(2, 2).unwrap(), ratio(32, 15));
        let limit = std::f64::consts::E / (std::f64::consts::E - 1.0);
        let r = crate::rational::to_f64(&gk_ratio_closed_form(1, 64).unwrap());
        assert!((r - limit).abs() < 0.01);
        assert!(gk_ratio_closed_form(0, 2).is_err());
        assert!(make_lower_bound_instance(1, 1).is_err());
        assert!(make_lower_bound_instance(1, 64).is_err());
    }

    #[test]
    fn g2_objective_values() {
        let g = make_lower_bound_instance(1, 2).unwrap();
        assert_eq!(evaluate_objective(&g, Subset::from_bits(0b11)).unwrap(), int(6));
        assert_eq!(evaluate_objective(&g, Subset::EMPTY).unwrap(), int(0));
        assert_eq!(
            evaluate_objective(&g, Subset::from_bits(0b1100)).unwrap(),
            gk_optimum_value(1, 2).unwrap()
        );
    }

    #[test]
    fn g2_greedy_order() {
        let f = FlowObjective::new(make_lower_bound_instance(1, 2).unwrap()).unwrap();
        let trace = greedy_adaptive(&f, 2, &TiePolicy::LowestIndex).unwrap();
        assert_eq!(trace.picks, vec![0, 1]);
        assert_eq!(trace.final_value(), &gk_greedy_value(1, 2).unwrap());
    }

    #[test]
    fn perturbed_order_is_policy_free() {
        let f = FlowObjective::new(make_lower_bound_instance_perturbed(1, 2).unwrap()).unwrap();
        let trace = f.perturbed_greedy(2, &TiePolicy::HighestIndex).unwrap();
        assert_eq!(trace.picks, vec![0, 1]);
        assert!(trace.ties.iter().all(|t| t.len() == 1));
        assert_eq!(trace.values[2].a, gk_greedy_value(1, 2).unwrap());
    }

    #[test]
    fn three_sink_values() {
        let f = FlowObjective::new(make_three_sink_instance(2).unwrap()).unwrap();
        for i in 0..3 {
            assert_eq!(f.value(Subset::singleton(i)), int(1));
        }
        assert_eq!(f.value(Subset::from_bits(0b011)), int(1));
        assert_eq!(f.value(Subset::from_bits(0b101)), int(1));
        assert_eq!(f.value(Subset::from_bits(0b110)), int(2));
        assert_eq!(f.value(Subset::full(3)), int(2));
        assert!(make_three_sink_instance(1).is_err());
        let f3 = FlowObjective::new(make_three_sink_instance(3).unwrap()).unwrap();
        assert_eq!(f3.value(Subset::full(3)), int(2));
    }

    #[test]
    fn two_sink_values() {
        for alpha in 1..=3 {
            let f = FlowObjective::new(make_two_sink_instance(alpha).unwrap()).unwrap();
            let got: Vec<_> = (0..4).map(|b| f.value(Subset::from_bits(b))).collect();
            assert_eq!(got, vec![int(0), int(2), int(2), int(3)]);
        }
    }
}
