mod common;

use augment_core::audit::{
    check_gamma_alpha_augmentable, rank_quotient, weak_submodularity_ratio,
};
use augment_core::families::{weighted_rank_oracle, CriticalFunction, CriticalParams};
use augment_core::mcflow::{evaluate_objective, max_flow, FlowInstance};
use augment_core::rational::ratio;
use augment_core::setfn::{optimum_profile, ValueTable};
use augment_core::{
    greedy_adaptive, greedy_nonadaptive, AuditConfig, GroundSet, IndependenceSystem,
    Rational, SetFunction, Subset, TiePolicy,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random monotone function: `f(X) = max_{Y⊆X} r(Y)` for random `r ≥ 0`.
fn monotone_table(n: usize, raw: &[(u8, u8)]) -> ValueTable {
    let size = 1usize << n;
    let mut vals: Vec<Rational> = Vec::with_capacity(size);
    for bits in 0..size {
        let (p, q) = raw[bits % raw.len()];
        let mut v = if bits == 0 {
            ratio(0, 1)
        } else {
            ratio(p as i64, q as i64 + 1)
        };
        for x in Subset::from_bits(bits as u64).iter() {
            let below = &vals[bits & !(1 << x)];
            if *below > v {
                v = below.clone();
            }
        }
        vals.push(v);
    }
    ValueTable::from_values(GroundSet::new(n).unwrap(), vals).unwrap()
}

fn table_strategy() -> impl Strategy<Value = ValueTable> {
    (1usize..=5, prop::collection::vec((0u8..12, 0u8..3), 1..40))
        .prop_map(|(n, raw)| monotone_table(n, &raw))
}

fn tie_strategy() -> impl Strategy<Value = TiePolicy> {
    prop_oneof![Just(TiePolicy::LowestIndex), Just(TiePolicy::HighestIndex)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_gains_telescope(f in table_strategy(), tie in tie_strategy()) {
        let t = greedy_adaptive(&f, f.n(), &tie).unwrap();
        for (i, g) in t.gains.iter().enumerate() {
            prop_assert_eq!(g, &(&t.values[i + 1] - &t.values[i]));
            prop_assert_eq!(&t.values[i + 1], &f.value(t.set(i + 1)));
        }
        let total = t.gains.iter().fold(t.values[0].clone(), |acc, g| acc + g);
        prop_assert_eq!(&total, t.final_value());
    }

    #[test]
    fn greedy_pick_dominates_other_candidates(f in table_strategy(), tie in tie_strategy()) {
        let t = greedy_adaptive(&f, f.n(), &tie).unwrap();
        for (i, &pick) in t.picks.iter().enumerate() {
            let s = t.set(i);
            let best = f.marginal(s, pick);
            for x in (0..f.n()).filter(|&x| !s.contains(x)) {
                prop_assert!(f.marginal(s, x) <= best);
            }
            prop_assert!(t.ties[i].contains(&pick));
        }
    }

    #[test]
    fn nonadaptive_is_a_prefix(f in table_strategy(), tie in tie_strategy()) {
        let full = greedy_adaptive(&f, f.n(), &tie).unwrap();
        for k in 0..=f.n() {
            let t = greedy_nonadaptive(&f, k, &tie).unwrap();
            prop_assert!(t.len() <= k);
            prop_assert_eq!(&t.picks[..], &full.picks[..t.len()]);
        }
    }

    #[test]
    fn optimum_sandwich(f in table_strategy()) {
        let opt = optimum_profile(&f).unwrap();
        let t = greedy_adaptive(&f, f.n(), &TiePolicy::LowestIndex).unwrap();
        for k in 0..=f.n() {
            prop_assert!(t.values[k] <= opt[k].best_value);
            prop_assert!(opt[k].best_set.len() <= k);
            prop_assert_eq!(&f.value(opt[k].best_set), &opt[k].best_value);
            if k > 0 {
                prop_assert!(opt[k - 1].best_value <= opt[k].best_value);
            }
        }
    }

    #[test]
    fn witnesses_reproduce_and_lattice_is_monotone(f in table_strategy()) {
        let cfg = AuditConfig::weak();
        let grid = [ratio(1, 4), ratio(1, 2), ratio(1, 1)];
        let alphas = [ratio(1, 1), ratio(2, 1), ratio(4, 1)];
        for g in &grid {
            for a in &alphas {
                let rep = check_gamma_alpha_augmentable(&f, g, a, &cfg).unwrap();
                if !rep.is_member() {
                    prop_assert!(rep.witness_reproduces(&f));
                    continue;
                }
                // Membership is inherited by smaller γ and larger α.
                for g2 in grid.iter().filter(|g2| *g2 <= g) {
                    for a2 in alphas.iter().filter(|a2| *a2 >= a) {
                        let rep2 = check_gamma_alpha_augmentable(&f, g2, a2, &cfg).unwrap();
                        prop_assert!(rep2.is_member(), "({}, {}) ⇒ ({}, {})", g, a, g2, a2);
                    }
                }
            }
        }
    }

    #[test]
    fn weak_ratio_implies_gamma_gamma(f in table_strategy()) {
        let w = weak_submodularity_ratio(&f, &AuditConfig::weak()).unwrap();
        prop_assert!(w.gamma <= ratio(1, 1));
        if w.gamma > ratio(0, 1) {
            let rep = check_gamma_alpha_augmentable(&f, &w.gamma, &w.gamma, &AuditConfig::weak()).unwrap();
            prop_assert!(rep.is_member());
        }
    }

    #[test]
    fn rank_quotient_implies_weak_membership(seed in any::<u64>(), n in 2usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys: IndependenceSystem = common::random_system(&mut rng, n);
        let f = weighted_rank_oracle(&sys).unwrap();
        let q = rank_quotient(&sys).unwrap().q;
        prop_assume!(q > ratio(0, 1));
        for g in [ratio(1, 2), ratio(1, 1)] {
            let a = &g / &q;
            let rep = check_gamma_alpha_augmentable(&f, &g, &a, &AuditConfig::weak()).unwrap();
            prop_assert!(rep.is_member(), "q = {}, γ = {}", q, g);
        }
    }

    #[test]
    fn critical_closed_reduction_matches_exhaustive(
        k in 2usize..=4,
        gi in 0usize..3,
        ai in 0usize..3,
        bits in any::<u64>(),
    ) {
        let g = [ratio(1, 1), ratio(1, 2), ratio(1, 4)][gi].clone();
        let a = [g.clone(), ratio(1, 1), ratio(3, 2)][ai].clone();
        prop_assume!(Rational::from_integer(k.into()) > a);
        let f = CriticalFunction::new(CriticalParams::new(g, a, k).unwrap()).unwrap();
        let x = Subset::from_bits(bits).intersection(Subset::full(2 * k));
        prop_assert_eq!(f.value_closed(x), f.value_exhaustive(x));
    }
}

fn flow_strategy(commodities: usize) -> impl Strategy<Value = FlowInstance> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_flow(&mut rng, commodities)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lp_is_capped_by_every_commodity(inst in flow_strategy(2)) {
        for x in Subset::full(inst.sinks.len()).submasks() {
            let lp = evaluate_objective(&inst, x).unwrap();
            for i in 0..inst.commodities() {
                // A commodity with an all-infinite path to a sink has no finite cap.
                if let Ok(cap) = max_flow(&inst, i, x) {
                    prop_assert!(lp <= cap, "LP {} > max-flow {} of commodity {}", lp, cap, i);
                }
            }
        }
    }

    #[test]
    fn single_commodity_lp_is_max_flow(inst in flow_strategy(1)) {
        for x in Subset::full(inst.sinks.len()).submasks() {
            prop_assert_eq!(evaluate_objective(&inst, x).unwrap(), max_flow(&inst, 0, x).unwrap());
        }
    }

    #[test]
    fn flow_objective_is_monotone(inst in flow_strategy(2)) {
        let n = inst.sinks.len();
        for x in Subset::full(n).submasks() {
            let fx = evaluate_objective(&inst, x).unwrap();
            for y in (0..n).filter(|&y| !x.contains(y)) {
                prop_assert!(evaluate_objective(&inst, x.with(y)).unwrap() >= fx);
            }
        }
    }
}
