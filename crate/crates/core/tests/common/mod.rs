//! Oracles shared by the integration tests.
#![allow(dead_code)]

use augment_core::families::{
    make_f_gamma, make_f_q, make_square_cardinality, weighted_rank_oracle, CriticalFunction,
    CriticalParams,
};
use augment_core::mcflow::{
    make_three_sink_instance, make_lower_bound_instance, make_two_sink_instance, FlowInstance,
    FlowObjective,
};
use augment_core::rational::{int, ratio};
use augment_core::setfn::Modular;
use augment_core::{ExtRational, IndependenceSystem, Rational, SetFunction, Subset};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Oracle = Box<dyn SetFunction>;

pub struct Named {
    pub name: String,
    pub f: Oracle,
    /// The independence system behind a weighted rank oracle.
    pub system: Option<IndependenceSystem>,
    /// Commodity count for flow objectives.
    pub commodities: Option<usize>,
}

impl Named {
    fn plain(name: impl Into<String>, f: Oracle) -> Self {
        Named {
            name: name.into(),
            f,
            system: None,
            commodities: None,
        }
    }
}

pub fn critical(gamma: Rational, alpha: Rational, k: usize) -> CriticalFunction {
    CriticalFunction::new(CriticalParams::new(gamma, alpha, k).unwrap()).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(0..=6), rng.gen_range(1..=3))
}

/// Down-closure of two to four random generating sets on `n` elements.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize) -> IndependenceSystem {
    let count = rng.gen_range(2..=4);
    let maximal: Vec<Subset> = (0..count)
        .map(|_| Subset::from_bits(rng.gen_range(0..1u64 << n)))
        .collect();
    let weights = (0..n).map(|_| random_rational(rng)).collect();
    IndependenceSystem::from_maximal_sets(n, &maximal, weights).unwrap()
}

/// A random single-commodity instance with a few infinite arcs, retried
/// until the objective is bounded.
pub fn random_flow(rng: &mut ChaCha8Rng, commodities: usize) -> FlowInstance {
    loop {
        let vertices = rng.gen_range(4..=6);
        let sinks_n = rng.gen_range(2..=3);
        let sinks: Vec<usize> = (vertices - sinks_n..vertices).collect();
        let mut arcs = Vec::new();
        for u in 0..vertices {
            for v in 0..vertices {
                if u != v && v != 0 && rng.gen_bool(0.4) {
                    arcs.push((u, v));
                }
            }
        }
        let capacities = (0..commodities)
            .map(|_| {
                arcs.iter()
                    .map(|_| {
                        if rng.gen_bool(0.1) {
                            ExtRational::Infinite
                        } else {
                            ExtRational::Finite(int(rng.gen_range(0..=5)))
                        }
                    })
                    .collect()
            })
            .collect();
        let inst = FlowInstance {
            vertices,
            labels: None,
            source: 0,
            sinks,
            arcs,
            capacities,
            epsilon: None,
        };
        if FlowObjective::new(inst.clone()).is_ok() {
            return inst;
        }
    }
}

/// The oracle corpus: every family at small parameters plus seeded random
/// independence systems and flow instances.
pub fn corpus(rng: &mut ChaCha8Rng) -> Vec<Named> {
    let mut out = Vec::new();
    for (g, a, k) in [
        (int(1), int(1), 2),
        (int(1), int(1), 3),
        (int(1), int(2), 3),
        (ratio(1, 2), ratio(1, 2), 2),
        (ratio(1, 2), int(1), 3),
        (ratio(1, 4), int(2), 3),
    ] {
        let name = format!("F({g},{a},{k})");
        out.push(Named::plain(name, Box::new(critical(g, a, k))));
    }
    for g in [ratio(1, 2), ratio(1, 4)] {
        out.push(Named::plain(format!("f^{g}"), Box::new(make_f_gamma(&g).unwrap())));
    }
    out.push(Named::plain("|X|^2 n=3", Box::new(make_square_cardinality(3).unwrap())));
    out.push(Named::plain(
        "modular",
        Box::new(Modular::new(vec![int(3), ratio(1, 2), int(0), int(2)]).unwrap()),
    ));
    let fq = make_f_q(&ratio(1, 2), &int(1), 1, 2).unwrap();
    out.push(Named {
        name: "f^q m=1 n=2".into(),
        f: Box::new(fq.oracle),
        system: Some(fq.system),
        commodities: None,
    });
    let tri = IndependenceSystem::matchings(&[(0, 1), (1, 2), (0, 2), (2, 3)], vec![int(1); 4]).unwrap();
    out.push(Named {
        name: "matchings".into(),
        f: Box::new(weighted_rank_oracle(&tri).unwrap()),
        system: Some(tri),
        commodities: None,
    });
    for i in 0..4 {
        let n = rng.gen_range(3..=6);
        let sys = random_system(rng, n);
        out.push(Named {
            name: format!("random system #{i} (n={n})"),
            f: Box::new(weighted_rank_oracle(&sys).unwrap()),
            system: Some(sys),
            commodities: None,
        });
    }
    let flows = [
        ("two-sink α=1", make_two_sink_instance(1).unwrap(), 1),
        ("two-sink α=2", make_two_sink_instance(2).unwrap(), 2),
        ("three_sink α=2", make_three_sink_instance(2).unwrap(), 2),
        ("G_2 α=1", make_lower_bound_instance(1, 2).unwrap(), 1),
    ];
    for (name, inst, c) in flows {
        out.push(Named {
            name: name.into(),
            f: Box::new(FlowObjective::new(inst).unwrap()),
            system: None,
            commodities: Some(c),
        });
    }
    for i in 0..3 {
        let c = 1 + i % 2;
        let inst = random_flow(rng, c);
        out.push(Named {
            name: format!("random flow #{i} (α={c})"),
            f: Box::new(FlowObjective::new(inst).unwrap()),
            system: None,
            commodities: Some(c),
        });
    }
    out
}
