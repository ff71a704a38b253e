//! JSON descriptions of oracles: `{"family": "<tag>", ...parameters}`.
//!
//! ```json
//! {"family": "critical", "gamma": "1/2", "alpha": "1", "k": 3}
//! {"family": "gk", "alpha": 1, "k": 2}
//! {"family": "flow", "instance": { ... }}
//! ```

use serde::{Deserialize, Serialize};

use super::critical::{CriticalFunction, CriticalParams, InnerMax};
use super::rank::weighted_rank_oracle;
use super::separators::{make_f_gamma, make_f_q, make_square_cardinality};
use crate::audit::IndependenceSystem;
use crate::error::{Error, Result};
use crate::mcflow::{
    make_three_sink_instance, make_lower_bound_instance, make_lower_bound_instance_perturbed,
    make_two_sink_instance, FlowInstance, FlowObjective,
};
use crate::rational::Rational;
use crate::setfn::{Modular, SetFunction, Subset};

fn default_commodities() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Descriptor {
    Critical {
        #[serde(with = "crate::rational::serde_str")]
        gamma: Rational,
        #[serde(with = "crate::rational::serde_str")]
        alpha: Rational,
        k: usize,
        #[serde(default)]
        inner: InnerMax,
    },
    FGamma {
        #[serde(with = "crate::rational::serde_str")]
        gamma: Rational,
    },
    FQ {
        #[serde(with = "crate::rational::serde_str")]
        q: Rational,
        #[serde(with = "crate::rational::serde_str")]
        alpha: Rational,
        m: usize,
        n: usize,
    },
    Square {
        n: usize,
    },
    Modular {
        #[serde(with = "crate::rational::serde_vec")]
        weights: Vec<Rational>,
    },
    /// Down-closure of `maximal`, weighted rank oracle.
    IndependenceSystem {
        n: usize,
        maximal: Vec<Subset>,
        #[serde(with = "crate::rational::serde_vec")]
        weights: Vec<Rational>,
    },
    Matchings {
        edges: Vec<(usize, usize)>,
        #[serde(with = "crate::rational::serde_vec")]
        weights: Vec<Rational>,
    },
    Gk {
        alpha: usize,
        k: usize,
        #[serde(default)]
        perturbed: bool,
    },
    ThreeSink {
        #[serde(default = "default_commodities")]
        alpha: usize,
    },
    TwoSink {
        alpha: usize,
    },
    Flow {
        instance: FlowInstance,
    },
}

impl Descriptor {
    /// Parses a descriptor; errors carry serde's line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("descriptor: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialises")
    }

    pub fn family(&self) -> &'static str {
        match self {
            Descriptor::Critical { .. } => "critical",
            Descriptor::FGamma { .. } => "f_gamma",
            Descriptor::FQ { .. } => "f_q",
            Descriptor::Square { .. } => "square",
            Descriptor::Modular { .. } => "modular",
            Descriptor::IndependenceSystem { .. } => "independence_system",
            Descriptor::Matchings { .. } => "matchings",
            Descriptor::Gk { .. } => "gk",
            Descriptor::ThreeSink { .. } => "three_sink",
            Descriptor::TwoSink { .. } => "two_sink",
            Descriptor::Flow { .. } => "flow",
        }
    }

    pub fn build_oracle(&self) -> Result<Box<dyn SetFunction>> {
        Ok(match self {
            Descriptor::Critical {
                gamma,
                alpha,
                k,
                inner,
            } => {
                let p = CriticalParams::new(gamma.clone(), alpha.clone(), *k)?;
                Box::new(CriticalFunction::new(p)?.with_mode(*inner))
            }
            Descriptor::FGamma { gamma } => Box::new(make_f_gamma(gamma)?),
            Descriptor::FQ { q, alpha, m, n } => Box::new(make_f_q(q, alpha, *m, *n)?.oracle),
            Descriptor::Square { n } => Box::new(make_square_cardinality(*n)?),
            Descriptor::Modular { weights } => Box::new(Modular::new(weights.clone())?),
            Descriptor::IndependenceSystem { .. } | Descriptor::Matchings { .. } => {
                let sys = self.independence_system().expect("system family")?;
                Box::new(weighted_rank_oracle(&sys)?)
            }
            Descriptor::Gk { .. }
            | Descriptor::ThreeSink { .. }
            | Descriptor::TwoSink { .. }
            | Descriptor::Flow { .. } => {
                let inst = self.flow_instance().expect("flow family")?;
                Box::new(FlowObjective::new(inst)?)
            }
        })
    }

    /// The underlying independence system, for families that have one.
    pub fn independence_system(&self) -> Option<Result<IndependenceSystem>> {
        match self {
            Descriptor::IndependenceSystem { n, maximal, weights } => Some(
                IndependenceSystem::from_maximal_sets(*n, maximal, weights.clone()),
            ),
            Descriptor::Matchings { edges, weights } => {
                Some(IndependenceSystem::matchings(edges, weights.clone()))
            }
            Descriptor::FQ { q, alpha, m, n } => Some(make_f_q(q, alpha, *m, *n).map(|f| f.system)),
            _ => None,
        }
    }

    /// The flow instance, for flow families.
    pub fn flow_instance(&self) -> Option<Result<FlowInstance>> {
        match self {
            Descriptor::Gk {
                alpha,
                k,
                perturbed: false,
            } => Some(make_lower_bound_instance(*alpha, *k)),
            Descriptor::Gk {
                alpha,
                k,
                perturbed: true,
            } => Some(make_lower_bound_instance_perturbed(*alpha, *k)),
            Descriptor::ThreeSink { alpha } => Some(make_three_sink_instance(*alpha)),
            Descriptor::TwoSink { alpha } => Some(make_two_sink_instance(*alpha)),
            Descriptor::Flow { instance } => Some(instance.validate().map(|_| instance.clone())),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parse_and_build() {
        let d = Descriptor::from_json(r#"{"family":"critical","gamma":"1","alpha":1,"k":2}"#).unwrap();
        let f = d.build_oracle().unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.value(Subset::from_bits(0b0011)), ratio(3, 4));

        let d = Descriptor::from_json(r#"{"family":"two_sink","alpha":2}"#).unwrap();
        assert_eq!(d.build_oracle().unwrap().value(Subset::full(2)), int(3));

        let d = Descriptor::from_json(
            r#"{"family":"independence_system","n":3,"maximal":[[0,1],[2]],"weights":["1","2","5"]}"#,
        )
        .unwrap();
        assert_eq!(d.build_oracle().unwrap().value(Subset::full(3)), int(5));
    }

    #[test]
    fn round_trip() {
        let d = Descriptor::FQ {
            q: ratio(1, 2),
            alpha: int(1),
            m: 1,
            n: 2,
        };
        assert_eq!(Descriptor::from_json(&d.to_json()).unwrap(), d);
        assert!(d.to_json().contains(r#""family":"f_q""#));
    }

    #[test]
    fn errors_point_at_the_problem() {
        let err = Descriptor::from_json("{\"family\":\"critical\",\n\"gamma\" \"1\"}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = Descriptor::from_json(r#"{"family":"critical","gamma":"1"}"#).unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");
        assert!(Descriptor::from_json(r#"{"family":"nope"}"#).is_err());
        let bad = Descriptor::from_json(r#"{"family":"critical","gamma":"2","alpha":1,"k":2}"#).unwrap();
        assert!(bad.build_oracle().is_err());
    }
}
