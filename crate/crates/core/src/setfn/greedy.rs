//! Adaptive and non-adaptive greedy for `max f(X) s.t. |X| ≤ k`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ground::{GroundSet, Subset};
use super::oracle::SetFunction;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// How the greedy chooses among elements tied for the best value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiePolicy {
    #[default]
    LowestIndex,
    HighestIndex,
    /// Earlier entries win; unlisted elements rank after listed ones by index.
    Priority(Vec<usize>),
}

impl TiePolicy {
    fn choose(&self, tied: &[usize]) -> usize {
        match self {
            TiePolicy::LowestIndex => *tied.iter().min().expect("nonempty tie set"),
            TiePolicy::HighestIndex => *tied.iter().max().expect("nonempty tie set"),
            TiePolicy::Priority(order) => tied
                .iter()
                .copied()
                .min_by_key(|x| (order.iter().position(|o| o == x).unwrap_or(usize::MAX), *x))
                .expect("nonempty tie set"),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if let TiePolicy::Priority(order) = self {
            if let Some(bad) = order.iter().find(|&&x| x >= n) {
                return Err(Error::param(format!(
                    "priority order names element {bad}, ground set has {n}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiePolicy::LowestIndex => f.write_str("lowest"),
            TiePolicy::HighestIndex => f.write_str("highest"),
            TiePolicy::Priority(order) => {
                let items: Vec<_> = order.iter().map(|x| x.to_string()).collect();
                write!(f, "priority:{}", items.join(","))
            }
        }
    }
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "lowest" | "lowest-index" => Ok(TiePolicy::LowestIndex),
            "highest" | "highest-index" => Ok(TiePolicy::HighestIndex),
            other => {
                let list = other
                    .strip_prefix("priority:")
                    .ok_or_else(|| Error::Parse(format!("unknown tie policy `{other}`")))?;
                list.split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad priority entry `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(TiePolicy::Priority)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyVariant {
    #[default]
    Adaptive,
    NonAdaptive,
}

impl FromStr for GreedyVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adaptive" => Ok(GreedyVariant::Adaptive),
            "nonadaptive" | "non-adaptive" => Ok(GreedyVariant::NonAdaptive),
            other => Err(Error::Parse(format!("unknown greedy variant `{other}`"))),
        }
    }
}

/// The greedy chain `∅ = S_0 ⊂ S_1 ⊂ … ⊂ S_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    pub picks: Vec<usize>,
    #[serde(with = "crate::rational::serde_vec")]
    pub gains: Vec<Rational>,
    /// `f(S_0), …, f(S_k)`.
    #[serde(with = "crate::rational::serde_vec")]
    pub values: Vec<Rational>,
    /// Elements tied for the best value at each step (the pick included).
    pub ties: Vec<Vec<usize>>,
    pub policy: TiePolicy,
}

impl GreedyTrace {
    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    /// `S_i`.
    pub fn set(&self, i: usize) -> Subset {
        self.picks[..i].iter().copied().collect()
    }

    pub fn chain(&self) -> Vec<Subset> {
        (0..=self.len()).map(|i| self.set(i)).collect()
    }

    pub fn final_set(&self) -> Subset {
        self.set(self.len())
    }

    pub fn final_value(&self) -> &Rational {
        self.values.last().expect("values always holds f(S_0)")
    }

    /// Whether any step's outcome depended on the tie policy.
    pub fn policy_dependent(&self) -> bool {
        self.ties.iter().any(|t| t.len() > 1)
    }

    /// CSV rows `step,pick,gain,value,tie_count`; picks render as labels when
    /// a ground set is supplied.
    pub fn write_csv<W: Write>(&self, out: W, ground: Option<&GroundSet>) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["step", "pick", "gain", "value", "tie_count"])
            .map_err(io)?;
        for (i, &pick) in self.picks.iter().enumerate() {
            let name = ground.map_or_else(|| pick.to_string(), |g| g.label(pick));
            w.write_record([
                (i + 1).to_string(),
                name,
                self.gains[i].to_string(),
                self.values[i + 1].to_string(),
                self.ties[i].len().to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    AfterK,
    AtSaturation,
}

pub(crate) struct Chain<V> {
    pub picks: Vec<usize>,
    pub values: Vec<V>,
    pub ties: Vec<Vec<usize>>,
    pub saturated: bool,
}

/// The greedy loop, generic over any totally ordered value type so that
/// perturbed (lexicographic) objectives can reuse it.
pub(crate) fn run_chain<V, E>(
    n: usize,
    k: usize,
    policy: &TiePolicy,
    stop: Stop,
    eval: E,
) -> Chain<V>
where
    V: Ord + Clone + Send,
    E: Fn(Subset) -> V + Sync,
{
    let mut set = Subset::EMPTY;
    let mut current = eval(set);
    let mut chain = Chain {
        picks: Vec::with_capacity(k),
        values: vec![current.clone()],
        ties: Vec::with_capacity(k),
        saturated: false,
    };
    for _ in 0..k {
        let candidates: Vec<(usize, V)> = (0..n)
            .into_par_iter()
            .filter(|&x| !set.contains(x))
            .map(|x| (x, eval(set.with(x))))
            .collect();
        if stop == Stop::AtSaturation && candidates.iter().all(|(_, v)| *v == current) {
            chain.saturated = true;
            break;
        }
        let best = candidates
            .iter()
            .map(|(_, v)| v)
            .max()
            .expect("k ≤ n leaves a candidate")
            .clone();
        let tied: Vec<usize> = candidates
            .iter()
            .filter(|(_, v)| *v == best)
            .map(|(x, _)| *x)
            .collect();
        let pick = policy.choose(&tied);
        set = set.with(pick);
        current = best;
        chain.picks.push(pick);
        chain.values.push(current.clone());
        chain.ties.push(tied);
    }
    if chain.picks.len() == n {
        chain.saturated = true;
    }
    chain
}

fn to_trace(chain: Chain<Rational>, policy: &TiePolicy) -> GreedyTrace {
    let gains = chain.values.windows(2).map(|w| &w[1] - &w[0]).collect();
    GreedyTrace {
        picks: chain.picks,
        gains,
        values: chain.values,
        ties: chain.ties,
        policy: policy.clone(),
    }
}

fn check_k<F: SetFunction + ?Sized>(f: &F, k: usize, policy: &TiePolicy) -> Result<()> {
    if k > f.n() {
        return Err(Error::InvalidCardinality { k, n: f.n() });
    }
    policy.validate(f.n())
}

/// Exactly `k` greedy picks, zero-gain steps included.
pub fn greedy_adaptive<F: SetFunction + ?Sized>(
    f: &F,
    k: usize,
    policy: &TiePolicy,
) -> Result<GreedyTrace> {
    check_k(f, k, policy)?;
    let chain = run_chain(f.n(), k, policy, Stop::AfterK, |s| f.value(s));
    Ok(to_trace(chain, policy))
}

/// The adaptive chain truncated at `min(k, k̄)`.
pub fn greedy_nonadaptive<F: SetFunction + ?Sized>(
    f: &F,
    k: usize,
    policy: &TiePolicy,
) -> Result<GreedyTrace> {
    check_k(f, k, policy)?;
    let chain = run_chain(f.n(), k, policy, Stop::AtSaturation, |s| f.value(s));
    Ok(to_trace(chain, policy))
}

/// The least `k̄` such that no element outside `S_k̄` changes the value.
pub fn saturation_cardinality<F: SetFunction + ?Sized>(f: &F, policy: &TiePolicy) -> Result<usize> {
    Ok(saturated_chain(f, policy)?.len())
}

/// `S_0, …, S_k̄` as a trace of length `k̄`.
pub fn saturated_chain<F: SetFunction + ?Sized>(f: &F, policy: &TiePolicy) -> Result<GreedyTrace> {
    greedy_nonadaptive(f, f.n(), policy)
}
