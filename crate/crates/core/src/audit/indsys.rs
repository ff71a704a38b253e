use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::weighted_rank_oracle;
use crate::rational::{is_nonnegative, ExtRational, Rational};
use crate::setfn::{saturated_chain, GroundSet, SetFunction, Subset, TiePolicy};

/// Independence systems are tabulated over all `2^n` subsets.
pub const INDEPENDENCE_LIMIT: usize = 16;

/// A subset-closed family `I ⊆ 2^U` with `∅ ∈ I` and element weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceSystem {
    ground: GroundSet,
    independent: Vec<bool>,
    weights: Vec<Rational>,
}

impl IndependenceSystem {
    /// Tabulates `pred` and checks that it describes an independence system.
    pub fn from_predicate<P>(ground: GroundSet, weights: Vec<Rational>, pred: P) -> Result<Self>
    where
        P: Fn(Subset) -> bool + Sync,
    {
        let n = ground.len();
        if n > INDEPENDENCE_LIMIT {
            return Err(Error::SizeLimit {
                what: "independence system",
                n,
                limit: INDEPENDENCE_LIMIT,
            });
        }
        if weights.len() != n {
            return Err(Error::MalformedSystem(format!(
                "{} weights for {n} elements",
                weights.len()
            )));
        }
        if !weights.iter().all(is_nonnegative) {
            return Err(Error::MalformedSystem("weights must be nonnegative".into()));
        }
        let independent = (0..1u64 << n)
            .into_par_iter()
            .map(|bits| pred(Subset::from_bits(bits)))
            .collect();
        let sys = IndependenceSystem {
            ground,
            independent,
            weights,
        };
        sys.validate()?;
        Ok(sys)
    }

    /// `2^U`.
    pub fn free(weights: Vec<Rational>) -> Result<Self> {
        let g = GroundSet::new(weights.len())?;
        Self::from_predicate(g, weights, |_| true)
    }

    /// Sets of at most `rank` elements.
    pub fn uniform(rank: usize, weights: Vec<Rational>) -> Result<Self> {
        let g = GroundSet::new(weights.len())?;
        Self::from_predicate(g, weights, move |s| s.len() <= rank)
    }

    /// The down-closure of `maximal`.
    pub fn from_maximal_sets(n: usize, maximal: &[Subset], weights: Vec<Rational>) -> Result<Self> {
        let g = GroundSet::new(n)?;
        if let Some(bad) = maximal.iter().find(|m| !m.is_subset_of(Subset::full(n))) {
            return Err(Error::MalformedSystem(format!(
                "generating set {bad} leaves the ground set"
            )));
        }
        Self::from_predicate(g, weights, |s| maximal.iter().any(|m| s.is_subset_of(*m)))
    }

    /// Matchings of a graph: elements are edges, a set is independent when
    /// no two of its edges share an endpoint.
    pub fn matchings(edges: &[(usize, usize)], weights: Vec<Rational>) -> Result<Self> {
        let labels = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let g = GroundSet::with_labels(labels)?;
        Self::from_predicate(g, weights, |s| {
            let mut seen = 0u128;
            for e in s.iter() {
                let (u, v) = edges[e];
                let mask = (1u128 << u) | (1u128 << v);
                if seen & mask != 0 {
                    return false;
                }
                seen |= mask;
            }
            true
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.independent[s.bits() as usize]
    }

    pub fn weight(&self, s: Subset) -> Rational {
        s.iter().fold(Rational::zero(), |acc, i| acc + &self.weights[i])
    }

    /// Exhaustive check that `∅ ∈ I` and `I` is closed under subsets.
    pub fn validate(&self) -> Result<()> {
        if !self.is_independent(Subset::EMPTY) {
            return Err(Error::MalformedSystem("the empty set must be independent".into()));
        }
        let bad = (0..self.independent.len() as u64)
            .into_par_iter()
            .map(Subset::from_bits)
            .filter(|&s| self.is_independent(s))
            .find_map_first(|s| {
                s.iter()
                    .find(|&x| !self.is_independent(s.without(x)))
                    .map(|x| (s, x))
            });
        match bad {
            Some((s, x)) => Err(Error::MalformedSystem(format!(
                "{s} is independent but {} is not",
                s.without(x)
            ))),
            None => Ok(()),
        }
    }

    /// Elements outside `b` that cannot be added to it.
    fn blocked(&self, b: Subset) -> Subset {
        (0..self.n())
            .filter(|&x| !b.contains(x) && !self.is_independent(b.with(x)))
            .collect()
    }

    /// Inclusion-wise maximal independent subsets of `x`, in mask order.
    pub fn bases(&self, x: Subset) -> Vec<Subset> {
        x.submasks()
            .filter(|&b| {
                self.is_independent(b) && x.difference(b).iter().all(|e| !self.is_independent(b.with(e)))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankQuotient {
    #[serde(with = "crate::rational::serde_str")]
    pub q: Rational,
    pub x: Subset,
    /// A smallest basis of `x`.
    pub small: Subset,
    /// A largest basis of `x`.
    pub large: Subset,
}

/// `min_X min_{B,B'} |B|/|B'|` over bases of `X`, with `0/0 := 1`.
///
/// `B` is a basis of exactly the sets `B ∪ Z` with `Z` drawn from the
/// elements blocked by `B`, so each independent set is visited once.
pub fn rank_quotient(sys: &IndependenceSystem) -> Result<RankQuotient> {
    sys.validate()?;
    let size = 1usize << sys.n();
    let mut small: Vec<Option<Subset>> = vec![None; size];
    let mut large: Vec<Option<Subset>> = vec![None; size];
    for bits in 0..size as u64 {
        let b = Subset::from_bits(bits);
        if !sys.is_independent(b) {
            continue;
        }
        for z in sys.blocked(b).submasks() {
            let x = b.union(z).bits() as usize;
            if small[x].is_none_or(|s| b.len() < s.len()) {
                small[x] = Some(b);
            }
            if large[x].is_none_or(|l| b.len() > l.len()) {
                large[x] = Some(b);
            }
        }
    }
    let mut best: Option<(ExtRational, RankQuotient)> = None;
    for x in 0..size {
        let (s, l) = (small[x].expect("every set has a basis"), large[x].expect("every set has a basis"));
        let q = ExtRational::quotient(
            &Rational::from_integer(s.len().into()),
            &Rational::from_integer(l.len().into()),
        );
        if best.as_ref().is_none_or(|(b, _)| q < *b) {
            let ExtRational::Finite(value) = q.clone() else {
                unreachable!("|B| ≤ |B'| keeps the quotient finite")
            };
            best = Some((
                q,
                RankQuotient {
                    q: value,
                    x: Subset::from_bits(x as u64),
                    small: s,
                    large: l,
                },
            ));
        }
    }
    Ok(best.expect("2^U is nonempty").1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub k: usize,
    pub x: usize,
    pub independent: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub marginal: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeReport {
    pub saturation: usize,
    pub checked: u64,
    pub violations: Vec<ExchangeViolation>,
}

impl ExchangeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For the weighted rank `f` of `sys`, every `k ∈ 1..=k̄` and every
/// `x ∉ S_k` with `w(x) > 0`: `S_k ∪ {x} ∈ I` ⇔ `f(S_k∪{x}) − f(S_k) = w(x)`
/// ⇔ `f(S_k∪{x}) − f(S_k) > 0`.
pub fn check_exchange_lemma(sys: &IndependenceSystem, tie: &TiePolicy) -> Result<ExchangeReport> {
    let f = weighted_rank_oracle(sys)?;
    let chain = saturated_chain(&f, tie)?;
    let mut checked = 0;
    let mut violations = Vec::new();
    for k in 1..=chain.len() {
        let s = chain.set(k);
        let fs = f.value(s);
        for x in 0..sys.n() {
            let w = &sys.weights()[x];
            if s.contains(x) || w.is_zero() {
                continue;
            }
            checked += 1;
            let independent = sys.is_independent(s.with(x));
            let marginal = f.value(s.with(x)) - &fs;
            let full = marginal == *w;
            let positive = marginal > Rational::zero();
            if independent != full || full != positive {
                violations.push(ExchangeViolation {
                    k,
                    x,
                    independent,
                    marginal,
                    weight: w.clone(),
                });
            }
        }
    }
    Ok(ExchangeReport {
        saturation: chain.len(),
        checked,
        violations,
    })
}
