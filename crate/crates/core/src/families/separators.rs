//! Small functions that sit in one greedy-friendly class but not another.

use num_traits::{One, ToPrimitive, Zero};

use super::rank::{weighted_rank_oracle, WeightedRank};
use crate::audit::IndependenceSystem;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setfn::{FnOracle, GroundSet, SetFunction, Subset, TiePolicy};

/// `f^γ` on `{a, b}`: `|X|` for `|X| ≤ 1`, `2/γ` for the pair.
pub fn make_f_gamma(gamma: &Rational) -> Result<impl SetFunction + Clone> {
    if *gamma <= Rational::zero() || *gamma >= Rational::one() {
        return Err(Error::param(format!("γ must lie in (0,1), got {gamma}")));
    }
    let top = Rational::from_integer(2.into()) / gamma;
    let ground = GroundSet::with_labels(vec!["a".into(), "b".into()])?;
    Ok(FnOracle::new(ground, move |s: Subset| {
        if s.len() <= 1 {
            Rational::from_integer(s.len().into())
        } else {
            top.clone()
        }
    }))
}

/// `|X|²`.
pub fn make_square_cardinality(n: usize) -> Result<impl SetFunction + Clone> {
    Ok(FnOracle::new(GroundSet::new(n)?, |s: Subset| {
        let c = Rational::from_integer(s.len().into());
        &c * &c
    }))
}

/// The rank-quotient separator: `A`, `B` of `⌈α⌉n` elements each and a
/// single `c`, independent sets `2^A ∪ 2^B ∪ {|X| ≤ ⌈α⌉m}`, weights 1 on `A`
/// and `⌈α⌉(n−m)+1` elsewhere.
pub struct FQ {
    pub system: IndependenceSystem,
    pub oracle: WeightedRank,
    pub a: Subset,
    pub b: Subset,
    pub c: usize,
    pub ceil_alpha: usize,
    pub m: usize,
    pub n: usize,
}

impl FQ {
    /// Greedy order that reaches `{c, b_1, …, b_{⌈α⌉m−1}}` at saturation.
    pub fn witness_priority(&self) -> TiePolicy {
        TiePolicy::Priority(std::iter::once(self.c).chain(self.b.iter()).collect())
    }

    /// `{c, b_1, …, b_{⌈α⌉m−1}}`.
    pub fn witness_x(&self) -> Subset {
        let start = self.b.iter().next().expect("B is nonempty");
        Subset::range(start, start + self.ceil_alpha * self.m - 1).with(self.c)
    }
}

pub fn make_f_q(q: &Rational, alpha: &Rational, m: usize, n: usize) -> Result<FQ> {
    if *q <= Rational::zero() || *q >= Rational::one() {
        return Err(Error::param(format!("q must lie in (0,1), got {q}")));
    }
    if *alpha < Rational::one() {
        return Err(Error::param(format!("α must be at least 1, got {alpha}")));
    }
    if m == 0 || m >= n {
        return Err(Error::param(format!("need 0 < m < n, got m={m}, n={n}")));
    }
    let mn = Rational::new(m.into(), n.into());
    if *q > mn {
        return Err(Error::param(format!("need q ≤ m/n, got q={q}, m/n={mn}")));
    }
    let ceil = alpha
        .ceil()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::param("α too large"))?;
    let side = ceil * n;
    let total = 2 * side + 1;
    if total > crate::audit::INDEPENDENCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "f^q construction",
            n: total,
            limit: crate::audit::INDEPENDENCE_LIMIT,
        });
    }
    let a = Subset::range(0, side);
    let b = Subset::range(side, 2 * side);
    let c = 2 * side;
    let heavy = Rational::from_integer((ceil * (n - m) + 1).into());
    let weights = (0..total)
        .map(|i| if a.contains(i) { Rational::one() } else { heavy.clone() })
        .collect();
    let labels = (1..=side)
        .map(|i| format!("a{i}"))
        .chain((1..=side).map(|i| format!("b{i}")))
        .chain(std::iter::once("c".to_string()))
        .collect();
    let cap = ceil * m;
    let system = IndependenceSystem::from_predicate(GroundSet::with_labels(labels)?, weights, |s| {
        s.is_subset_of(a) || s.is_subset_of(b) || s.len() <= cap
    })?;
    let oracle = weighted_rank_oracle(&system)?;
    Ok(FQ {
        system,
        oracle,
        a,
        b,
        c,
        ceil_alpha: ceil,
        m,
        n,
    })
}
