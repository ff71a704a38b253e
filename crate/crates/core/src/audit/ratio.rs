use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{AuditConfig, Domain, Scope};
use crate::error::Result;
use crate::rational::{ExtRational, Rational};
use crate::setfn::{SetFunction, Subset, TiePolicy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakRatio {
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    /// First minimising pair in chain order, then `Y` mask order.
    pub witness: (Subset, Subset),
    /// `Σ_{y∈Y} (f(X∪{y}) − f(X))` at the witness.
    #[serde(with = "crate::rational::serde_str")]
    pub numerator: Rational,
    /// `f(X∪Y) − f(X)` at the witness.
    #[serde(with = "crate::rational::serde_str")]
    pub denominator: Rational,
    pub saturation: usize,
    pub checked_pairs: u64,
    pub tie_policy: TiePolicy,
}

/// Spreads the bits of `j` over the positions set in `mask`.
fn deposit(j: u64, mask: Subset) -> Subset {
    mask.iter()
        .enumerate()
        .filter(|(bit, _)| j >> bit & 1 == 1)
        .map(|(_, e)| e)
        .collect()
}

/// Weak submodularity ratio over `X ∈ {S_0, …, S_k̄}` and `Y ⊆ U \ X`.
///
/// `0/0` counts as 1; a positive numerator over a zero denominator is
/// excluded from the minimum. `Y = ∅` is in range, so the result is at most 1.
pub fn weak_submodularity_ratio<F: SetFunction + ?Sized>(
    f: &F,
    cfg: &AuditConfig,
) -> Result<WeakRatio> {
    let cfg = AuditConfig {
        scope: Scope::Weak,
        ..cfg.clone()
    };
    let dom = Domain::new(f, &cfg)?;
    let n = dom.n();
    type Best = (Rational, Subset, Rational, Rational);
    let per_x: Vec<(Best, u64)> = dom
        .xs
        .par_iter()
        .map(|&x| {
            let fx = dom.table.get(x);
            let rest = Subset::full(n).difference(x);
            let elems = rest.to_vec();
            let count = 1u64 << elems.len();
            let mut sums: Vec<Rational> = Vec::with_capacity(count as usize);
            sums.push(Rational::zero());
            let mut best: Best = (Rational::one(), Subset::EMPTY, Rational::zero(), Rational::zero());
            for j in 1..count {
                let low = j.trailing_zeros() as usize;
                let e = elems[low];
                let sum = &sums[(j & (j - 1)) as usize] + (dom.table.get(x.with(e)) - fx);
                let y = deposit(j, rest);
                let den = dom.table.get(x.union(y)) - fx;
                let q = match ExtRational::quotient(&sum, &den) {
                    ExtRational::Finite(q) => q,
                    ExtRational::Infinite => {
                        sums.push(sum);
                        continue;
                    }
                };
                if q < best.0 {
                    best = (q, y, sum.clone(), den);
                }
                sums.push(sum);
            }
            (best, count)
        })
        .collect();

    let mut checked_pairs = 0;
    let mut overall: Option<(Subset, Best)> = None;
    for (&x, (best, count)) in dom.xs.iter().zip(per_x) {
        checked_pairs += count;
        if overall.as_ref().is_none_or(|(_, b)| best.0 < b.0) {
            overall = Some((x, best));
        }
    }
    let (x, (gamma, y, num, den)) = overall.expect("the chain contains S_0");
    Ok(WeakRatio {
        gamma,
        witness: (x, y),
        numerator: num,
        denominator: den,
        saturation: dom.saturation.unwrap_or(0),
        checked_pairs,
        tie_policy: cfg.tie.clone(),
    })
}
