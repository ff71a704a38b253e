use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{pow, Rational};
use crate::setfn::{optimum_profile, saturated_chain, SetFunction, TiePolicy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    /// `f(S_{min(k, k̄)})`.
    #[serde(with = "crate::rational::serde_str")]
    pub greedy: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub optimum: Rational,
    /// Guaranteed fraction of the optimum at this `k`.
    #[serde(with = "crate::rational::serde_str")]
    pub factor: Rational,
    /// `greedy − factor · optimum`; negative means the bound fails.
    #[serde(with = "crate::rational::serde_str")]
    pub slack: Rational,
}

impl BoundRow {
    pub fn holds(&self) -> bool {
        self.slack >= Rational::from_integer(0.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    pub saturation: usize,
    pub rows: Vec<BoundRow>,
}

impl BoundCertificate {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(BoundRow::holds)
    }

    pub fn first_violation(&self) -> Option<&BoundRow> {
        self.rows.iter().find(|r| !r.holds())
    }
}

fn certify<F, B>(
    f: &F,
    gamma: &Rational,
    alpha: &Rational,
    tie: &TiePolicy,
    factor: B,
) -> Result<BoundCertificate>
where
    F: SetFunction + ?Sized,
    B: Fn(usize, bool) -> Rational,
{
    if *gamma <= Rational::from_integer(0.into()) || *alpha <= Rational::from_integer(0.into()) {
        return Err(Error::param("γ and α must be positive"));
    }
    let optima = optimum_profile(f)?;
    let chain = saturated_chain(f, tie)?;
    let sat = chain.len();
    let rows = (1..=f.n())
        .map(|k| {
            let greedy = chain.values[k.min(sat)].clone();
            let optimum = optima[k].best_value.clone();
            let factor = factor(k, k <= sat);
            let slack = &greedy - &factor * &optimum;
            BoundRow {
                k,
                greedy,
                optimum,
                factor,
                slack,
            }
        })
        .collect();
    Ok(BoundCertificate {
        gamma: gamma.clone(),
        alpha: alpha.clone(),
        saturation: sat,
        rows,
    })
}

/// Per-`k` check of `f(S_k) ≥ (γ/α)(1 − (1 − α/k)^k)·f(S*_k)` for `k ≤ k̄`
/// and `f(S_k̄) ≥ (γ/α)·f(S*_k)` beyond saturation.
pub fn certify_greedy_bound<F: SetFunction + ?Sized>(
    f: &F,
    gamma: &Rational,
    alpha: &Rational,
    tie: &TiePolicy,
) -> Result<BoundCertificate> {
    let base = gamma / alpha;
    certify(f, gamma, alpha, tie, |k, before_saturation| {
        if before_saturation {
            let kr = Rational::from_integer(k.into());
            let decay = pow(&(Rational::one() - alpha / kr), k);
            &base * (Rational::one() - decay)
        } else {
            base.clone()
        }
    })
}

/// Per-`k` check of `f(S_{min(k,k̄)}) ≥ (γ/α)·f(S*_k)`, the guarantee for
/// weighted rank functions.
pub fn certify_flat_bound<F: SetFunction + ?Sized>(
    f: &F,
    gamma: &Rational,
    alpha: &Rational,
    tie: &TiePolicy,
) -> Result<BoundCertificate> {
    let base = gamma / alpha;
    certify(f, gamma, alpha, tie, |_, _| base.clone())
}
