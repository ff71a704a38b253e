//! The critical function `F_{γ,α,k}` on `U = A ∪ B`, `|A| = |B| = k`.
//!
//! `F(X) = max_{X'⊆X} h(m(X'))/k · (1 − α·s(X')) + s(X')` where `s` sums `ξ_i`
//! over `a_i ∈ X'` and `m(X') = [b_1 ∈ X']·|B ∩ X'|`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{pow, Rational};
use crate::setfn::{GroundSet, SetFunction, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalParams {
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    pub k: usize,
}

impl CriticalParams {
    pub fn new(gamma: Rational, alpha: Rational, k: usize) -> Result<Self> {
        let p = CriticalParams { gamma, alpha, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma <= Rational::zero() || self.gamma > Rational::one() {
            return Err(Error::param(format!("γ must lie in (0,1], got {}", self.gamma)));
        }
        if self.alpha < self.gamma {
            return Err(Error::param(format!(
                "α must be at least γ, got α={}, γ={}",
                self.alpha, self.gamma
            )));
        }
        if self.k < 2 || Rational::from_integer(self.k.into()) <= self.alpha {
            return Err(Error::param(format!(
                "k must be an integer ≥ 2 exceeding α, got k={}, α={}",
                self.k, self.alpha
            )));
        }
        Ok(())
    }

    fn kr(&self) -> Rational {
        Rational::from_integer(self.k.into())
    }

    /// `ξ_i = (1/k)·((k−α)/k)^{i−1}` for `i = 1..=k`, returned 0-based.
    pub fn xi(&self) -> Vec<Rational> {
        let k = self.kr();
        let q = (&k - &self.alpha) / &k;
        let mut cur = Rational::one() / &k;
        (0..self.k)
            .map(|_| {
                let v = cur.clone();
                cur *= &q;
                v
            })
            .collect()
    }

    /// `h(x) = ((1/γ − 1)x² + (k − 1/γ)x)/(k − 1)`.
    pub fn h(&self, x: usize) -> Rational {
        let k = self.kr();
        let inv = self.gamma.recip();
        let x = Rational::from_integer(x.into());
        ((&inv - Rational::one()) * &x * &x + (&k - &inv) * &x) / (k - Rational::one())
    }

    /// `(1 − ((k−α)/k)^ℓ)/α`, the closed form of `Σ_{i≤ℓ} ξ_i`.
    pub fn xi_prefix_closed(&self, l: usize) -> Rational {
        let k = self.kr();
        (Rational::one() - pow(&((&k - &self.alpha) / &k), l)) / &self.alpha
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerMax {
    /// Two candidates: all of `A ∩ X` or none of it, with `m = [b_1∈X]·|B∩X|`.
    #[default]
    Closed,
    /// Every `X' ⊆ X`.
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct CriticalFunction {
    params: CriticalParams,
    ground: GroundSet,
    xi: Vec<Rational>,
    h_over_k: Vec<Rational>,
    mode: InnerMax,
}

impl CriticalFunction {
    pub fn new(params: CriticalParams) -> Result<Self> {
        params.validate()?;
        let k = params.k;
        if 2 * k > crate::setfn::MAX_ELEMENTS {
            return Err(Error::param(format!("k = {k} exceeds 32")));
        }
        let labels = (1..=k)
            .map(|i| format!("a{i}"))
            .chain((1..=k).map(|i| format!("b{i}")))
            .collect();
        let kr = params.kr();
        let h_over_k = (0..=k).map(|m| params.h(m) / &kr).collect();
        Ok(CriticalFunction {
            xi: params.xi(),
            ground: GroundSet::with_labels(labels)?,
            h_over_k,
            params,
            mode: InnerMax::Closed,
        })
    }

    pub fn with_mode(mut self, mode: InnerMax) -> Self {
        self.mode = mode;
        self
    }

    /// Replaces the `ξ` sequence; used to build deliberately corrupted oracles.
    pub fn with_xi(mut self, xi: Vec<Rational>) -> Result<Self> {
        if xi.len() != self.params.k {
            return Err(Error::param(format!("need {} ξ values", self.params.k)));
        }
        self.xi = xi;
        Ok(self)
    }

    pub fn params(&self) -> &CriticalParams {
        &self.params
    }

    pub fn xi(&self) -> &[Rational] {
        &self.xi
    }

    pub fn a(&self) -> Subset {
        Subset::range(0, self.params.k)
    }

    pub fn b(&self) -> Subset {
        Subset::range(self.params.k, 2 * self.params.k)
    }

    fn b1(&self) -> usize {
        self.params.k
    }

    fn term(&self, x: Subset) -> Rational {
        let s = self.xi_sum(x);
        let m = if x.contains(self.b1()) {
            x.intersection(self.b()).len()
        } else {
            0
        };
        &self.h_over_k[m] * (Rational::one() - &self.params.alpha * &s) + s
    }

    fn xi_sum(&self, x: Subset) -> Rational {
        x.intersection(self.a())
            .iter()
            .fold(Rational::zero(), |acc, i| acc + &self.xi[i])
    }

    pub fn value_closed(&self, x: Subset) -> Rational {
        let with_a = self.term(x);
        let without_a = self.term(x.intersection(self.b()));
        with_a.max(without_a)
    }

    pub fn value_exhaustive(&self, x: Subset) -> Rational {
        x.submasks()
            .map(|sub| self.term(sub))
            .max()
            .expect("∅ ⊆ X")
    }
}

impl SetFunction for CriticalFunction {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, set: Subset) -> Rational {
        match self.mode {
            InnerMax::Closed => self.value_closed(set),
            InnerMax::Exhaustive => self.value_exhaustive(set),
        }
    }
}

/// `(α/γ) / (1 − (1 − α/k)^k)`.
pub fn critical_closed_form_ratio(p: &CriticalParams) -> Rational {
    let k = p.kr();
    let decay = pow(&(Rational::one() - &p.alpha / &k), p.k);
    (&p.alpha / &p.gamma) / (Rational::one() - decay)
}

/// `(α/γ)·e^α/(e^α − 1)`.
pub fn critical_limit(gamma: f64, alpha: f64) -> f64 {
    let e = alpha.exp();
    alpha / gamma * e / (e - 1.0)
}
