use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use super::ground::{GroundSet, Subset};
use crate::error::{Error, Result};
use crate::rational::{is_nonnegative, Rational};

/// Default ceiling for materialising a full value table (`2^n` entries).
pub const TABLE_LIMIT: usize = 20;

/// A deterministic set function `f: 2^U → Q≥0`.
///
/// Monotonicity is not part of the contract; the auditors check it when it
/// matters. Implementations must be pure and safe to call from many threads.
pub trait SetFunction: Send + Sync {
    fn ground(&self) -> &GroundSet;

    fn value(&self, set: Subset) -> Rational;

    fn n(&self) -> usize {
        self.ground().len()
    }

    fn marginal(&self, set: Subset, x: usize) -> Rational {
        self.value(set.with(x)) - self.value(set)
    }
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn ground(&self) -> &GroundSet {
        (**self).ground()
    }
    fn value(&self, set: Subset) -> Rational {
        (**self).value(set)
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Box<F> {
    fn ground(&self) -> &GroundSet {
        (**self).ground()
    }
    fn value(&self, set: Subset) -> Rational {
        (**self).value(set)
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Arc<F> {
    fn ground(&self) -> &GroundSet {
        (**self).ground()
    }
    fn value(&self, set: Subset) -> Rational {
        (**self).value(set)
    }
}

/// Wraps a closure as an oracle.
#[derive(Clone)]
pub struct FnOracle<F> {
    ground: GroundSet,
    eval: F,
}

impl<F> FnOracle<F>
where
    F: Fn(Subset) -> Rational + Send + Sync,
{
    pub fn new(ground: GroundSet, eval: F) -> Self {
        FnOracle { ground, eval }
    }
}

impl<F> SetFunction for FnOracle<F>
where
    F: Fn(Subset) -> Rational + Send + Sync,
{
    fn ground(&self) -> &GroundSet {
        &self.ground
    }
    fn value(&self, set: Subset) -> Rational {
        (self.eval)(set)
    }
}

/// `f(X) = Σ_{x∈X} w(x)`.
#[derive(Clone, Debug)]
pub struct Modular {
    ground: GroundSet,
    weights: Vec<Rational>,
}

impl Modular {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        let ground = GroundSet::new(weights.len())?;
        Self::with_ground(ground, weights)
    }

    pub fn with_ground(ground: GroundSet, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != ground.len() {
            return Err(Error::param("one weight per element required"));
        }
        if !weights.iter().all(is_nonnegative) {
            return Err(Error::param("weights must be nonnegative"));
        }
        Ok(Modular { ground, weights })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

impl SetFunction for Modular {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }
    fn value(&self, set: Subset) -> Rational {
        set.iter().fold(Rational::zero(), |acc, i| acc + &self.weights[i])
    }
}

/// Every value of an oracle, evaluated once (in parallel) and indexed by mask.
#[derive(Clone, Debug)]
pub struct ValueTable {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl ValueTable {
    pub fn build<F: SetFunction + ?Sized>(f: &F) -> Result<Self> {
        Self::build_with_limit(f, TABLE_LIMIT)
    }

    pub fn build_with_limit<F: SetFunction + ?Sized>(f: &F, limit: usize) -> Result<Self> {
        let n = f.n();
        if n > limit {
            return Err(Error::SizeLimit {
                what: "value table",
                n,
                limit,
            });
        }
        let values = (0..f.ground().subset_count())
            .into_par_iter()
            .map(|bits| f.value(Subset::from_bits(bits)))
            .collect();
        Ok(ValueTable {
            ground: f.ground().clone(),
            values,
        })
    }

    pub fn from_values(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        if values.len() as u64 != ground.subset_count() {
            return Err(Error::param("value table needs one entry per subset"));
        }
        Ok(ValueTable { ground, values })
    }

    pub fn get(&self, set: Subset) -> &Rational {
        &self.values[set.bits() as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// First `(X, X ∪ {x})` pair with `f(X ∪ {x}) < f(X)`, if any.
    pub fn monotonicity_violation(&self) -> Option<(Subset, usize)> {
        let n = self.ground.len();
        (0..self.ground.subset_count()).find_map(|bits| {
            let s = Subset::from_bits(bits);
            (0..n)
                .filter(|&x| !s.contains(x))
                .find(|&x| self.get(s.with(x)) < self.get(s))
                .map(|x| (s, x))
        })
    }
}

impl SetFunction for ValueTable {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }
    fn value(&self, set: Subset) -> Rational {
        self.values[set.bits() as usize].clone()
    }
}
