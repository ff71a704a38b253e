//! Exhaustive class-membership auditors.
//!
//! Every auditor either certifies membership over its whole scope or returns
//! the first violating pair in a fixed enumeration order (chain index or `X`
//! mask, then `Y` mask), so reports are identical however the work is split
//! across threads.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setfn::{saturated_chain, SetFunction, Subset, TiePolicy, ValueTable};

mod augment;
mod certify;
mod indsys;
mod ratio;

pub use augment::{check_alpha_augmentable, check_gamma_alpha_augmentable, min_alpha_for, MinAlpha};
pub use certify::{certify_flat_bound, certify_greedy_bound, BoundCertificate, BoundRow};
pub use indsys::{
    check_exchange_lemma, rank_quotient, ExchangeReport, ExchangeViolation, IndependenceSystem,
    RankQuotient, INDEPENDENCE_LIMIT,
};
pub use ratio::{weak_submodularity_ratio, WeakRatio};

/// Which sets `X` an auditor quantifies over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// The greedy chain `S_0, …, S_k̄`.
    #[default]
    Weak,
    /// Every `X ⊆ U`.
    Strong,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Weak => "weak",
            Scope::Strong => "strong",
        })
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Scope::Weak),
            "strong" => Ok(Scope::Strong),
            other => Err(Error::Parse(format!("unknown scope `{other}`"))),
        }
    }
}

/// Range of the existential element `y` in the augmentation inequality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Existential {
    /// `y ∈ Y \ X` for α-augmentability, `y ∈ Y` for γ-α-augmentability.
    #[default]
    ByDefinition,
    OutsideX,
    AnyOfY,
}

/// The quantifier actually applied in a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YRange {
    OutsideX,
    AnyOfY,
}

impl Existential {
    fn resolve(self, default: YRange) -> YRange {
        match self {
            Existential::ByDefinition => default,
            Existential::OutsideX => YRange::OutsideX,
            Existential::AnyOfY => YRange::AnyOfY,
        }
    }
}

/// Strong-scope default: `2^n × 2^n` pairs.
pub const STRONG_LIMIT: usize = 16;
/// Weak-scope default: `(k̄+1) × 2^n` pairs.
pub const WEAK_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub scope: Scope,
    pub tie: TiePolicy,
    pub existential: Existential,
    pub strong_limit: usize,
    pub weak_limit: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            scope: Scope::Weak,
            tie: TiePolicy::LowestIndex,
            existential: Existential::ByDefinition,
            strong_limit: STRONG_LIMIT,
            weak_limit: WEAK_LIMIT,
        }
    }
}

impl AuditConfig {
    pub fn weak() -> Self {
        Self::default()
    }

    pub fn strong() -> Self {
        AuditConfig {
            scope: Scope::Strong,
            ..Self::default()
        }
    }

    pub fn with_tie(mut self, tie: TiePolicy) -> Self {
        self.tie = tie;
        self
    }

    pub fn with_existential(mut self, existential: Existential) -> Self {
        self.existential = existential;
        self
    }

    fn limit(&self) -> usize {
        match self.scope {
            Scope::Weak => self.weak_limit,
            Scope::Strong => self.strong_limit,
        }
    }

    fn limit_name(&self) -> &'static str {
        match self.scope {
            Scope::Weak => "weak-scope audit",
            Scope::Strong => "strong-scope audit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
}

impl Verdict {
    pub fn is_member(self) -> bool {
        self == Verdict::Member
    }
}

/// A violated instance of `best gain ≥ (γ·f(X∪Y) − α·f(X)) / |Y|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: Subset,
    pub y: Subset,
    /// Element attaining the best gain.
    pub best: usize,
    /// `f(X ∪ {best}) − f(X)`.
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    /// `(γ·f(X∪Y) − α·f(X)) / |Y|`.
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    AlphaAugmentable,
    GammaAlphaAugmentable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub check: Check,
    pub verdict: Verdict,
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    pub witness: Option<Witness>,
    /// In-scope pairs examined, up to and including the witness.
    pub checked_pairs: u64,
    pub scope: Scope,
    pub tie_policy: TiePolicy,
    pub existential: YRange,
    /// `k̄` under the tie policy, for weak-scope reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturation: Option<usize>,
}

impl AuditReport {
    pub fn is_member(&self) -> bool {
        self.verdict.is_member()
    }

    /// Re-evaluates the witness inequality against `f`; `true` when the
    /// recorded values are reproduced and still violate it.
    pub fn witness_reproduces<F: SetFunction + ?Sized>(&self, f: &F) -> bool {
        let Some(w) = &self.witness else {
            return false;
        };
        let fx = f.value(w.x);
        let lhs = f.value(w.x.with(w.best)) - &fx;
        let size = Rational::from_integer(w.y.len().into());
        let rhs = (&self.gamma * f.value(w.x.union(w.y)) - &self.alpha * &fx) / size;
        let range = match self.existential {
            YRange::OutsideX => w.y.difference(w.x),
            YRange::AnyOfY => w.y,
        };
        let best_is_best = range
            .iter()
            .all(|y| f.value(w.x.with(y)) - &fx <= lhs);
        lhs == w.lhs && rhs == w.rhs && lhs < rhs && range.contains(w.best) && best_is_best
    }
}

/// Tabulated oracle plus the `X` sets an audit ranges over.
pub(crate) struct Domain {
    pub table: ValueTable,
    pub xs: Vec<Subset>,
    pub saturation: Option<usize>,
}

impl Domain {
    pub fn new<F: SetFunction + ?Sized>(f: &F, cfg: &AuditConfig) -> Result<Self> {
        let limit = cfg.limit();
        if f.n() > limit {
            return Err(Error::SizeLimit {
                what: cfg.limit_name(),
                n: f.n(),
                limit,
            });
        }
        let table = ValueTable::build_with_limit(f, limit)?;
        Self::from_table(table, cfg)
    }

    pub fn from_table(table: ValueTable, cfg: &AuditConfig) -> Result<Self> {
        let (xs, saturation) = match cfg.scope {
            Scope::Strong => (
                (0..1u64 << table.n()).map(Subset::from_bits).collect(),
                None,
            ),
            Scope::Weak => {
                let chain = saturated_chain(&table, &cfg.tie)?;
                (chain.chain(), Some(chain.len()))
            }
        };
        Ok(Domain {
            table,
            xs,
            saturation,
        })
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }
}
