use std::io::Write;

use anyhow::Result;
use augment_core::audit::{
    check_alpha_augmentable, check_exchange_lemma, check_gamma_alpha_augmentable, min_alpha_for,
    rank_quotient, weak_submodularity_ratio, ExchangeReport, MinAlpha, RankQuotient, WeakRatio,
    STRONG_LIMIT, WEAK_LIMIT,
};
use augment_core::families::Descriptor;
use augment_core::setfn::ValueTable;
use augment_core::{AuditConfig, AuditReport, Rational, Scope, TiePolicy};
use serde::Serialize;

pub struct AuditOpts {
    /// Overrides the default scopes (strong for α, weak for γ-α).
    pub scope: Option<Scope>,
    pub tie: TiePolicy,
    pub gammas: Vec<Rational>,
    pub alphas: Vec<Rational>,
}

/// Either a finished report or the reason the audit did not run.
#[derive(Serialize)]
#[serde(untagged)]
enum Outcome<T> {
    Done(T),
    Skipped { error: String },
}

impl<T> From<augment_core::Result<T>> for Outcome<T> {
    fn from(r: augment_core::Result<T>) -> Self {
        match r {
            Ok(v) => Outcome::Done(v),
            Err(e) => Outcome::Skipped {
                error: e.to_string(),
            },
        }
    }
}

#[derive(Serialize)]
struct RankData {
    rank_quotient: Outcome<RankQuotient>,
    exchange_lemma: Outcome<ExchangeReport>,
}

#[derive(Serialize)]
struct Bundle {
    family: &'static str,
    n: usize,
    labels: Vec<String>,
    tie_policy: TiePolicy,
    weak_ratio: Outcome<WeakRatio>,
    alpha_augmentable: Vec<Outcome<AuditReport>>,
    /// Smallest tested α passing the α audit.
    tightest_alpha: Option<String>,
    gamma_alpha: Vec<Outcome<AuditReport>>,
    min_alpha: Vec<Outcome<MinAlpha>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<RankData>,
}

fn config(scope: Scope, tie: &TiePolicy) -> AuditConfig {
    let base = match scope {
        Scope::Weak => AuditConfig::weak(),
        Scope::Strong => AuditConfig::strong(),
    };
    base.with_tie(tie.clone())
}

/// Runs every audit that applies and writes one pretty-printed JSON bundle.
/// Audits that hit a size guard are reported in place; the rest still run.
pub fn run<W: Write>(desc: &Descriptor, opts: &AuditOpts, mut out: W) -> Result<()> {
    let f = desc.build_oracle()?;
    let n = f.n();
    let labels = (0..n).map(|i| f.ground().label(i)).collect();
    // Tabulate once when some audit can use it; flow oracles are slow to query.
    let table = ValueTable::build_with_limit(&f, STRONG_LIMIT.max(WEAK_LIMIT)).ok();
    let oracle: &dyn augment_core::SetFunction = match &table {
        Some(t) => t,
        None => &f,
    };

    let alpha_cfg = config(opts.scope.unwrap_or(Scope::Strong), &opts.tie);
    let ga_cfg = config(opts.scope.unwrap_or(Scope::Weak), &opts.tie);

    let alpha_augmentable: Vec<Outcome<AuditReport>> = opts
        .alphas
        .iter()
        .filter(|a| **a >= Rational::from_integer(1.into()))
        .map(|a| check_alpha_augmentable(oracle, a, &alpha_cfg).into())
        .collect();
    let tightest_alpha = alpha_augmentable
        .iter()
        .filter_map(|o| match o {
            Outcome::Done(r) if r.is_member() => Some(r.alpha.clone()),
            _ => None,
        })
        .min()
        .map(|a| a.to_string());

    let mut gamma_alpha = Vec::new();
    let mut min_alpha = Vec::new();
    for g in &opts.gammas {
        for a in opts.alphas.iter().filter(|a| *a >= g) {
            gamma_alpha.push(check_gamma_alpha_augmentable(oracle, g, a, &ga_cfg).into());
        }
        min_alpha.push(min_alpha_for(oracle, g, &ga_cfg).into());
    }

    let rank = desc.independence_system().map(|sys| match sys {
        Ok(sys) => RankData {
            rank_quotient: rank_quotient(&sys).into(),
            exchange_lemma: check_exchange_lemma(&sys, &opts.tie).into(),
        },
        Err(e) => RankData {
            rank_quotient: Outcome::Skipped {
                error: e.to_string(),
            },
            exchange_lemma: Outcome::Skipped {
                error: e.to_string(),
            },
        },
    });

    let bundle = Bundle {
        family: desc.family(),
        n,
        labels,
        tie_policy: opts.tie.clone(),
        weak_ratio: weak_submodularity_ratio(oracle, &config(Scope::Weak, &opts.tie)).into(),
        alpha_augmentable,
        tightest_alpha,
        gamma_alpha,
        min_alpha,
        rank,
    };
    serde_json::to_writer_pretty(&mut out, &bundle)?;
    writeln!(out)?;
    Ok(())
}
