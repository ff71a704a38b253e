use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use super::greedy::{greedy_adaptive, saturation_cardinality, GreedyVariant, TiePolicy};
use super::ground::Subset;
use super::oracle::SetFunction;
use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};

/// Default ceiling on `n` for exhaustive optimum search.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// `S*_k` and its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimumRecord {
    pub k: usize,
    pub best_set: Subset,
    #[serde(with = "crate::rational::serde_str")]
    pub best_value: Rational,
}

/// Higher value wins; among equal values the lexicographically smaller set.
fn better(a: (Rational, Subset), b: (Rational, Subset)) -> (Rational, Subset) {
    match a.0.cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.1.lex_cmp(b.1) != Ordering::Greater {
                a
            } else {
                b
            }
        }
    }
}

fn guard<F: SetFunction + ?Sized>(f: &F, limit: usize) -> Result<()> {
    if f.n() > limit {
        return Err(Error::SizeLimit {
            what: "brute-force optimum",
            n: f.n(),
            limit,
        });
    }
    Ok(())
}

pub fn brute_force_optimum<F: SetFunction + ?Sized>(f: &F, k: usize) -> Result<OptimumRecord> {
    brute_force_optimum_with_limit(f, k, BRUTE_FORCE_LIMIT)
}

/// Exact maximiser over `|X| ≤ k`, ties to the lexicographically smallest set.
pub fn brute_force_optimum_with_limit<F: SetFunction + ?Sized>(
    f: &F,
    k: usize,
    limit: usize,
) -> Result<OptimumRecord> {
    if k > f.n() {
        return Err(Error::InvalidCardinality { k, n: f.n() });
    }
    guard(f, limit)?;
    let (best_value, best_set) = (0..f.ground().subset_count())
        .into_par_iter()
        .map(Subset::from_bits)
        .filter(|s| s.len() <= k)
        .map(|s| (f.value(s), s))
        .reduce_with(better)
        .expect("the empty set is always feasible");
    Ok(OptimumRecord {
        k,
        best_set,
        best_value,
    })
}

pub fn optimum_profile<F: SetFunction + ?Sized>(f: &F) -> Result<Vec<OptimumRecord>> {
    optimum_profile_with_limit(f, BRUTE_FORCE_LIMIT)
}

/// `S*_k` for every `k ∈ 0..=n` from a single pass over `2^U`.
pub fn optimum_profile_with_limit<F: SetFunction + ?Sized>(
    f: &F,
    limit: usize,
) -> Result<Vec<OptimumRecord>> {
    guard(f, limit)?;
    let n = f.n();
    let exact: Vec<Option<(Rational, Subset)>> = (0..f.ground().subset_count())
        .into_par_iter()
        .fold(
            || vec![None; n + 1],
            |mut acc: Vec<Option<(Rational, Subset)>>, bits| {
                let s = Subset::from_bits(bits);
                let cand = (f.value(s), s);
                let slot = &mut acc[s.len()];
                *slot = Some(match slot.take() {
                    Some(cur) => better(cur, cand),
                    None => cand,
                });
                acc
            },
        )
        .reduce(
            || vec![None; n + 1],
            |a, b| {
                a.into_iter()
                    .zip(b)
                    .map(|pair| match pair {
                        (Some(x), Some(y)) => Some(better(x, y)),
                        (x, None) => x,
                        (None, y) => y,
                    })
                    .collect()
            },
        );
    let mut out = Vec::with_capacity(n + 1);
    let mut running: Option<(Rational, Subset)> = None;
    for (k, slot) in exact.into_iter().enumerate() {
        let cand = slot.expect("every cardinality up to n occurs");
        let cur = match running.take() {
            Some(r) => better(r, cand),
            None => cand,
        };
        out.push(OptimumRecord {
            k,
            best_set: cur.1,
            best_value: cur.0.clone(),
        });
        running = Some(cur);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub k: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub greedy_value: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub optimum_value: Rational,
    pub ratio: ExtRational,
}

/// `max_k f(S*_k)/f(greedy_k)` with the per-`k` breakdown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub ratio: ExtRational,
    /// Smallest `k` attaining the maximum.
    pub witness_k: usize,
    pub variant: GreedyVariant,
    pub saturation: usize,
    pub rows: Vec<RatioRow>,
}

/// Measured approximation ratio over `k ∈ 1..=n`, `0/0 := 1`.
pub fn approximation_ratio<F: SetFunction + ?Sized>(
    f: &F,
    policy: &TiePolicy,
    variant: GreedyVariant,
) -> Result<RatioReport> {
    let optima = optimum_profile(f)?;
    ratio_against(f, policy, variant, &optima)
}

pub(crate) fn ratio_against<F: SetFunction + ?Sized>(
    f: &F,
    policy: &TiePolicy,
    variant: GreedyVariant,
    optima: &[OptimumRecord],
) -> Result<RatioReport> {
    let n = f.n();
    let trace = greedy_adaptive(f, n, policy)?;
    let saturation = saturation_cardinality(f, policy)?;
    let rows: Vec<RatioRow> = (1..=n)
        .map(|k| {
            let steps = match variant {
                GreedyVariant::Adaptive => k,
                GreedyVariant::NonAdaptive => k.min(saturation),
            };
            let greedy_value = trace.values[steps].clone();
            let optimum_value = optima[k].best_value.clone();
            let ratio = ExtRational::quotient(&optimum_value, &greedy_value);
            RatioRow {
                k,
                greedy_value,
                optimum_value,
                ratio,
            }
        })
        .collect();
    let best = rows
        .iter()
        .fold(None::<&RatioRow>, |acc, r| match acc {
            Some(a) if a.ratio >= r.ratio => Some(a),
            _ => Some(r),
        })
        .expect("n ≥ 1");
    Ok(RatioReport {
        ratio: best.ratio.clone(),
        witness_k: best.k,
        variant,
        saturation,
        rows,
    })
}
