use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{AuditConfig, AuditReport, Check, Domain, Scope, Verdict, Witness, YRange};
use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};
use crate::setfn::{SetFunction, Subset};

const NONE: u8 = u8::MAX;

/// Per-`X` data: the singleton gains and, for every `Y`, the element of the
/// quantified range with the largest gain (lowest index among equals).
struct Gains {
    fx: Rational,
    gain: Vec<Rational>,
    best: Vec<u8>,
}

impl Gains {
    fn new(dom: &Domain, x: Subset, range: YRange) -> Self {
        let n = dom.n();
        let fx = dom.table.get(x).clone();
        let gain: Vec<Rational> = (0..n).map(|y| dom.table.get(x.with(y)) - &fx).collect();
        let allowed = match range {
            YRange::OutsideX => Subset::full(n).difference(x),
            YRange::AnyOfY => Subset::full(n),
        };
        let mut best = vec![NONE; 1usize << n];
        for bits in 1..best.len() {
            let low = bits.trailing_zeros() as usize;
            let prev = best[bits & (bits - 1)];
            best[bits] = if !allowed.contains(low) {
                prev
            } else if prev == NONE || gain[low] > gain[prev as usize] {
                low as u8
            } else {
                prev
            };
        }
        Gains { fx, gain, best }
    }

    fn best_for(&self, y: Subset) -> usize {
        let b = self.best[y.bits() as usize];
        debug_assert!(b != NONE, "Y ⊄ X leaves a candidate");
        b as usize
    }
}

fn pair_count(n: usize, x: Subset) -> u64 {
    (1u64 << n) - (1u64 << x.len())
}

fn validate_gamma_alpha(gamma: &Rational, alpha: &Rational) -> Result<()> {
    if *gamma <= Rational::zero() || *gamma > Rational::one() {
        return Err(Error::param(format!("γ must lie in (0,1], got {gamma}")));
    }
    if alpha < gamma {
        return Err(Error::param(format!("α must be at least γ, got α={alpha}, γ={gamma}")));
    }
    Ok(())
}

fn audit(
    dom: &Domain,
    cfg: &AuditConfig,
    check: Check,
    gamma: &Rational,
    alpha: &Rational,
    range: YRange,
) -> AuditReport {
    let n = dom.n();
    let found = dom.xs.par_iter().enumerate().find_map_first(|(pos, &x)| {
        let g = Gains::new(dom, x, range);
        let alpha_fx = alpha * &g.fx;
        let mut scanned = 0u64;
        for bits in 0..1u64 << n {
            let y = Subset::from_bits(bits);
            if y.is_subset_of(x) {
                continue;
            }
            scanned += 1;
            let best = g.best_for(y);
            let size = Rational::from_integer(y.len().into());
            let need = gamma * dom.table.get(x.union(y)) - &alpha_fx;
            if &g.gain[best] * &size < need {
                let witness = Witness {
                    x,
                    y,
                    best,
                    lhs: g.gain[best].clone(),
                    rhs: need / size,
                };
                return Some((pos, scanned, witness));
            }
        }
        None
    });
    let (verdict, witness, checked_pairs) = match found {
        Some((pos, scanned, w)) => {
            let before: u64 = dom.xs[..pos].iter().map(|&x| pair_count(n, x)).sum();
            (Verdict::NonMember, Some(w), before + scanned)
        }
        None => (
            Verdict::Member,
            None,
            dom.xs.iter().map(|&x| pair_count(n, x)).sum(),
        ),
    };
    AuditReport {
        check,
        verdict,
        gamma: gamma.clone(),
        alpha: alpha.clone(),
        witness,
        checked_pairs,
        scope: cfg.scope,
        tie_policy: cfg.tie.clone(),
        existential: range,
        saturation: dom.saturation,
    }
}

/// α-augmentability: every in-scope `(X, Y)` with `Y ⊄ X` has some
/// `y ∈ Y \ X` with `f(X∪{y}) − f(X) ≥ (f(X∪Y) − α·f(X)) / |Y|`.
pub fn check_alpha_augmentable<F: SetFunction + ?Sized>(
    f: &F,
    alpha: &Rational,
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    if *alpha < Rational::one() {
        return Err(Error::param(format!("α must be at least 1, got {alpha}")));
    }
    let dom = Domain::new(f, cfg)?;
    let range = cfg.existential.resolve(YRange::OutsideX);
    Ok(audit(
        &dom,
        cfg,
        Check::AlphaAugmentable,
        &Rational::one(),
        alpha,
        range,
    ))
}

/// γ-α-augmentability: as above with numerator `γ·f(X∪Y) − α·f(X)` and the
/// existential element ranging over all of `Y`.
pub fn check_gamma_alpha_augmentable<F: SetFunction + ?Sized>(
    f: &F,
    gamma: &Rational,
    alpha: &Rational,
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    validate_gamma_alpha(gamma, alpha)?;
    let dom = Domain::new(f, cfg)?;
    let range = cfg.existential.resolve(YRange::AnyOfY);
    Ok(audit(
        &dom,
        cfg,
        Check::GammaAlphaAugmentable,
        gamma,
        alpha,
        range,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinAlpha {
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    /// Least admissible α, or `inf` when a pair with `f(X) = 0` can never be
    /// satisfied.
    pub alpha: ExtRational,
    /// First pair attaining the maximum, absent when the floor `γ` binds.
    pub witness: Option<(Subset, Subset)>,
    pub scope: Scope,
    pub checked_pairs: u64,
}

/// The least `α ≥ γ` for which the γ-α check passes.
pub fn min_alpha_for<F: SetFunction + ?Sized>(
    f: &F,
    gamma: &Rational,
    cfg: &AuditConfig,
) -> Result<MinAlpha> {
    validate_gamma_alpha(gamma, gamma)?;
    let dom = Domain::new(f, cfg)?;
    let range = cfg.existential.resolve(YRange::AnyOfY);
    let n = dom.n();
    // Per X: the largest required α and its first Y.
    let per_x: Vec<Option<(ExtRational, Subset)>> = dom
        .xs
        .par_iter()
        .map(|&x| {
            let g = Gains::new(&dom, x, range);
            let mut worst: Option<(ExtRational, Subset)> = None;
            for bits in 0..1u64 << n {
                let y = Subset::from_bits(bits);
                if y.is_subset_of(x) {
                    continue;
                }
                let best = g.best_for(y);
                let size = Rational::from_integer(y.len().into());
                let need = gamma * dom.table.get(x.union(y)) - &g.gain[best] * size;
                let required = if g.fx.is_zero() {
                    if need > Rational::zero() {
                        ExtRational::Infinite
                    } else {
                        continue;
                    }
                } else {
                    ExtRational::Finite(need / &g.fx)
                };
                if worst.as_ref().is_none_or(|(w, _)| required > *w) {
                    worst = Some((required, y));
                }
            }
            worst
        })
        .collect();
    let mut alpha = ExtRational::Finite(gamma.clone());
    let mut witness = None;
    for (&x, entry) in dom.xs.iter().zip(per_x) {
        if let Some((req, y)) = entry {
            if req > alpha {
                alpha = req;
                witness = Some((x, y));
            }
        }
    }
    Ok(MinAlpha {
        gamma: gamma.clone(),
        alpha,
        witness,
        scope: cfg.scope,
        checked_pairs: dom.xs.iter().map(|&x| pair_count(n, x)).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::Existential;
    use crate::rational::{int, ratio};
    use crate::setfn::{FnOracle, GroundSet, Modular};

    fn f_gamma_half() -> impl SetFunction {
        FnOracle::new(GroundSet::new(2).unwrap(), |s: Subset| {
            if s.len() <= 1 {
                int(s.len() as i64)
            } else {
                int(4)
            }
        })
    }

    #[test]
    fn modular_is_one_one_augmentable() {
        let f = Modular::new(vec![int(1), int(2), int(0), int(5)]).unwrap();
        for cfg in [AuditConfig::weak(), AuditConfig::strong()] {
            let r = check_alpha_augmentable(&f, &int(1), &cfg).unwrap();
            assert!(r.is_member());
            assert!(r.checked_pairs > 0);
            let m = min_alpha_for(&f, &int(1), &cfg).unwrap();
            assert_eq!(m.alpha, ExtRational::Finite(int(1)));
        }
    }

    #[test]
    fn strong_pair_count_is_complete() {
        let f = Modular::new(vec![int(1); 3]).unwrap();
        let r = check_alpha_augmentable(&f, &int(1), &AuditConfig::strong()).unwrap();
        // Σ_X (2^n − 2^|X|) = 4^n − 3^n.
        assert_eq!(r.checked_pairs, 64 - 27);
    }

    #[test]
    fn f_gamma_is_not_augmentable() {
        let f = f_gamma_half();
        for alpha in [int(1), int(2), int(4)] {
            let r = check_alpha_augmentable(&f, &alpha, &AuditConfig::strong()).unwrap();
            assert_eq!(r.verdict, Verdict::NonMember);
            let w = r.witness.as_ref().unwrap();
            assert_eq!(w.x, Subset::EMPTY);
            assert_eq!(w.y, Subset::full(2));
            assert_eq!(w.lhs, int(1));
            assert_eq!(w.rhs, int(2));
            assert!(r.witness_reproduces(&f));
        }
        let r = check_gamma_alpha_augmentable(&f, &ratio(1, 2), &ratio(1, 2), &AuditConfig::weak())
            .unwrap();
        assert!(r.is_member());
    }

    #[test]
    fn min_alpha_infinite_when_zero_base_fails() {
        // f(∅) = 0 and only the full set has value.
        let f = FnOracle::new(GroundSet::new(2).unwrap(), |s: Subset| {
            int(if s.len() == 2 { 1 } else { 0 })
        });
        let m = min_alpha_for(&f, &int(1), &AuditConfig::strong()).unwrap();
        assert_eq!(m.alpha, ExtRational::Infinite);
        assert_eq!(m.witness, Some((Subset::EMPTY, Subset::full(2))));
    }

    #[test]
    fn min_alpha_is_the_threshold() {
        let f = FnOracle::new(GroundSet::new(3).unwrap(), |s: Subset| {
            int([0, 2, 3, 3][s.len()])
        });
        let cfg = AuditConfig::strong();
        let m = min_alpha_for(&f, &int(1), &cfg).unwrap();
        let ExtRational::Finite(a) = m.alpha.clone() else {
            panic!("finite threshold expected")
        };
        assert!(check_gamma_alpha_augmentable(&f, &int(1), &a, &cfg)
            .unwrap()
            .is_member());
        if a > int(1) {
            let below = &a - ratio(1, 1000);
            let r = check_gamma_alpha_augmentable(&f, &int(1), &below, &cfg).unwrap();
            assert!(!r.is_member());
            assert!(r.witness_reproduces(&f));
        }
    }

    #[test]
    fn parameter_domain() {
        let f = Modular::new(vec![int(1)]).unwrap();
        let cfg = AuditConfig::weak();
        assert!(check_gamma_alpha_augmentable(&f, &int(0), &int(1), &cfg).is_err());
        assert!(check_gamma_alpha_augmentable(&f, &int(1), &ratio(1, 2), &cfg).is_err());
        assert!(check_alpha_augmentable(&f, &ratio(1, 2), &cfg).is_err());
    }

    #[test]
    fn size_guard() {
        let f = Modular::new(vec![int(1); 5]).unwrap();
        let cfg = AuditConfig {
            strong_limit: 4,
            ..AuditConfig::strong()
        };
        assert!(matches!(
            check_alpha_augmentable(&f, &int(1), &cfg),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn existential_override_changes_the_range() {
        let f = f_gamma_half();
        let cfg = AuditConfig::strong().with_existential(Existential::AnyOfY);
        let r = check_alpha_augmentable(&f, &int(1), &cfg).unwrap();
        assert_eq!(r.existential, YRange::AnyOfY);
    }
}
