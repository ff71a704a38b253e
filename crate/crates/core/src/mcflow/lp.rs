//! A small exact two-phase simplex for `max c·x  s.t.  Ax {≤,=,≥} b, x ≥ 0`.
//!
//! Coefficients are rationals; the right-hand side may live in any ordered
//! vector space over the rationals ([`LpScalar`]), which lets the same code
//! solve problems whose capacities carry a symbolic infinitesimal.
//! Pivoting follows Bland's rule, so degenerate problems cannot cycle.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

/// Sparse coefficients, relation and right-hand side of one row.
type Row<S> = (Vec<(usize, Rational)>, Relation, S);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("the constraints are infeasible")]
    Infeasible,
    #[error("the objective is unbounded")]
    Unbounded,
}

/// Right-hand-side values: a totally ordered rational vector space.
pub trait LpScalar: Clone + Ord + Debug {
    fn nil() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_nil(&self) -> bool;
    fn scale(&self, r: &Rational) -> Self;
    /// `self -= other · r`.
    fn sub_scaled(&mut self, other: &Self, r: &Rational);
    /// `self += other · r`.
    fn add_scaled(&mut self, other: &Self, r: &Rational) {
        self.sub_scaled(other, &-r);
    }
}

impl LpScalar for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn sub_scaled(&mut self, other: &Self, r: &Rational) {
        *self -= other * r;
    }
}

/// `a + b·ε` for an infinitesimal `ε > 0`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Perturbed {
    pub a: Rational,
    pub b: Rational,
}

impl Perturbed {
    pub fn new(a: Rational, b: Rational) -> Self {
        Perturbed { a, b }
    }
}

impl std::fmt::Display for Perturbed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{} - {}ε", self.a, -&self.b)
        } else {
            write!(f, "{} + {}ε", self.a, self.b)
        }
    }
}

impl LpScalar for Perturbed {
    fn nil() -> Self {
        Perturbed::default()
    }
    fn from_rational(r: Rational) -> Self {
        Perturbed {
            a: r,
            b: Zero::zero(),
        }
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn scale(&self, r: &Rational) -> Self {
        Perturbed {
            a: &self.a * r,
            b: &self.b * r,
        }
    }
    fn sub_scaled(&mut self, other: &Self, r: &Rational) {
        self.a -= &other.a * r;
        self.b -= &other.b * r;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint<S> {
    /// Sparse `(variable, coefficient)` pairs; repeated variables add up.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: S,
}

/// Maximise `objective · x` over `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<S> {
    pub num_vars: usize,
    pub objective: Vec<(usize, Rational)>,
    pub constraints: Vec<Constraint<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<S> {
    pub value: S,
    pub x: Vec<S>,
    pub pivots: usize,
}

struct Tableau<S> {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<S>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
}

impl<S: LpScalar> Tableau<S> {
    fn pivot(&mut self, r: usize, col: usize, reduced: &mut [Rational], z: &mut S) {
        let inv = self.rows[r][col].recip();
        let support: Vec<usize> = (0..self.cols)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &support {
            self.rows[r][j] *= &inv;
        }
        self.rhs[r] = self.rhs[r].scale(&inv);
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for &j in &support {
                let delta = &pivot_row[j] * &factor;
                self.rows[i][j] -= delta;
            }
            self.rhs[i].sub_scaled(&pivot_rhs, &factor);
        }
        if !reduced[col].is_zero() {
            let factor = reduced[col].clone();
            for &j in &support {
                let delta = &pivot_row[j] * &factor;
                reduced[j] -= delta;
            }
            z.add_scaled(&pivot_rhs, &factor);
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Reduced costs `c_j − c_B·B⁻¹A_j` and the current objective value.
    fn price(&self, cost: &[Rational]) -> (Vec<Rational>, S) {
        let mut reduced = cost.to_vec();
        let mut z = S::nil();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    reduced[j] -= cb * a;
                }
            }
            z.add_scaled(&self.rhs[r], cb);
        }
        (reduced, z)
    }

    /// Bland's rule to optimality over the columns in `allowed`.
    fn optimise(&mut self, cost: &[Rational], allowed: usize) -> Result<S, LpError> {
        let (mut reduced, mut z) = self.price(cost);
        loop {
            let Some(col) = (0..allowed).find(|&j| reduced[j].is_positive()) else {
                return Ok(z);
            };
            let mut leave: Option<(usize, S)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[r].scale(&a.recip());
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => match ratio.cmp(best_ratio) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[r] < self.basis[*best],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let (r, _) = leave.ok_or(LpError::Unbounded)?;
            self.pivot(r, col, &mut reduced, &mut z);
        }
    }
}

impl<S: LpScalar> LinearProgram<S> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: S) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> Result<Solution<S>, LpError> {
        let n = self.num_vars;
        // Normalise to a non-negative right-hand side; a `≥ 0` row becomes `≤ 0`
        // so that it needs no artificial variable.
        let rows: Vec<Row<S>> = self
            .constraints
            .iter()
            .map(|c| {
                let zero = S::nil();
                let flip = c.rhs < zero || (c.relation == Relation::Ge && c.rhs.is_nil());
                if flip {
                    let coeffs = c.coeffs.iter().map(|(j, a)| (*j, -a)).collect();
                    let relation = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (coeffs, relation, c.rhs.scale(&-Rational::one()))
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let artificials = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let art_start = n + slacks;
        let cols = art_start + artificials;

        let mut t = Tableau {
            rows: Vec::with_capacity(rows.len()),
            rhs: Vec::with_capacity(rows.len()),
            basis: Vec::with_capacity(rows.len()),
            cols,
            pivots: 0,
        };
        let (mut next_slack, mut next_art) = (n, art_start);
        for (coeffs, relation, rhs) in rows {
            let mut row = vec![Rational::zero(); cols];
            for (j, a) in coeffs {
                assert!(j < n, "constraint references variable {j} of {n}");
                row[j] += a;
            }
            let basic = match relation {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    next_slack += 1;
                    next_slack - 1
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    row[next_art] = Rational::one();
                    next_slack += 1;
                    next_art += 1;
                    next_art - 1
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    next_art += 1;
                    next_art - 1
                }
            };
            t.rows.push(row);
            t.rhs.push(rhs);
            t.basis.push(basic);
        }

        if artificials > 0 {
            let mut cost = vec![Rational::zero(); cols];
            for c in &mut cost[art_start..] {
                *c = -Rational::one();
            }
            let z = t.optimise(&cost, cols)?;
            if z < S::nil() {
                return Err(LpError::Infeasible);
            }
            // Drive zero-level artificials out of the basis; rows where that
            // is impossible are linear combinations of the others.
            let mut r = 0;
            while r < t.rows.len() {
                if t.basis[r] < art_start {
                    r += 1;
                    continue;
                }
                match (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(col) => {
                        let mut dummy = vec![Rational::zero(); cols];
                        let mut dz = S::nil();
                        t.pivot(r, col, &mut dummy, &mut dz);
                        r += 1;
                    }
                    None => {
                        t.rows.remove(r);
                        t.rhs.remove(r);
                        t.basis.remove(r);
                    }
                }
            }
        }

        let mut cost = vec![Rational::zero(); cols];
        for (j, c) in &self.objective {
            cost[*j] += c;
        }
        let value = t.optimise(&cost, art_start)?;
        let mut x = vec![S::nil(); n];
        for (r, &b) in t.basis.iter().enumerate() {
            if b < n {
                x[b] = t.rhs[r].clone();
            }
        }
        Ok(Solution {
            value,
            x,
            pivots: t.pivots,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn q(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6).
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![(0, q(3)), (1, q(5))];
        lp.add(vec![(0, q(1))], Relation::Le, q(4));
        lp.add(vec![(1, q(2))], Relation::Le, q(12));
        lp.add(vec![(0, q(3)), (1, q(2))], Relation::Le, q(18));
        let s = lp.solve().unwrap();
        assert_eq!(s.value, q(36));
        assert_eq!(s.x, vec![q(2), q(6)]);
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x + y, x + y = 3/2, x ≥ 1 → 3/2.
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![(0, q(1)), (1, q(1))];
        lp.add(vec![(0, q(1)), (1, q(1))], Relation::Eq, ratio(3, 2));
        lp.add(vec![(0, q(1))], Relation::Ge, q(1));
        let s = lp.solve().unwrap();
        assert_eq!(s.value, ratio(3, 2));
        assert!(s.x[0] >= q(1));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![(0, q(1))], Relation::Ge, q(2));
        lp.add(vec![(0, q(1))], Relation::Le, q(1));
        assert_eq!(lp.solve().unwrap_err(), LpError::Infeasible);

        let mut lp: LinearProgram<Rational> = LinearProgram::new(2);
        lp.objective = vec![(0, q(1))];
        lp.add(vec![(0, q(1)), (1, q(-1))], Relation::Le, q(1));
        assert_eq!(lp.solve().unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![(0, q(1))];
        lp.add(vec![(0, q(1)), (1, q(1))], Relation::Eq, q(2));
        lp.add(vec![(0, q(2)), (1, q(2))], Relation::Eq, q(4));
        lp.add(vec![(1, q(1))], Relation::Ge, ratio(1, 2));
        assert_eq!(lp.solve().unwrap().value, ratio(3, 2));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example; the textbook largest-coefficient rule cycles here.
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![(0, ratio(3, 4)), (1, q(-150)), (2, ratio(1, 50)), (3, q(-6))];
        lp.add(
            vec![(0, ratio(1, 4)), (1, q(-60)), (2, ratio(-1, 25)), (3, q(9))],
            Relation::Le,
            q(0),
        );
        lp.add(
            vec![(0, ratio(1, 2)), (1, q(-90)), (2, ratio(-1, 50)), (3, q(3))],
            Relation::Le,
            q(0),
        );
        lp.add(vec![(2, q(1))], Relation::Le, q(1));
        assert_eq!(lp.solve().unwrap().value, ratio(1, 20));
    }

    #[test]
    fn perturbed_right_hand_side() {
        // max x, x ≤ 1 + ε, x ≤ 1 + 2ε → 1 + ε.
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![(0, q(1))];
        lp.add(vec![(0, q(1))], Relation::Le, Perturbed::new(q(1), q(2)));
        lp.add(vec![(0, q(1))], Relation::Le, Perturbed::new(q(1), q(1)));
        let s = lp.solve().unwrap();
        assert_eq!(s.value, Perturbed::new(q(1), q(1)));
        assert_eq!(s.value.to_string(), "1 + 1ε");
        assert!(Perturbed::new(q(1), q(-5)) < Perturbed::new(q(1), q(0)));
    }
}
