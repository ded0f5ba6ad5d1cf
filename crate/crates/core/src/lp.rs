//! Exact-rational two-phase simplex with Bland's anti-cycling rule.
//!
//! Problems are in equality standard form: minimize `c·x` subject to
//! `A x = b`, `x >= 0`. An optimal answer carries the primal point and a dual
//! vector `y`; [`LinearProgram::verify`] re-checks both with exact arithmetic
//! (primal feasibility, dual feasibility `Aᵀy <= c`, and `b·y = c·x`).

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint matrix is ragged or does not match rhs/cost lengths")]
    Shape,
    #[error("certificate check failed: {0}")]
    Certificate(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    /// Dual multipliers, one per equality row.
    pub y: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Vec<Rational>) -> Result<Self, LpError> {
        if a.len() != b.len() || a.iter().any(|row| row.len() != c.len()) {
            return Err(LpError::Shape);
        }
        Ok(LinearProgram { a, b, c })
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    pub fn num_cols(&self) -> usize {
        self.c.len()
    }

    pub fn solve(&self) -> LpOutcome {
        let m = self.a.len();
        let n = self.c.len();

        // Flip rows so the right-hand side is nonnegative; remember the sign for the duals.
        let mut sign = vec![false; m];
        let mut t = Tableau {
            rows: Vec::with_capacity(m),
            rhs: Vec::with_capacity(m),
            basis: (n..n + m).collect(),
        };
        for (i, (row, bi)) in self.a.iter().zip(&self.b).enumerate() {
            let neg = bi.is_negative();
            sign[i] = neg;
            let mut r: Vec<Rational> = row.iter().map(|v| if neg { -v } else { v.clone() }).collect();
            r.extend((0..m).map(|k| if k == i { one() } else { Rational::zero() }));
            t.rows.push(r);
            t.rhs.push(if neg { -bi } else { bi.clone() });
        }

        let phase1: Vec<Rational> = (0..n + m)
            .map(|j| if j < n { Rational::zero() } else { one() })
            .collect();
        let ok = t.run(&phase1, n + m);
        debug_assert!(ok, "phase one is bounded below by zero");
        if !t.objective(&phase1).is_zero() {
            return LpOutcome::Infeasible;
        }

        // Pivot zero-level artificials out of the basis where possible; rows
        // where this fails are redundant and keep their artificial at zero.
        for r in 0..m {
            if t.basis[r] >= n {
                if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, j);
                }
            }
        }

        let mut phase2 = self.c.clone();
        phase2.extend((0..m).map(|_| Rational::zero()));
        if !t.run(&phase2, n) {
            return LpOutcome::Unbounded;
        }

        let mut x = vec![Rational::zero(); n];
        for (r, &j) in t.basis.iter().enumerate() {
            if j < n {
                x[j] = t.rhs[r].clone();
            }
        }
        let y = (0..m)
            .map(|i| {
                let yi = t
                    .basis
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (r, &j)| acc + &phase2[j] * &t.rows[r][n + i]);
                if sign[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        let value = t.objective(&phase2);
        LpOutcome::Optimal(Solution { x, y, value })
    }

    /// Exact re-check of an optimal solution and its dual certificate.
    pub fn verify(&self, sol: &Solution) -> Result<(), LpError> {
        if sol.x.len() != self.c.len() || sol.y.len() != self.b.len() {
            return Err(LpError::Shape);
        }
        if sol.x.iter().any(|v| v.is_negative()) {
            return Err(LpError::Certificate("primal point has a negative entry"));
        }
        for (row, bi) in self.a.iter().zip(&self.b) {
            if &dot(row, &sol.x) != bi {
                return Err(LpError::Certificate("primal point violates an equality"));
            }
        }
        for j in 0..self.c.len() {
            let col: Rational = self
                .a
                .iter()
                .zip(&sol.y)
                .fold(Rational::zero(), |acc, (row, yi)| acc + &row[j] * yi);
            if col > self.c[j] {
                return Err(LpError::Certificate("dual vector is infeasible"));
            }
        }
        let primal = dot(&self.c, &sol.x);
        if primal != sol.value || dot(&self.b, &sol.y) != primal {
            return Err(LpError::Certificate("duality gap is not zero"));
        }
        Ok(())
    }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(Rational::zero(), |acc, (&j, v)| acc + &cost[j] * v)
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        self.rhs[r] /= &piv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let factor = self.rows[i][j].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &prhs;
        }
        self.basis[r] = j;
    }

    /// Minimizes `cost` using only columns `< allowed` as entering candidates.
    /// Returns false when the objective is unbounded below.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .basis
                    .iter()
                    .zip(&self.rows)
                    .fold(cost[j].clone(), |acc, (&b, row)| acc - &cost[b] * &row[j]);
                reduced.is_negative()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn small_optimum_with_certificate() {
        // min -x1 - x2  s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
        let lp = LinearProgram::new(
            vec![row(&[1, 2, 1, 0]), row(&[3, 1, 0, 1])],
            row(&[4, 6]),
            row(&[-1, -1, 0, 0]),
        )
        .unwrap();
        let LpOutcome::Optimal(sol) = lp.solve() else { panic!("expected optimum") };
        assert_eq!(sol.value, q(-14, 5));
        assert_eq!(sol.x[0], q(8, 5));
        assert_eq!(sol.x[1], q(6, 5));
        lp.verify(&sol).unwrap();
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        // x1 + x2 = -1 with x >= 0
        let lp = LinearProgram::new(vec![row(&[1, 1])], row(&[-1]), row(&[0, 0])).unwrap();
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        // min -x1  s.t. x1 - x2 = 0
        let lp = LinearProgram::new(vec![row(&[1, -1])], row(&[0]), row(&[-1, 0])).unwrap();
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_and_negated_rows() {
        // Second row duplicates the first; third is the first negated.
        let lp = LinearProgram::new(
            vec![row(&[1, 1, 1]), row(&[1, 1, 1]), row(&[-1, -1, -1])],
            row(&[2, 2, -2]),
            row(&[3, 1, 2]),
        )
        .unwrap();
        let LpOutcome::Optimal(sol) = lp.solve() else { panic!() };
        assert_eq!(sol.value, q(2, 1));
        lp.verify(&sol).unwrap();
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance in equality form.
        let lp = LinearProgram::new(
            vec![
                vec![q(1, 4), q(-8, 1), q(-1, 1), q(9, 1), q(1, 1), q(0, 1), q(0, 1)],
                vec![q(1, 2), q(-12, 1), q(-1, 2), q(3, 1), q(0, 1), q(1, 1), q(0, 1)],
                vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)],
            ],
            vec![q(0, 1), q(0, 1), q(1, 1)],
            vec![q(-3, 4), q(20, 1), q(-1, 2), q(6, 1), q(0, 1), q(0, 1), q(0, 1)],
        )
        .unwrap();
        let LpOutcome::Optimal(sol) = lp.solve() else { panic!() };
        assert_eq!(sol.value, q(-5, 4));
        lp.verify(&sol).unwrap();
    }

    #[test]
    fn verify_rejects_bad_certificates() {
        let lp = LinearProgram::new(vec![row(&[1, 1])], row(&[1]), row(&[1, 2])).unwrap();
        let LpOutcome::Optimal(mut sol) = lp.solve() else { panic!() };
        lp.verify(&sol).unwrap();
        sol.y[0] = q(2, 1);
        assert!(lp.verify(&sol).is_err());
    }
}
