//! Exact two-phase simplex over the rationals.
//!
//! Solves `minimize c·x subject to A x = b, x >= 0` on a dense tableau with
//! Bland's rule (lowest-index entering column, lowest-index leaving basic
//! variable on ratio ties), so results are reproducible and cycling cannot
//! occur.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Q {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Q], c: usize) -> Q {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(cost[c].clone(), |acc, (row, &b)| acc - &cost[b] * &row[c])
    }

    /// Runs simplex iterations over columns `0..allowed`; returns false if
    /// the objective is unbounded below.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed)
                .filter(|c| !self.basis.contains(c))
                .find(|&c| self.reduced_cost(cost, c).is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Q)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, lq)) => {
                        ratio < *lq || (ratio == *lq && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let Some((r, _)) = leaving else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn objective(&self, cost: &[Q]) -> Q {
        self.basis
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (r, &b)| acc + &cost[b] * self.rhs(r))
    }

    fn point(&self, n: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(r).clone();
            }
        }
        x
    }
}

/// Minimizes `objective · x` over `{x >= 0 : constraints · x = rhs}`.
///
/// Each entry of `constraints` is one equality row of length
/// `objective.len()`.
pub fn minimize(constraints: &[Vec<Q>], rhs: &[Q], objective: &[Q]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    assert_eq!(rhs.len(), m, "one right-hand side per constraint");
    assert!(
        constraints.iter().all(|r| r.len() == n),
        "constraint width must match objective"
    );

    // Columns: n structural, m artificial, then the right-hand side.
    let width = n + m;
    let rows = constraints
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (row, b))| {
            let flip = b.is_negative();
            let mut t: Vec<Q> = row
                .iter()
                .map(|x| if flip { -x } else { x.clone() })
                .collect();
            t.extend((0..m).map(|k| {
                if k == i {
                    Q::from_integer(1.into())
                } else {
                    Q::zero()
                }
            }));
            t.push(if flip { -b } else { b.clone() });
            t
        })
        .collect();
    let mut tab = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };

    let mut phase_one = vec![Q::zero(); width];
    for c in phase_one.iter_mut().skip(n) {
        *c = Q::from_integer(1.into());
    }
    tab.optimize(&phase_one, width);
    if tab.objective(&phase_one).is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are redundant and dropped.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] < n {
            r += 1;
            continue;
        }
        match (0..n).find(|&c| !tab.rows[r][c].is_zero()) {
            Some(c) => {
                tab.pivot(r, c);
                r += 1;
            }
            None => {
                tab.rows.remove(r);
                tab.basis.remove(r);
            }
        }
    }

    let mut cost = objective.to_vec();
    cost.extend((0..m).map(|_| Q::zero()));
    if !tab.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        point: tab.point(n),
        value: tab.objective(&cost),
    }
}

/// A basic feasible point of `{x >= 0 : constraints · x = rhs}`, if any.
pub fn feasible_point(constraints: &[Vec<Q>], rhs: &[Q], num_vars: usize) -> Option<Vec<Q>> {
    match minimize(constraints, rhs, &vec![Q::zero(); num_vars]) {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rows(data: &[&[i64]]) -> Vec<Vec<Q>> {
        data.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn simple_optimum() {
        // min -x - y, x + y + s = 4, x + 3y + t = 6
        let a = rows(&[&[1, 1, 1, 0], &[1, 3, 0, 1]]);
        let out = minimize(&a, &[int(4), int(6)], &[int(-1), int(-2), int(0), int(0)]);
        let LpOutcome::Optimal { point, value } = out else {
            panic!("{out:?}")
        };
        assert_eq!(value, int(-5));
        assert_eq!(&point[..2], &[int(3), int(1)]);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let a = rows(&[&[1, 1]]);
        assert_eq!(
            minimize(&a, &[int(-1)], &[int(0), int(0)]),
            LpOutcome::Infeasible
        );
        let a = rows(&[&[1, -1]]);
        assert_eq!(
            minimize(&a, &[int(1)], &[int(0), int(-1)]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows() {
        let a = rows(&[&[1, 1], &[2, 2]]);
        let p = feasible_point(&a, &[int(1), int(2)], 2).unwrap();
        assert_eq!(&p[0] + &p[1], int(1));
    }

    #[test]
    fn fractional_solution() {
        let a = rows(&[&[2, 0], &[0, 3]]);
        let p = feasible_point(&a, &[int(1), int(1)], 2).unwrap();
        assert_eq!(p, vec![ratio(1, 2), ratio(1, 3)]);
    }
}
