//! Exact revised simplex for packing-form LPs:
//!
//! ```text
//! maximize  c·y   subject to  A y <= b,  y >= 0,  with b >= 0
//! ```
//!
//! The all-slack basis is feasible, so no phase one is needed. Pivoting uses
//! Bland's rule, which guarantees termination. Columns are sparse and may be
//! appended between solves (column generation keeps the current basis).

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("right-hand side of row {0} is negative")]
    NegativeRhs(usize),
    #[error("column entry refers to row {row} but the LP has {rows} rows")]
    RowOutOfRange { row: usize, rows: usize },
    #[error("LP is unbounded (entering column {0})")]
    Unbounded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    Column(usize),
    Slack(usize),
}

impl Var {
    // Bland order: structural columns first, then slacks.
    fn key(self) -> (u8, usize) {
        match self {
            Var::Column(j) => (0, j),
            Var::Slack(i) => (1, i),
        }
    }
}

#[derive(Debug, Clone)]
struct Column {
    entries: Vec<(usize, Rational)>,
    cost: Rational,
}

#[derive(Debug, Clone)]
pub struct SimplexLp {
    rows: usize,
    columns: Vec<Column>,
    binv: Vec<Vec<Rational>>,
    basis: Vec<Var>,
    basic_values: Vec<Rational>,
    pivots: usize,
}

impl SimplexLp {
    pub fn new(rhs: Vec<Rational>) -> Result<Self, LpError> {
        if let Some(i) = rhs.iter().position(|b| b.is_negative()) {
            return Err(LpError::NegativeRhs(i));
        }
        let rows = rhs.len();
        let binv = (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(SimplexLp {
            rows,
            columns: Vec::new(),
            binv,
            basis: (0..rows).map(Var::Slack).collect(),
            basic_values: rhs,
            pivots: 0,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Appends a column; returns its index. The current basis stays valid.
    pub fn add_column(
        &mut self,
        entries: Vec<(usize, Rational)>,
        cost: Rational,
    ) -> Result<usize, LpError> {
        if let Some(&(row, _)) = entries.iter().find(|(r, _)| *r >= self.rows) {
            return Err(LpError::RowOutOfRange {
                row,
                rows: self.rows,
            });
        }
        self.columns.push(Column { entries, cost });
        Ok(self.columns.len() - 1)
    }

    fn var_cost(&self, v: Var) -> Rational {
        match v {
            Var::Column(j) => self.columns[j].cost.clone(),
            Var::Slack(_) => Rational::zero(),
        }
    }

    /// Row duals `u = c_B B^{-1}`.
    pub fn duals(&self) -> Vec<Rational> {
        let mut u = vec![Rational::zero(); self.rows];
        for (i, &v) in self.basis.iter().enumerate() {
            let cb = self.var_cost(v);
            if cb.is_zero() {
                continue;
            }
            for (r, slot) in u.iter_mut().enumerate() {
                if !self.binv[i][r].is_zero() {
                    *slot += &cb * &self.binv[i][r];
                }
            }
        }
        u
    }

    fn reduced_cost(&self, v: Var, u: &[Rational]) -> Rational {
        match v {
            Var::Column(j) => {
                let col = &self.columns[j];
                let mut rc = col.cost.clone();
                for (r, a) in &col.entries {
                    rc -= &u[*r] * a;
                }
                rc
            }
            Var::Slack(i) => -u[i].clone(),
        }
    }

    fn transformed(&self, v: Var) -> Vec<Rational> {
        match v {
            Var::Column(j) => {
                let col = &self.columns[j];
                (0..self.rows)
                    .map(|i| {
                        let mut acc = Rational::zero();
                        for (r, a) in &col.entries {
                            if !self.binv[i][*r].is_zero() {
                                acc += &self.binv[i][*r] * a;
                            }
                        }
                        acc
                    })
                    .collect()
            }
            Var::Slack(s) => (0..self.rows).map(|i| self.binv[i][s].clone()).collect(),
        }
    }

    /// Runs Bland-rule pivots until optimal.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&mut self) -> Result<(), LpError> {
        loop {
            let u = self.duals();
            let mut in_basis = vec![false; self.columns.len()];
            let mut slack_in_basis = vec![false; self.rows];
            for &v in &self.basis {
                match v {
                    Var::Column(j) => in_basis[j] = true,
                    Var::Slack(i) => slack_in_basis[i] = true,
                }
            }
            let candidates = (0..self.columns.len())
                .filter(|&j| !in_basis[j])
                .map(Var::Column)
                .chain(
                    (0..self.rows)
                        .filter(|&i| !slack_in_basis[i])
                        .map(Var::Slack),
                );
            let mut entering = None;
            for v in candidates {
                if self.reduced_cost(v, &u).is_positive() {
                    entering = Some(v);
                    break;
                }
            }
            let Some(entering) = entering else {
                return Ok(());
            };
            let d = self.transformed(entering);
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows {
                if !d[i].is_positive() {
                    continue;
                }
                let ratio = &self.basic_values[i] / &d[i];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best
                            || (ratio == *best && self.basis[i].key() < self.basis[*l].key())
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((l, _)) = leave else {
                let idx = match entering {
                    Var::Column(j) => j,
                    Var::Slack(i) => self.columns.len() + i,
                };
                return Err(LpError::Unbounded(idx));
            };
            self.pivot(l, entering, &d);
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn pivot(&mut self, l: usize, entering: Var, d: &[Rational]) {
        let pivot = d[l].clone();
        for x in self.binv[l].iter_mut() {
            *x /= &pivot;
        }
        self.basic_values[l] /= &pivot;
        let pivot_row = self.binv[l].clone();
        let pivot_value = self.basic_values[l].clone();
        for i in 0..self.rows {
            if i == l || d[i].is_zero() {
                continue;
            }
            let factor = &d[i];
            for (x, p) in self.binv[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= factor * p;
                }
            }
            self.basic_values[i] -= factor * &pivot_value;
        }
        self.basis[l] = entering;
        self.pivots += 1;
    }

    pub fn objective(&self) -> Rational {
        self.basis
            .iter()
            .zip(&self.basic_values)
            .map(|(&v, x)| self.var_cost(v) * x)
            .sum()
    }

    /// Values of the structural columns in the current basic solution.
    pub fn column_values(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.columns.len()];
        for (&v, x) in self.basis.iter().zip(&self.basic_values) {
            if let Var::Column(j) = v {
                y[j] = x.clone();
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn small_lp() {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3  -> (3, 1), value 11
        let mut lp = SimplexLp::new(vec![int(4), int(6), int(3)]).unwrap();
        lp.add_column(vec![(0, int(1)), (1, int(1)), (2, int(1))], int(3))
            .unwrap();
        lp.add_column(vec![(0, int(1)), (1, int(3))], int(2))
            .unwrap();
        lp.solve().unwrap();
        assert_eq!(lp.objective(), int(11));
        assert_eq!(lp.column_values(), vec![int(3), int(1)]);
        // duals certify: b·u = objective
        let u = lp.duals();
        let dual_obj: Rational = [int(4), int(6), int(3)]
            .iter()
            .zip(&u)
            .map(|(b, u)| b * u)
            .sum();
        assert_eq!(dual_obj, int(11));
        assert!(u.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn fractional_optimum_and_warm_start() {
        // max x + y s.t. 2x + y <= 1, x + 2y <= 1 -> 2/3
        let mut lp = SimplexLp::new(vec![int(1), int(1)]).unwrap();
        lp.add_column(vec![(0, int(2)), (1, int(1))], int(1))
            .unwrap();
        lp.solve().unwrap();
        assert_eq!(lp.objective(), ratio(1, 2));
        lp.add_column(vec![(0, int(1)), (1, int(2))], int(1))
            .unwrap();
        lp.solve().unwrap();
        assert_eq!(lp.objective(), ratio(2, 3));
    }

    #[test]
    fn unbounded_and_bad_input() {
        let mut lp = SimplexLp::new(vec![int(1)]).unwrap();
        lp.add_column(vec![(0, int(-1))], int(1)).unwrap();
        assert!(matches!(lp.solve(), Err(LpError::Unbounded(0))));
        assert_eq!(
            SimplexLp::new(vec![int(-1)]).unwrap_err(),
            LpError::NegativeRhs(0)
        );
        let mut lp = SimplexLp::new(vec![int(1)]).unwrap();
        assert!(lp.add_column(vec![(3, int(1))], int(1)).is_err());
    }

    #[test]
    fn degenerate_lp_terminates() {
        // Beale's instance, which cycles under the largest-coefficient rule.
        let mut lp = SimplexLp::new(vec![int(0), int(0), int(1)]).unwrap();
        lp.add_column(vec![(0, ratio(1, 4)), (1, ratio(1, 2))], ratio(3, 4))
            .unwrap();
        lp.add_column(vec![(0, int(-60)), (1, int(-90))], int(-150))
            .unwrap();
        lp.add_column(
            vec![(0, ratio(-1, 25)), (1, ratio(-1, 50)), (2, int(1))],
            ratio(1, 50),
        )
        .unwrap();
        lp.add_column(vec![(0, int(9)), (1, int(3))], int(-6))
            .unwrap();
        lp.solve().unwrap();
        assert_eq!(lp.objective(), ratio(1, 20));
    }
}
