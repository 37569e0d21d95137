//! Exact rational feasibility for systems `A x <= b` with free `x`, solved by
//! a two-phase-style simplex that uses Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    cost: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (x, y) in self.cost.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        self.basis[r] = col;
    }

    /// Minimizes the cost row; returns false on an unbounded direction.
    fn run(&mut self) -> bool {
        let ncols = self.cost.len() - 1;
        loop {
            let Some(col) = (0..ncols).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[ncols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((q, _, b)) => ratio < *q || (ratio == *q && self.basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            let Some((_, r, _)) = best else {
                return false;
            };
            self.pivot(r, col);
        }
    }
}

/// A point with `a x <= b` row-wise, or `None` when the system is infeasible.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let ncols = 2 * n + m + negative.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut cost = vec![BigRational::zero(); ncols + 1];
    for i in 0..m {
        let mut row = vec![BigRational::zero(); ncols + 1];
        let flip = b[i].is_negative();
        let sign = if flip { -BigRational::one() } else { BigRational::one() };
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
            row[n + j] = -&row[j];
        }
        row[2 * n + i] = sign.clone();
        row[ncols] = &b[i] * &sign;
        if flip {
            let k = negative.iter().position(|&x| x == i).unwrap();
            row[2 * n + m + k] = BigRational::one();
            basis.push(2 * n + m + k);
            for (c, x) in cost.iter_mut().zip(&row) {
                *c -= x;
            }
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    for k in 0..negative.len() {
        cost[2 * n + m + k] = BigRational::zero();
    }
    let mut t = Tableau { rows, cost, basis };
    if !t.run() || !t.cost[ncols].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &v) in t.basis.iter().enumerate() {
        if v < n {
            x[v] += &t.rows[i][ncols];
        } else if v < 2 * n {
            x[v - n] -= &t.rows[i][ncols];
        }
    }
    let ok = a.iter().zip(b).all(|(row, bi)| {
        let lhs: BigRational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
        lhs <= *bi
    });
    ok.then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn simple_feasible_system() {
        // x - y <= -1, -x <= 0, y <= 3
        let a = vec![vec![q(1), q(-1)], vec![q(-1), q(0)], vec![q(0), q(1)]];
        let b = vec![q(-1), q(0), q(3)];
        let x = feasible_point(&a, &b).unwrap();
        assert!(&x[0] - &x[1] <= q(-1));
        assert!(x[0] >= q(0) && x[1] <= q(3));
    }

    #[test]
    fn infeasible_system() {
        // x <= -1 and -x <= -1
        let a = vec![vec![q(1)], vec![q(-1)]];
        let b = vec![q(-1), q(-1)];
        assert!(feasible_point(&a, &b).is_none());
    }

    #[test]
    fn chain_of_strict_inequalities() {
        // x_i - x_{i+1} <= -1 for a chain of length 6.
        let n = 6;
        let a: Vec<Vec<BigRational>> = (0..n - 1)
            .map(|i| {
                let mut r = vec![q(0); n];
                r[i] = q(1);
                r[i + 1] = q(-1);
                r
            })
            .collect();
        let b = vec![q(-1); n - 1];
        let x = feasible_point(&a, &b).unwrap();
        for i in 0..n - 1 {
            assert!(&x[i] - &x[i + 1] <= q(-1));
        }
    }
}
