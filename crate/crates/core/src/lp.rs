//! Exact feasibility of `μ ≥ 0, Mμ ≥ 1` by a phase-one simplex over the
//! rationals with Bland's rule.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::Matrix;
use crate::Rational;

/// A point `μ ≥ 0` with `Mμ ≥ 1`, or `None` when no such point exists.
pub fn feasible_point(m: &Matrix<BigInt>) -> Option<Vec<Rational>> {
    let (rows, cols) = (m.rows, m.cols);
    // Quick exits: a row with no positive entry cannot reach 1, and the all-ones
    // vector works (after scaling) when every row sum is positive.
    for i in 0..rows {
        if (0..cols).all(|j| !m.at(i, j).is_positive()) {
            return None;
        }
    }
    let sums: Vec<BigInt> = (0..rows).map(|i| (0..cols).map(|j| m.at(i, j)).sum()).collect();
    if sums.iter().all(|s| s.is_positive()) {
        let min = sums.iter().min().cloned().expect("at least one row");
        let t = Rational::new(BigInt::one(), min);
        return Some(vec![t; cols]);
    }
    Simplex::new(m).solve()
}

pub fn is_feasible(m: &Matrix<BigInt>) -> bool {
    feasible_point(m).is_some()
}

/// Phase-one tableau over variables `μ (cols) | s (rows) | a (rows)`.
struct Simplex {
    rows: usize,
    cols: usize,
    width: usize,
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    obj: Vec<Rational>,
    obj_rhs: Rational,
    basis: Vec<usize>,
}

impl Simplex {
    fn new(m: &Matrix<BigInt>) -> Self {
        let (rows, cols) = (m.rows, m.cols);
        let width = cols + 2 * rows;
        let mut t = vec![vec![Rational::zero(); width]; rows];
        for (i, row) in t.iter_mut().enumerate() {
            for j in 0..cols {
                row[j] = Rational::from_integer(m.at(i, j).clone());
            }
            row[cols + i] = -Rational::one();
            row[cols + rows + i] = Rational::one();
        }
        let rhs = vec![Rational::one(); rows];
        let mut obj = vec![Rational::zero(); width];
        for row in &t {
            for j in 0..cols + rows {
                obj[j] -= &row[j];
            }
        }
        let obj_rhs = -Rational::from_integer(BigInt::from(rows));
        let basis = (0..rows).map(|i| cols + rows + i).collect();
        Simplex { rows, cols, width, t, rhs, obj, obj_rhs, basis }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            *x = &*x * &inv;
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows {
            if i != r && !self.t[i][c].is_zero() {
                let f = self.t[i][c].clone();
                for j in 0..self.width {
                    if !prow[j].is_zero() {
                        let d = &f * &prow[j];
                        self.t[i][j] -= d;
                    }
                }
                let d = &f * &prhs;
                self.rhs[i] -= d;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for j in 0..self.width {
                if !prow[j].is_zero() {
                    let d = &f * &prow[j];
                    self.obj[j] -= d;
                }
            }
            self.obj_rhs -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn solve(mut self) -> Option<Vec<Rational>> {
        while let Some(c) = (0..self.width).find(|&j| self.obj[j].is_negative()) {
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows {
                if self.t[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.t[i][c];
                    let better = match &best {
                        None => true,
                        Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            // Phase one is bounded below by zero, so an entering column always has a leaving row.
            let (r, _) = best.expect("phase-one objective is bounded");
            self.pivot(r, c);
        }
        if !self.obj_rhs.is_zero() {
            return None;
        }
        let mut mu = vec![Rational::zero(); self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.cols {
                mu[b] = self.rhs[i].clone();
            }
        }
        Some(mu)
    }
}

/// Checks a candidate point exactly.
pub fn satisfies(m: &Matrix<BigInt>, mu: &[Rational]) -> bool {
    mu.iter().all(|x| !x.is_negative())
        && (0..m.rows).all(|i| {
            let s: Rational = (0..m.cols).map(|j| Rational::from_integer(m.at(i, j).clone()) * &mu[j]).sum();
            s >= Rational::one()
        })
}

/// Vertex enumeration: tries every choice of `cols` tight constraints. The
/// feasible region contains no line, so it is nonempty iff it has a vertex.
pub fn feasible_by_vertices(m: &Matrix<BigInt>) -> bool {
    let (rows, cols) = (m.rows, m.cols);
    let total = rows + cols;
    assert!(total <= 20, "vertex enumeration is only meant for small systems");
    // Constraint k < rows: row k of M equals 1; k >= rows: μ_{k-rows} = 0.
    for mask in 0u32..1 << total {
        if mask.count_ones() as usize != cols {
            continue;
        }
        let chosen: Vec<usize> = (0..total).filter(|k| mask >> k & 1 == 1).collect();
        let mut a: Vec<Vec<Rational>> = chosen
            .iter()
            .map(|&k| {
                let mut row: Vec<Rational> = if k < rows {
                    (0..cols).map(|j| Rational::from_integer(m.at(k, j).clone())).collect()
                } else {
                    let mut e = vec![Rational::zero(); cols];
                    e[k - rows] = Rational::one();
                    e
                };
                row.push(if k < rows { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        if let Some(x) = solve_square(&mut a, cols) {
            if satisfies(m, &x) {
                return true;
            }
        }
    }
    false
}

fn solve_square(a: &mut [Vec<Rational>], n: usize) -> Option<Vec<Rational>> {
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn orthants() {
        // The negative orthant expressed in the positive orthant basis.
        assert!(!is_feasible(&mat(&[&[-1, 0], &[0, -1]])));
        assert!(is_feasible(&mat(&[&[1, 0], &[0, 1]])));
    }

    #[test]
    fn needs_the_simplex() {
        let m = mat(&[&[2, -1], &[-1, 2]]);
        let mu = feasible_point(&m).unwrap();
        assert!(satisfies(&m, &mu));
        let m = mat(&[&[1, -1], &[-1, 1]]);
        assert!(feasible_point(&m).is_none());
        let m = mat(&[&[3, -2, 0], &[-1, 1, 1], &[0, -1, 2]]);
        let mu = feasible_point(&m).unwrap();
        assert!(satisfies(&m, &mu));
    }

    #[test]
    fn agrees_with_vertex_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
            let m = Matrix { rows, cols, data };
            let simplex = feasible_point(&m);
            if let Some(mu) = &simplex {
                assert!(satisfies(&m, mu));
            }
            assert_eq!(simplex.is_some(), feasible_by_vertices(&m));
        }
    }
}
