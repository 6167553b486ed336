//! Fraction-free elimination over the integers: determinants, ranks and
//! null-space bases. Machine integers are tried first; any overflow restarts
//! the computation with big integers, so results are always exact.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Ring operations that may fail on overflow.
pub trait Checked: Clone + PartialEq {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

impl Checked for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert_eq!(self % o, 0);
        self.checked_div(*o)
    }
}

impl Checked for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % o)));
        Some(self / o)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[&[T]]) -> Self {
        let rows = columns.first().map_or(0, |c| c.len());
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                data.push(c[i].clone());
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

/// Result of fraction-free elimination.
struct Echelon<T> {
    m: Matrix<T>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Bareiss elimination. With `jordan`, rows above each pivot are cleared as
/// well, and every pivot entry ends up equal to the last pivot.
fn bareiss<T: Checked>(mut m: Matrix<T>, jordan: bool) -> Option<Echelon<T>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = T::unit();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.data[i * cols + c].is_nil()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
            swaps += 1;
        }
        let piv = m.data[r * cols + c].clone();
        let first = if jordan { 0 } else { c + 1 };
        for i in 0..rows {
            if i == r || (!jordan && i < r) {
                continue;
            }
            let factor = m.data[i * cols + c].clone();
            for j in first..cols {
                if j == c {
                    continue;
                }
                let a = piv.mul(&m.data[i * cols + j])?;
                let b = factor.mul(&m.data[r * cols + j])?;
                m.data[i * cols + j] = a.sub(&b)?.div_exact(&prev)?;
            }
            m.data[i * cols + c] = T::nil();
        }
        pivots.push(c);
        prev = piv;
        r += 1;
    }
    Some(Echelon { m, pivots, swaps })
}

fn determinant_generic<T: Checked>(m: Matrix<T>) -> Option<T> {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Some(T::unit());
    }
    let e = bareiss(m, false)?;
    if e.pivots.len() < n {
        return Some(T::nil());
    }
    let det = e.m.data[(n - 1) * n + (n - 1)].clone();
    if e.swaps % 2 == 1 {
        det.neg()
    } else {
        Some(det)
    }
}

pub fn determinant(m: &Matrix<BigInt>) -> BigInt {
    if let Some(small) = to_i128(m) {
        if let Some(d) = determinant_generic(small) {
            return BigInt::from(d);
        }
    }
    determinant_generic(m.clone()).expect("big integers do not overflow")
}

/// Determinant of a matrix already in machine integers, falling back on overflow.
pub fn determinant_i128(m: Matrix<i128>) -> BigInt {
    match determinant_generic(m.clone()) {
        Some(d) => BigInt::from(d),
        None => determinant_generic(m.map(|&x| BigInt::from(x))).expect("no overflow"),
    }
}

pub fn rank(m: &Matrix<BigInt>) -> usize {
    if let Some(small) = to_i128(m) {
        if let Some(e) = bareiss(small, false) {
            return e.pivots.len();
        }
    }
    bareiss(m.clone(), false).expect("no overflow").pivots.len()
}

pub fn rank_i128(m: Matrix<i128>) -> usize {
    match bareiss(m.clone(), false) {
        Some(e) => e.pivots.len(),
        None => bareiss(m.map(|&x| BigInt::from(x)), false).expect("no overflow").pivots.len(),
    }
}

fn kernel_generic<T: Checked + Into<BigInt>>(m: Matrix<T>) -> Option<Vec<Vec<BigInt>>> {
    let cols = m.cols;
    let e = bareiss(m, true)?;
    let d: BigInt = match e.pivots.last() {
        Some(&pc) => e.m.data[(e.pivots.len() - 1) * cols + pc].clone().into(),
        None => BigInt::one(),
    };
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !e.pivots.contains(c)) {
        let mut v = vec![BigInt::zero(); cols];
        v[f] = d.clone();
        for (row, &pc) in e.pivots.iter().enumerate() {
            let a: BigInt = e.m.data[row * cols + f].clone().into();
            v[pc] = -a;
        }
        basis.push(primitive(v));
    }
    Some(basis)
}

/// Integer null-space basis of `m`, one primitive vector per free column.
pub fn kernel(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    if let Some(small) = to_i128(m) {
        if let Some(k) = kernel_generic(small) {
            return k;
        }
    }
    kernel_generic(m.clone()).expect("no overflow")
}

/// Kernel of the matrix whose columns are the given rational vectors.
pub fn kernel_of_vectors(vectors: &[Vec<Rational>]) -> Result<Vec<Vec<BigInt>>> {
    let dim = vectors.first().map_or(0, Vec::len);
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
    }
    let cols: Vec<Vec<BigInt>> = vectors.iter().map(|v| integer_multiple(v)).collect();
    let refs: Vec<&[BigInt]> = cols.iter().map(Vec::as_slice).collect();
    let basis = kernel(&Matrix::from_columns(&refs));
    // Undo the positive column scalings so the basis refers to the given vectors.
    let scales: Vec<BigInt> = vectors.iter().map(|v| denominator_lcm(v)).collect();
    Ok(basis.into_iter().map(|k| primitive(k.iter().zip(&scales).map(|(x, s)| x * s).collect())).collect())
}

/// Divides by the gcd of the entries.
pub fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

pub fn denominator_lcm(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// The vector scaled by the lcm of its denominators.
pub fn integer_multiple(v: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
}

pub fn to_i128(m: &Matrix<BigInt>) -> Option<Matrix<i128>> {
    let data = m.data.iter().map(|x| i128::try_from(x).ok()).collect::<Option<Vec<_>>>()?;
    Some(Matrix { rows: m.rows, cols: m.cols, data })
}

/// Reduced row echelon form over the rationals, eliminating columns from the
/// last to the first. Used as an independent check of [`kernel`].
pub fn kernel_rational(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|i| (0..cols).map(|j| m.at(i, j).clone()).collect()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in (0..cols).rev() {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).rev().find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for &(row, pc) in &pivots {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let ra = rank_of_rows(a);
    let rb = rank_of_rows(b);
    if ra != rb {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank_of_rows(&both) == ra
}

fn rank_of_rows(v: &[Vec<BigInt>]) -> usize {
    if v.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(v))
}

/// `sign(det m) · adj(m) = |det m| · m⁻¹`, or `None` for a singular matrix.
pub fn signed_adjugate(m: &Matrix<BigInt>) -> Option<Matrix<BigInt>> {
    assert_eq!(m.rows, m.cols, "adjugate of a non-square matrix");
    let n = m.rows;
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| Rational::from_integer(m.at(i, j).clone())).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
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
                for j in c..2 * n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    let det = Rational::from_integer(determinant(m).abs());
    let data =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (&a[i][n + j] * &det).to_integer()).collect();
    Some(Matrix { rows: n, cols: n, data })
}

pub fn multiply(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
    assert_eq!(a.cols, b.rows, "incompatible matrix product");
    let mut data = vec![BigInt::zero(); a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.at(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                data[i * b.cols + j] += x * b.at(k, j);
            }
        }
    }
    Matrix { rows: a.rows, cols: b.cols, data }
}
