//! Exact integer lattice arithmetic.
//!
//! Everything here works over arbitrary-precision integers and rationals:
//! lattice vectors, integer matrices, a deterministic Smith normal form and
//! the lattice-membership query that drives index computations. A small
//! rational row-reduction toolkit ([`rref`], [`solve_in_span`],
//! [`nullspace`]) backs cone coordinates and linear relations.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default search bound for [`lattice_membership`].
pub const DEFAULT_MEMBERSHIP_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("a lattice vector needs at least one coordinate")]
    EmptyVector,
    #[error("the zero vector has no primitive generator")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix rows have inconsistent lengths")]
    RaggedRows,
    #[error("minimal multiplier {minimal} exceeds the bound {bound}")]
    BoundExceeded { minimal: BigInt, bound: BigInt },
}

impl LatticeError {
    /// Stable machine-readable name of the variant; wrapped errors report
    /// the code of the underlying error.
    pub fn code(&self) -> &'static str {
        match self {
            LatticeError::EmptyVector => "EmptyVector",
            LatticeError::ZeroVector => "ZeroVector",
            LatticeError::DimensionMismatch { .. } => "DimensionMismatch",
            LatticeError::RaggedRows => "RaggedRows",
            LatticeError::BoundExceeded { .. } => "BoundExceeded",
        }
    }
}

/// An element of a lattice `Z^n`, `n >= 1`.
///
/// Ordering is lexicographic on coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self, LatticeError> {
        if coords.is_empty() {
            return Err(LatticeError::EmptyVector);
        }
        Ok(IntVector(coords))
    }

    /// Convenience constructor from machine integers.
    ///
    /// Panics on an empty slice.
    pub fn from_i64s(coords: &[i64]) -> Self {
        assert!(!coords.is_empty(), "lattice vectors have rank >= 1");
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank > 0, "lattice vectors have rank >= 1");
        IntVector(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Greatest common divisor of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn dot(&self, other: &[BigInt]) -> BigInt {
        debug_assert_eq!(self.0.len(), other.len());
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// `(self, other)` as a vector of rank `self.rank() + other.rank()`.
    pub fn concat(&self, other: &IntVector) -> IntVector {
        let mut coords = self.0.clone();
        coords.extend(other.0.iter().cloned());
        IntVector(coords)
    }

    /// If `self` is a positive integer multiple `k * target`, returns `k`.
    pub fn positive_multiple_of(&self, target: &IntVector) -> Option<BigInt> {
        if self.rank() != target.rank() || target.is_zero() {
            return None;
        }
        let pivot = target.0.iter().position(|c| !c.is_zero())?;
        let (k, rem) = self.0[pivot].div_rem(&target.0[pivot]);
        if !rem.is_zero() || !k.is_positive() {
            return None;
        }
        (target.scale(&k) == *self).then_some(k)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.rank(), rhs.rank());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.rank(), rhs.rank());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|c| -c).collect())
    }
}

/// `v / gcd(v)`; the sign of every coordinate is preserved.
pub fn primitive_vector(v: &IntVector) -> Result<IntVector, LatticeError> {
    let g = v.content();
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(IntVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LatticeError::RaggedRows);
        }
        let n = rows.len();
        Ok(IntMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors, all of rank `rank`.
    pub fn from_columns(rank: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(rank, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.rank(), rank);
            for i in 0..rank {
                m.data[i * m.cols + j] = c.0[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply(&self, v: &IntVector) -> Result<IntVector, LatticeError> {
        if v.rank() != self.cols {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                found: v.rank(),
            });
        }
        IntVector::new(self.mul_vec(v.coords()))
    }

    pub fn mul_rational_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    /// Fraction-free (Bareiss) determinant; `None` for non-square matrices.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Some(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += k * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = k * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += k * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = k * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_i | d_{i+1}`, nonzero entries positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Position of the smallest-magnitude nonzero entry in the lower-right
/// submatrix starting at `(t, t)`; ties go to the lowest row, then column.
fn smallest_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let a = d.get(i, j);
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if best.as_ref().is_none_or(|(_, _, m)| mag < *m) {
                best = Some((i, j, mag));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with a fixed pivoting rule, so the transforms are
/// reproducible: the pivot is always the smallest-magnitude nonzero entry of
/// the remaining submatrix (lowest row, then lowest column, on ties).
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d.get(t, j).is_zero();
            }
            if !dirty {
                // Enforce d_t | remaining entries by folding an offending row
                // into the pivot row.
                let pivot = d.get(t, t).clone();
                let offending =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
                match offending {
                    Some(i) => {
                        d.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            let (pi, pj) = smallest_pivot(&d, t).expect("pivot row is nonzero");
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Smallest positive integer `m` such that `m * b` is an integer vector in
/// the integer column span of `a`.
///
/// Returns `Ok(None)` when `b` is not even in the rational span, and
/// [`LatticeError::BoundExceeded`] when the minimal multiplier is larger than
/// `bound`. Computed in closed form from the Smith form, not by search.
pub fn lattice_membership(
    a: &IntMatrix,
    b: &[BigRational],
    bound: &BigInt,
) -> Result<Option<BigInt>, LatticeError> {
    if b.len() != a.rows() {
        return Err(LatticeError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    let factors = snf.invariant_factors();
    let transformed = snf.u.mul_rational_vec(b);
    if transformed[factors.len()..].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let minimal = factors
        .iter()
        .zip(&transformed)
        .map(|(d, c)| (c / BigRational::from_integer(d.clone())).denom().clone())
        .fold(BigInt::one(), |acc, q| acc.lcm(&q));
    if &minimal > bound {
        return Err(LatticeError::BoundExceeded {
            minimal,
            bound: bound.clone(),
        });
    }
    Ok(Some(minimal))
}

/// Convenience wrapper using [`DEFAULT_MEMBERSHIP_BOUND`].
pub fn lattice_membership_default(
    a: &IntMatrix,
    b: &[BigRational],
) -> Result<Option<BigInt>, LatticeError> {
    lattice_membership(a, b, &BigInt::from(DEFAULT_MEMBERSHIP_BOUND))
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let pivot = rows[r].clone();
            for (x, p) in rows[i][c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                *x -= &factor * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a family of integer vectors.
pub fn rank_of(vectors: &[IntVector]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(IntVector::to_rational).collect();
    rref(&mut rows).len()
}

/// Solves `sum_j x_j columns[j] = target` over the rationals. Returns the
/// solution with all free variables set to zero, or `None` if inconsistent.
pub fn solve_in_span(
    columns: &[Vec<BigRational>],
    target: &[BigRational],
) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let mut rows: Vec<Vec<BigRational>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Some(x)
}

/// Rational basis of `{x : sum_j x_j columns[j] = 0}`.
pub fn nullspace(columns: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = columns.len();
    let dim = columns.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let pivots = rref(&mut rows);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![BigRational::zero(); n];
            x[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -rows[r][free].clone();
            }
            x
        })
        .collect()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Clears denominators of a rational vector and divides out the content,
/// giving the primitive integer vector on the same ray.
pub fn primitive_from_rational(x: &[BigRational]) -> Option<IntVector> {
    let l = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x
        .iter()
        .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    primitive_vector(&IntVector::new(ints).ok()?).ok()
}
