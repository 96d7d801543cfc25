//! Fraction-free (Bareiss) linear algebra over exact integral domains.
//!
//! Everything here is generic over [`Domain`]: the Laurent ring `Z[v, v^-1]`, the
//! polynomial ring `Z[δ]`, and plain integers all qualify. Ranks, kernels and solves are
//! computed over the fraction field without ever forming fractions; every division performed
//! is exact by Sylvester's identity.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ring::{Coefficient, DeltaPolynomial, LaurentPolynomial};

/// An integral domain with exact division.
pub trait Domain: Clone + PartialEq + Debug + Zero + One + Send + Sync {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `Some(q)` with `q * divisor == self`, or `None` when no such `q` exists in the domain.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
    /// Smaller is a better pivot.
    fn pivot_weight(&self) -> usize;
}

impl<C: Coefficient> Domain for LaurentPolynomial<C> {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        LaurentPolynomial::exact_div(self, divisor)
    }
    fn pivot_weight(&self) -> usize {
        self.weight()
    }
}

impl<C: Coefficient> Domain for DeltaPolynomial<C> {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        DeltaPolynomial::exact_div(self, divisor)
    }
    fn pivot_weight(&self) -> usize {
        self.weight()
    }
}

macro_rules! integer_domain {
    ($($t:ty)*) => ($(
        impl Domain for $t {
            fn add_ref(&self, other: &Self) -> Self { self.clone() + other.clone() }
            fn sub_ref(&self, other: &Self) -> Self { self.clone() - other.clone() }
            fn mul_ref(&self, other: &Self) -> Self { self.clone() * other.clone() }
            fn neg_ref(&self) -> Self { -self.clone() }
            fn exact_div(&self, divisor: &Self) -> Option<Self> {
                if divisor.is_zero() {
                    return None;
                }
                let (q, r) = num_integer::Integer::div_rem(self, divisor);
                r.is_zero().then_some(q)
            }
            fn pivot_weight(&self) -> usize {
                num_traits::ToPrimitive::to_f64(&num_traits::Signed::abs(self))
                    .map_or(usize::MAX, |x| x.log2().max(0.0) as usize)
            }
        }
    )*)
}

integer_domain!(i64 i128 BigInt);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("vectors are linearly dependent (rank {rank} of {count})")]
    Dependent { rank: usize, count: usize },
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("solution coordinate {index} is not integral over the base ring")]
    NotIntegral { index: usize },
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Domain> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(columns: &[Vec<R>], len: usize) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map<S: Domain>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let acc = out.get(i, j).add_ref(&a.mul_ref(b));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(R::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Fraction-free Gauss–Jordan elimination over the first `pivot_cols` columns.
    pub fn gauss_jordan(&self, pivot_cols: usize) -> Echelon<R> {
        assert!(pivot_cols <= self.cols);
        let mut a = self.clone();
        let mut prev = R::one();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut swaps = 0usize;
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == a.rows {
                break;
            }
            let best = (r..a.rows)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by_key(|&i| a.get(i, c).pivot_weight());
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
                swaps += 1;
            }
            let piv = a.get(r, c).clone();
            let pivot_row: Vec<R> = a.row(r).to_vec();
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for (j, pr) in pivot_row.iter().enumerate() {
                    let x = a.get(i, j);
                    let mut num = if x.is_zero() { R::zero() } else { piv.mul_ref(x) };
                    if !factor.is_zero() && !pr.is_zero() {
                        num = num.sub_ref(&factor.mul_ref(pr));
                    }
                    let val = if num.is_zero() {
                        num
                    } else {
                        num.exact_div(&prev)
                            .expect("Bareiss elimination step must divide exactly")
                    };
                    a.set(i, j, val);
                }
            }
            prev = piv;
            pivots.push((r, c));
            r += 1;
        }
        Echelon {
            reduced: a,
            pivots,
            last_pivot: prev,
            negated: swaps % 2 == 1,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows < self.cols {
            self.transpose().gauss_jordan(self.rows).rank()
        } else {
            self.gauss_jordan(self.cols).rank()
        }
    }

    pub fn determinant(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return R::one();
        }
        self.gauss_jordan(self.cols).determinant()
    }

    /// Basis of the right kernel `{x : A x = 0}` over the fraction field, scaled into the domain.
    pub fn nullspace(&self) -> Vec<Vec<R>> {
        self.gauss_jordan(self.cols).nullspace()
    }
}

/// Result of [`Matrix::gauss_jordan`]: every pivot row has the final pivot value on its
/// pivot column and zeros in every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<R> {
    pub reduced: Matrix<R>,
    /// `(row, column)` of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
    pub last_pivot: R,
    negated: bool,
    pivot_cols: usize,
}

impl<R: Domain> Echelon<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(_, c)| c).collect()
    }

    pub fn determinant(&self) -> R {
        if self.pivots.len() < self.pivot_cols || self.reduced.rows != self.pivot_cols {
            return R::zero();
        }
        if self.negated {
            self.last_pivot.neg_ref()
        } else {
            self.last_pivot.clone()
        }
    }

    pub fn nullspace(&self) -> Vec<Vec<R>> {
        let pivot_cols: Vec<usize> = self.pivot_columns();
        let d = if self.pivots.is_empty() {
            R::one()
        } else {
            self.last_pivot.clone()
        };
        (0..self.pivot_cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut x = vec![R::zero(); self.pivot_cols];
                x[free] = d.clone();
                for &(r, c) in &self.pivots {
                    x[c] = self.reduced.get(r, free).neg_ref();
                }
                x
            })
            .collect()
    }
}

/// Expresses vectors in a fixed linearly independent family, exactly.
///
/// A maximal nonsingular square block is located once; solving then costs one
/// matrix-vector product, one exact division per coordinate and a full residual check.
#[derive(Clone, Debug)]
pub struct SpanSolver<R> {
    basis: Vec<Vec<R>>,
    len: usize,
    pivot_rows: Vec<usize>,
    /// `adjugate * block == det * I`.
    adjugate: Matrix<R>,
    det: R,
}

impl<R: Domain> SpanSolver<R> {
    pub fn new(basis: Vec<Vec<R>>, len: usize) -> Result<Self, LinalgError> {
        if let Some(bad) = basis.iter().find(|b| b.len() != len) {
            return Err(LinalgError::Shape {
                expected: len,
                found: bad.len(),
            });
        }
        let count = basis.len();
        if count == 0 {
            return Ok(Self {
                basis,
                len,
                pivot_rows: Vec::new(),
                adjugate: Matrix::zeros(0, 0),
                det: R::one(),
            });
        }
        let rows_of_basis = Matrix::from_rows(basis.clone());
        let ech = rows_of_basis.gauss_jordan(len);
        if ech.rank() < count {
            return Err(LinalgError::Dependent {
                rank: ech.rank(),
                count,
            });
        }
        let mut pivot_rows = ech.pivot_columns();
        pivot_rows.sort_unstable();
        let mut aug = Matrix::zeros(count, 2 * count);
        for (i, &row) in pivot_rows.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                aug.set(i, j, b[row].clone());
            }
            aug.set(i, count + i, R::one());
        }
        let red = aug.gauss_jordan(count);
        debug_assert_eq!(red.rank(), count);
        let mut adjugate = Matrix::zeros(count, count);
        for i in 0..count {
            for j in 0..count {
                adjugate.set(i, j, red.reduced.get(i, count + j).clone());
            }
        }
        Ok(Self {
            basis,
            len,
            pivot_rows,
            adjugate,
            det: red.last_pivot,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<R>] {
        &self.basis
    }

    /// Coordinates `c` with `Σ c_j basis_j == y`, all in the domain.
    pub fn solve(&self, y: &[R]) -> Result<Vec<R>, LinalgError> {
        if y.len() != self.len {
            return Err(LinalgError::Shape {
                expected: self.len,
                found: y.len(),
            });
        }
        let restricted: Vec<R> = self.pivot_rows.iter().map(|&r| y[r].clone()).collect();
        let scaled = self.adjugate.mul_vec(&restricted);
        for (row, yr) in y.iter().enumerate() {
            let mut acc = R::zero();
            for (b, s) in self.basis.iter().zip(&scaled) {
                if !b[row].is_zero() && !s.is_zero() {
                    acc = acc.add_ref(&b[row].mul_ref(s));
                }
            }
            if acc != yr.mul_ref(&self.det) {
                return Err(LinalgError::NotInSpan);
            }
        }
        scaled
            .iter()
            .enumerate()
            .map(|(index, s)| s.exact_div(&self.det).ok_or(LinalgError::NotIntegral { index }))
            .collect()
    }

    pub fn contains(&self, y: &[R]) -> bool {
        !matches!(self.solve(y), Err(LinalgError::NotInSpan))
    }
}

/// Rank of a matrix over `Z/pZ` for a prime `p < 2^32`, entries already reduced.
pub fn rank_mod_prime(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inverse = crate::ring::pow_mod(m[rank][col], p - 2, p);
        let pivot_row: Vec<u64> = m[rank].iter().map(|x| x * inverse % p).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DeltaPoly, LaurentPoly};

    fn int_matrix(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn integer_determinant_and_rank() {
        let m = int_matrix(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        assert_eq!(m.determinant(), 0);
        let singular = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(singular.determinant(), 0);
        assert_eq!(singular.rank(), 2);
        let swap = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant(), -1);
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let m = int_matrix(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 2);
        for x in &ker {
            assert!(m.mul_vec(x).iter().all(|c| *c == 0));
        }
    }

    #[test]
    fn span_solver_integral_and_rejections() {
        let basis = vec![vec![1i64, 1, 0], vec![0, 2, 1]];
        let s = SpanSolver::new(basis, 3).unwrap();
        assert_eq!(s.solve(&[3, 7, 2]).unwrap(), vec![3, 2]);
        assert_eq!(s.solve(&[1, 0, 0]), Err(LinalgError::NotInSpan));
        assert!(matches!(s.solve(&[0, 1, 1]), Err(LinalgError::NotInSpan)));
        let half = SpanSolver::new(vec![vec![2i64, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(half.solve(&[1, 0]), Err(LinalgError::NotIntegral { index: 0 }));
        assert!(matches!(
            SpanSolver::new(vec![vec![1i64, 2], vec![2, 4]], 2),
            Err(LinalgError::Dependent { rank: 1, count: 2 })
        ));
    }

    #[test]
    fn delta_determinant() {
        let d = DeltaPoly::delta();
        let m = Matrix::from_rows(vec![vec![d.clone(), DeltaPoly::one()], vec![DeltaPoly::one(), d]]);
        assert_eq!(m.determinant(), DeltaPoly::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn laurent_rank_over_fraction_field() {
        let v = LaurentPoly::v_pow(1);
        let one = LaurentPoly::one();
        // second row is v times the first: rank 1 over Q(v), though not over Z
        let m = Matrix::from_rows(vec![
            vec![one.clone(), v.clone()],
            vec![v.clone(), &v * &v],
        ]);
        assert_eq!(m.rank(), 1);
        assert!(m.determinant().is_zero());
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }
}
