//! Dense exact matrices over the cyclotomic field and over the Laurent ring.
//!
//! Rank and kernels use plain Gaussian elimination with division: the field
//! is exact and every matrix here is tiny, so simplicity beats asymptotics.
//! Characteristic polynomials use the Faddeev-LeVerrier recurrence, whose
//! only divisions are by integers and provably exact; the same recurrence
//! yields the adjugate, which inverts a Laurent matrix whenever its
//! determinant is a unit of the Laurent ring.

use crate::cyclo::CycloNum;
use crate::laurent::LaurentPoly;
use crate::point::ParameterPoint;
use crate::{Error, Result};
use num_bigint::BigInt;

pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Division by a nonzero integer, exact whenever the caller's algebra
    /// guarantees it (Faddeev-LeVerrier does).
    fn div_int(&self, k: &BigInt) -> Self;
}

pub trait FieldElem: Ring {
    fn inv(&self) -> Result<Self>;
}

impl Ring for CycloNum {
    fn zero() -> Self {
        CycloNum::zero()
    }
    fn one() -> Self {
        CycloNum::one()
    }
    fn add(&self, other: &Self) -> Self {
        CycloNum::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CycloNum::sub(self, other)
    }
    fn neg(&self) -> Self {
        CycloNum::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        CycloNum::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn div_int(&self, k: &BigInt) -> Self {
        self.scale(&crate::rational::Rational::new(
            num_bigint::BigInt::from(1),
            k.clone(),
        ))
    }
}

impl FieldElem for CycloNum {
    fn inv(&self) -> Result<Self> {
        CycloNum::inv(self)
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        LaurentPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentPoly::sub(self, other)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentPoly::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn div_int(&self, k: &BigInt) -> Self {
        self.div_exact_int(k)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ExactMatrix = Mat<CycloNum>;
pub type LaurentMatrix = Mat<LaurentPoly>;

impl<T: Ring> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).sub(other.get(i, j))
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let p = self.get(i, k).mul(other.get(k, j));
                acc = acc.add(&p);
            }
            acc
        })
    }

    pub fn hstack(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zero(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zero(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    m.set(off + i, j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        *self.get(i, j) == T::one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Monic characteristic polynomial coefficients, highest degree first:
    /// `[1, c_1, ..., c_n]` with `p(x) = x^n + c_1 x^(n-1) + ... + c_n`.
    /// Faddeev-LeVerrier: division-free apart from exact integer divisions.
    pub fn char_poly(&self) -> Result<Vec<T>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![T::one()];
        let mut m = Self::identity(n);
        let mut c = T::one();
        for k in 1..=n {
            // m <- A * (m + c_{k-1} I) with c_0 = 1 handled by m = I
            let mut shifted = m;
            if k > 1 {
                for i in 0..n {
                    let v = shifted.get(i, i).add(&c);
                    shifted.set(i, i, v);
                }
            }
            m = self.matmul(&shifted);
            c = m.trace().neg().div_int(&BigInt::from(k as i64));
            coeffs.push(c.clone());
        }
        Ok(coeffs)
    }

    /// Determinant via the characteristic polynomial: `(-1)^n c_n`.
    pub fn det(&self) -> Result<T> {
        let cp = self.char_poly()?;
        let c_n = cp.last().unwrap().clone();
        Ok(if self.rows % 2 == 0 { c_n } else { c_n.neg() })
    }

    /// Adjugate from the same recurrence: `adj(A) = (-1)^(n-1) (M_{n-1} + c_{n-1} I)`.
    pub fn adjugate(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zero(0, 0));
        }
        let mut m = Self::identity(n);
        let mut c = T::one();
        for k in 1..n {
            let mut shifted = m;
            if k > 1 {
                for i in 0..n {
                    let v = shifted.get(i, i).add(&c);
                    shifted.set(i, i, v);
                }
            }
            m = self.matmul(&shifted);
            c = m.trace().neg().div_int(&BigInt::from(k as i64));
        }
        // m is M_{n-1} (for n = 1 it is the identity), c is c_{n-1}
        let mut adj = m;
        if n > 1 {
            for i in 0..n {
                let v = adj.get(i, i).add(&c);
                adj.set(i, i, v);
            }
        }
        if n % 2 == 0 {
            adj = Self::from_fn(n, n, |i, j| adj.get(i, j).neg());
        }
        Ok(adj)
    }
}

impl<T: FieldElem> Mat<T> {
    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    for j in col..m.cols {
                        let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel (`m v = 0`); dimension `cols - rank`.
    pub fn right_kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        for &f in &free {
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left kernel (`v m = 0`).
    pub fn left_kernel(&self) -> Vec<Vec<T>> {
        self.transpose().right_kernel()
    }

    /// Right kernel of `self - lambda I`; possibly empty.
    pub fn eigenspace(&self, lambda: &T) -> Result<Vec<Vec<T>>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let shifted = self.sub(&Self::identity(self.rows).scale(lambda));
        Ok(shifted.right_kernel())
    }

    /// Inverse over the field.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let aug = Self::hstack(&[self, &Self::identity(self.rows)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::NotInvertible);
        }
        Ok(Self::from_fn(self.rows, self.rows, |i, j| {
            r.get(i, self.rows + j).clone()
        }))
    }
}

impl LaurentMatrix {
    pub fn eval(&self, pt: &ParameterPoint) -> Result<ExactMatrix> {
        let mut out = ExactMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval(pt)?);
            }
        }
        Ok(out)
    }

    /// Inverse over the Laurent ring via the adjugate; succeeds exactly when
    /// the determinant is a unit times an invertible integer, which holds for
    /// every transport and monodromy matrix (det = +- a monomial in the s's).
    pub fn laurent_inverse(&self) -> Result<Self> {
        let det = self.det()?;
        if det.as_monomial().is_none() {
            return Err(Error::NotInvertible);
        }
        let adj = self.adjugate()?;
        let mut out = Self::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = adj
                    .get(i, j)
                    .exact_div(&det)
                    .ok_or(Error::NotInvertible)?;
                out.set(i, j, q);
            }
        }
        Ok(out)
    }
}

impl ExactMatrix {
    /// Numerical rank of the floating-point image, a cross-check oracle for
    /// the exact rank; `tol` is relative to the largest singular value proxy.
    pub fn float_rank(&self, tol: f64) -> usize {
        // rank via column-pivoted Gaussian elimination on complex floats
        let mut a: Vec<Vec<(f64, f64)>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_complex()).collect())
            .collect();
        let norm = a
            .iter()
            .flatten()
            .map(|(re, im)| (re * re + im * im).sqrt())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let mut rank = 0;
        for col in 0..self.cols {
            let mut best = rank;
            let mut best_abs = 0.0;
            for (i, row) in a.iter().enumerate().skip(rank) {
                let (re, im) = row[col];
                let ab = (re * re + im * im).sqrt();
                if ab > best_abs {
                    best_abs = ab;
                    best = i;
                }
            }
            if best_abs <= tol * norm {
                continue;
            }
            a.swap(rank, best);
            let (pre, pim) = a[rank][col];
            let pn = pre * pre + pim * pim;
            for i in 0..self.rows {
                if i == rank {
                    continue;
                }
                let (re, im) = a[i][col];
                // factor = a[i][col] / pivot
                let fre = (re * pre + im * pim) / pn;
                let fim = (im * pre - re * pim) / pn;
                for j in col..self.cols {
                    let (bre, bim) = a[rank][j];
                    a[i][j].0 -= fre * bre - fim * bim;
                    a[i][j].1 -= fre * bim + fim * bre;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNum;

    fn c(n: i64) -> CycloNum {
        CycloNum::from_int(n)
    }

    #[test]
    fn rank_identity_and_transpose() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        let m = ExactMatrix::from_rows(vec![
            vec![c(1), c(2), c(3)],
            vec![c(2), c(4), c(6)],
        ]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_dimensions() {
        let id = ExactMatrix::identity(4);
        assert!(id.right_kernel().is_empty());
        let z = ExactMatrix::zero(2, 3);
        assert_eq!(z.right_kernel().len(), 3);
    }

    #[test]
    fn char_poly_companion() {
        // companion matrix of x^2 - x - 1
        let m = ExactMatrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(1)]]);
        let cp = m.char_poly().unwrap();
        assert_eq!(cp, vec![c(1), c(-1), c(-1)]);
        // identity 2x2 -> (x-1)^2 = x^2 - 2x + 1
        let cp = ExactMatrix::identity(2).char_poly().unwrap();
        assert_eq!(cp, vec![c(1), c(-2), c(1)]);
    }

    #[test]
    fn eigenspace_identity() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.eigenspace(&c(1)).unwrap().len(), 3);
        assert!(id.eigenspace(&c(2)).unwrap().is_empty());
    }

    #[test]
    fn field_inverse_roundtrip() {
        let m = ExactMatrix::from_rows(vec![vec![c(2), c(1)], vec![c(5), c(3)]]);
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
    }

    #[test]
    fn laurent_inverse_of_monomial_matrix() {
        use crate::laurent::{LaurentPoly, Param};
        let s1 = LaurentPoly::param(Param::S(1));
        let m = LaurentMatrix::from_rows(vec![
            vec![s1.clone(), LaurentPoly::one()],
            vec![LaurentPoly::zero(), s1.neg()],
        ]);
        let inv = m.laurent_inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
        assert!(inv.matmul(&m).is_identity());
    }
}
