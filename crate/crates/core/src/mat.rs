//! Dense matrices over either scalar backend, plus the exact elimination
//! routines (inverse, solve, kernel, rank) used throughout the crate.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{Rat, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
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

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Column vector from a slice.
    pub fn col_vec(v: &[T]) -> Self {
        Mat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() + other.at(i, j).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() - other.at(i, j).clone())
    }

    pub fn neg(&self) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() * s.clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Mat::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).clone() + a.clone() * other.at(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// A^T * B * A.
    pub fn congruence(&self, b: &Self) -> Self {
        self.transpose().matmul(b).matmul(self)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map(|v| v.approx())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let p = self.at(a, b);
                if p.is_zero() {
                    continue;
                }
                for s in 0..other.rows {
                    for t in 0..other.cols {
                        out.set(
                            a * other.rows + s,
                            b * other.cols + t,
                            p.clone() * other.at(s, t).clone(),
                        );
                    }
                }
            }
        }
        out
    }
}

impl Mat<Rat> {
    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).clone().recip();
            for j in c..self.cols {
                let v = self.at(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j).clone() - f.clone() * self.at(r, j).clone();
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (&c, r) in pivots.iter().zip(0..) {
                vec[c] = -m.at(r, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// Exact inverse via Gauss-Jordan.
    pub fn inverse(&self) -> Result<Mat<Rat>, MatError> {
        if self.rows != self.cols {
            return Err(MatError::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(MatError::Singular);
        }
        Ok(Mat::from_fn(n, n, |i, j| aug.at(i, n + j).clone()))
    }

    /// Solves A x = b exactly; None when inconsistent, otherwise one solution.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last().is_some_and(|&c| c == self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            det *= m.at(c, c).clone();
            let inv = m.at(c, c).clone().recip();
            for i in c + 1..n {
                let f = m.at(i, c).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.at(i, j).clone() - f.clone() * m.at(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Symmetric matrix wrapper. The invariant `entries[i][j] == entries[j][i]`
/// holds exactly in the rational backend; approximate constructors symmetrize.
#[derive(Clone, PartialEq)]
pub struct SymMatrix<T: Scalar> {
    mat: Mat<T>,
}

impl<T: Scalar> fmt::Debug for SymMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym{:?}", self.mat)
    }
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { mat: Mat::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        SymMatrix { mat: Mat::identity(dim) }
    }

    pub fn diag(entries: &[T]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        SymMatrix { mat: m }
    }

    pub fn from_mat(mat: Mat<T>) -> Result<Self, MatError> {
        if !mat.is_symmetric() {
            return Err(MatError::NotSymmetric);
        }
        Ok(SymMatrix { mat })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatError> {
        Self::from_mat(Mat::from_rows(rows)?)
    }

    /// Builds (M + M^T)/2 divided... for the exact backend the caller should
    /// use `from_mat`; this constructor is for numerically symmetric data.
    pub fn symmetrize(mat: &Mat<T>) -> Self {
        assert_eq!(mat.rows(), mat.cols());
        let half = T::one() / (T::one() + T::one());
        SymMatrix {
            mat: Mat::from_fn(mat.rows(), mat.cols(), |i, j| {
                (mat.at(i, j).clone() + mat.at(j, i).clone()) * half.clone()
            }),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        self.mat.at(i, j)
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: T) {
        self.mat.set(i, j, v.clone());
        self.mat.set(j, i, v);
    }

    pub fn mat(&self) -> &Mat<T> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<T> {
        self.mat
    }

    pub fn add(&self, other: &Self) -> Self {
        SymMatrix { mat: self.mat.add(&other.mat) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SymMatrix { mat: self.mat.sub(&other.mat) }
    }

    pub fn scale(&self, s: &T) -> Self {
        SymMatrix { mat: self.mat.scale(s) }
    }

    pub fn neg(&self) -> Self {
        SymMatrix { mat: self.mat.neg() }
    }

    /// S^T A S for any rectangular S with matching row count.
    pub fn conjugate(&self, s: &Mat<T>) -> Self {
        assert_eq!(s.rows(), self.dim());
        SymMatrix { mat: s.congruence(&self.mat) }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        SymMatrix { mat: self.mat.direct_sum(&other.mat) }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.at(i, j).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn diag_entries(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.at(i, i).clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix { mat: self.mat.map(f) }
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(|v| v.approx())
    }
}

impl SymMatrix<Rat> {
    /// Rank-one matrix w * v v^T.
    pub fn rank1(weight: &Rat, v: &[Rat]) -> Self {
        let n = v.len();
        SymMatrix {
            mat: Mat::from_fn(n, n, |i, j| weight.clone() * v[i].clone() * v[j].clone()),
        }
    }
}

/// Convenience for building exact matrices from integer literals in tests.
pub fn mat_i64(rows: &[&[i64]]) -> Mat<Rat> {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| crate::scalar::rat(v)).collect())
            .collect(),
    )
    .expect("rectangular")
}

/// Symmetric variant of `mat_i64`; panics if not symmetric.
pub fn sym_i64(rows: &[&[i64]]) -> SymMatrix<Rat> {
    SymMatrix::from_mat(mat_i64(rows)).expect("symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn matmul_and_congruence() {
        let a = mat_i64(&[&[1, 2], &[3, 4]]);
        let b = mat_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.matmul(&b), mat_i64(&[&[2, 1], &[4, 3]]));
        let s = mat_i64(&[&[1, 1], &[1, -1]]);
        let sym = sym_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(sym.conjugate(&s).mat(), &mat_i64(&[&[2, 0], &[0, -2]]));
    }

    #[test]
    fn inverse_and_solve() {
        let a = mat_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(2));
        let x = a.solve(&[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        assert_eq!(mat_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(MatError::Singular));
    }

    #[test]
    fn kernel_and_rank() {
        let a = mat_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let a = mat_i64(&[&[1, 2, 0], &[2, -1, 3], &[0, 3, 1]]);
        // 1*(-1-9) - 2*(2-0) + 0 = -14
        assert_eq!(a.det(), rat(-14));
        assert_eq!(mat_i64(&[&[1, 2], &[2, 4]]).det(), rat(0));
    }

    #[test]
    fn kron_shapes_and_values() {
        let p = mat_i64(&[&[0, 1], &[1, 0]]);
        let x = mat_i64(&[&[1, 0], &[0, 2]]);
        let k = p.kron(&x);
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.at(0, 2), rat(1));
        assert_eq!(*k.at(1, 3), rat(2));
        assert_eq!(*k.at(0, 0), rat(0));
    }

    #[test]
    fn symmetric_rejects_asymmetry() {
        assert!(SymMatrix::from_mat(mat_i64(&[&[1, 2], &[3, 4]])).is_err());
        let d = SymMatrix::diag(&[rat(1), ratio(-1, 2)]);
        assert!(d.is_diagonal());
        assert_eq!(d.diag_entries(), vec![rat(1), ratio(-1, 2)]);
    }
}
