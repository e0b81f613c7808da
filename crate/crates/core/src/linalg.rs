//! Exact symmetric linear algebra: congruence diagonalization, inertia,
//! weighted rank-one decompositions, image bases, plus the two operations
//! that inherently need the approximate backend (simultaneous diagonalization
//! of a PSD pair and PSD square roots).

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mat::{Mat, SymMatrix};
use crate::scalar::{Rat, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("matrix is not diagonal")]
    NotDiagonal,
}

/// Inertia of a symmetric matrix: counts of positive, negative and zero
/// eigenvalues. Invariant under congruence by Sylvester's law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }
}

/// One term of a weighted rank-one decomposition: sign * weight * v v^T
/// with weight > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Term {
    pub weight: Rat,
    pub sign: i8,
    pub vector: Vec<Rat>,
}

/// A = sum of sign_k * w_k * v_k v_k^T, exactly, with rank(A) terms.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedRank1Decomposition {
    pub dim: usize,
    pub terms: Vec<Rank1Term>,
}

impl WeightedRank1Decomposition {
    /// Reassembles the matrix; used by verification and tests.
    pub fn reassemble(&self) -> SymMatrix<Rat> {
        let mut acc = SymMatrix::zeros(self.dim);
        for t in &self.terms {
            let mut r1 = SymMatrix::rank1(&t.weight, &t.vector);
            if t.sign < 0 {
                r1 = r1.neg();
            }
            acc = acc.add(&r1);
        }
        acc
    }
}

impl SymMatrix<Rat> {
    /// Congruence diagonalization: returns invertible S and diagonal D with
    /// S^T A S == D exactly.
    ///
    /// Pivots on the first nonzero diagonal entry of the trailing block; when
    /// the trailing diagonal is all zero but an off-diagonal entry remains,
    /// adding one row/column into another produces the nonzero pivot 2*a_ij,
    /// so the result is always genuinely diagonal.
    pub fn ldl_congruence(&self) -> (Mat<Rat>, Vec<Rat>) {
        let n = self.dim();
        let mut a = self.mat().clone();
        let mut s = Mat::<Rat>::identity(n);

        // right-multiplies the accumulated S and applies the two-sided
        // congruence to the working matrix
        let apply = |a: &mut Mat<Rat>, s: &mut Mat<Rat>, e: &Mat<Rat>| {
            *a = e.congruence(a);
            *s = s.matmul(e);
        };

        for k in 0..n {
            if a.at(k, k).is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !a.at(i, i).is_zero()) {
                    // symmetric swap of k and i
                    let mut p = Mat::<Rat>::identity(n);
                    p.set(k, k, Rat::zero());
                    p.set(i, i, Rat::zero());
                    p.set(k, i, Rat::one());
                    p.set(i, k, Rat::one());
                    apply(&mut a, &mut s, &p);
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.at(i, j).is_zero())
                {
                    // fold column j into column i, then swap i into place
                    let mut e = Mat::<Rat>::identity(n);
                    e.set(j, i, Rat::one());
                    apply(&mut a, &mut s, &e);
                    if i != k {
                        let mut p = Mat::<Rat>::identity(n);
                        p.set(k, k, Rat::zero());
                        p.set(i, i, Rat::zero());
                        p.set(k, i, Rat::one());
                        p.set(i, k, Rat::one());
                        apply(&mut a, &mut s, &p);
                    }
                } else {
                    break; // trailing block is zero
                }
            }
            let d = a.at(k, k).clone();
            let mut e = Mat::<Rat>::identity(n);
            let mut nontrivial = false;
            for r in k + 1..n {
                if !a.at(k, r).is_zero() {
                    e.set(k, r, -(a.at(k, r).clone() / d.clone()));
                    nontrivial = true;
                }
            }
            if nontrivial {
                apply(&mut a, &mut s, &e);
            }
        }
        let d = (0..n).map(|i| a.at(i, i).clone()).collect();
        (s, d)
    }

    /// Signature (inertia) via congruence diagonalization.
    pub fn signature(&self) -> Signature {
        let (_, d) = self.ldl_congruence();
        let mut sig = Signature { n_plus: 0, n_minus: 0, n_zero: 0 };
        for v in &d {
            if v.is_zero() {
                sig.n_zero += 1;
            } else if v.is_positive() {
                sig.n_plus += 1;
            } else {
                sig.n_minus += 1;
            }
        }
        sig
    }

    /// True iff the matrix is positive semidefinite (no negative inertia).
    pub fn is_psd(&self) -> bool {
        self.signature().n_minus == 0
    }

    /// True iff positive definite.
    pub fn is_pd(&self) -> bool {
        let sig = self.signature();
        sig.n_plus == self.dim()
    }

    /// Exact weighted rank-one decomposition, avoiding square roots:
    /// A == sum sign_k * w_k * v_k v_k^T with rank(A) terms.
    pub fn weighted_rank1(&self) -> WeightedRank1Decomposition {
        let (s, d) = self.ldl_congruence();
        // A = S^{-T} D S^{-1}; the vectors are the rows of S^{-1}
        let sinv = s.inverse().expect("congruence factor is invertible");
        let mut terms = Vec::new();
        for (k, dk) in d.iter().enumerate() {
            if dk.is_zero() {
                continue;
            }
            terms.push(Rank1Term {
                weight: dk.abs(),
                sign: if dk.is_positive() { 1 } else { -1 },
                vector: sinv.row(k).to_vec(),
            });
        }
        WeightedRank1Decomposition { dim: self.dim(), terms }
    }

    /// Basis of the column space; requires PSD input.
    pub fn image_basis(&self) -> Result<Vec<Vec<Rat>>, LinalgError> {
        if !self.is_psd() {
            return Err(LinalgError::NotPsd);
        }
        let mut m = self.mat().clone();
        let pivots = m.rref();
        Ok(pivots.iter().map(|&c| self.mat().col(c)).collect())
    }

    /// Basis of the kernel (no PSD requirement).
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        self.mat().kernel_basis()
    }
}

/// Result of simultaneously diagonalizing a PSD pair by congruence.
#[derive(Debug, Clone)]
pub struct SimDiag {
    /// Invertible congruence: S^T P0 S and S^T P1 S are diagonal up to
    /// `residual`.
    pub s: Mat<f64>,
    /// Largest off-diagonal magnitude over both conjugated matrices.
    pub residual: f64,
    /// 2-norm condition estimate of S.
    pub cond_estimate: f64,
}

/// Simultaneously diagonalizes two exact PSD matrices by an approximate
/// congruence: restrict to the image of P0+P1, normalize the sum there, then
/// orthogonally diagonalize the transformed P1. Exact rational outputs are
/// impossible in general, so the result lives in the approximate backend.
pub fn simultaneous_diag_psd(
    p0: &SymMatrix<Rat>,
    p1: &SymMatrix<Rat>,
    tol: f64,
) -> Result<SimDiag, LinalgError> {
    assert_eq!(p0.dim(), p1.dim(), "dimension mismatch");
    if !p0.is_psd() || !p1.is_psd() {
        return Err(LinalgError::NotPsd);
    }
    let n = p0.dim();
    let sum = p0.add(p1);
    // kernel of the sum is the joint kernel of the pair
    let image = sum.image_basis().expect("sum of PSD is PSD");
    let kernel = sum.kernel_basis();
    let r = image.len();

    let mut s_full = Mat::<f64>::identity(n);
    if r > 0 {
        let u = Mat::from_fn(n, r, |i, j| image[j][i].clone());
        let uf = u.to_f64();
        let t_restr = to_dmatrix(&u.congruence(sum.mat()).to_f64());
        let p1_restr = to_dmatrix(&u.congruence(p1.mat()).to_f64());

        // symmetric inverse square root of the restricted sum
        let eig = nalgebra::SymmetricEigen::new(t_restr);
        let scale = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v));
        let inv_sqrt: DMatrix<f64> = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues.map(|v| {
                if v > scale * 1e-14 {
                    1.0 / v.sqrt()
                } else {
                    0.0
                }
            }))
            * eig.eigenvectors.transpose();

        let m_mid = &inv_sqrt * p1_restr * &inv_sqrt;
        let m_mid = symmetrize_dm(&m_mid);
        let eig2 = nalgebra::SymmetricEigen::new(m_mid);
        let s0 = inv_sqrt * eig2.eigenvectors;

        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
        for j in 0..r {
            let mut col = vec![0.0; n];
            for i in 0..n {
                for k in 0..r {
                    col[i] += uf.at(i, k) * s0[(k, j)];
                }
            }
            cols.push(col);
        }
        for kv in &kernel {
            cols.push(kv.iter().map(|v| v.approx()).collect());
        }
        // column normalization keeps the off-diagonal residual scale-free
        for col in &mut cols {
            let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                col.iter_mut().for_each(|v| *v /= norm);
            }
        }
        s_full = Mat::from_fn(n, n, |i, j| cols[j][i]);
    }

    let residual = [p0, p1]
        .iter()
        .map(|p| off_diagonal_max(&s_full.congruence(&p.mat().to_f64())))
        .fold(0.0f64, f64::max);
    let svd = to_dmatrix(&s_full).svd(false, false);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &v| m.max(v));
    let smin = svd.singular_values.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    let cond_estimate = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let _ = tol;
    Ok(SimDiag { s: s_full, residual, cond_estimate })
}

/// Approximate symmetric PSD square root: B with B^T B == B^2 ~ A.
pub fn approx_psd_sqrt(a: &SymMatrix<Rat>) -> Result<Mat<f64>, LinalgError> {
    if !a.is_psd() {
        return Err(LinalgError::NotPsd);
    }
    Ok(psd_sqrt_f64(&a.mat().to_f64()))
}

/// f64 symmetric square root with negative eigenvalues clamped to zero.
pub fn psd_sqrt_f64(a: &Mat<f64>) -> Mat<f64> {
    let eig = nalgebra::SymmetricEigen::new(to_dmatrix(a));
    let sq = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|v| v.max(0.0).sqrt()))
        * eig.eigenvectors.transpose();
    from_dmatrix(&sq)
}

/// Eigenvalues of a symmetric f64 matrix, ascending. Test oracle and margin
/// checks only; certification paths never trust these.
pub fn sym_eigenvalues(a: &Mat<f64>) -> Vec<f64> {
    let eig = nalgebra::SymmetricEigen::new(symmetrize_dm(&to_dmatrix(a)));
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

pub fn min_eigenvalue(a: &Mat<f64>) -> f64 {
    sym_eigenvalues(a).first().copied().unwrap_or(0.0)
}

pub fn to_dmatrix(a: &Mat<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| *a.at(i, j))
}

pub fn from_dmatrix(a: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn symmetrize_dm(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a + a.transpose()) * 0.5
}

fn off_diagonal_max(a: &Mat<f64>) -> f64 {
    let mut m = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if i != j {
                m = m.max(a.at(i, j).abs());
            }
        }
    }
    m
}

pub fn max_abs_diff(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let mut m = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m = m.max((a.at(i, j) - b.at(i, j)).abs());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::sym_i64;
    use crate::scalar::{rat, ratio};

    fn check_ldl(a: &SymMatrix<Rat>) {
        let (s, d) = a.ldl_congruence();
        let conj = a.conjugate(&s);
        assert!(conj.is_diagonal(), "S^T A S must be diagonal: {conj:?}");
        assert_eq!(conj.diag_entries(), d);
        s.inverse().expect("S invertible");
    }

    #[test]
    fn ldl_already_diagonal() {
        let a = sym_i64(&[&[2, 0], &[0, -3]]);
        let (s, d) = a.ldl_congruence();
        assert_eq!(s, Mat::identity(2));
        assert_eq!(d, vec![rat(2), rat(-3)]);
    }

    #[test]
    fn ldl_zero_diagonal_pivot() {
        let a = sym_i64(&[&[0, 1], &[1, 0]]);
        check_ldl(&a);
        let (_, d) = a.ldl_congruence();
        let pos = d.iter().filter(|v| v.is_positive()).count();
        let neg = d.iter().filter(|v| v.is_negative()).count();
        assert_eq!((pos, neg), (1, 1));
    }

    #[test]
    fn ldl_rank_deficient() {
        let a = sym_i64(&[&[1, 2], &[2, 4]]);
        let (_, d) = a.ldl_congruence();
        assert_eq!(d.iter().filter(|v| !v.is_zero()).count(), 1);
        check_ldl(&a);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            SymMatrix::diag(&[rat(2), rat(-3), rat(0)]).signature(),
            Signature { n_plus: 1, n_minus: 1, n_zero: 1 }
        );
        assert_eq!(
            sym_i64(&[&[0, 1], &[1, 0]]).signature(),
            Signature { n_plus: 1, n_minus: 1, n_zero: 0 }
        );
        assert_eq!(
            SymMatrix::<Rat>::zeros(4).signature(),
            Signature { n_plus: 0, n_minus: 0, n_zero: 4 }
        );
    }

    #[test]
    fn psd_examples() {
        assert!(SymMatrix::diag(&[rat(0), rat(1)]).is_psd());
        assert!(!sym_i64(&[&[1, 2], &[2, 1]]).is_psd());
        assert!(sym_i64(&[&[1, 1], &[1, 1]]).is_psd());
        assert!(!SymMatrix::diag(&[rat(1)]).sub(&SymMatrix::diag(&[rat(2)])).is_psd());
    }

    #[test]
    fn rank1_examples() {
        let d = SymMatrix::diag(&[rat(1), rat(-1)]);
        let dec = d.weighted_rank1();
        assert_eq!(dec.terms.len(), 2);
        assert_eq!(dec.reassemble(), d);

        let a = sym_i64(&[&[2, 2], &[2, 2]]);
        let dec = a.weighted_rank1();
        assert_eq!(dec.terms.len(), 1);
        assert_eq!(dec.terms[0].sign, 1);
        assert_eq!(dec.terms[0].weight, rat(2));
        assert_eq!(dec.reassemble(), a);

        assert!(SymMatrix::<Rat>::zeros(3).weighted_rank1().terms.is_empty());
    }

    #[test]
    fn image_basis_examples() {
        let a = SymMatrix::diag(&[rat(1), rat(0)]);
        assert_eq!(a.image_basis().unwrap(), vec![vec![rat(1), rat(0)]]);

        let b = sym_i64(&[&[1, 1], &[1, 1]]);
        let basis = b.image_basis().unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0][0], basis[0][1]);

        let id = SymMatrix::<Rat>::identity(3);
        assert_eq!(id.image_basis().unwrap().len(), 3);

        assert_eq!(
            SymMatrix::diag(&[rat(-1)]).image_basis(),
            Err(LinalgError::NotPsd)
        );
    }

    #[test]
    fn simdiag_already_diagonal() {
        let p0 = SymMatrix::diag(&[rat(1), rat(2)]);
        let p1 = SymMatrix::diag(&[rat(3), rat(4)]);
        let out = simultaneous_diag_psd(&p0, &p1, 1e-12).unwrap();
        assert!(out.residual <= 1e-12, "residual {}", out.residual);
    }

    #[test]
    fn simdiag_identity_and_rank1() {
        let p0 = SymMatrix::<Rat>::identity(2);
        let p1 = sym_i64(&[&[1, 1], &[1, 1]]);
        let out = simultaneous_diag_psd(&p0, &p1, 1e-12).unwrap();
        assert!(out.residual <= 1e-12, "residual {}", out.residual);
        assert!(out.cond_estimate.is_finite());

        let q0 = sym_i64(&[&[1, 1], &[1, 1]]);
        let q1 = sym_i64(&[&[2, 2], &[2, 2]]);
        let out = simultaneous_diag_psd(&q0, &q1, 1e-12).unwrap();
        assert!(out.residual <= 1e-12, "residual {}", out.residual);
    }

    #[test]
    fn simdiag_rejects_indefinite() {
        let p0 = SymMatrix::diag(&[rat(1), rat(-1)]);
        let p1 = SymMatrix::<Rat>::identity(2);
        assert!(matches!(
            simultaneous_diag_psd(&p0, &p1, 1e-12),
            Err(LinalgError::NotPsd)
        ));
    }

    #[test]
    fn sqrt_examples() {
        let a = SymMatrix::diag(&[rat(4), rat(9)]);
        let b = approx_psd_sqrt(&a).unwrap();
        assert!((b.at(0, 0) - 2.0).abs() < 1e-12);
        assert!((b.at(1, 1) - 3.0).abs() < 1e-12);

        let i3 = SymMatrix::<Rat>::identity(3);
        let b = approx_psd_sqrt(&i3).unwrap();
        assert!(max_abs_diff(&b, &Mat::identity(3)) < 1e-12);

        let c = sym_i64(&[&[2, 1], &[1, 2]]);
        let b = approx_psd_sqrt(&c).unwrap();
        let prod = b.transpose().matmul(&b);
        assert!(max_abs_diff(&prod, &c.mat().to_f64()) <= 1e-12 * (1.0 + 2.0));

        assert!(approx_psd_sqrt(&sym_i64(&[&[1, 2], &[2, 1]])).is_err());
    }

    #[test]
    fn psd_matches_eigen_oracle_on_small_grid() {
        // every 2x2 integer symmetric matrix with entries in -2..=2
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    let m = sym_i64(&[&[a, b], &[b, c]]);
                    let eigs = sym_eigenvalues(&m.mat().to_f64());
                    if eigs[0].abs() < 1e-9 {
                        continue; // near-singular, oracle sign unreliable
                    }
                    assert_eq!(m.is_psd(), eigs[0] > 0.0, "disagree on {m:?}");
                }
            }
        }
    }

    #[test]
    fn ratio_weighted_rank1_mixed_sign() {
        let m = SymMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 3), ratio(-1, 4)],
        ])
        .unwrap();
        let dec = m.weighted_rank1();
        assert_eq!(dec.reassemble(), m);
        assert_eq!(dec.terms.len(), 2);
        assert!(dec.terms.iter().all(|t| t.weight.is_positive()));
    }
}
