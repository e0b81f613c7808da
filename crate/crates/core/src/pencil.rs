//! Linear matrix pencils P0 + sum P_i x_i with symmetric coefficients:
//! evaluation at scalar points and matrix tuples, direct sums, translations,
//! linear changes of variables, and the shared JSON format.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffineFunctional, Polyhedron};
use crate::mat::{Mat, SymMatrix};
use crate::scalar::{fmt_rat, parse_rat, Rat, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PencilError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("change of variables matrix is singular")]
    Singular,
    #[error("pencil is not diagonal")]
    NotDiagonal,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Affine matrix polynomial with symmetric coefficient matrices.
/// Immutable; transforms return new values.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil<T: Scalar> {
    coeffs: Vec<SymMatrix<T>>,
}

pub type LinearPencil = Pencil<Rat>;

impl<T: Scalar> Pencil<T> {
    /// coeffs = [P0, P1, ..., Pn]; requires n >= 1 and equal sizes.
    pub fn new(coeffs: Vec<SymMatrix<T>>) -> Result<Self, PencilError> {
        if coeffs.len() < 2 {
            return Err(PencilError::DimensionMismatch(
                "a pencil needs a constant term and at least one variable".into(),
            ));
        }
        let d = coeffs[0].dim();
        if coeffs.iter().any(|c| c.dim() != d) {
            return Err(PencilError::DimensionMismatch(
                "coefficient matrices must share one size".into(),
            ));
        }
        Ok(Pencil { coeffs })
    }

    pub fn d(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &SymMatrix<T> {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[SymMatrix<T>] {
        &self.coeffs
    }

    pub fn constant(&self) -> &SymMatrix<T> {
        &self.coeffs[0]
    }

    pub fn linear_coeffs(&self) -> &[SymMatrix<T>] {
        &self.coeffs[1..]
    }

    pub fn eval_point(&self, x: &[T]) -> Result<SymMatrix<T>, PencilError> {
        if x.len() != self.n() {
            return Err(PencilError::DimensionMismatch(format!(
                "point has {} coordinates, pencil has {} variables",
                x.len(),
                self.n()
            )));
        }
        let mut acc = self.coeffs[0].clone();
        for (p, xi) in self.coeffs[1..].iter().zip(x) {
            acc = acc.add(&p.scale(xi));
        }
        Ok(acc)
    }

    /// P0 (x) I_m + sum P_i (x) X_i, a (d*m)-square symmetric matrix.
    pub fn eval_tuple(&self, x: &MatrixTuple<T>) -> Result<SymMatrix<T>, PencilError> {
        if x.n() != self.n() {
            return Err(PencilError::DimensionMismatch(format!(
                "tuple has {} entries, pencil has {} variables",
                x.n(),
                self.n()
            )));
        }
        let m = x.m();
        let eye = Mat::<T>::identity(m);
        let mut acc = self.coeffs[0].mat().kron(&eye);
        for (p, xi) in self.coeffs[1..].iter().zip(&x.entries) {
            acc = acc.add(&p.mat().kron(xi.mat()));
        }
        Ok(SymMatrix::from_mat(acc).expect("tensor evaluation of a pencil is symmetric"))
    }

    /// Block-diagonal direct sum; membership is the conjunction.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, PencilError> {
        if self.n() != other.n() {
            return Err(PencilError::DimensionMismatch(
                "direct sum needs equal variable counts".into(),
            ));
        }
        Ok(Pencil {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        })
    }

    /// L'(x) = L(x + v): the constant term moves to L(v).
    pub fn translate(&self, v: &[T]) -> Result<Self, PencilError> {
        let p0 = self.eval_point(v)?;
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = p0;
        Ok(Pencil { coeffs })
    }

    pub fn is_diagonal(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_diagonal())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0] == SymMatrix::identity(self.d())
    }

    /// S^T L S applied coefficient-wise, for rectangular S as well.
    pub fn conjugate(&self, s: &Mat<T>) -> Self {
        Pencil { coeffs: self.coeffs.iter().map(|c| c.conjugate(s)).collect() }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> Pencil<U> {
        Pencil { coeffs: self.coeffs.iter().map(|c| c.map(f)).collect() }
    }

    pub fn to_f64(&self) -> Pencil<f64> {
        self.map(|v| v.approx())
    }
}

impl Pencil<Rat> {
    /// True iff L(x) is positive semidefinite, exactly.
    pub fn membership(&self, x: &[Rat]) -> Result<bool, PencilError> {
        Ok(self.eval_point(x)?.is_psd())
    }

    pub fn membership_tuple(&self, x: &MatrixTuple<Rat>) -> Result<bool, PencilError> {
        Ok(self.eval_tuple(x)?.is_psd())
    }

    /// Substitutes x = M x' for invertible M; returns the pencil in x'.
    pub fn change_variables(&self, m: &Mat<Rat>) -> Result<Self, PencilError> {
        let n = self.n();
        if m.rows() != n || m.cols() != n {
            return Err(PencilError::DimensionMismatch("square n-by-n matrix required".into()));
        }
        if m.inverse().is_err() {
            return Err(PencilError::Singular);
        }
        let mut coeffs = vec![self.coeffs[0].clone()];
        for i in 0..n {
            let mut acc = SymMatrix::zeros(self.d());
            for j in 0..n {
                acc = acc.add(&self.coeffs[1 + j].scale(m.at(j, i)));
            }
            coeffs.push(acc);
        }
        Ok(Pencil { coeffs })
    }

    /// The d scalar affine functionals on the diagonal of a diagonal pencil.
    pub fn diag_entries(&self) -> Result<Vec<AffineFunctional>, PencilError> {
        if !self.is_diagonal() {
            return Err(PencilError::NotDiagonal);
        }
        Ok((0..self.d())
            .map(|t| {
                AffineFunctional::new(
                    self.coeffs[0].at(t, t).clone(),
                    self.coeffs[1..].iter().map(|p| p.at(t, t).clone()).collect(),
                )
            })
            .collect())
    }

    /// The polyhedron cut out by the diagonal entries.
    pub fn region(&self) -> Result<Polyhedron, PencilError> {
        Ok(Polyhedron::new(self.n(), self.diag_entries()?))
    }

    /// Diagonal pencil from scalar constraints f_i(x) >= 0.
    pub fn from_constraints(n: usize, fs: &[AffineFunctional]) -> Self {
        assert!(!fs.is_empty());
        assert!(fs.iter().all(|f| f.n() == n));
        let d = fs.len();
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(SymMatrix::diag(
            &fs.iter().map(|f| f.a0.clone()).collect::<Vec<_>>(),
        ));
        for i in 0..n {
            coeffs.push(SymMatrix::diag(
                &fs.iter().map(|f| f.linear[i].clone()).collect::<Vec<_>>(),
            ));
        }
        Pencil { coeffs }
        .tap_assert(d)
    }

    fn tap_assert(self, d: usize) -> Self {
        debug_assert_eq!(self.d(), d);
        self
    }

    /// Scalar pencil (d = 1) from an affine functional.
    pub fn scalar(f: &AffineFunctional) -> Self {
        Pencil::from_constraints(f.n(), std::slice::from_ref(f))
    }
}

/// Tuple of symmetric m-by-m matrices, the argument of a tensor evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple<T: Scalar> {
    entries: Vec<SymMatrix<T>>,
}

impl<T: Scalar> MatrixTuple<T> {
    pub fn new(entries: Vec<SymMatrix<T>>) -> Result<Self, PencilError> {
        if entries.is_empty() {
            return Err(PencilError::DimensionMismatch("empty tuple".into()));
        }
        let m = entries[0].dim();
        if entries.iter().any(|e| e.dim() != m) {
            return Err(PencilError::DimensionMismatch("tuple sizes differ".into()));
        }
        Ok(MatrixTuple { entries })
    }

    /// Scalars as a 1x1 tuple.
    pub fn from_point(x: &[T]) -> Self {
        MatrixTuple {
            entries: x.iter().map(|v| SymMatrix::diag(std::slice::from_ref(v))).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.entries[0].dim()
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[SymMatrix<T>] {
        &self.entries
    }
}

// ---------------------------------------------------------------------------
// JSON formats

#[derive(Serialize, Deserialize)]
struct PencilJson {
    d: usize,
    n: usize,
    coeffs: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct TupleJson {
    m: usize,
    entries: Vec<Vec<Vec<String>>>,
}

fn matrix_to_strings(m: &SymMatrix<Rat>) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| fmt_rat(m.at(i, j))).collect())
        .collect()
}

fn matrix_from_strings(rows: &[Vec<String>], dim: usize) -> Result<SymMatrix<Rat>, PencilError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(PencilError::Parse(format!("matrix is not {dim}x{dim}")));
    }
    let mut parsed = Vec::with_capacity(dim);
    for r in rows {
        let mut row = Vec::with_capacity(dim);
        for s in r {
            row.push(parse_rat(s).map_err(PencilError::Parse)?);
        }
        parsed.push(row);
    }
    let m = Mat::from_rows(parsed).map_err(|e| PencilError::Parse(e.to_string()))?;
    SymMatrix::from_mat(m).map_err(|_| PencilError::Parse("coefficient matrix is not symmetric".into()))
}

impl Pencil<Rat> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PencilJson {
            d: self.d(),
            n: self.n(),
            coeffs: self.coeffs.iter().map(matrix_to_strings).collect(),
        })
        .expect("pencil serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PencilError> {
        let raw: PencilJson =
            serde_json::from_value(v.clone()).map_err(|e| PencilError::Parse(e.to_string()))?;
        if raw.coeffs.len() != raw.n + 1 {
            return Err(PencilError::Parse(format!(
                "expected {} coefficient matrices, found {}",
                raw.n + 1,
                raw.coeffs.len()
            )));
        }
        if raw.n == 0 {
            return Err(PencilError::Parse("pencil needs n >= 1".into()));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|m| matrix_from_strings(m, raw.d))
            .collect::<Result<Vec<_>, _>>()?;
        Pencil::new(coeffs)
    }

    pub fn from_json_str(s: &str) -> Result<Self, PencilError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| PencilError::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

impl MatrixTuple<Rat> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TupleJson {
            m: self.m(),
            entries: self.entries.iter().map(matrix_to_strings).collect(),
        })
        .expect("tuple serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PencilError> {
        let raw: TupleJson =
            serde_json::from_value(v.clone()).map_err(|e| PencilError::Parse(e.to_string()))?;
        let entries = raw
            .entries
            .iter()
            .map(|m| matrix_from_strings(m, raw.m))
            .collect::<Result<Vec<_>, _>>()?;
        MatrixTuple::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::mat::sym_i64;
    use crate::scalar::{rat, ratio};

    #[test]
    fn eval_point_examples() {
        let l1 = instances::boundedness_l1();
        let m = l1.eval_point(&[rat(-1), rat(-1)]).unwrap();
        assert_eq!(m, SymMatrix::diag(&[rat(0), rat(-1), rat(0)]));
        assert_eq!(l1.eval_point(&[rat(0), rat(0)]).unwrap(), *l1.constant());

        let l2 = instances::interior_l1();
        let m = l2.eval_point(&[rat(2)]).unwrap();
        assert_eq!(m, sym_i64(&[&[1, 2], &[2, 0]]));

        assert!(l1.eval_point(&[rat(0)]).is_err());
    }

    #[test]
    fn eval_tuple_examples() {
        // m = 1 tuples agree with point evaluation
        let l1 = instances::boundedness_l1();
        let pt = [rat(2), ratio(-1, 3)];
        let tup = MatrixTuple::from_point(&pt);
        assert_eq!(
            l1.eval_tuple(&tup).unwrap(),
            l1.eval_point(&pt).unwrap()
        );

        // L = x with X1 = diag(1, 2)
        let l = Pencil::new(vec![SymMatrix::zeros(1), SymMatrix::identity(1)]).unwrap();
        let x = MatrixTuple::new(vec![SymMatrix::diag(&[rat(1), rat(2)])]).unwrap();
        assert_eq!(l.eval_tuple(&x).unwrap(), SymMatrix::diag(&[rat(1), rat(2)]));

        // interior-point counterexample at X = diag(0, 1) is not PSD
        let l1 = instances::interior_l1();
        let x = MatrixTuple::new(vec![SymMatrix::diag(&[rat(0), rat(1)])]).unwrap();
        assert!(!l1.membership_tuple(&x).unwrap());
    }

    #[test]
    fn membership_examples() {
        let l1 = instances::boundedness_l1();
        assert!(l1.membership(&[rat(0), rat(0)]).unwrap());
        let e2 = instances::interior_l1();
        assert!(!e2.membership(&[rat(1)]).unwrap());
        assert!(e2.membership(&[rat(0)]).unwrap());
    }

    #[test]
    fn direct_sum_examples() {
        // diag(x) (+) diag(-x) gives the plus-minus pencil
        let x = Pencil::new(vec![SymMatrix::zeros(1), SymMatrix::identity(1)]).unwrap();
        let neg = Pencil::new(vec![SymMatrix::zeros(1), SymMatrix::diag(&[rat(-1)])]).unwrap();
        let pm = x.direct_sum(&neg).unwrap();
        assert_eq!(pm.coeff(1), &SymMatrix::diag(&[rat(1), rat(-1)]));

        // membership is the conjunction
        for v in [-1i64, 0, 2] {
            let both = pm.membership(&[rat(v)]).unwrap();
            assert_eq!(
                both,
                x.membership(&[rat(v)]).unwrap() && neg.membership(&[rat(v)]).unwrap()
            );
        }

        // the unbounded-region instance is the direct sum of its three entries
        let l1 = instances::boundedness_l1();
        let parts: Vec<Pencil<Rat>> = l1
            .diag_entries()
            .unwrap()
            .iter()
            .map(Pencil::scalar)
            .collect();
        let rebuilt = parts[0].direct_sum(&parts[1]).unwrap().direct_sum(&parts[2]).unwrap();
        assert_eq!(rebuilt, l1);
    }

    #[test]
    fn translate_examples() {
        let l1 = instances::boundedness_l1();
        assert_eq!(l1.translate(&[rat(0), rat(0)]).unwrap(), l1);

        let one_plus_x = Pencil::new(vec![SymMatrix::identity(1), SymMatrix::identity(1)]).unwrap();
        let shifted = one_plus_x.translate(&[rat(-1)]).unwrap();
        assert!(shifted.constant().is_zero());

        let t = l1.translate(&[rat(1), rat(1)]).unwrap();
        assert_eq!(t.constant(), &SymMatrix::diag(&[rat(2), rat(3), rat(2)]));
        assert_eq!(t.linear_coeffs(), l1.linear_coeffs());

        // round trip
        let back = t.translate(&[rat(-1), rat(-1)]).unwrap();
        assert_eq!(back, l1);
    }

    #[test]
    fn change_variables_examples() {
        let l1 = instances::boundedness_l1();
        assert_eq!(l1.change_variables(&Mat::identity(2)).unwrap(), l1);

        let x = Pencil::new(vec![SymMatrix::zeros(1), SymMatrix::identity(1)]).unwrap();
        let doubled = x.change_variables(&crate::mat::mat_i64(&[&[2]])).unwrap();
        assert_eq!(doubled.coeff(1), &SymMatrix::diag(&[rat(2)]));

        // diag(x1+x2, x1-x2) with x = M x', M = [[1,1],[1,-1]] gives diag(2x1', 2x2')
        let l = Pencil::new(vec![
            SymMatrix::zeros(2),
            SymMatrix::identity(2),
            SymMatrix::diag(&[rat(1), rat(-1)]),
        ])
        .unwrap();
        let m = crate::mat::mat_i64(&[&[1, 1], &[1, -1]]);
        let lc = l.change_variables(&m).unwrap();
        assert_eq!(lc.coeff(1), &SymMatrix::diag(&[rat(2), rat(0)]));
        assert_eq!(lc.coeff(2), &SymMatrix::diag(&[rat(0), rat(2)]));

        assert_eq!(
            l.change_variables(&crate::mat::mat_i64(&[&[1, 1], &[1, 1]])),
            Err(PencilError::Singular)
        );
    }

    #[test]
    fn diagonal_and_monic_flags() {
        let l1 = instances::boundedness_l1();
        assert!(l1.is_diagonal());
        assert!(l1.is_monic());
        assert_eq!(l1.diag_entries().unwrap().len(), 3);

        let pm = Pencil::new(vec![
            SymMatrix::zeros(2),
            SymMatrix::diag(&[rat(1), rat(-1)]),
        ])
        .unwrap();
        assert!(pm.is_diagonal());
        assert!(!pm.is_monic());

        let l2 = instances::boundedness_l2();
        assert!(!l2.is_diagonal());
        assert_eq!(l2.diag_entries(), Err(PencilError::NotDiagonal));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let l2 = instances::boundedness_l2();
        let v = l2.to_json();
        let back = Pencil::from_json(&v).unwrap();
        assert_eq!(back, l2);

        // symmetry is validated
        let bad = serde_json::json!({
            "d": 2, "n": 1,
            "coeffs": [[["1","2"],["0","1"]], [["0","0"],["0","0"]]]
        });
        assert!(matches!(Pencil::from_json(&bad), Err(PencilError::Parse(_))));

        // coefficient count is validated
        let bad = serde_json::json!({
            "d": 1, "n": 2,
            "coeffs": [[["1"]], [["0"]]]
        });
        assert!(matches!(Pencil::from_json(&bad), Err(PencilError::Parse(_))));
    }
}
