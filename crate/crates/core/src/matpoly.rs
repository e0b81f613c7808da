//! Matrix-valued polynomials with a monomial-indexed coefficient map.

use std::collections::BTreeMap;

use crate::affine::AffineFunctional;
use crate::mat::Mat;
use crate::pencil::Pencil;
use crate::scalar::{Rat, Scalar};

/// Exponent vector of a monomial in n variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(i: usize, n: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Key used in the certificate JSON, e.g. "0,1".
    pub fn key(&self) -> String {
        self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn from_key(s: &str, n: usize) -> Result<Self, String> {
        let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse()).collect();
        let parts = parts.map_err(|_| format!("bad monomial key {s:?}"))?;
        if parts.len() != n {
            return Err(format!("monomial key {s:?} has wrong arity"));
        }
        Ok(Monomial(parts))
    }

    /// Human-readable form like "x1^2*x2" or "1".
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{}", i + 1));
            } else if e > 1 {
                parts.push(format!("x{}^{}", i + 1, e));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// All monomials in n variables of total degree <= d, in graded order.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(n)];
        let mut frontier = vec![Monomial::one(n)];
        for _ in 0..d {
            let mut next = Vec::new();
            for m in &frontier {
                // raise the last-touched variable or later ones to avoid dupes
                let start = m.0.iter().rposition(|&e| e > 0).unwrap_or(0);
                for i in start..n {
                    let mut e = m.0.clone();
                    e[i] += 1;
                    next.push(Monomial(e));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// rows x cols matrix polynomial in n variables; only nonzero coefficient
/// matrices are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoly<T: Scalar> {
    rows: usize,
    cols: usize,
    n: usize,
    terms: BTreeMap<Monomial, Mat<T>>,
}

impl<T: Scalar> MatrixPoly<T> {
    pub fn zero(rows: usize, cols: usize, n: usize) -> Self {
        MatrixPoly { rows, cols, n, terms: BTreeMap::new() }
    }

    pub fn constant(m: Mat<T>, n: usize) -> Self {
        let mut p = MatrixPoly::zero(m.rows(), m.cols(), n);
        p.add_term(Monomial::one(n), m);
        p
    }

    pub fn identity(dim: usize, n: usize) -> Self {
        Self::constant(Mat::identity(dim), n)
    }

    pub fn from_pencil(pencil: &Pencil<T>) -> Self {
        let n = pencil.n();
        let mut p = MatrixPoly::zero(pencil.d(), pencil.d(), n);
        p.add_term(Monomial::one(n), pencil.constant().mat().clone());
        for (i, c) in pencil.linear_coeffs().iter().enumerate() {
            p.add_term(Monomial::var(i, n), c.mat().clone());
        }
        p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Mat<T>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Mat<T> {
        self.terms.get(m).cloned().unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Mat<T>) {
        assert_eq!(m.0.len(), self.n);
        assert_eq!((c.rows(), c.cols()), (self.rows, self.cols));
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols, self.n), (other.rows, other.cols, other.n));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MatrixPoly {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = MatrixPoly::zero(self.rows, self.cols, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(s));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        MatrixPoly {
            rows: self.cols,
            cols: self.rows,
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.transpose())).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix polynomial product mismatch");
        assert_eq!(self.n, other.n);
        let mut out = MatrixPoly::zero(self.rows, other.cols, self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.matmul(cb));
            }
        }
        out
    }

    pub fn eval(&self, x: &[T]) -> Mat<T> {
        assert_eq!(x.len(), self.n);
        let mut acc = Mat::zeros(self.rows, self.cols);
        for (m, c) in &self.terms {
            let mut s = T::one();
            for (xi, &e) in x.iter().zip(&m.0) {
                for _ in 0..e {
                    s = s * xi.clone();
                }
            }
            acc = acc.add(&c.scale(&s));
        }
        acc
    }

    /// Largest coefficient magnitude, the residual norm of verification.
    pub fn max_coeff_abs(&self) -> f64 {
        self.terms.values().map(Mat::max_abs).fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> MatrixPoly<U> {
        MatrixPoly {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.map(f).is_zero())
                .map(|(m, c)| (m.clone(), c.map(f)))
                .collect(),
        }
    }

    /// Re-homes the polynomial in a larger variable set, padding exponents
    /// with zeros.
    pub fn extend_vars(&self, new_n: usize) -> Self {
        assert!(new_n >= self.n);
        MatrixPoly {
            rows: self.rows,
            cols: self.cols,
            n: new_n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(new_n, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn to_f64(&self) -> MatrixPoly<f64> {
        self.map(|v| v.approx())
    }
}

impl MatrixPoly<Rat> {
    /// Substitutes x_i := subs[i] (affine forms in a fresh variable set).
    /// Degrees are preserved since the substitutions are affine.
    pub fn substitute_affine(&self, subs: &[AffineFunctional]) -> MatrixPoly<Rat> {
        assert_eq!(subs.len(), self.n);
        let new_n = subs.first().map_or(self.n, AffineFunctional::n);
        assert!(subs.iter().all(|f| f.n() == new_n));

        // scalar polynomials for each substituted variable
        let var_polys: Vec<MatrixPoly<Rat>> = subs
            .iter()
            .map(|f| {
                let mut p = MatrixPoly::zero(1, 1, new_n);
                p.add_term(Monomial::one(new_n), Mat::from_rows(vec![vec![f.a0.clone()]]).unwrap());
                for (i, a) in f.linear.iter().enumerate() {
                    p.add_term(
                        Monomial::var(i, new_n),
                        Mat::from_rows(vec![vec![a.clone()]]).unwrap(),
                    );
                }
                p
            })
            .collect();

        let mut out = MatrixPoly::zero(self.rows, self.cols, new_n);
        for (m, c) in &self.terms {
            let mut scalar = MatrixPoly::<Rat>::identity(1, new_n);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    scalar = scalar.matmul(&var_polys[i]);
                }
            }
            for (sm, sc) in &scalar.terms {
                out.add_term(sm.clone(), c.scale(sc.at(0, 0)));
            }
        }
        out
    }

    /// Determinant of a 2x2 matrix polynomial, as a 1x1 polynomial.
    pub fn det2(&self) -> MatrixPoly<Rat> {
        assert_eq!((self.rows, self.cols), (2, 2));
        let entry = |i: usize, j: usize| -> MatrixPoly<Rat> {
            let mut p = MatrixPoly::zero(1, 1, self.n);
            for (m, c) in &self.terms {
                p.add_term(m.clone(), Mat::from_rows(vec![vec![c.at(i, j).clone()]]).unwrap());
            }
            p
        };
        entry(0, 0).matmul(&entry(1, 1)).sub(&entry(0, 1).matmul(&entry(1, 0)))
    }
}
