//! Certificates: weighted sums of squares plus weighted pencil conjugations,
//! L2 == sum w_j A_j^T A_j + sum w_k B_k^T L1 B_k, with exact and numeric
//! verification, composition, and pull-back along affine changes of
//! variables.
//!
//! Weights are kept separate from factors so the constructive pipelines stay
//! inside rational arithmetic: Farkas coefficients and congruence weights are
//! rational while their square roots usually are not. The unweighted form is
//! recovered by folding sqrt(w) into the factors, at the price of leaving the
//! exact backend.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::mat::Mat;
use crate::matpoly::{MatrixPoly, Monomial};
use crate::pencil::Pencil;
use crate::scalar::{fmt_rat, parse_rat, Rat, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("change of variables is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTerm<T: Scalar> {
    pub weight: T,
    pub factor: MatrixPoly<T>,
}

/// Certificate for the pair (L1, L2). Sum-of-squares factors are r x l2_dim
/// (any r), pencil factors are l1_dim x l2_dim.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<T: Scalar> {
    pub l1_dim: usize,
    pub l2_dim: usize,
    pub n: usize,
    pub sos: Vec<WeightedTerm<T>>,
    pub pencil_terms: Vec<WeightedTerm<T>>,
    pub provenance: Vec<String>,
}

impl<T: Scalar> Certificate<T> {
    pub fn empty(l1_dim: usize, l2_dim: usize, n: usize) -> Self {
        Certificate { l1_dim, l2_dim, n, sos: Vec::new(), pencil_terms: Vec::new(), provenance: Vec::new() }
    }

    /// The identity certificate: one pencil term with weight 1 and factor I.
    pub fn identity(dim: usize, n: usize) -> Self {
        let mut c = Certificate::empty(dim, dim, n);
        c.pencil_terms.push(WeightedTerm {
            weight: T::one(),
            factor: MatrixPoly::identity(dim, n),
        });
        c.provenance.push("identity".into());
        c
    }

    pub fn push_sos(&mut self, weight: T, factor: MatrixPoly<T>) {
        assert_eq!(factor.cols(), self.l2_dim, "sos factor column mismatch");
        assert_eq!(factor.n(), self.n);
        self.sos.push(WeightedTerm { weight, factor });
    }

    pub fn push_pencil(&mut self, weight: T, factor: MatrixPoly<T>) {
        assert_eq!(factor.rows(), self.l1_dim, "pencil factor row mismatch");
        assert_eq!(factor.cols(), self.l2_dim, "pencil factor column mismatch");
        assert_eq!(factor.n(), self.n);
        self.pencil_terms.push(WeightedTerm { weight, factor });
    }

    pub fn tag(mut self, note: &str) -> Self {
        self.provenance.push(note.into());
        self
    }

    /// Degree bound over all factors.
    pub fn degree(&self) -> u32 {
        self.sos
            .iter()
            .chain(&self.pencil_terms)
            .map(|t| t.factor.degree())
            .max()
            .unwrap_or(0)
    }

    /// Expands sum w A^T A + sum w B^T L1 B.
    pub fn expand(&self, l1: &Pencil<T>) -> Result<MatrixPoly<T>, CertError> {
        if l1.d() != self.l1_dim || l1.n() != self.n {
            return Err(CertError::DimensionMismatch(format!(
                "L1 is {}x{} in {} vars; certificate expects {} in {} vars",
                l1.d(),
                l1.d(),
                l1.n(),
                self.l1_dim,
                self.n
            )));
        }
        let l1_poly = MatrixPoly::from_pencil(l1);
        let mut acc = MatrixPoly::zero(self.l2_dim, self.l2_dim, self.n);
        for t in &self.sos {
            let sq = t.factor.transpose().matmul(&t.factor);
            acc = acc.add(&sq.scale(&t.weight));
        }
        for t in &self.pencil_terms {
            let conj = t.factor.transpose().matmul(&l1_poly).matmul(&t.factor);
            acc = acc.add(&conj.scale(&t.weight));
        }
        Ok(acc)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> Certificate<U> {
        Certificate {
            l1_dim: self.l1_dim,
            l2_dim: self.l2_dim,
            n: self.n,
            sos: self
                .sos
                .iter()
                .map(|t| WeightedTerm { weight: f(&t.weight), factor: t.factor.map(f) })
                .collect(),
            pencil_terms: self
                .pencil_terms
                .iter()
                .map(|t| WeightedTerm { weight: f(&t.weight), factor: t.factor.map(f) })
                .collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_f64(&self) -> Certificate<f64> {
        self.map(|v| v.approx())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Exact,
    Numeric,
}

/// Outcome of checking the certificate identity against a pencil pair.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub pass: bool,
    /// Max-norm over coefficient matrices of (expansion - L2); identically
    /// zero in a passing exact check.
    pub residual: f64,
    /// Per-monomial max-norm of the defect.
    pub breakdown: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "mode": if self.mode == VerifyMode::Exact { "exact" } else { "numeric" },
            "pass": self.pass,
            "residual": self.residual,
            "breakdown": self.breakdown.iter().map(|(k, v)| json!({"monomial": k, "defect": v})).collect::<Vec<_>>(),
        })
    }
}

/// Exact verification: the defect must vanish coefficient-wise.
pub fn verify_exact(
    l1: &Pencil<Rat>,
    l2: &Pencil<Rat>,
    cert: &Certificate<Rat>,
) -> Result<VerificationReport, CertError> {
    check_l2(l2, cert)?;
    let defect = cert.expand(l1)?.sub(&MatrixPoly::from_pencil(l2));
    let pass = defect.is_zero();
    Ok(VerificationReport {
        mode: VerifyMode::Exact,
        pass,
        residual: if pass { 0.0 } else { defect.max_coeff_abs() },
        breakdown: breakdown(&defect.to_f64()),
    })
}

/// Numeric verification at a tolerance.
pub fn verify_numeric(
    l1: &Pencil<Rat>,
    l2: &Pencil<Rat>,
    cert: &Certificate<f64>,
    tol: f64,
) -> Result<VerificationReport, CertError> {
    if l2.d() != cert.l2_dim || l2.n() != cert.n {
        return Err(CertError::DimensionMismatch("L2 shape".into()));
    }
    let defect = cert
        .expand(&l1.to_f64())?
        .sub(&MatrixPoly::from_pencil(&l2.to_f64()));
    let residual = defect.max_coeff_abs();
    Ok(VerificationReport {
        mode: VerifyMode::Numeric,
        pass: residual <= tol,
        residual,
        breakdown: breakdown(&defect),
    })
}

fn check_l2(l2: &Pencil<Rat>, cert: &Certificate<Rat>) -> Result<(), CertError> {
    if l2.d() != cert.l2_dim || l2.n() != cert.n {
        return Err(CertError::DimensionMismatch(format!(
            "L2 is {}x{} in {} vars; certificate expects {} in {} vars",
            l2.d(),
            l2.d(),
            l2.n(),
            cert.l2_dim,
            cert.n
        )));
    }
    Ok(())
}

fn breakdown(defect: &MatrixPoly<f64>) -> Vec<(String, f64)> {
    defect
        .terms()
        .map(|(m, c)| (m.render(), c.max_abs()))
        .collect()
}

/// Composes certificates: outer proves L2 over the middle pencil M, inner
/// proves M over L1; the result proves L2 over L1 by substituting the inner
/// expansion into each outer pencil conjugation.
pub fn compose<T: Scalar>(
    outer: &Certificate<T>,
    inner: &Certificate<T>,
) -> Result<Certificate<T>, CertError> {
    if outer.l1_dim != inner.l2_dim {
        return Err(CertError::DimensionMismatch(format!(
            "outer pencil factors act on dimension {}, inner certifies dimension {}",
            outer.l1_dim, inner.l2_dim
        )));
    }
    if outer.n != inner.n {
        return Err(CertError::DimensionMismatch("variable count".into()));
    }
    let mut out = Certificate::empty(inner.l1_dim, outer.l2_dim, outer.n);
    out.sos = outer.sos.clone();
    for b in &outer.pencil_terms {
        for a_inner in &inner.sos {
            out.push_sos(
                b.weight.clone() * a_inner.weight.clone(),
                a_inner.factor.matmul(&b.factor),
            );
        }
        for b_inner in &inner.pencil_terms {
            out.push_pencil(
                b.weight.clone() * b_inner.weight.clone(),
                b_inner.factor.matmul(&b.factor),
            );
        }
    }
    out.provenance = inner.provenance.clone();
    out.provenance.extend(outer.provenance.iter().cloned());
    out.provenance.push("compose".into());
    Ok(out)
}

/// Pulls a certificate in variables x' back to x, where x = M x' + v was the
/// forward substitution: every factor gets x' := M^inv (x - v).
pub fn pull_back(
    cert: &Certificate<Rat>,
    m: &Mat<Rat>,
    v: &[Rat],
) -> Result<Certificate<Rat>, CertError> {
    let n = cert.n;
    if m.rows() != n || m.cols() != n || v.len() != n {
        return Err(CertError::DimensionMismatch("change of variables shape".into()));
    }
    let minv = m.inverse().map_err(|_| CertError::Singular)?;
    let subs: Vec<crate::affine::AffineFunctional> = (0..n)
        .map(|i| {
            let row = minv.row(i);
            let a0 = row
                .iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (a, b)| acc - a.clone() * b.clone());
            crate::affine::AffineFunctional::new(a0, row.to_vec())
        })
        .collect();
    let mut out = cert.clone();
    for t in out.sos.iter_mut().chain(out.pencil_terms.iter_mut()) {
        t.factor = t.factor.substitute_affine(&subs);
    }
    out.provenance.push("pull_back".into());
    Ok(out)
}

/// Folds sqrt(weight) into each factor, producing the plain unweighted form
/// in the approximate backend.
pub fn fold_weights(cert: &Certificate<Rat>) -> Certificate<f64> {
    let mut out = cert.to_f64();
    for t in out.sos.iter_mut().chain(out.pencil_terms.iter_mut()) {
        let s = t.weight.max(0.0).sqrt();
        t.factor = t.factor.scale(&s);
        t.weight = 1.0;
    }
    out.provenance.push("fold_weights".into());
    out
}

// ---------------------------------------------------------------------------
// JSON: either backend, tagged by "mode"

/// A certificate in either backend, as read from or written to disk.
#[derive(Debug, Clone, PartialEq)]
pub enum CertificateDoc {
    Exact(Certificate<Rat>),
    Numeric(Certificate<f64>),
}

impl CertificateDoc {
    pub fn mode(&self) -> VerifyMode {
        match self {
            CertificateDoc::Exact(_) => VerifyMode::Exact,
            CertificateDoc::Numeric(_) => VerifyMode::Numeric,
        }
    }

    pub fn provenance(&self) -> &[String] {
        match self {
            CertificateDoc::Exact(c) => &c.provenance,
            CertificateDoc::Numeric(c) => &c.provenance,
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            CertificateDoc::Exact(c) => c.degree(),
            CertificateDoc::Numeric(c) => c.degree(),
        }
    }

    /// Verifies in the certificate's declared mode.
    pub fn verify(
        &self,
        l1: &Pencil<Rat>,
        l2: &Pencil<Rat>,
        tol: f64,
    ) -> Result<VerificationReport, CertError> {
        match self {
            CertificateDoc::Exact(c) => verify_exact(l1, l2, c),
            CertificateDoc::Numeric(c) => verify_numeric(l1, l2, c, tol),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CertificateDoc::Exact(c) => cert_to_json(c, "exact", |r| fmt_rat(r)),
            CertificateDoc::Numeric(c) => cert_to_json(c, "numeric", |v| format!("{v}")),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CertError> {
        let mode = v
            .get("mode")
            .and_then(|m| m.as_str())
            .ok_or_else(|| CertError::Parse("missing mode".into()))?;
        match mode {
            "exact" => Ok(CertificateDoc::Exact(cert_from_json(v, &|s| {
                parse_rat(s).map_err(CertError::Parse)
            })?)),
            "numeric" => Ok(CertificateDoc::Numeric(cert_from_json(v, &|s| {
                s.parse::<f64>().map_err(|e| CertError::Parse(e.to_string()))
            })?)),
            other => Err(CertError::Parse(format!("unknown mode {other:?}"))),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, CertError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| CertError::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn cert_to_json<T: Scalar>(
    c: &Certificate<T>,
    mode: &str,
    fmt: impl Fn(&T) -> String + Copy,
) -> serde_json::Value {
    let term_json = |t: &WeightedTerm<T>| -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = t
            .factor
            .terms()
            .map(|(m, mat)| {
                let rows: Vec<Vec<String>> = (0..mat.rows())
                    .map(|i| (0..mat.cols()).map(|j| fmt(mat.at(i, j))).collect())
                    .collect();
                (m.key(), json!(rows))
            })
            .collect();
        json!({
            "w": fmt(&t.weight),
            "deg": t.factor.degree(),
            "rows": t.factor.rows(),
            "coeffs": coeffs,
        })
    };
    json!({
        "mode": mode,
        "l1_dim": c.l1_dim,
        "l2_dim": c.l2_dim,
        "n": c.n,
        "sos": c.sos.iter().map(term_json).collect::<Vec<_>>(),
        "pencil": c.pencil_terms.iter().map(term_json).collect::<Vec<_>>(),
        "provenance": c.provenance,
    })
}

fn cert_from_json<T: Scalar>(
    v: &serde_json::Value,
    parse: &dyn Fn(&str) -> Result<T, CertError>,
) -> Result<Certificate<T>, CertError> {
    let get_usize = |key: &str| -> Result<usize, CertError> {
        v.get(key)
            .and_then(|x| x.as_u64())
            .map(|x| x as usize)
            .ok_or_else(|| CertError::Parse(format!("missing field {key:?}")))
    };
    let l1_dim = get_usize("l1_dim")?;
    let l2_dim = get_usize("l2_dim")?;
    let n = get_usize("n")?;
    let mut cert = Certificate::empty(l1_dim, l2_dim, n);
    cert.provenance = v
        .get("provenance")
        .and_then(|p| p.as_array())
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default();

    let parse_terms = |key: &str, rows_expected: Option<usize>| -> Result<Vec<WeightedTerm<T>>, CertError> {
        let mut out = Vec::new();
        let Some(arr) = v.get(key).and_then(|x| x.as_array()) else {
            return Ok(out);
        };
        for t in arr {
            let w = t
                .get("w")
                .and_then(|x| x.as_str())
                .ok_or_else(|| CertError::Parse("term weight missing".into()))?;
            let weight = parse(w)?;
            let rows = t
                .get("rows")
                .and_then(|x| x.as_u64())
                .map(|x| x as usize)
                .or(rows_expected)
                .ok_or_else(|| CertError::Parse("term rows missing".into()))?;
            let coeffs = t
                .get("coeffs")
                .and_then(|x| x.as_object())
                .ok_or_else(|| CertError::Parse("term coeffs missing".into()))?;
            let mut factor = MatrixPoly::zero(rows, l2_dim, n);
            for (key, mat_v) in coeffs {
                let m = Monomial::from_key(key, n).map_err(CertError::Parse)?;
                let rows_v = mat_v
                    .as_array()
                    .ok_or_else(|| CertError::Parse("coefficient matrix must be an array".into()))?;
                if rows_v.len() != rows {
                    return Err(CertError::Parse("coefficient matrix row count".into()));
                }
                let mut data = Vec::with_capacity(rows);
                for r in rows_v {
                    let r = r
                        .as_array()
                        .ok_or_else(|| CertError::Parse("matrix row must be an array".into()))?;
                    if r.len() != l2_dim {
                        return Err(CertError::Parse("coefficient matrix column count".into()));
                    }
                    let mut row = Vec::with_capacity(l2_dim);
                    for s in r {
                        let s = s
                            .as_str()
                            .ok_or_else(|| CertError::Parse("matrix entries are strings".into()))?;
                        row.push(parse(s)?);
                    }
                    data.push(row);
                }
                factor.add_term(m, Mat::from_rows(data).map_err(|e| CertError::Parse(e.to_string()))?);
            }
            out.push(WeightedTerm { weight, factor });
        }
        Ok(out)
    };
    cert.sos = parse_terms("sos", None)?;
    cert.pencil_terms = parse_terms("pencil", Some(l1_dim))?;
    for t in &cert.pencil_terms {
        if t.factor.rows() != l1_dim {
            return Err(CertError::Parse("pencil factor rows must equal l1_dim".into()));
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::mat::{mat_i64, SymMatrix};
    use crate::pencil::Pencil;
    use crate::scalar::{rat, ratio};

    fn diag_pencil(consts: &[i64], lins: &[&[i64]]) -> Pencil<Rat> {
        let mut coeffs = vec![SymMatrix::diag(
            &consts.iter().map(|&v| rat(v)).collect::<Vec<_>>(),
        )];
        for l in lins {
            coeffs.push(SymMatrix::diag(&l.iter().map(|&v| rat(v)).collect::<Vec<_>>()));
        }
        Pencil::new(coeffs).unwrap()
    }

    #[test]
    fn identity_certificate_verifies() {
        let l1 = instances::boundedness_l1();
        let cert = Certificate::<Rat>::identity(3, 2);
        let report = verify_exact(&l1, &l1, &cert).unwrap();
        assert!(report.pass);
        assert_eq!(report.residual, 0.0);
    }

    #[test]
    fn interval_average_certificate() {
        // 1 == 1/2 (1+x) + 1/2 (1-x) over L1 = diag(1+x, 1-x)
        let l1 = diag_pencil(&[1, 1], &[&[1, -1]]);
        let l2 = diag_pencil(&[1], &[&[0]]);
        let mut cert = Certificate::empty(2, 1, 1);
        cert.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[1], &[0]]), 1));
        cert.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[0], &[1]]), 1));
        assert!(verify_exact(&l1, &l2, &cert).unwrap().pass);
    }

    #[test]
    fn empty_certificate_fails_with_residual() {
        let (l1, l2) = instances::boundedness_pair();
        let cert = Certificate::<Rat>::empty(3, 2, 2);
        let report = verify_exact(&l1, &l2, &cert).unwrap();
        assert!(!report.pass);
        assert_eq!(report.residual, 1.0); // the largest coefficient of L2
    }

    #[test]
    fn tampered_weight_flips_exact_verdict() {
        let l1 = diag_pencil(&[1, 1], &[&[1, -1]]);
        let l2 = diag_pencil(&[1], &[&[0]]);
        let mut cert = Certificate::empty(2, 1, 1);
        cert.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[1], &[0]]), 1));
        cert.push_pencil(
            ratio(1, 2) + ratio(1, 1000),
            MatrixPoly::constant(mat_i64(&[&[0], &[1]]), 1),
        );
        assert!(!verify_exact(&l1, &l2, &cert).unwrap().pass);
    }

    #[test]
    fn compose_weight_multiplication() {
        // M = 2 L1 via (w=2, B=I); outer uses (w=1, B=I) on M
        let l1 = diag_pencil(&[1], &[&[1]]);
        let m = diag_pencil(&[2], &[&[2]]);
        let mut inner = Certificate::<Rat>::empty(1, 1, 1);
        inner.push_pencil(rat(2), MatrixPoly::identity(1, 1));
        assert!(verify_exact(&l1, &m, &inner).unwrap().pass);
        let outer = Certificate::<Rat>::identity(1, 1);
        let composed = compose(&outer, &inner).unwrap();
        assert_eq!(composed.pencil_terms[0].weight, rat(2));
        assert!(verify_exact(&l1, &m, &composed).unwrap().pass);
    }

    #[test]
    fn compose_with_identity_inner() {
        let l1 = diag_pencil(&[1, 1], &[&[1, -1]]);
        let l2 = diag_pencil(&[1], &[&[0]]);
        let mut outer = Certificate::empty(2, 1, 1);
        outer.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[1], &[0]]), 1));
        outer.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[0], &[1]]), 1));
        let inner = Certificate::<Rat>::identity(2, 1);
        let composed = compose(&outer, &inner).unwrap();
        assert!(verify_exact(&l1, &l2, &composed).unwrap().pass);
        assert_eq!(composed.pencil_terms.len(), outer.pencil_terms.len());
    }

    #[test]
    fn pull_back_shift() {
        // certificate for the pencil x (K = [0, inf)), pulled back along
        // x' = x - 1, certifies the pencil x - 1
        let lx = diag_pencil(&[0], &[&[1]]);
        let cert = Certificate::<Rat>::identity(1, 1);
        assert!(verify_exact(&lx, &lx, &cert).unwrap().pass);

        let shifted = lx.translate(&[rat(-1)]).unwrap(); // x - 1... L(x) = L(x + v)
        assert_eq!(*shifted.constant().at(0, 0), rat(-1));
        // x = x' + 1 means v = (1): pull back with M = I, v = (1)
        let pulled = pull_back(&cert, &Mat::identity(1), &[rat(1)]).unwrap();
        assert!(verify_exact(&shifted, &shifted, &pulled).unwrap().pass);

        // M = I, v = 0 leaves the certificate unchanged
        let same = pull_back(&cert, &Mat::identity(1), &[rat(0)]).unwrap();
        assert_eq!(same.pencil_terms[0].factor, cert.pencil_terms[0].factor);
    }

    #[test]
    fn fold_weights_matches_numerically() {
        let l1 = diag_pencil(&[1, 1], &[&[1, -1]]);
        let l2 = diag_pencil(&[1], &[&[0]]);
        let mut cert = Certificate::empty(2, 1, 1);
        cert.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[1], &[0]]), 1));
        cert.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[0], &[1]]), 1));
        let folded = fold_weights(&cert);
        assert!(folded.sos.iter().chain(&folded.pencil_terms).all(|t| t.weight == 1.0));
        let report = verify_numeric(&l1, &l2, &folded, 1e-10).unwrap();
        assert!(report.pass, "residual {}", report.residual);
    }

    #[test]
    fn json_round_trip_exact_and_numeric() {
        let mut cert = Certificate::<Rat>::empty(2, 1, 1);
        cert.push_pencil(ratio(1, 2), MatrixPoly::constant(mat_i64(&[&[1], &[0]]), 1));
        cert.push_sos(rat(2), MatrixPoly::constant(mat_i64(&[&[1]]), 1));
        cert.provenance.push("test".into());
        let doc = CertificateDoc::Exact(cert.clone());
        let v = doc.to_json();
        let back = CertificateDoc::from_json(&v).unwrap();
        assert_eq!(back, doc);

        let ndoc = CertificateDoc::Numeric(cert.to_f64());
        let v = ndoc.to_json();
        let back = CertificateDoc::from_json(&v).unwrap();
        assert_eq!(back, ndoc);
    }
}
