//! Constructive certificate engine: one constructor per constructive result
//! (singleton regions, empty regions, bounded diagonal pencils in full and
//! intermediate dimension, the one-variable cases including unbounded
//! intervals, simplices) plus an automatic dispatcher with a degree-capped
//! search fallback.
//!
//! Construction happens in rational arithmetic wherever the route allows it;
//! stages that pass through the approximate backend (simultaneous
//! diagonalization, Choi search without successful rationalization) are
//! tracked, and the final verification mode follows that flag. Every
//! certificate returned by any path has passed its verification.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::affine::AffineFunctional;
use crate::cert::{
    compose, pull_back, verify_exact, verify_numeric, Certificate, CertificateDoc,
};
use crate::farkas::{cone_contains_minus_one, farkas_certificate, FarkasCertificate, FarkasError};
use crate::linalg::{min_eigenvalue, simultaneous_diag_psd};
use crate::mat::{Mat, SymMatrix};
use crate::matpoly::MatrixPoly;
use crate::pencil::{LinearPencil, Pencil};
use crate::region::{
    classify, pencil_nonneg_on_region, simplex_check, vertices, PositivityWitness,
    RegionClassification, RegionKind,
};
use crate::scalar::{dyadic, fmt_rat, rat, ratio, Rat, Scalar};
use crate::sdp::{
    constant_certificate_search, degree_bounded_search, RefutationReport, SdpConfig, SearchOutcome,
};

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Degree cap for the search fallback and refutations.
    pub degree_cap: u32,
    /// Residual tolerance for numeric verification.
    pub tol: f64,
    /// Margin used by approximate strictness checks.
    pub strict_margin: f64,
    /// Denominator bound for rationalization.
    pub den_bound: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { degree_cap: 2, tol: 1e-8, strict_margin: 1e-6, den_bound: 1 << 20 }
    }
}

impl EngineConfig {
    fn sdp(&self) -> SdpConfig {
        SdpConfig { tol: self.tol, den_bound: self.den_bound, ..SdpConfig::default() }
    }
}

/// Which constructive route produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnginePath {
    EmptyRegion,
    Singleton,
    DiagonalBounded,
    LowerDimensional,
    OneVariableBounded,
    OneVariableHalfLine,
    OneVariableFullLine,
    Simplex,
    AlgebraSpan,
    SdpFallback,
}

impl EnginePath {
    pub fn name(&self) -> &'static str {
        match self {
            EnginePath::EmptyRegion => "empty_region",
            EnginePath::Singleton => "singleton",
            EnginePath::DiagonalBounded => "diagonal_bounded",
            EnginePath::LowerDimensional => "lower_dimensional",
            EnginePath::OneVariableBounded => "one_variable_bounded",
            EnginePath::OneVariableHalfLine => "one_variable_half_line",
            EnginePath::OneVariableFullLine => "one_variable_full_line",
            EnginePath::Simplex => "simplex",
            EnginePath::AlgebraSpan => "algebra_span",
            EnginePath::SdpFallback => "sdp_fallback",
        }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("pencil is not diagonal")]
    NotDiagonal,
    #[error("region is not bounded")]
    NotBounded,
    #[error("region is not a simplex")]
    NotSimplex,
    #[error("pencil has more than one variable")]
    NotOneVariable,
    #[error("region has no interior: {0}")]
    NoInterior(String),
    #[error("reduction preconditions fail: {0}")]
    NotInterior(String),
    #[error("target pencil is not non-negative on the region: {witness}")]
    PositivityFailed { witness: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no certificate of degree <= {degree} exists", degree = .0.degree_cap)]
    Infeasible(RefutationReport),
    #[error("search inconclusive: {0}")]
    Unknown(String),
    #[error("no constructive path applies: {0}")]
    NoPathFound(String),
    #[error("internal verification failed on path {path}: residual {residual}")]
    VerifyFailed { path: &'static str, residual: f64 },
}

/// Certificate plus the path that built it.
#[derive(Debug, Clone)]
pub struct CertifyOutcome {
    pub doc: CertificateDoc,
    pub path: EnginePath,
}

// ---------------------------------------------------------------------------
// shared plumbing

/// A certificate under construction: rational data plus a flag recording
/// whether any stage passed through the approximate backend.
#[derive(Debug, Clone)]
struct Draft {
    cert: Certificate<Rat>,
    exact: bool,
}

impl Draft {
    fn exact(cert: Certificate<Rat>) -> Self {
        Draft { cert, exact: true }
    }
}

fn exactify(cert: &Certificate<f64>) -> Certificate<Rat> {
    cert.map(|v| dyadic(*v).unwrap_or_else(Rat::zero))
}

fn search_to_draft(outcome: SearchOutcome) -> Result<Draft, EngineError> {
    match outcome {
        SearchOutcome::Certificate(CertificateDoc::Exact(c)) => Ok(Draft { cert: c, exact: true }),
        SearchOutcome::Certificate(CertificateDoc::Numeric(c)) => {
            Ok(Draft { cert: exactify(&c), exact: false })
        }
        SearchOutcome::Infeasible(report) => Err(EngineError::Infeasible(report)),
        SearchOutcome::Unknown(msg) => Err(EngineError::Unknown(msg)),
    }
}

/// Final gate: verify in the mode the construction earned and wrap up.
fn finish(
    l1: &LinearPencil,
    l2: &LinearPencil,
    draft: Draft,
    path: EnginePath,
    cfg: &EngineConfig,
) -> Result<CertificateDoc, EngineError> {
    let mut cert = draft.cert;
    cert.provenance.push(path.name().into());
    if draft.exact {
        let report = verify_exact(l1, l2, &cert)
            .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
        if !report.pass {
            return Err(EngineError::VerifyFailed { path: path.name(), residual: report.residual });
        }
        Ok(CertificateDoc::Exact(cert))
    } else {
        let numeric = cert.to_f64();
        let report = verify_numeric(l1, l2, &numeric, cfg.tol)
            .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
        if !report.pass {
            return Err(EngineError::VerifyFailed { path: path.name(), residual: report.residual });
        }
        Ok(CertificateDoc::Numeric(numeric))
    }
}

/// sos factors A -> A R, pencil factors B -> L B R; transports a certificate
/// through congruence reductions on either side.
fn conjugate_factors(
    cert: &Certificate<Rat>,
    left: Option<&Mat<Rat>>,
    right: Option<&Mat<Rat>>,
    new_l1_dim: usize,
    new_l2_dim: usize,
) -> Certificate<Rat> {
    let mut out = Certificate::empty(new_l1_dim, new_l2_dim, cert.n);
    out.provenance = cert.provenance.clone();
    for t in &cert.sos {
        let mut f = t.factor.clone();
        if let Some(r) = right {
            f = f.matmul(&MatrixPoly::constant(r.clone(), cert.n));
        }
        out.push_sos(t.weight.clone(), f);
    }
    for t in &cert.pencil_terms {
        let mut f = t.factor.clone();
        if let Some(l) = left {
            f = MatrixPoly::constant(l.clone(), cert.n).matmul(&f);
        }
        if let Some(r) = right {
            f = f.matmul(&MatrixPoly::constant(r.clone(), cert.n));
        }
        out.push_pencil(t.weight.clone(), f);
    }
    out
}

fn single_row_poly(v: &[Rat], n: usize) -> MatrixPoly<Rat> {
    MatrixPoly::constant(
        Mat::from_rows(vec![v.to_vec()]).expect("one row"),
        n,
    )
}

// ---------------------------------------------------------------------------
// monic reduction (restriction to the image of the constant term)

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionBackend {
    /// Exact-scaled when the constant term is diagonal, approximate monic
    /// otherwise.
    Auto,
    /// Rational restriction to the image of P0; the reduced constant term is
    /// positive definite (diagonal when P0 is), not the identity.
    ExactScaled,
    /// Literal monic form via an approximate PSD square root.
    ApproxMonic,
}

/// Result of reducing a pencil to its monic (or exactly scaled) core, with
/// the congruence witnesses: reduced == C^T L C and L == D^T reduced D.
#[derive(Debug, Clone)]
pub enum MonicReduction {
    Exact { reduced: LinearPencil, c: Mat<Rat>, dmat: Mat<Rat> },
    Approx { reduced: Pencil<f64>, c: Mat<f64>, dmat: Mat<f64>, residual: f64 },
}

impl MonicReduction {
    pub fn reduced_dim(&self) -> usize {
        match self {
            MonicReduction::Exact { reduced, .. } => reduced.d(),
            MonicReduction::Approx { reduced, .. } => reduced.d(),
        }
    }
}

/// Reduces a pencil whose constant term is PSD with all coefficient images
/// inside Im(P0) — the shape guaranteed by 0 being an interior point of the
/// region. Errors with NotInterior when the shape fails.
pub fn monic_reduce(
    l: &LinearPencil,
    backend: ReductionBackend,
) -> Result<MonicReduction, EngineError> {
    let p0 = l.constant();
    if !p0.is_psd() {
        return Err(EngineError::NotInterior("constant term is not PSD".into()));
    }
    let image = p0.image_basis().expect("PSD checked above");
    let r = image.len();
    let d = l.d();

    // normalized image basis columns (leading entry 1) keep the reduced
    // pencil's entries small
    let mut u = Mat::<Rat>::zeros(d, r);
    for (j, col) in image.iter().enumerate() {
        let lead = col.iter().find(|v| !v.is_zero()).expect("basis vector is nonzero").clone();
        for i in 0..d {
            u.set(i, j, col[i].clone() / lead.clone());
        }
    }

    // image condition: every coefficient column must solve against U
    for (i, p) in l.linear_coeffs().iter().enumerate() {
        for c in 0..d {
            if u.solve(&p.mat().col(c)).is_none() {
                return Err(EngineError::NotInterior(format!(
                    "Im(P{}) is not contained in Im(P0)",
                    i + 1
                )));
            }
        }
    }

    let reduced = l.conjugate(&u);
    let gram_inv = u
        .transpose()
        .matmul(&u)
        .inverse()
        .expect("image basis has full column rank");
    let dmat = gram_inv.matmul(&u.transpose());

    // L == D^T reduced D must hold exactly; it encodes the image condition
    let back = reduced.conjugate(&dmat);
    if back != *l {
        return Err(EngineError::NotInterior(
            "pencil does not vanish on the kernel of its constant term".into(),
        ));
    }

    let want_exact = match backend {
        ReductionBackend::ExactScaled => true,
        ReductionBackend::ApproxMonic => false,
        ReductionBackend::Auto => p0.is_diagonal(),
    };
    if want_exact {
        return Ok(MonicReduction::Exact { reduced, c: u, dmat });
    }

    // conjugate by the inverse square root of the reduced constant term
    let b = crate::linalg::approx_psd_sqrt(reduced.constant()).expect("restriction of PSD is PD");
    let b_dm = crate::linalg::to_dmatrix(&b);
    let b_inv = b_dm
        .clone()
        .try_inverse()
        .ok_or_else(|| EngineError::NotInterior("singular square root".into()))?;
    let b_inv = crate::linalg::from_dmatrix(&b_inv);
    let reduced_f = reduced.to_f64().conjugate(&b_inv);
    let c_f = u.to_f64().matmul(&b_inv);
    let d_f = crate::linalg::from_dmatrix(&b_dm).matmul(&dmat.to_f64());

    // residual on both congruence identities
    let lf = l.to_f64();
    let mut residual = 0.0f64;
    for (i, coeff) in lf.coeffs().iter().enumerate() {
        let forward = coeff.conjugate(&c_f);
        residual = residual.max(crate::linalg::max_abs_diff(
            forward.mat(),
            reduced_f.coeff(i).mat(),
        ));
        let back = reduced_f.coeff(i).conjugate(&d_f);
        residual = residual.max(crate::linalg::max_abs_diff(back.mat(), coeff.mat()));
    }
    Ok(MonicReduction::Approx { reduced: reduced_f, c: c_f, dmat: d_f, residual })
}

// ---------------------------------------------------------------------------
// plus-minus expression of symmetric coefficients

/// Expresses A*x_i as weighted conjugations of the 2x2 pencil
/// diag(x_i, -x_i): positive rank-one pieces select the +x slot, negative
/// ones the -x slot. Returns (weight, 2-by-l constant factor) pairs.
pub fn express_symmetric_via_pm(a: &SymMatrix<Rat>) -> Vec<(Rat, Mat<Rat>)> {
    let l = a.dim();
    a.weighted_rank1()
        .terms
        .iter()
        .map(|t| {
            let mut b = Mat::<Rat>::zeros(2, l);
            let row = if t.sign > 0 { 0 } else { 1 };
            for (j, v) in t.vector.iter().enumerate() {
                b.set(row, j, v.clone());
            }
            (t.weight.clone(), b)
        })
        .collect()
}

/// The n-variable pencil diag(x_i, -x_i) for one chosen variable.
pub fn pm_pencil(i: usize, n: usize) -> LinearPencil {
    let mut coeffs = vec![SymMatrix::zeros(2); n + 1];
    coeffs[i + 1] = SymMatrix::diag(&[rat(1), rat(-1)]);
    Pencil::new(coeffs).expect("valid pm pencil")
}

// ---------------------------------------------------------------------------
// Farkas-based inner certificates

/// Certificate expressing a diagonal target pencil entry-by-entry from the
/// entries of a diagonal source pencil, via scalar Farkas certificates: each
/// target entry g_t = c0 + sum c_j f_j turns into a constant sos term on the
/// (t,t) slot plus selector conjugations.
fn diagonal_over_diagonal(
    source: &LinearPencil,
    targets: &[AffineFunctional],
    slack: Option<&mut Vec<Rat>>,
    max_slack: f64,
) -> Result<Certificate<Rat>, EngineError> {
    let region = source.region().map_err(|_| EngineError::NotDiagonal)?;
    let n = source.n();
    let d = source.d();
    let big = targets.len();
    let mut cert = Certificate::empty(d, big, n);
    let mut slacks = Vec::with_capacity(big);
    for (t, g) in targets.iter().enumerate() {
        let (fc, used_slack) = farkas_with_slack(&region, g, max_slack)?;
        slacks.push(used_slack);
        if !fc.c0.is_zero() {
            let mut row = vec![Rat::zero(); big];
            row[t] = Rat::one();
            cert.push_sos(fc.c0.clone(), single_row_poly(&row, n));
        }
        for (j, c) in fc.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut b = Mat::<Rat>::zeros(d, big);
            b.set(j, t, Rat::one());
            cert.push_pencil(c.clone(), MatrixPoly::constant(b, n));
        }
    }
    if let Some(out) = slack {
        *out = slacks;
    }
    Ok(cert)
}

/// Farkas certificate with a tiny slack retry: targets that dip negative by
/// numerical residue (at most max_slack) are lifted before certification.
/// Returns the certificate together with the slack that was added.
fn farkas_with_slack(
    region: &crate::affine::Polyhedron,
    target: &AffineFunctional,
    max_slack: f64,
) -> Result<(FarkasCertificate, Rat), EngineError> {
    match farkas_certificate(region, target) {
        Ok(fc) => Ok((fc, Rat::zero())),
        Err(FarkasError::NotNonnegative { witness }) => {
            let violation = -target.eval(&witness);
            if violation.approx() > max_slack {
                return Err(EngineError::PositivityFailed {
                    witness: format!(
                        "target {} is {} at ({})",
                        target.render("x"),
                        fmt_rat(&(-violation.clone())),
                        witness.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
                    ),
                });
            }
            let slack = violation.clone() + violation.clone();
            let lifted = target.add(&AffineFunctional::constant(slack.clone(), target.n()));
            match farkas_certificate(region, &lifted) {
                Ok(fc) => Ok((fc, slack)),
                Err(e) => Err(EngineError::PreconditionFailed(format!(
                    "slack retry failed: {e:?}"
                ))),
            }
        }
        Err(FarkasError::EmptyRegion) => {
            Err(EngineError::PreconditionFailed("region is empty".into()))
        }
        Err(FarkasError::NotEmpty) => unreachable!("not raised by farkas_certificate"),
    }
}

// ---------------------------------------------------------------------------
// constructive paths

/// Singleton region: translate the point to the origin, route everything
/// through the plus-minus pencil, and compose.
pub fn certify_singleton(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
) -> Result<CertificateDoc, EngineError> {
    if !l1.is_diagonal() {
        return Err(EngineError::NotDiagonal);
    }
    let region = l1.region().expect("diagonal");
    let cls = classify(&region);
    let RegionKind::Singleton(_) = cls.kind else {
        return Err(EngineError::PreconditionFailed(format!(
            "region is {:?}, not a singleton",
            cls.kind
        )));
    };
    let a = cls.interior_point.clone().expect("nonempty region has a point");
    let at_a = l2.eval_point(&a).map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    if !at_a.is_psd() {
        return Err(EngineError::PositivityFailed {
            witness: format!(
                "L2 is not PSD at the region point ({})",
                a.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
            ),
        });
    }

    let l1t = l1.translate(&a).expect("dimensions agree");
    let l2t = l2.translate(&a).expect("dimensions agree");
    let draft = singleton_core(&l1t, &l2t, cfg)?;
    let pulled = pull_back(&draft.cert, &Mat::identity(l1.n()), &a)
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    finish(l1, l2, Draft { cert: pulled, exact: draft.exact }, EnginePath::Singleton, cfg)
}

/// Core of the singleton path, assuming the region is exactly {0}.
fn singleton_core(
    l1: &LinearPencil,
    l2: &LinearPencil,
    _cfg: &EngineConfig,
) -> Result<Draft, EngineError> {
    let n = l1.n();
    let l = l2.d();

    // the plus-minus pencil over every variable
    let mut pm = pm_pencil(0, n);
    for i in 1..n {
        pm = pm.direct_sum(&pm_pencil(i, n)).expect("same variable count");
    }

    // inner: each diagonal entry of pm expressed over L1's entries
    let mut targets = Vec::with_capacity(2 * n);
    for i in 0..n {
        targets.push(AffineFunctional::coordinate(i, n));
        targets.push(AffineFunctional::coordinate(i, n).neg());
    }
    let inner = diagonal_over_diagonal(l1, &targets, None, 0.0)?;

    // outer: constant term by rank-one squares, each linear coefficient via
    // the plus-minus blocks
    let mut outer = Certificate::empty(2 * n, l, n);
    for term in l2.constant().weighted_rank1().terms {
        debug_assert!(term.sign > 0, "PSD constant term has positive pieces only");
        outer.push_sos(term.weight, single_row_poly(&term.vector, n));
    }
    for (i, r_i) in l2.linear_coeffs().iter().enumerate() {
        for (w, b2) in express_symmetric_via_pm(r_i) {
            let mut b = Mat::<Rat>::zeros(2 * n, l);
            for r in 0..2 {
                for c in 0..l {
                    b.set(2 * i + r, c, b2.at(r, c).clone());
                }
            }
            outer.push_pencil(w, MatrixPoly::constant(b, n));
        }
    }

    let cert = compose(&outer, &inner).map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    Ok(Draft::exact(cert))
}

/// Empty region: -1 lies in the constraint cone, and the quadratic-module
/// identity 4a = (a+1)^2 - (a-1)^2 expresses any symmetric pencil with
/// degree-one factors.
fn empty_region_cert(
    l1: &LinearPencil,
    l2: &LinearPencil,
    _cfg: &EngineConfig,
) -> Result<Draft, EngineError> {
    let region = l1.region().map_err(|_| EngineError::NotDiagonal)?;
    let minus_one = cone_contains_minus_one(&region)
        .map_err(|e| EngineError::PreconditionFailed(format!("{e:?}")))?;
    let n = l1.n();
    let d = l1.d();
    let l = l2.d();
    let quarter = ratio(1, 4);

    let l2_poly = MatrixPoly::from_pencil(l2);
    let eye = MatrixPoly::identity(l, n);
    let plus = l2_poly.add(&eye);
    let minus = l2_poly.sub(&eye);

    let mut cert = Certificate::empty(d, l, n);
    cert.push_sos(quarter.clone(), plus);
    if !minus_one.c0.is_zero() {
        cert.push_sos(quarter.clone() * minus_one.c0.clone(), minus.clone());
    }
    for (j, c) in minus_one.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // f_j * (L2-I)^T (L2-I) split into per-row selector conjugations
        for t in 0..l {
            let mut selector = Mat::<Rat>::zeros(d, 1);
            selector.set(j, 0, Rat::one());
            let row_t = row_of(&minus, t);
            cert.push_pencil(
                quarter.clone() * c.clone(),
                MatrixPoly::constant(selector, n).matmul(&row_t),
            );
        }
    }
    Ok(Draft::exact(cert))
}

/// The t-th row of a matrix polynomial as a 1 x cols polynomial.
fn row_of(p: &MatrixPoly<Rat>, t: usize) -> MatrixPoly<Rat> {
    let mut out = MatrixPoly::zero(1, p.cols(), p.n());
    for (m, c) in p.terms() {
        let row = Mat::from_rows(vec![c.row(t).to_vec()]).expect("one row");
        if !row.is_zero() {
            out.add_term(m.clone(), row);
        }
    }
    out
}

/// Bounded diagonal L1 (any dimension), dispatching on the classification.
pub fn certify_diagonal_bounded(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
) -> Result<CertificateDoc, EngineError> {
    if !l1.is_diagonal() {
        return Err(EngineError::NotDiagonal);
    }
    let region = l1.region().expect("diagonal");
    let cls = classify(&region);
    match cls.kind {
        RegionKind::Empty => {
            let draft = empty_region_cert(l1, l2, cfg)?;
            finish(l1, l2, draft, EnginePath::EmptyRegion, cfg)
        }
        RegionKind::Singleton(_) => certify_singleton(l1, l2, cfg),
        RegionKind::Unbounded { .. } => Err(EngineError::NotBounded),
        RegionKind::Bounded { dim } => {
            require_strict_on_vertices(l2, &region)?;
            if dim == l1.n() {
                let draft = full_dim_bounded(l1, l2, &cls, cfg)?;
                finish(l1, l2, draft, EnginePath::DiagonalBounded, cfg)
            } else {
                let draft = lower_dimensional(l1, l2, &cls, cfg)?;
                finish(l1, l2, draft, EnginePath::LowerDimensional, cfg)
            }
        }
    }
}

/// Exact strictness check at every vertex of a bounded region.
fn require_strict_on_vertices(
    l2: &LinearPencil,
    region: &crate::affine::Polyhedron,
) -> Result<(), EngineError> {
    let vset = vertices(region).map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    for v in &vset.vertices {
        let m = l2.eval_point(v).map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
        if !m.is_pd() {
            return Err(EngineError::PositivityFailed {
                witness: format!(
                    "L2 is not strictly positive at the vertex ({})",
                    v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
                ),
            });
        }
    }
    Ok(())
}

/// Full-dimensional bounded diagonal case: translate an interior point to
/// the origin, reduce, and run the constant search (diagonal targets take
/// the exact Farkas route instead).
fn full_dim_bounded(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cls: &RegionClassification,
    cfg: &EngineConfig,
) -> Result<Draft, EngineError> {
    let x0 = cls.interior_point.clone().expect("bounded nonempty region");
    let l1t = l1.translate(&x0).expect("dimensions agree");
    let l2t = l2.translate(&x0).expect("dimensions agree");

    let reduction = monic_reduce(&l1t, ReductionBackend::ExactScaled)?;
    let MonicReduction::Exact { reduced, c, .. } = reduction else {
        unreachable!("exact backend requested")
    };

    let draft = if l2t.is_diagonal() {
        // diagonal targets stay in rational arithmetic end to end
        let targets = l2t.diag_entries().expect("diagonal");
        let inner = diagonal_over_diagonal(&l1t, &targets, None, 0.0)?;
        Draft::exact(inner)
    } else {
        let outcome = constant_certificate_search(&reduced, &l2t, cfg.tol);
        let found = search_to_draft(outcome)?;
        let mapped = conjugate_factors(&found.cert, Some(&c), None, l1t.d(), l2t.d());
        Draft { cert: mapped, exact: found.exact }
    };

    let pulled = pull_back(&draft.cert, &Mat::identity(l1.n()), &x0)
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    Ok(Draft { cert: pulled, exact: draft.exact })
}

/// Intermediate dimension 1 <= k <= n-1: change coordinates so the region
/// spans the first k variables, split the pencil, certify the k-variable
/// part recursively, express the remaining coefficients through plus-minus
/// blocks, and compose.
fn lower_dimensional(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cls: &RegionClassification,
    cfg: &EngineConfig,
) -> Result<Draft, EngineError> {
    let n = l1.n();
    let (_, dirs) = cls.affine_hull.as_ref().expect("nonempty region");
    let k = dirs.len();
    debug_assert!(k >= 1 && k < n);
    let x0 = cls.interior_point.clone().expect("nonempty");

    let l1t = l1.translate(&x0).expect("dimensions agree");
    let l2t = l2.translate(&x0).expect("dimensions agree");

    // complete the hull directions to a basis with standard vectors
    let mut rows: Vec<Vec<Rat>> = dirs.clone();
    let mut basis = dirs.clone();
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        rows.push(e.clone());
        if Mat::from_rows(rows.clone()).expect("rect").rank() == rows.len() {
            basis.push(e);
        } else {
            rows.pop();
        }
    }
    debug_assert_eq!(basis.len(), n);
    let m = Mat::from_fn(n, n, |i, j| basis[j][i].clone());

    let l1c = l1t.change_variables(&m).map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    let l2c = l2t.change_variables(&m).map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;

    let d = l1.d();
    let l = l2.d();
    let big = d + 2 * (n - k);

    // the split pencil: the first-k part of L1c, then plus-minus blocks
    let mut tilde = {
        let mut coeffs = vec![l1c.constant().clone()];
        for i in 0..n {
            if i < k {
                coeffs.push(l1c.coeff(i + 1).clone());
            } else {
                coeffs.push(SymMatrix::zeros(d));
            }
        }
        Pencil::new(coeffs).expect("valid")
    };
    for i in k..n {
        tilde = tilde.direct_sum(&pm_pencil(i, n)).expect("same n");
    }

    // inner: every diagonal entry of tilde over L1c's entries
    let targets: Vec<AffineFunctional> = tilde.diag_entries().expect("diagonal by construction");
    debug_assert_eq!(targets.len(), big);
    let inner = diagonal_over_diagonal(&l1c, &targets, None, 0.0)?;

    // outer part A: the k-variable pair, certified recursively
    let restrict = |p: &LinearPencil| -> LinearPencil {
        let mut coeffs = vec![p.constant().clone()];
        for i in 0..k {
            coeffs.push(p.coeff(i + 1).clone());
        }
        Pencil::new(coeffs).expect("k >= 1")
    };
    let l11 = restrict(&l1c);
    let l21 = restrict(&l2c);
    let sub = certify_diagonal_bounded(&l11, &l21, cfg)?;
    let (sub_cert, sub_exact) = match sub {
        CertificateDoc::Exact(c) => (c, true),
        CertificateDoc::Numeric(c) => (exactify(&c), false),
    };

    // embed the k-variable certificate into n variables and the big pencil
    let mut part_a = Certificate::empty(big, l, n);
    part_a.provenance = sub_cert.provenance.clone();
    for t in &sub_cert.sos {
        part_a.push_sos(t.weight.clone(), t.factor.extend_vars(n));
    }
    for t in &sub_cert.pencil_terms {
        let mut lift = Mat::<Rat>::zeros(big, d);
        for i in 0..d {
            lift.set(i, i, Rat::one());
        }
        part_a.push_pencil(
            t.weight.clone(),
            MatrixPoly::constant(lift, n).matmul(&t.factor.extend_vars(n)),
        );
    }

    // outer part B: coefficients of the dropped variables through the
    // plus-minus blocks
    let mut outer = part_a;
    for i in k..n {
        let r_i = l2c.coeff(i + 1);
        for (w, b2) in express_symmetric_via_pm(r_i) {
            let mut b = Mat::<Rat>::zeros(big, l);
            let offset = d + 2 * (i - k);
            for r in 0..2 {
                for cidx in 0..l {
                    b.set(offset + r, cidx, b2.at(r, cidx).clone());
                }
            }
            outer.push_pencil(w, MatrixPoly::constant(b, n));
        }
    }

    let composed =
        compose(&outer, &inner).map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    let pulled = pull_back(&composed, &m, &x0)
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    Ok(Draft { cert: pulled, exact: sub_exact })
}

// ---------------------------------------------------------------------------
// one-variable case

/// One variable, any shape of interval with nonempty interior.
pub fn certify_one_variable(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
) -> Result<CertificateDoc, EngineError> {
    if l1.n() != 1 || l2.n() != 1 {
        return Err(EngineError::NotOneVariable);
    }
    let p1 = l1.coeff(1);

    if p1.is_zero() {
        let draft = full_line_case(l1, l2)?;
        return finish(l1, l2, draft, EnginePath::OneVariableFullLine, cfg);
    }
    let up = p1.is_psd();
    let down = p1.neg().is_psd();
    if up {
        let draft = half_line_case(l1, l2, cfg)?;
        return finish(l1, l2, draft, EnginePath::OneVariableHalfLine, cfg);
    }
    if down {
        // mirror x -> -x and reuse the upward case
        let mirror = Mat::from_rows(vec![vec![-Rat::one()]]).unwrap();
        let l1m = l1.change_variables(&mirror).expect("invertible");
        let l2m = l2.change_variables(&mirror).expect("invertible");
        let draft = half_line_case(&l1m, &l2m, cfg)?;
        let pulled = pull_back(&draft.cert, &mirror, &[Rat::zero()])
            .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
        return finish(
            l1,
            l2,
            Draft { cert: pulled, exact: draft.exact },
            EnginePath::OneVariableHalfLine,
            cfg,
        );
    }
    let draft = bounded_interval_case(l1, l2, cfg)?;
    finish(l1, l2, draft, EnginePath::OneVariableBounded, cfg)
}

/// D = R: the linear coefficients must vanish and the constant terms carry
/// everything as sums of squares.
fn full_line_case(l1: &LinearPencil, l2: &LinearPencil) -> Result<Draft, EngineError> {
    if !l1.constant().is_psd() {
        return Err(EngineError::NoInterior("constant pencil is not PSD: empty region".into()));
    }
    if !l2.coeff(1).is_zero() {
        return Err(EngineError::PositivityFailed {
            witness: "L2 has a nonzero linear coefficient over the whole line".into(),
        });
    }
    if !l2.constant().is_psd() {
        return Err(EngineError::PositivityFailed {
            witness: "L2's constant term is not PSD".into(),
        });
    }
    let mut cert = Certificate::empty(l1.d(), l2.d(), 1);
    for term in l2.constant().weighted_rank1().terms {
        cert.push_sos(term.weight, single_row_poly(&term.vector, 1));
    }
    Ok(Draft::exact(cert))
}

/// Finds a rational feasible point of a one-variable pencil by scanning a
/// dyadic grid around the numeric maximizer of the smallest eigenvalue.
fn rational_feasible_point(l1: &LinearPencil) -> Option<Rat> {
    let quick = [rat(0), rat(1), rat(-1), rat(2), rat(-2)];
    for x in &quick {
        if l1.membership(std::slice::from_ref(x)).unwrap_or(false) {
            return Some(x.clone());
        }
    }
    let lf = l1.to_f64();
    let f = |x: f64| min_eigenvalue(lf.eval_point(&[x]).expect("one var").mat());
    // ternary search on the concave minimum eigenvalue over widening windows
    for exp in [3i32, 6, 10, 16, 24] {
        let (mut lo, mut hi) = (-(2f64.powi(exp)), 2f64.powi(exp));
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(m1) < f(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let xstar = 0.5 * (lo + hi);
        for den in [1u64, 2, 4, 8, 16, 64, 256, 4096, 1 << 16, 1 << 26] {
            if let Some(x) = crate::scalar::rationalize(xstar, den) {
                if l1.membership(&[x.clone()]).unwrap_or(false) {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// D = [a, inf): translate a feasible point to the origin, diagonalize both
/// PSD pairs (exactly when already diagonal, otherwise through the dyadic
/// reinterpretation of the approximate congruence), and recombine scalar
/// Farkas certificates for the diagonal entries.
fn half_line_case(
    l1: &LinearPencil,
    l2: &LinearPencil,
    _cfg: &EngineConfig,
) -> Result<Draft, EngineError> {
    let Some(a) = rational_feasible_point(l1) else {
        return Err(EngineError::NoInterior("no rational feasible point found".into()));
    };
    let l1t = l1.translate(&[a.clone()]).expect("one var");
    let l2t = l2.translate(&[a.clone()]).expect("one var");

    // shape checks: both pairs must be PSD pairs on [0, inf)
    if !l1t.constant().is_psd() {
        return Err(EngineError::NoInterior("translated constant term is not PSD".into()));
    }
    if !l2t.coeff(1).is_psd() {
        return Err(EngineError::PositivityFailed {
            witness: "L2's slope is not PSD although the region is unbounded above".into(),
        });
    }
    if !l2t.constant().is_psd() {
        return Err(EngineError::PositivityFailed {
            witness: format!("L2 is not PSD at the feasible point {}", fmt_rat(&a)),
        });
    }

    // diagonalize the source pair
    let (s1, exact1) = if l1t.is_diagonal() {
        (Mat::<Rat>::identity(l1.d()), true)
    } else {
        let sim = simultaneous_diag_psd(l1t.constant(), l1t.coeff(1), 1e-9)
            .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
        (crate::sdp::mat_to_exact(&sim.s), false)
    };
    // diagonalize the target pair
    let (s2, exact2) = if l2t.is_diagonal() {
        (Mat::<Rat>::identity(l2.d()), true)
    } else {
        let sim = simultaneous_diag_psd(l2t.constant(), l2t.coeff(1), 1e-9)
            .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
        (crate::sdp::mat_to_exact(&sim.s), false)
    };

    // diagonal entries of the conjugated pencils, exactly
    let l1d = l1t.conjugate(&s1);
    let l2d = l2t.conjugate(&s2);
    let source_entries: Vec<AffineFunctional> = (0..l1.d())
        .map(|j| {
            AffineFunctional::new(
                l1d.constant().at(j, j).clone(),
                vec![l1d.coeff(1).at(j, j).clone()],
            )
        })
        .collect();
    let targets: Vec<AffineFunctional> = (0..l2.d())
        .map(|t| {
            AffineFunctional::new(
                l2d.constant().at(t, t).clone(),
                vec![l2d.coeff(1).at(t, t).clone()],
            )
        })
        .collect();
    let region = crate::affine::Polyhedron::new(1, source_entries);

    let s2_inv_t = s2
        .inverse()
        .map_err(|_| EngineError::PreconditionFailed("singular diagonalizer".into()))?
        .transpose();

    let mut cert = Certificate::empty(l1.d(), l2.d(), 1);
    let max_slack = if exact1 && exact2 { 0.0 } else { 1e-7 };
    for (t, h) in targets.iter().enumerate() {
        let (fc, _slack) = farkas_with_slack(&region, h, max_slack)?;
        let u_t = s2_inv_t.col(t);
        if !fc.c0.is_zero() {
            cert.push_sos(fc.c0.clone(), single_row_poly(&u_t, 1));
        }
        for (j, c) in fc.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // B = (S1 e_j) u_t^T conjugates L1 onto g_j(x) u_t u_t^T
            let col = s1.col(j);
            let b = Mat::from_fn(l1.d(), l2.d(), |r, cc| col[r].clone() * u_t[cc].clone());
            cert.push_pencil(c.clone(), MatrixPoly::constant(b, 1));
        }
    }

    let pulled = pull_back(&cert, &Mat::identity(1), &[a])
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    Ok(Draft { cert: pulled, exact: exact1 && exact2 })
}

/// Bounded interval with interior: translate an interior point to the
/// origin, reduce both pencils exactly, and run the constant search.
fn bounded_interval_case(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
) -> Result<Draft, EngineError> {
    let Some(x0) = rational_interior_point(l1) else {
        return Err(EngineError::NoInterior(
            "no rational interior point found; the region may be a single point or empty".into(),
        ));
    };
    let l1t = l1.translate(&[x0.clone()]).expect("one var");
    let l2t = l2.translate(&[x0.clone()]).expect("one var");

    let red1 = monic_reduce(&l1t, ReductionBackend::ExactScaled)?;
    let MonicReduction::Exact { reduced: r1, c: c1, .. } = red1 else {
        unreachable!("exact backend requested")
    };
    let red2 = match monic_reduce(&l2t, ReductionBackend::ExactScaled) {
        Ok(MonicReduction::Exact { reduced, c, dmat }) => (reduced, c, dmat),
        Ok(MonicReduction::Approx { .. }) => unreachable!("exact backend requested"),
        Err(EngineError::NotInterior(msg)) => {
            return Err(EngineError::PositivityFailed {
                witness: format!(
                    "L2 fails the interior-point shape at x = {}: {msg}",
                    fmt_rat(&x0)
                ),
            })
        }
        Err(e) => return Err(e),
    };
    let (r2, _c2, d2) = red2;

    let outcome = constant_certificate_search(&r1, &r2, cfg.tol);
    let found = search_to_draft(outcome)?;
    // transport: L2t = D2^T r2 D2 and r1 = C1^T L1t C1
    let mapped = conjugate_factors(&found.cert, Some(&c1), Some(&d2), l1t.d(), l2t.d());
    let pulled = pull_back(&mapped, &Mat::identity(1), &[x0])
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    Ok(Draft { cert: pulled, exact: found.exact })
}

/// Rational interior point of a one-variable region: a feasible point whose
/// two-sided neighbors at some dyadic radius are feasible too.
fn rational_interior_point(l1: &LinearPencil) -> Option<Rat> {
    let base = rational_feasible_point(l1)?;
    let mut radius = Rat::one();
    for _ in 0..80 {
        let lo = base.clone() - radius.clone();
        let hi = base.clone() + radius.clone();
        if l1.membership(&[lo]).unwrap_or(false) && l1.membership(&[hi]).unwrap_or(false) {
            return Some(base);
        }
        radius = radius / (Rat::one() + Rat::one());
    }
    // the base point may sit on the boundary; nudge inward along feasibility
    let lf = l1.to_f64();
    let f = |x: f64| min_eigenvalue(lf.eval_point(&[x]).expect("one var").mat());
    let b = base.approx();
    for step in [1.0, 0.5, 0.25, 0.1, 0.05, 0.01, 1e-3, 1e-4] {
        for dir in [1.0, -1.0] {
            let x = b + dir * step;
            if f(x) <= 0.0 {
                continue;
            }
            for den in [2u64, 4, 8, 64, 1024, 1 << 16] {
                if let Some(q) = crate::scalar::rationalize(x, den) {
                    let ok = |p: &Rat| l1.membership(std::slice::from_ref(p)).unwrap_or(false);
                    let eps = ratio(1, 1 << 20);
                    if ok(&q) && ok(&(q.clone() - eps.clone())) && ok(&(q.clone() + eps)) {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// simplex case

/// Simplex region: express the facet pencil over L1 by scalar Farkas, shift
/// an interior point to the origin, reduce the target, search for a constant
/// certificate, and compose everything back.
pub fn certify_simplex(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
) -> Result<CertificateDoc, EngineError> {
    certify_simplex_with_path(l1, l2, cfg, EnginePath::Simplex)
}

fn certify_simplex_with_path(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
    path: EnginePath,
) -> Result<CertificateDoc, EngineError> {
    if !l1.is_diagonal() {
        return Err(EngineError::NotDiagonal);
    }
    let region = l1.region().expect("diagonal");
    let (is_simplex, facets) = simplex_check(&region);
    if !is_simplex {
        return Err(EngineError::NotSimplex);
    }
    // non-strict positivity: PSD at the vertices suffices by concavity
    match pencil_nonneg_on_region(l2, &region)
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?
    {
        Ok(()) => {}
        Err(PositivityWitness::Vertex(v)) => {
            return Err(EngineError::PositivityFailed {
                witness: format!(
                    "L2 is not PSD at the vertex ({})",
                    v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
                ),
            })
        }
        Err(PositivityWitness::Ray(_)) => unreachable!("simplices are bounded"),
    }

    let n = l1.n();
    let facet_fns: Vec<AffineFunctional> =
        facets.iter().map(|&i| region.constraints[i].clone()).collect();
    let facet_pencil = Pencil::from_constraints(n, &facet_fns);

    // inner: the facet pencil over L1
    let inner = diagonal_over_diagonal(l1, &facet_fns, None, 0.0)?;

    // interior point to the origin
    let cls = classify(&region);
    let v0 = cls.interior_point.clone().expect("simplices have interior");
    let ft = facet_pencil.translate(&v0).expect("dimensions agree");
    let l2t = l2.translate(&v0).expect("dimensions agree");

    // reduce the target through the image of its constant term
    let red2 = match monic_reduce(&l2t, ReductionBackend::ExactScaled) {
        Ok(MonicReduction::Exact { reduced, c, dmat }) => (reduced, c, dmat),
        Ok(MonicReduction::Approx { .. }) => unreachable!("exact backend requested"),
        Err(EngineError::NotInterior(msg)) => {
            return Err(EngineError::PositivityFailed {
                witness: format!("L2 fails the interior-point shape on the simplex: {msg}"),
            })
        }
        Err(e) => return Err(e),
    };
    let (r2, _c2, d2) = red2;

    let outcome = constant_certificate_search(&ft, &r2, cfg.tol);
    let found = search_to_draft(outcome)?;
    let mapped = conjugate_factors(&found.cert, None, Some(&d2), ft.d(), l2t.d());
    let pulled = pull_back(&mapped, &Mat::identity(n), &v0)
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    let composed = compose(&pulled, &inner)
        .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
    finish(l1, l2, Draft { cert: composed, exact: found.exact }, path, cfg)
}

// ---------------------------------------------------------------------------
// dispatcher

/// Tries the constructive paths in a fixed priority order, falling back to a
/// degree-capped Choi search. Every returned certificate has been verified.
pub fn certify_auto(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
) -> Result<CertifyOutcome, EngineError> {
    let mut declined: Vec<String> = Vec::new();

    if l1 == l2 {
        let cert = Certificate::<Rat>::identity(l1.d(), l1.n());
        let doc = finish(l1, l2, Draft::exact(cert), EnginePath::SdpFallback, cfg)?;
        return Ok(CertifyOutcome { doc, path: EnginePath::SdpFallback });
    }

    if l1.is_diagonal() {
        let region = l1.region().expect("diagonal");
        let cls = classify(&region);
        match cls.kind {
            RegionKind::Empty => {
                let draft = empty_region_cert(l1, l2, cfg)?;
                let doc = finish(l1, l2, draft, EnginePath::EmptyRegion, cfg)?;
                return Ok(CertifyOutcome { doc, path: EnginePath::EmptyRegion });
            }
            RegionKind::Singleton(_) => {
                let doc = certify_singleton(l1, l2, cfg)?;
                return Ok(CertifyOutcome { doc, path: EnginePath::Singleton });
            }
            RegionKind::Bounded { dim } => {
                let (is_simplex, _) = simplex_check(&region);
                let algebra = crate::region::algebra_closure_check(l1.coeffs())
                    .map(|a| a.closed && a.separates)
                    .unwrap_or(false);
                if is_simplex {
                    match certify_simplex_with_path(l1, l2, cfg, EnginePath::Simplex) {
                        Ok(doc) => return Ok(CertifyOutcome { doc, path: EnginePath::Simplex }),
                        Err(e @ EngineError::PositivityFailed { .. }) => return Err(e),
                        Err(e) => declined.push(format!("simplex: {e}")),
                    }
                } else if algebra && dim == l1.n() {
                    // closure of the span promises a simplex; if the facet
                    // count disagrees there is redundancy we do not reduce
                    match certify_simplex_with_path(l1, l2, cfg, EnginePath::AlgebraSpan) {
                        Ok(doc) => {
                            return Ok(CertifyOutcome { doc, path: EnginePath::AlgebraSpan })
                        }
                        Err(e) => declined.push(format!("algebra_span: {e}")),
                    }
                }
                match certify_diagonal_bounded(l1, l2, cfg) {
                    Ok(doc) => {
                        let path = if dim == l1.n() {
                            EnginePath::DiagonalBounded
                        } else {
                            EnginePath::LowerDimensional
                        };
                        return Ok(CertifyOutcome { doc, path });
                    }
                    Err(e @ EngineError::PositivityFailed { .. }) if !is_simplex => {
                        // strictness failed; the fallback may still certify
                        declined.push(format!("diagonal_bounded: {e}"));
                    }
                    Err(e) => declined.push(format!("diagonal_bounded: {e}")),
                }
            }
            RegionKind::Unbounded { .. } => {
                declined.push("diagonal paths: region is unbounded".into());
            }
        }
    } else {
        declined.push("constructive diagonal paths: pencil is not diagonal".into());
    }

    if l1.n() == 1 {
        match certify_one_variable(l1, l2, cfg) {
            Ok(doc) => {
                let path = doc
                    .provenance()
                    .iter()
                    .rev()
                    .find_map(|p| match p.as_str() {
                        "one_variable_bounded" => Some(EnginePath::OneVariableBounded),
                        "one_variable_half_line" => Some(EnginePath::OneVariableHalfLine),
                        "one_variable_full_line" => Some(EnginePath::OneVariableFullLine),
                        _ => None,
                    })
                    .unwrap_or(EnginePath::OneVariableBounded);
                return Ok(CertifyOutcome { doc, path });
            }
            Err(e @ EngineError::PositivityFailed { .. }) => return Err(e),
            Err(e) => declined.push(format!("one_variable: {e}")),
        }
    }

    // degree-capped search fallback; the exact dual-witness hunt runs only
    // at degree 0, higher degrees rely on their exact facial traces
    let mut last: Option<EngineError> = None;
    for degree in 0..=cfg.degree_cap {
        let sdp_cfg = SdpConfig { hunt_witness: degree == 0, ..cfg.sdp() };
        match degree_bounded_search(l1, l2, degree, &sdp_cfg) {
            SearchOutcome::Certificate(doc) => {
                // already verified inside the search; re-check at this level
                let report = doc
                    .verify(l1, l2, cfg.tol)
                    .map_err(|e| EngineError::PreconditionFailed(e.to_string()))?;
                if report.pass {
                    return Ok(CertifyOutcome { doc, path: EnginePath::SdpFallback });
                }
                last = Some(EngineError::Unknown(format!(
                    "degree {degree} candidate failed verification with residual {}",
                    report.residual
                )));
            }
            SearchOutcome::Infeasible(report) => {
                last = Some(EngineError::Infeasible(report));
            }
            SearchOutcome::Unknown(msg) => {
                if !matches!(last, Some(EngineError::Infeasible(_))) {
                    last = Some(EngineError::Unknown(msg));
                }
            }
        }
    }
    match last {
        Some(e) => Err(e),
        None => Err(EngineError::NoPathFound(declined.join("; "))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::mat::{mat_i64, sym_i64};
    use crate::matpoly::Monomial;

    fn diag_pencil(consts: &[i64], lins: &[&[i64]]) -> LinearPencil {
        let mut coeffs = vec![SymMatrix::diag(
            &consts.iter().map(|&v| rat(v)).collect::<Vec<_>>(),
        )];
        for l in lins {
            coeffs.push(SymMatrix::diag(&l.iter().map(|&v| rat(v)).collect::<Vec<_>>()));
        }
        Pencil::new(coeffs).unwrap()
    }

    #[test]
    fn monic_reduce_examples() {
        // already monic: identity reduction
        let l1 = instances::boundedness_l1();
        match monic_reduce(&l1, ReductionBackend::Auto).unwrap() {
            MonicReduction::Exact { reduced, c, dmat } => {
                assert_eq!(reduced, l1);
                assert_eq!(c, Mat::identity(3));
                assert_eq!(dmat, Mat::identity(3));
            }
            _ => panic!("diagonal constant term must reduce exactly"),
        }

        // diag(4+x, 1-x): exact-scaled keeps the positive diagonal
        let l = diag_pencil(&[4, 1], &[&[1, -1]]);
        match monic_reduce(&l, ReductionBackend::ExactScaled).unwrap() {
            MonicReduction::Exact { reduced, .. } => {
                assert_eq!(reduced, l);
            }
            _ => panic!("exact backend requested"),
        }
        // the approx backend makes it literally monic
        match monic_reduce(&l, ReductionBackend::ApproxMonic).unwrap() {
            MonicReduction::Approx { reduced, residual, .. } => {
                assert!(residual <= 1e-10, "residual {residual}");
                let p0 = reduced.constant();
                for i in 0..2 {
                    assert!((p0.at(i, i) - 1.0).abs() <= 1e-12);
                }
                assert!((reduced.coeff(1).at(0, 0) - 0.25).abs() <= 1e-12);
                assert!((reduced.coeff(1).at(1, 1) + 1.0).abs() <= 1e-12);
            }
            _ => panic!("approx backend requested"),
        }

        // the no-interior counterexample fails the image condition
        let e2 = instances::interior_l1();
        assert!(matches!(
            monic_reduce(&e2, ReductionBackend::Auto),
            Err(EngineError::NotInterior(_))
        ));
    }

    #[test]
    fn monic_reduce_rank_deficient() {
        // P0 = diag(1, 0) with P1 supported on the image: restricts to 1x1
        let l = Pencil::new(vec![
            SymMatrix::diag(&[rat(1), rat(0)]),
            SymMatrix::diag(&[rat(1), rat(0)]),
        ])
        .unwrap();
        match monic_reduce(&l, ReductionBackend::ExactScaled).unwrap() {
            MonicReduction::Exact { reduced, c, dmat } => {
                assert_eq!(reduced.d(), 1);
                // round trip identities
                assert_eq!(l.conjugate(&c), reduced);
                assert_eq!(reduced.conjugate(&dmat), l);
                // membership agreement on sample points
                for v in [-2i64, -1, 0, 1, 3] {
                    assert_eq!(
                        l.membership(&[rat(v)]).unwrap(),
                        reduced.membership(&[rat(v)]).unwrap()
                    );
                }
            }
            _ => panic!("exact"),
        }
    }

    #[test]
    fn express_symmetric_examples() {
        let check = |a: &SymMatrix<Rat>| {
            let terms = express_symmetric_via_pm(a);
            // sum w B^T diag(x,-x) B must equal A*x as a polynomial
            let pm = pm_pencil(0, 1);
            let mut cert = Certificate::<Rat>::empty(2, a.dim(), 1);
            for (w, b) in &terms {
                cert.push_pencil(w.clone(), MatrixPoly::constant(b.clone(), 1));
            }
            let expansion = cert.expand(&pm).unwrap();
            let mut expected = MatrixPoly::zero(a.dim(), a.dim(), 1);
            expected.add_term(Monomial::var(0, 1), a.mat().clone());
            assert_eq!(expansion, expected, "failed on {a:?}");
            terms
        };

        let one = SymMatrix::diag(&[rat(1)]);
        let terms = check(&one);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, rat(1));
        assert_eq!(*terms[0].1.at(0, 0), rat(1));
        assert_eq!(*terms[0].1.at(1, 0), rat(0));

        let neg = SymMatrix::diag(&[rat(-1)]);
        let terms = check(&neg);
        assert_eq!(terms.len(), 1);
        assert_eq!(*terms[0].1.at(1, 0), rat(1));

        let swap = sym_i64(&[&[0, 1], &[1, 0]]);
        let terms = check(&swap);
        assert_eq!(terms.len(), 2);
    }

    #[test]
    fn certify_singleton_examples() {
        // L1 = diag(x, -x), L2 = x
        let l1 = diag_pencil(&[0, 0], &[&[1, -1]]);
        let l2 = diag_pencil(&[0], &[&[1]]);
        let doc = certify_singleton(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(matches!(doc, CertificateDoc::Exact(_)));
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);

        // four-constraint singleton with a matrix target
        let l1 = diag_pencil(&[0, 0, 0, 0], &[&[1, -1, 0, 0], &[0, 0, 1, -1]]);
        let mut r1 = SymMatrix::zeros(2);
        r1.set_sym(0, 1, rat(2));
        let l2 = Pencil::new(vec![
            SymMatrix::identity(2),
            r1,
            sym_i64(&[&[1, 0], &[0, -3]]),
        ])
        .unwrap();
        let doc = certify_singleton(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);

        // a target that is negative at the point is rejected
        let bad = diag_pencil(&[-1], &[&[1], &[0]]);
        assert!(matches!(
            certify_singleton(&l1, &bad, &EngineConfig::default()),
            Err(EngineError::PositivityFailed { .. })
        ));
    }

    #[test]
    fn certify_singleton_off_origin() {
        // region {2}: diag(x-2, 2-x); L2 = [[x, 0], [0, 4-x]] is PSD at 2
        let l1 = diag_pencil(&[-2, 2], &[&[1, -1]]);
        let l2 = Pencil::new(vec![
            SymMatrix::diag(&[rat(0), rat(4)]),
            SymMatrix::diag(&[rat(1), rat(-1)]),
        ])
        .unwrap();
        let doc = certify_singleton(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(matches!(doc, CertificateDoc::Exact(_)));
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);
    }

    #[test]
    fn empty_region_certificate() {
        // {x - 1 >= 0, -x >= 0} is empty; any symmetric L2 certifies
        let l1 = diag_pencil(&[-1, 0], &[&[1, -1]]);
        let l2 = Pencil::new(vec![
            sym_i64(&[&[0, 2], &[2, -5]]),
            sym_i64(&[&[1, 1], &[1, 0]]),
        ])
        .unwrap();
        let doc = certify_diagonal_bounded(&l1, &l2, &EngineConfig::default()).unwrap();
        let CertificateDoc::Exact(c) = &doc else { panic!("empty path is exact") };
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);
        assert_eq!(c.degree(), 1);
    }

    #[test]
    fn certify_diagonal_bounded_interval() {
        // L1 = diag(1+x, 1-x), L2 = 3+x: exact diagonal shortcut
        let l1 = diag_pencil(&[1, 1], &[&[1, -1]]);
        let l2 = diag_pencil(&[3], &[&[1]]);
        let doc = certify_diagonal_bounded(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(matches!(doc, CertificateDoc::Exact(_)));
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);
        assert_eq!(doc.degree(), 0);
    }

    #[test]
    fn certify_diagonal_bounded_matrix_target() {
        // square region, non-diagonal strictly positive target
        let l1 = diag_pencil(&[1, 1, 1, 1], &[&[1, -1, 0, 0], &[0, 0, 1, -1]]);
        let mut r0 = SymMatrix::identity(2).scale(&rat(4));
        r0.set_sym(0, 1, rat(1));
        let l2 = Pencil::new(vec![
            r0,
            sym_i64(&[&[1, 0], &[0, 0]]),
            sym_i64(&[&[0, 0], &[0, 1]]),
        ])
        .unwrap();
        let doc = certify_diagonal_bounded(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);
    }

    #[test]
    fn certify_lower_dimensional() {
        // L1 = diag(x1, -x1, 1+x2, 1-x2): the segment {0} x [-1, 1]
        let l1 = diag_pencil(
            &[0, 0, 1, 1],
            &[&[1, -1, 0, 0], &[0, 0, 1, -1]],
        );
        // strictly positive L2 on the segment: 3 - x2 + x1 (scalar)
        let l2 = diag_pencil(&[3], &[&[1], &[-1]]);
        let doc = certify_diagonal_bounded(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);
        let provenance = doc.provenance().join(",");
        assert!(provenance.contains("lower_dimensional"), "{provenance}");
    }

    #[test]
    fn one_variable_half_line() {
        // L1 = x on [0, inf), L2 = 2x
        let l1 = diag_pencil(&[0], &[&[1]]);
        let l2 = diag_pencil(&[0], &[&[2]]);
        let doc = certify_one_variable(&l1, &l2, &EngineConfig::default()).unwrap();
        let CertificateDoc::Exact(c) = &doc else { panic!("diagonal half line is exact") };
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);
        assert_eq!(c.pencil_terms.len(), 1);
        assert_eq!(c.pencil_terms[0].weight, rat(2));
    }

    #[test]
    fn one_variable_half_line_matrix() {
        // non-diagonal PSD pair on a half line
        let p0 = sym_i64(&[&[2, 1], &[1, 2]]);
        let p1 = sym_i64(&[&[1, 1], &[1, 1]]);
        let l1 = Pencil::new(vec![p0, p1]).unwrap();
        // synthesized target: L2 = B^T L1 B + I for a constant B
        let b = mat_i64(&[&[1, 0], &[1, 1]]);
        let mut coeffs = Vec::new();
        for i in 0..2 {
            let conj = l1.coeff(i).conjugate(&b);
            coeffs.push(if i == 0 { conj.add(&SymMatrix::identity(2)) } else { conj });
        }
        let l2 = Pencil::new(coeffs).unwrap();
        let doc = certify_one_variable(&l1, &l2, &EngineConfig::default()).unwrap();
        let report = doc.verify(&l1, &l2, 1e-8).unwrap();
        assert!(report.pass, "residual {}", report.residual);
    }

    #[test]
    fn one_variable_down_half_line() {
        // L1 = -x on (-inf, 0], L2 = 1 - x
        let l1 = diag_pencil(&[0], &[&[-1]]);
        let l2 = diag_pencil(&[1], &[&[-1]]);
        let doc = certify_one_variable(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);
    }

    #[test]
    fn one_variable_full_line() {
        let l1 = Pencil::new(vec![sym_i64(&[&[2, 1], &[1, 1]]), SymMatrix::zeros(2)]).unwrap();
        let l2 = Pencil::new(vec![sym_i64(&[&[1, 1], &[1, 1]]), SymMatrix::zeros(2)]).unwrap();
        let doc = certify_one_variable(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(matches!(doc, CertificateDoc::Exact(_)));
        assert!(doc.verify(&l1, &l2, 1e-8).unwrap().pass);

        // nonzero slope on the full line is rejected
        let bad = diag_pencil(&[0, 0], &[&[1, 0]]);
        let l1f = Pencil::new(vec![SymMatrix::identity(2), SymMatrix::zeros(2)]).unwrap();
        assert!(matches!(
            certify_one_variable(&l1f, &bad, &EngineConfig::default()),
            Err(EngineError::PositivityFailed { .. })
        ));
    }

    #[test]
    fn one_variable_bounded_matrix_pair() {
        // L1 = diag(1+x, 1-x), L2 = [[1, x], [x, 1]]
        let l1 = diag_pencil(&[1, 1], &[&[1, -1]]);
        let mut r1 = SymMatrix::zeros(2);
        r1.set_sym(0, 1, rat(1));
        let l2 = Pencil::new(vec![SymMatrix::identity(2), r1]).unwrap();
        let doc = certify_one_variable(&l1, &l2, &EngineConfig::default()).unwrap();
        let report = doc.verify(&l1, &l2, 1e-8).unwrap();
        assert!(report.pass, "residual {}", report.residual);
    }

    #[test]
    fn certify_simplex_examples() {
        let l1 = instances::standard_simplex_pencil();
        // L2 = x1 + x2, scalar
        let l2 = Pencil::new(vec![
            SymMatrix::zeros(1),
            SymMatrix::identity(1),
            SymMatrix::identity(1),
        ])
        .unwrap();
        let doc = certify_simplex(&l1, &l2, &EngineConfig::default()).unwrap();
        let report = doc.verify(&l1, &l2, 1e-6).unwrap();
        assert!(report.pass, "residual {}", report.residual);

        // L2 = I2 * (1 - x1 - x2)
        let l2 = Pencil::new(vec![
            SymMatrix::identity(2),
            SymMatrix::identity(2).neg(),
            SymMatrix::identity(2).neg(),
        ])
        .unwrap();
        let doc = certify_simplex(&l1, &l2, &EngineConfig::default()).unwrap();
        assert!(doc.verify(&l1, &l2, 1e-6).unwrap().pass);

        // the square is not a simplex
        let square = diag_pencil(&[0, 1, 0, 1], &[&[1, -1, 0, 0], &[0, 0, 1, -1]]);
        let one = diag_pencil(&[1], &[&[0], &[0]]);
        assert!(matches!(
            certify_simplex(&square, &one, &EngineConfig::default()),
            Err(EngineError::NotSimplex)
        ));
    }

    #[test]
    fn certify_auto_identity() {
        let l1 = instances::boundedness_l1();
        let out = certify_auto(&l1, &l1, &EngineConfig::default()).unwrap();
        assert!(out.doc.verify(&l1, &l1, 1e-8).unwrap().pass);
        assert!(out.doc.provenance().iter().any(|p| p == "identity"));
    }

    #[test]
    fn certify_auto_counterexample_infeasible() {
        let (l1, l2) = instances::boundedness_pair();
        match certify_auto(&l1, &l2, &EngineConfig::default()) {
            Err(EngineError::Infeasible(report)) => {
                assert_eq!(report.degree_cap, 2);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn certify_auto_routes_simplex() {
        let l1 = instances::standard_simplex_pencil();
        let l2 = Pencil::new(vec![
            SymMatrix::zeros(1),
            SymMatrix::identity(1),
            SymMatrix::identity(1),
        ])
        .unwrap();
        let out = certify_auto(&l1, &l2, &EngineConfig::default()).unwrap();
        assert_eq!(out.path, EnginePath::Simplex);
        assert!(out.doc.verify(&l1, &l2, 1e-6).unwrap().pass);
    }
}
