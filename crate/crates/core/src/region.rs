//! Geometric classification of polyhedra cut out by diagonal pencils:
//! emptiness, affine hull and dimension, boundedness, relative interior
//! points, irredundant facets, vertex/ray enumeration, and exact pencil
//! positivity over a region.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::affine::{AffineFunctional, Polyhedron};
use crate::lp::{lp_solve, LpOutcome, Sense};
use crate::mat::{Mat, SymMatrix};
use crate::pencil::LinearPencil;
use crate::scalar::{fmt_rat, Rat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegionError {
    #[error("instance exceeds the desk-scale cap (n <= {max_n}, constraints <= {max_k})")]
    TooLarge { max_n: usize, max_k: usize },
    #[error("matrices must be diagonal")]
    NotDiagonal,
}

pub const VERTEX_CAP_N: usize = 4;
pub const VERTEX_CAP_K: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RegionKind {
    Empty,
    Singleton(Vec<String>),
    Bounded { dim: usize },
    Unbounded { dim: usize },
}

/// Full classification of a polyhedron. The affine hull is a base point plus
/// direction vectors; `interior_point` is relative to the hull.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionClassification {
    pub kind: RegionKind,
    pub affine_hull: Option<(Vec<Rat>, Vec<Vec<Rat>>)>,
    pub interior_point: Option<Vec<Rat>>,
    /// Indices of an irredundant subsystem.
    pub facets: Vec<usize>,
}

impl RegionClassification {
    pub fn to_json(&self) -> serde_json::Value {
        let kind = match &self.kind {
            RegionKind::Empty => serde_json::json!({"kind": "empty"}),
            RegionKind::Singleton(p) => serde_json::json!({"kind": "singleton", "point": p}),
            RegionKind::Bounded { dim } => serde_json::json!({"kind": "bounded", "dim": dim}),
            RegionKind::Unbounded { dim } => serde_json::json!({"kind": "unbounded", "dim": dim}),
        };
        serde_json::json!({
            "kind": kind["kind"],
            "point": kind.get("point").cloned().unwrap_or(serde_json::Value::Null),
            "dim": self.dim(),
            "interior_point": self.interior_point.as_ref().map(|p| p.iter().map(fmt_rat).collect::<Vec<_>>()),
            "facets": self.facets,
        })
    }

    pub fn dim(&self) -> Option<usize> {
        match &self.kind {
            RegionKind::Empty => None,
            RegionKind::Singleton(_) => Some(0),
            RegionKind::Bounded { dim } | RegionKind::Unbounded { dim } => Some(*dim),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.kind, RegionKind::Empty)
    }

    pub fn is_bounded(&self) -> bool {
        matches!(
            self.kind,
            RegionKind::Empty | RegionKind::Singleton(_) | RegionKind::Bounded { .. }
        )
    }
}

/// Classifies a polyhedron with exact LPs: emptiness, implicit equalities
/// giving the affine hull, recession-cone probes for boundedness, and a
/// max-min-slack LP for a relative interior point.
pub fn classify(region: &Polyhedron) -> RegionClassification {
    let n = region.n;
    let zero_obj = AffineFunctional::constant(Rat::zero(), n);
    if !lp_solve(&zero_obj, region, Sense::Max).is_feasible() {
        return RegionClassification {
            kind: RegionKind::Empty,
            affine_hull: None,
            interior_point: None,
            facets: Vec::new(),
        };
    }

    // implicit equalities: f_i == 0 on the whole region
    let mut implicit = Vec::new();
    for (i, f) in region.constraints.iter().enumerate() {
        if f.is_constant() {
            if f.a0.is_zero() {
                implicit.push(i);
            }
            continue;
        }
        if let LpOutcome::Optimal { value, .. } = lp_solve(f, region, Sense::Max) {
            if value.is_zero() {
                implicit.push(i);
            }
        }
    }

    // hull directions: kernel of the implicit-equality gradients
    let directions = if implicit.is_empty() {
        Mat::<Rat>::zeros(0, n).kernel_basis()
    } else {
        Mat::from_rows(
            implicit
                .iter()
                .map(|&i| region.constraints[i].linear.clone())
                .collect(),
        )
        .expect("gradient rows are rectangular")
        .kernel_basis()
    };
    let dim = directions.len();

    let interior = relative_interior_point(region, &implicit);
    debug_assert!(region.contains(&interior));

    let bounded = is_recession_trivial(region);
    let kind = if dim == 0 {
        RegionKind::Singleton(interior.iter().map(fmt_rat).collect())
    } else if bounded {
        RegionKind::Bounded { dim }
    } else {
        RegionKind::Unbounded { dim }
    };

    let facets = irredundant_constraints(region);
    RegionClassification {
        kind,
        affine_hull: Some((interior.clone(), directions)),
        interior_point: Some(interior),
        facets,
    }
}

/// Max-min-slack LP over (x, t): maximize t subject to f_i(x) >= t for
/// non-implicit constraints, f_i(x) == 0 for implicit ones, t <= 1.
fn relative_interior_point(region: &Polyhedron, implicit: &[usize]) -> Vec<Rat> {
    let n = region.n;
    let vars = n + 1;
    let mut constraints = Vec::new();
    for (i, f) in region.constraints.iter().enumerate() {
        let mut lin = f.linear.clone();
        if implicit.contains(&i) {
            lin.push(Rat::zero());
            let eq = AffineFunctional::new(f.a0.clone(), lin);
            constraints.push(eq.clone());
            constraints.push(eq.neg());
        } else {
            lin.push(-Rat::one());
            constraints.push(AffineFunctional::new(f.a0.clone(), lin));
        }
    }
    // t <= 1 keeps the slack objective bounded
    let mut lin = vec![Rat::zero(); n];
    lin.push(-Rat::one());
    constraints.push(AffineFunctional::new(Rat::one(), lin));

    let feas = Polyhedron::new(vars, constraints);
    let mut obj_lin = vec![Rat::zero(); n];
    obj_lin.push(Rat::one());
    let obj = AffineFunctional::new(Rat::zero(), obj_lin);
    match lp_solve(&obj, &feas, Sense::Max) {
        LpOutcome::Optimal { point, value, .. } => {
            debug_assert!(
                !value.is_negative(),
                "feasible region must admit non-negative slack"
            );
            point[..n].to_vec()
        }
        other => unreachable!("slack LP is feasible and bounded: {other:?}"),
    }
}

/// The recession cone {d : grad f_i . d >= 0} is trivial iff each coordinate
/// maxes out at zero in both directions.
fn is_recession_trivial(region: &Polyhedron) -> bool {
    let n = region.n;
    let homo: Vec<AffineFunctional> = region
        .constraints
        .iter()
        .map(|f| AffineFunctional::new(Rat::zero(), f.linear.clone()))
        .collect();
    for j in 0..n {
        for sign in [Rat::one(), -Rat::one()] {
            let mut cons = homo.clone();
            // d_j * sign <= 1 caps the probe
            let mut lin = vec![Rat::zero(); n];
            lin[j] = -sign.clone();
            cons.push(AffineFunctional::new(Rat::one(), lin));
            let cone = Polyhedron::new(n, cons);
            let mut obj_lin = vec![Rat::zero(); n];
            obj_lin[j] = sign.clone();
            let obj = AffineFunctional::new(Rat::zero(), obj_lin);
            match lp_solve(&obj, &cone, Sense::Max) {
                LpOutcome::Optimal { value, .. } => {
                    if value.is_positive() {
                        return false;
                    }
                }
                LpOutcome::Unbounded { .. } => return false,
                LpOutcome::Infeasible { .. } => unreachable!("0 is in every recession cone"),
            }
        }
    }
    true
}

/// Sequential irredundancy sweep: constraint i is redundant iff the minimum
/// of f_i over the region without it is still non-negative.
fn irredundant_constraints(region: &Polyhedron) -> Vec<usize> {
    let mut active: Vec<usize> = (0..region.constraints.len()).collect();
    let mut i = 0;
    while i < active.len() {
        let idx = active[i];
        let others: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&j| j != idx)
            .collect();
        let sub = region.restrict_to(&others);
        let redundant = match lp_solve(&region.constraints[idx], &sub, Sense::Min) {
            LpOutcome::Optimal { value, .. } => !value.is_negative(),
            LpOutcome::Unbounded { .. } => false,
            LpOutcome::Infeasible { .. } => true, // empty without it: still implied
        };
        if redundant {
            active.remove(i);
        } else {
            i += 1;
        }
    }
    active
}

/// Vertices and extreme rays of a desk-scale polyhedron.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Rat>>,
}

/// Exhaustive basic-feasible-solution enumeration over constraint subsets of
/// size n, plus extreme rays from subsets of size n-1.
pub fn vertices(region: &Polyhedron) -> Result<VertexSet, RegionError> {
    let n = region.n;
    let k = region.constraints.len();
    if n > VERTEX_CAP_N || k > VERTEX_CAP_K {
        return Err(RegionError::TooLarge { max_n: VERTEX_CAP_N, max_k: VERTEX_CAP_K });
    }

    let mut verts: Vec<Vec<Rat>> = Vec::new();
    for subset in subsets(k, n) {
        let a = Mat::from_rows(
            subset
                .iter()
                .map(|&i| region.constraints[i].linear.clone())
                .collect(),
        )
        .expect("rectangular");
        let b: Vec<Rat> = subset
            .iter()
            .map(|&i| -region.constraints[i].a0.clone())
            .collect();
        if a.rank() < n {
            continue;
        }
        if let Some(x) = a.solve(&b) {
            if region.contains(&x) && !verts.contains(&x) {
                verts.push(x);
            }
        }
    }

    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for subset in subsets(k, n.saturating_sub(1)) {
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| region.constraints[i].linear.clone())
            .collect();
        let kernel = if rows.is_empty() {
            if n == 1 {
                vec![vec![Rat::one()]]
            } else {
                continue;
            }
        } else {
            Mat::from_rows(rows).expect("rectangular").kernel_basis()
        };
        if kernel.len() != 1 {
            continue;
        }
        for sign in [Rat::one(), -Rat::one()] {
            let d: Vec<Rat> = kernel[0].iter().map(|v| v.clone() * sign.clone()).collect();
            let in_cone = region.constraints.iter().all(|f| {
                f.linear
                    .iter()
                    .zip(&d)
                    .fold(Rat::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
                    >= Rat::zero()
            });
            if in_cone {
                let nd = normalize_ray(&d);
                if !rays.contains(&nd) {
                    rays.push(nd);
                }
            }
        }
    }

    Ok(VertexSet { vertices: verts, rays })
}

fn normalize_ray(d: &[Rat]) -> Vec<Rat> {
    let scale = d
        .iter()
        .find(|v| !v.is_zero())
        .map(|v| v.abs())
        .unwrap_or_else(Rat::one);
    d.iter().map(|v| v.clone() / scale.clone()).collect()
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    rec(0, k, size, &mut cur, &mut out);
    out
}

/// True iff the region is a full-dimensional bounded polyhedron with exactly
/// n+1 irredundant constraints; returns the facet indices alongside.
pub fn simplex_check(region: &Polyhedron) -> (bool, Vec<usize>) {
    let cls = classify(region);
    let ok = matches!(cls.kind, RegionKind::Bounded { dim } if dim == region.n)
        && cls.facets.len() == region.n + 1;
    (ok, cls.facets)
}

/// Witness for a failed positivity check.
#[derive(Debug, Clone, PartialEq)]
pub enum PositivityWitness {
    Vertex(Vec<Rat>),
    Ray(Vec<Rat>),
}

/// Exact check that L2(x) is PSD for every x in the region. Concavity of the
/// minimum eigenvalue of an affine matrix function reduces this to vertices
/// plus recession rays; lines are split off first and must annihilate the
/// linear coefficients.
pub fn pencil_nonneg_on_region(
    l2: &LinearPencil,
    region: &Polyhedron,
) -> Result<Result<(), PositivityWitness>, RegionError> {
    assert_eq!(l2.n(), region.n, "variable count mismatch");
    let n = region.n;
    let zero_obj = AffineFunctional::constant(Rat::zero(), n);
    if !lp_solve(&zero_obj, region, Sense::Max).is_feasible() {
        return Ok(Ok(())); // vacuously non-negative on the empty set
    }

    // lineality directions: gradients of all constraints annihilate them
    let grad_rows: Vec<Vec<Rat>> = region.constraints.iter().map(|f| f.linear.clone()).collect();
    let lineality = if grad_rows.is_empty() {
        (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect::<Vec<_>>()
    } else {
        Mat::from_rows(grad_rows).expect("rectangular").kernel_basis()
    };

    if !lineality.is_empty() {
        // along a line, PSD for all t forces the linear part to vanish
        for d in &lineality {
            let mut drift = SymMatrix::zeros(l2.d());
            for (ri, di) in l2.linear_coeffs().iter().zip(d) {
                drift = drift.add(&ri.scale(di));
            }
            if !drift.is_zero() {
                let side = if drift.is_psd() {
                    d.iter().map(|v| -v.clone()).collect()
                } else {
                    d.clone()
                };
                return Ok(Err(PositivityWitness::Ray(side)));
            }
        }
        // quotient out the lineality space and recurse once per reduction
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        let mut rows: Vec<Vec<Rat>> = lineality.clone();
        for i in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            rows.push(e.clone());
            let m = Mat::from_rows(rows.clone()).expect("rectangular");
            if m.rank() == rows.len() {
                basis.push(e);
            } else {
                rows.pop();
            }
        }
        let m = basis.len();
        debug_assert_eq!(m + lineality.len(), n);
        // complement coordinates: constraints and pencil restricted to them
        let reduced_region = Polyhedron::new(
            m,
            region
                .constraints
                .iter()
                .map(|f| {
                    AffineFunctional::new(
                        f.a0.clone(),
                        basis
                            .iter()
                            .map(|b| {
                                f.linear
                                    .iter()
                                    .zip(b)
                                    .fold(Rat::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
                            })
                            .collect(),
                    )
                })
                .collect(),
        );
        let mut coeffs = vec![l2.constant().clone()];
        for b in &basis {
            let mut acc = SymMatrix::zeros(l2.d());
            for (ri, bi) in l2.linear_coeffs().iter().zip(b) {
                acc = acc.add(&ri.scale(bi));
            }
            coeffs.push(acc);
        }
        if coeffs.len() == 1 {
            // no free coordinates left: region is an affine subspace point set
            let c = coeffs.pop().expect("constant");
            return Ok(if c.is_psd() {
                Ok(())
            } else {
                Err(PositivityWitness::Vertex(vec![Rat::zero(); n]))
            });
        }
        let reduced_pencil = crate::pencil::Pencil::new(coeffs).expect("valid reduced pencil");
        return match pencil_nonneg_on_region(&reduced_pencil, &reduced_region)? {
            Ok(()) => Ok(Ok(())),
            Err(w) => Ok(Err(lift_witness(w, &basis, n))),
        };
    }

    let vset = vertices(region)?;
    debug_assert!(
        !vset.vertices.is_empty(),
        "a pointed nonempty polyhedron has a vertex"
    );
    for v in &vset.vertices {
        if !l2.eval_point(v).expect("dimensions agree").is_psd() {
            return Ok(Err(PositivityWitness::Vertex(v.clone())));
        }
    }
    for d in &vset.rays {
        let mut drift = SymMatrix::zeros(l2.d());
        for (ri, di) in l2.linear_coeffs().iter().zip(d) {
            drift = drift.add(&ri.scale(di));
        }
        if !drift.is_psd() {
            return Ok(Err(PositivityWitness::Ray(d.clone())));
        }
    }
    Ok(Ok(()))
}

fn lift_witness(w: PositivityWitness, basis: &[Vec<Rat>], n: usize) -> PositivityWitness {
    let lift = |coords: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n];
        for (c, b) in coords.iter().zip(basis) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o += c.clone() * bi.clone();
            }
        }
        out
    };
    match w {
        PositivityWitness::Vertex(v) => PositivityWitness::Vertex(lift(&v)),
        PositivityWitness::Ray(d) => PositivityWitness::Ray(lift(&d)),
    }
}

/// Result of the span-multiplication check on a family of diagonal matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraCheck {
    /// Every pairwise product stays in the linear span.
    pub closed: bool,
    /// The span distinguishes every pair of diagonal coordinates.
    pub separates: bool,
}

/// Checks whether the span of diagonal matrices is closed under
/// multiplication, and whether it separates coordinates.
pub fn algebra_closure_check(mats: &[SymMatrix<Rat>]) -> Result<AlgebraCheck, RegionError> {
    if mats.is_empty() {
        return Ok(AlgebraCheck { closed: true, separates: false });
    }
    let d = mats[0].dim();
    if mats.iter().any(|m| !m.is_diagonal() || m.dim() != d) {
        return Err(RegionError::NotDiagonal);
    }
    let vecs: Vec<Vec<Rat>> = mats.iter().map(|m| m.diag_entries()).collect();
    let span = Mat::from_rows(vecs.clone()).expect("rectangular");
    let base_rank = span.rank();

    let mut closed = true;
    'outer: for i in 0..vecs.len() {
        for j in i..vecs.len() {
            let prod: Vec<Rat> = vecs[i]
                .iter()
                .zip(&vecs[j])
                .map(|(a, b)| a.clone() * b.clone())
                .collect();
            let mut rows = vecs.clone();
            rows.push(prod);
            if Mat::from_rows(rows).expect("rectangular").rank() > base_rank {
                closed = false;
                break 'outer;
            }
        }
    }

    let mut separates = true;
    'pairs: for s in 0..d {
        for t in s + 1..d {
            if vecs.iter().all(|v| v[s] == v[t]) {
                separates = false;
                break 'pairs;
            }
        }
    }
    Ok(AlgebraCheck { closed, separates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::pencil::Pencil;
    use crate::scalar::rat;

    fn affi(a0: i64, lin: &[i64]) -> AffineFunctional {
        AffineFunctional::new(rat(a0), lin.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn classify_unbounded_corner() {
        let region = instances::boundedness_l1().region().unwrap();
        let cls = classify(&region);
        assert_eq!(cls.kind, RegionKind::Unbounded { dim: 2 });
        assert!(region.strictly_contains(cls.interior_point.as_ref().unwrap()));
        assert_eq!(cls.facets.len(), 3);
    }

    #[test]
    fn classify_singleton_origin() {
        let region = Polyhedron::new(
            2,
            vec![
                affi(0, &[1, 0]),
                affi(0, &[-1, 0]),
                affi(0, &[0, 1]),
                affi(0, &[0, -1]),
            ],
        );
        let cls = classify(&region);
        assert_eq!(cls.kind, RegionKind::Singleton(vec!["0".into(), "0".into()]));
        assert_eq!(cls.interior_point, Some(vec![rat(0), rat(0)]));
    }

    #[test]
    fn classify_empty() {
        let region = Polyhedron::new(1, vec![affi(-1, &[1]), affi(0, &[-1])]);
        let cls = classify(&region);
        assert_eq!(cls.kind, RegionKind::Empty);
        assert!(cls.interior_point.is_none());
        assert!(cls.affine_hull.is_none());
    }

    #[test]
    fn classify_degenerate_segment() {
        // x1 = 0, x2 in [0, 1]: dimension 1, bounded
        let region = Polyhedron::new(
            2,
            vec![
                affi(0, &[1, 0]),
                affi(0, &[-1, 0]),
                affi(0, &[0, 1]),
                affi(1, &[0, -1]),
            ],
        );
        let cls = classify(&region);
        assert_eq!(cls.kind, RegionKind::Bounded { dim: 1 });
        let p = cls.interior_point.unwrap();
        assert!(p[0].is_zero());
        assert!(p[1].is_positive() && p[1] < rat(1));
    }

    #[test]
    fn vertices_interval() {
        let region = Polyhedron::new(1, vec![affi(1, &[1]), affi(1, &[-1])]);
        let vs = vertices(&region).unwrap();
        let mut pts: Vec<Rat> = vs.vertices.iter().map(|v| v[0].clone()).collect();
        pts.sort();
        assert_eq!(pts, vec![rat(-1), rat(1)]);
        assert!(vs.rays.is_empty());
    }

    #[test]
    fn vertices_corner_region() {
        let region = instances::boundedness_l1().region().unwrap();
        let vs = vertices(&region).unwrap();
        for v in &vs.vertices {
            let active = region
                .constraints
                .iter()
                .filter(|f| f.eval(v).is_zero())
                .count();
            assert!(active >= 2, "vertex {v:?} misses active constraints");
        }
        assert!(vs.vertices.contains(&vec![rat(-1), rat(0)]));
        assert!(vs.vertices.contains(&vec![rat(0), rat(-1)]));
        assert!(!vs.rays.is_empty());
    }

    #[test]
    fn vertices_unit_square() {
        let region = Polyhedron::new(
            2,
            vec![affi(0, &[1, 0]), affi(1, &[-1, 0]), affi(0, &[0, 1]), affi(1, &[0, -1])],
        );
        let vs = vertices(&region).unwrap();
        assert_eq!(vs.vertices.len(), 4);
        assert!(vs.rays.is_empty());
    }

    #[test]
    fn vertices_cap() {
        let region = Polyhedron::whole_space(5);
        assert!(matches!(vertices(&region), Err(RegionError::TooLarge { .. })));
    }

    #[test]
    fn simplex_check_examples() {
        let simplex = instances::standard_simplex_pencil().region().unwrap();
        let (ok, facets) = simplex_check(&simplex);
        assert!(ok);
        assert_eq!(facets.len(), 3);

        let square = Polyhedron::new(
            2,
            vec![affi(0, &[1, 0]), affi(1, &[-1, 0]), affi(0, &[0, 1]), affi(1, &[0, -1])],
        );
        assert!(!simplex_check(&square).0);

        let corner = instances::boundedness_l1().region().unwrap();
        assert!(!simplex_check(&corner).0);
    }

    #[test]
    fn pencil_nonneg_examples() {
        // the counterexample L2 is strictly positive on its unbounded region,
        // but positivity fails along rays: rays have R.d = diag(d1/3, d2/3)
        // which is PSD, vertices are PSD too
        let (l1, l2) = instances::boundedness_pair();
        let region = l1.region().unwrap();
        assert_eq!(pencil_nonneg_on_region(&l2, &region).unwrap(), Ok(()));

        // pencil x on the singleton {0}
        let region0 = Polyhedron::new(1, vec![affi(0, &[1]), affi(0, &[-1])]);
        let px = Pencil::scalar(&affi(0, &[1]));
        assert_eq!(pencil_nonneg_on_region(&px, &region0).unwrap(), Ok(()));

        // 1 + 2x on [-1, 1] fails at x = -1
        let region = Polyhedron::new(1, vec![affi(1, &[1]), affi(1, &[-1])]);
        let p = Pencil::scalar(&affi(1, &[2]));
        assert_eq!(
            pencil_nonneg_on_region(&p, &region).unwrap(),
            Err(PositivityWitness::Vertex(vec![rat(-1)]))
        );
    }

    #[test]
    fn pencil_nonneg_with_lines() {
        // region = all of R (a line); constant PSD pencil passes
        let whole = Polyhedron::whole_space(1);
        let constant = Pencil::new(vec![
            SymMatrix::identity(2),
            SymMatrix::zeros(2),
        ])
        .unwrap();
        assert_eq!(pencil_nonneg_on_region(&constant, &whole).unwrap(), Ok(()));

        // pencil x over R fails with a ray witness
        let px = Pencil::scalar(&affi(0, &[1]));
        match pencil_nonneg_on_region(&px, &whole).unwrap() {
            Err(PositivityWitness::Ray(d)) => assert!(d[0].is_negative()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn algebra_closure_examples() {
        let i2 = SymMatrix::identity(2);
        let pm = SymMatrix::diag(&[rat(1), rat(-1)]);
        let out = algebra_closure_check(&[i2.clone(), pm]).unwrap();
        assert!(out.closed && out.separates);

        let i3 = SymMatrix::identity(3);
        let d123 = SymMatrix::diag(&[rat(1), rat(2), rat(3)]);
        let out = algebra_closure_check(&[i3, d123]).unwrap();
        assert!(!out.closed);

        let i2 = SymMatrix::identity(2);
        let idem = SymMatrix::diag(&[rat(1), rat(0)]);
        let out = algebra_closure_check(&[i2.clone(), idem]).unwrap();
        assert!(out.closed && out.separates);

        // non-separating family
        let out = algebra_closure_check(&[i2]).unwrap();
        assert!(out.closed && !out.separates);

        // non-diagonal rejected
        let nd = crate::mat::sym_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(algebra_closure_check(&[nd]), Err(RegionError::NotDiagonal));
    }
}
