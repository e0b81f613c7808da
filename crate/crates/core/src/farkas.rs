//! Scalar Farkas machinery: expressing a linear polynomial that is
//! non-negative on a polyhedron as a non-negative cone combination of the
//! defining constraints, and expressing -1 from an empty system.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::affine::{AffineFunctional, Polyhedron};
use crate::lp::{lp_solve, LpOutcome, Sense};
use crate::scalar::Rat;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FarkasError {
    #[error("functional is negative on the region at the witness point")]
    NotNonnegative { witness: Vec<Rat> },
    #[error("region is empty; use cone_contains_minus_one")]
    EmptyRegion,
    #[error("region is nonempty; -1 is not in the cone")]
    NotEmpty,
}

/// f == c0 + sum c_i f_i with all coefficients non-negative, exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct FarkasCertificate {
    pub c0: Rat,
    pub coeffs: Vec<Rat>,
}

impl FarkasCertificate {
    /// Exact polynomial identity check against a region and target.
    pub fn verifies(&self, region: &Polyhedron, target: &AffineFunctional) -> bool {
        if self.c0.is_negative() || self.coeffs.iter().any(|c| c.is_negative()) {
            return false;
        }
        if self.coeffs.len() != region.constraints.len() {
            return false;
        }
        let mut acc = AffineFunctional::constant(self.c0.clone(), region.n);
        for (c, f) in self.coeffs.iter().zip(&region.constraints) {
            acc = acc.add(&f.scale(c));
        }
        acc == *target
    }
}

/// Finds non-negative (c0, c) with f == c0 + sum c_i f_i, exactly.
///
/// The certificate is selected deterministically: first minimize c0, then
/// minimize the total coefficient mass among certificates attaining it.
pub fn farkas_certificate(
    region: &Polyhedron,
    target: &AffineFunctional,
) -> Result<FarkasCertificate, FarkasError> {
    assert_eq!(region.n, target.n(), "ambient dimension mismatch");

    // preconditions: region nonempty and target non-negative on it
    match lp_solve(target, region, Sense::Min) {
        LpOutcome::Infeasible { .. } => return Err(FarkasError::EmptyRegion),
        LpOutcome::Optimal { point, value, .. } => {
            if value.is_negative() {
                return Err(FarkasError::NotNonnegative { witness: point });
            }
        }
        LpOutcome::Unbounded { point, direction } => {
            // walk along the decreasing direction until the target is negative
            let rate: Rat = target
                .linear
                .iter()
                .zip(&direction)
                .fold(Rat::zero(), |acc, (a, d)| acc + a.clone() * d.clone());
            debug_assert!(rate.is_negative());
            let t = (target.eval(&point) + Rat::one()) / -rate;
            let witness: Vec<Rat> = point
                .iter()
                .zip(&direction)
                .map(|(p, d)| p.clone() + t.clone() * d.clone())
                .collect();
            return Err(FarkasError::NotNonnegative { witness });
        }
    }

    let cert = solve_matching(region, target).expect("affine Farkas lemma guarantees a certificate");
    debug_assert!(cert.verifies(region, target));
    Ok(cert)
}

/// Expresses -1 as a non-negative cone combination of the constraints of an
/// empty region. The multipliers come straight from the exact infeasibility
/// certificate of the feasibility LP.
pub fn cone_contains_minus_one(region: &Polyhedron) -> Result<FarkasCertificate, FarkasError> {
    let zero_obj = AffineFunctional::constant(Rat::zero(), region.n);
    match lp_solve(&zero_obj, region, Sense::Max) {
        LpOutcome::Infeasible { multipliers, gap } => {
            let scale = gap.recip();
            let coeffs: Vec<Rat> = multipliers.iter().map(|l| l.clone() * scale.clone()).collect();
            let cert = FarkasCertificate { c0: Rat::zero(), coeffs };
            let minus_one = AffineFunctional::constant(-Rat::one(), region.n);
            debug_assert!(cert.verifies(region, &minus_one));
            Ok(cert)
        }
        _ => Err(FarkasError::NotEmpty),
    }
}

/// Coefficient-matching LP in the variables (c0, c_1..c_k) >= 0.
fn solve_matching(region: &Polyhedron, target: &AffineFunctional) -> Option<FarkasCertificate> {
    let k = region.constraints.len();
    let vars = k + 1; // c0 first
    let mut constraints = Vec::new();

    // non-negativity
    for i in 0..vars {
        constraints.push(AffineFunctional::coordinate(i, vars));
    }
    // equality pairs: constant term and each linear coefficient
    let mut push_eq = |coeffs: Vec<Rat>, rhs: Rat| {
        let eq = AffineFunctional::new(-rhs, coeffs);
        constraints.push(eq.neg());
        constraints.push(eq);
    };
    {
        let mut row = vec![Rat::one()];
        row.extend(region.constraints.iter().map(|f| f.a0.clone()));
        push_eq(row, target.a0.clone());
    }
    for j in 0..region.n {
        let mut row = vec![Rat::zero()];
        row.extend(region.constraints.iter().map(|f| f.linear[j].clone()));
        push_eq(row, target.linear[j].clone());
    }
    let feas = Polyhedron::new(vars, constraints);

    // stage 1: minimize c0
    let obj_c0 = AffineFunctional::coordinate(0, vars);
    let c0_min = match lp_solve(&obj_c0, &feas, Sense::Min) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Infeasible { .. } => return None,
        LpOutcome::Unbounded { .. } => unreachable!("c0 >= 0 bounds the objective"),
    };

    // stage 2: minimize total mass with c0 pinned
    let mut staged = feas;
    let pin = AffineFunctional::new(c0_min.clone(), {
        let mut lin = vec![-Rat::one()];
        lin.extend(vec![Rat::zero(); k]);
        lin
    }); // c0 <= c0_min
    staged.constraints.push(pin);
    let obj_mass = AffineFunctional::new(Rat::zero(), vec![Rat::one(); vars]);
    match lp_solve(&obj_mass, &staged, Sense::Min) {
        LpOutcome::Optimal { point, .. } => Some(FarkasCertificate {
            c0: point[0].clone(),
            coeffs: point[1..].to_vec(),
        }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn aff(a0: Rat, lin: Vec<Rat>) -> AffineFunctional {
        AffineFunctional::new(a0, lin)
    }

    fn affi(a0: i64, lin: &[i64]) -> AffineFunctional {
        aff(rat(a0), lin.iter().map(|&v| rat(v)).collect())
    }

    /// The unbounded corner region x1 >= -1, x1+x2 >= -1, x2 >= -1.
    fn corner_region() -> Polyhedron {
        Polyhedron::new(
            2,
            vec![affi(1, &[1, 0]), affi(1, &[1, 1]), affi(1, &[0, 1])],
        )
    }

    #[test]
    fn corner_region_certificate_is_forced() {
        // 1 + x1/3 == 2/3 + (1/3)(1 + x1), with zero weight elsewhere
        let f = aff(rat(1), vec![ratio(1, 3), rat(0)]);
        let cert = farkas_certificate(&corner_region(), &f).unwrap();
        assert_eq!(cert.c0, ratio(2, 3));
        assert_eq!(cert.coeffs, vec![ratio(1, 3), rat(0), rat(0)]);
        assert!(cert.verifies(&corner_region(), &f));
    }

    #[test]
    fn constraint_itself_is_an_indicator() {
        let region = corner_region();
        let f = region.constraints[1].clone();
        let cert = farkas_certificate(&region, &f).unwrap();
        assert_eq!(cert.c0, rat(0));
        assert_eq!(cert.coeffs, vec![rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn interval_certificate() {
        // K = [-1, 1], f = 3 + x: c0 = 0, c = (2, 1)
        let region = Polyhedron::new(1, vec![affi(1, &[1]), affi(1, &[-1])]);
        let f = affi(3, &[1]);
        let cert = farkas_certificate(&region, &f).unwrap();
        assert_eq!(cert.c0, rat(0));
        assert_eq!(cert.coeffs, vec![rat(2), rat(1)]);
    }

    #[test]
    fn rejects_negative_target_with_witness() {
        let region = Polyhedron::new(1, vec![affi(1, &[1]), affi(1, &[-1])]);
        let f = affi(0, &[1]); // x is negative at x = -1
        match farkas_certificate(&region, &f) {
            Err(FarkasError::NotNonnegative { witness }) => {
                assert!(region.contains(&witness));
                assert!(f.eval(&witness).is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_unbounded_negative_target() {
        // K = [0, inf), f = -x
        let region = Polyhedron::new(1, vec![affi(0, &[1])]);
        let f = affi(0, &[-1]);
        match farkas_certificate(&region, &f) {
            Err(FarkasError::NotNonnegative { witness }) => {
                assert!(region.contains(&witness));
                assert!(f.eval(&witness).is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_region_is_reported() {
        let region = Polyhedron::new(1, vec![affi(-1, &[1]), affi(0, &[-1])]);
        assert_eq!(
            farkas_certificate(&region, &affi(1, &[0])),
            Err(FarkasError::EmptyRegion)
        );
    }

    #[test]
    fn minus_one_examples() {
        // {x - 1 >= 0, -x >= 0} -> coefficients (1, 1)
        let region = Polyhedron::new(1, vec![affi(-1, &[1]), affi(0, &[-1])]);
        let cert = cone_contains_minus_one(&region).unwrap();
        assert_eq!(cert.c0, rat(0));
        assert_eq!(cert.coeffs, vec![rat(1), rat(1)]);

        // {-1 >= 0} -> coefficient (1)
        let region = Polyhedron::new(1, vec![affi(-1, &[0])]);
        let cert = cone_contains_minus_one(&region).unwrap();
        assert_eq!(cert.coeffs, vec![rat(1)]);

        // {x >= 0, -2x - 2 >= 0} -> (1, 1/2)
        let region = Polyhedron::new(1, vec![affi(0, &[1]), affi(-2, &[-2])]);
        let cert = cone_contains_minus_one(&region).unwrap();
        assert_eq!(cert.coeffs, vec![rat(1), ratio(1, 2)]);

        // nonempty region is rejected
        let region = Polyhedron::new(1, vec![affi(0, &[1])]);
        assert_eq!(cone_contains_minus_one(&region), Err(FarkasError::NotEmpty));
    }
}
