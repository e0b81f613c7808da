//! Built-in pencil pairs used as golden instances: the unbounded-region
//! counterexample (certificates fail although containment holds) and the
//! no-interior counterexample (non-monic, non-diagonal, singleton region).
//! The CLI recognizes these by exact coefficient match to route refutations
//! through their dedicated exact refuters.

use crate::affine::AffineFunctional;
use crate::mat::SymMatrix;
use crate::pencil::{LinearPencil, Pencil};
use crate::scalar::{rat, ratio};

/// diag(1+x1, 1+x1+x2, 1+x2): monic, diagonal, unbounded region.
pub fn boundedness_l1() -> LinearPencil {
    Pencil::new(vec![
        SymMatrix::identity(3),
        SymMatrix::diag(&[rat(1), rat(1), rat(0)]),
        SymMatrix::diag(&[rat(0), rat(1), rat(1)]),
    ])
    .expect("static instance")
}

/// [[1 + x1/3, 3/4], [3/4, 1 + x2/3]]: strictly positive on the region of
/// `boundedness_l1`, yet admits no certificate of any degree.
pub fn boundedness_l2() -> LinearPencil {
    let mut p0 = SymMatrix::identity(2);
    p0.set_sym(0, 1, ratio(3, 4));
    Pencil::new(vec![
        p0,
        SymMatrix::diag(&[ratio(1, 3), rat(0)]),
        SymMatrix::diag(&[rat(0), ratio(1, 3)]),
    ])
    .expect("static instance")
}

pub fn boundedness_pair() -> (LinearPencil, LinearPencil) {
    (boundedness_l1(), boundedness_l2())
}

/// [[1, x], [x, 0]]: non-monic, non-diagonal, region is the singleton {0}.
pub fn interior_l1() -> LinearPencil {
    let mut p1 = SymMatrix::zeros(2);
    p1.set_sym(0, 1, rat(1));
    Pencil::new(vec![
        SymMatrix::diag(&[rat(1), rat(0)]),
        p1,
    ])
    .expect("static instance")
}

/// The scalar pencil x, non-negative on {0} but not certifiable over
/// `interior_l1`.
pub fn interior_l2() -> LinearPencil {
    Pencil::new(vec![SymMatrix::zeros(1), SymMatrix::identity(1)]).expect("static instance")
}

pub fn interior_pair() -> (LinearPencil, LinearPencil) {
    (interior_l1(), interior_l2())
}

/// diag(x1, x2, 1-x1-x2): the standard 2-simplex.
pub fn standard_simplex_pencil() -> LinearPencil {
    Pencil::from_constraints(
        2,
        &[
            AffineFunctional::new(rat(0), vec![rat(1), rat(0)]),
            AffineFunctional::new(rat(0), vec![rat(0), rat(1)]),
            AffineFunctional::new(rat(1), vec![rat(-1), rat(-1)]),
        ],
    )
}

/// Exact coefficient match against the two counterexample pairs.
pub fn matches_boundedness_pair(l1: &LinearPencil, l2: &LinearPencil) -> bool {
    *l1 == boundedness_l1() && *l2 == boundedness_l2()
}

pub fn matches_interior_pair(l1: &LinearPencil, l2: &LinearPencil) -> bool {
    *l1 == interior_l1() && *l2 == interior_l2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rat, Scalar};

    #[test]
    fn instances_have_expected_shape() {
        let (l1, l2) = boundedness_pair();
        assert_eq!((l1.d(), l1.n()), (3, 2));
        assert_eq!((l2.d(), l2.n()), (2, 2));
        assert!(l1.is_monic() && l1.is_diagonal());
        assert!(!l2.is_diagonal());

        let (m1, m2) = interior_pair();
        assert_eq!((m1.d(), m1.n()), (2, 1));
        assert_eq!((m2.d(), m2.n()), (1, 1));
        assert!(!m1.is_monic());
        assert!(!m1.is_diagonal());
    }

    #[test]
    fn match_detection_is_exact() {
        let (l1, l2) = boundedness_pair();
        assert!(matches_boundedness_pair(&l1, &l2));
        assert!(!matches_boundedness_pair(&l1, &boundedness_l1()));
        let tweaked = l1.translate(&[rat(1), rat(0)]).unwrap();
        assert!(!matches_boundedness_pair(&tweaked, &l2));
    }

    #[test]
    fn rat_helper_sanity() {
        let r: Rat = ratio(3, 4);
        assert_eq!(r.approx(), 0.75);
    }
}
