//! Scalar affine functionals and the polyhedra they cut out.

use num_traits::Zero;

use crate::scalar::{fmt_rat, Rat};

/// a0 + a1 x1 + ... + an xn.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFunctional {
    pub a0: Rat,
    pub linear: Vec<Rat>,
}

impl AffineFunctional {
    pub fn new(a0: Rat, linear: Vec<Rat>) -> Self {
        AffineFunctional { a0, linear }
    }

    pub fn constant(a0: Rat, n: usize) -> Self {
        AffineFunctional { a0, linear: vec![Rat::zero(); n] }
    }

    pub fn coordinate(i: usize, n: usize) -> Self {
        let mut linear = vec![Rat::zero(); n];
        linear[i] = Rat::one();
        AffineFunctional { a0: Rat::zero(), linear }
    }

    pub fn n(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.n(), "point dimension mismatch");
        self.linear
            .iter()
            .zip(x)
            .fold(self.a0.clone(), |acc, (a, v)| acc + a.clone() * v.clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        AffineFunctional {
            a0: self.a0.clone() * s.clone(),
            linear: self.linear.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        AffineFunctional {
            a0: self.a0.clone() + other.a0.clone(),
            linear: self
                .linear
                .iter()
                .zip(&other.linear)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-Rat::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.linear.iter().all(|a| a.is_zero())
    }

    /// Gradient is zero (constant functional).
    pub fn is_constant(&self) -> bool {
        self.linear.iter().all(|a| a.is_zero())
    }

    pub fn render(&self, vars: &str) -> String {
        let mut s = fmt_rat(&self.a0);
        for (i, a) in self.linear.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            s.push_str(&format!(" + ({})*{}{}", fmt_rat(a), vars, i + 1));
        }
        s
    }
}

use num_traits::One;

/// Finite intersection of half-spaces f_i(x) >= 0 in R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    pub n: usize,
    pub constraints: Vec<AffineFunctional>,
}

impl Polyhedron {
    pub fn new(n: usize, constraints: Vec<AffineFunctional>) -> Self {
        assert!(constraints.iter().all(|f| f.n() == n), "ambient dimension mismatch");
        Polyhedron { n, constraints }
    }

    pub fn whole_space(n: usize) -> Self {
        Polyhedron { n, constraints: Vec::new() }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|f| f.eval(x) >= Rat::zero())
    }

    pub fn strictly_contains(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|f| f.eval(x) > Rat::zero())
    }

    /// Subset of constraints by index, same ambient space.
    pub fn restrict_to(&self, keep: &[usize]) -> Polyhedron {
        Polyhedron {
            n: self.n,
            constraints: keep.iter().map(|&i| self.constraints[i].clone()).collect(),
        }
    }
}
