//! Exact rational linear programming.
//!
//! Two-phase dense simplex with Bland's anti-cycling rule, entirely over
//! rationals. Optimal outcomes carry exact dual multipliers, unbounded
//! outcomes a recession direction, infeasible outcomes Farkas multipliers.
//! Every outcome is re-verified against its defining identity before it is
//! returned, so downstream certificate construction can rely on them blindly.

use num_traits::{One, Signed, Zero};

use crate::affine::{AffineFunctional, Polyhedron};
use crate::scalar::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// Exact optimum at a vertex, with dual multipliers lambda >= 0 such that
    /// for Max:  value - objective(x) == sum lambda_i f_i(x), identically;
    /// for Min:  objective(x) - value == sum lambda_i f_i(x).
    Optimal { point: Vec<Rat>, value: Rat, dual: Vec<Rat> },
    /// Feasible point plus an exact recession direction improving the
    /// objective.
    Unbounded { point: Vec<Rat>, direction: Vec<Rat> },
    /// lambda >= 0 with sum lambda_i f_i == -gap identically, gap > 0.
    Infeasible { multipliers: Vec<Rat>, gap: Rat },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn optimal_value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: usize,
    cols: usize, // variable columns, rhs excluded
    t: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    obj: Vec<Rat>,
    obj_val: Rat,
    allowed: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        let inv = p.recip();
        for v in self.t[r].iter_mut() {
            *v *= inv.clone();
        }
        self.rhs[r] *= inv.clone();
        for i in 0..self.rows {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for j in 0..self.cols {
                let delta = f.clone() * self.t[r][j].clone();
                self.t[i][j] -= delta;
            }
            let delta = f * self.rhs[r].clone();
            self.rhs[i] -= delta;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for j in 0..self.cols {
                let delta = f.clone() * self.t[r][j].clone();
                self.obj[j] -= delta;
            }
            self.obj_val += f * self.rhs[r].clone();
        }
        self.basis[r] = c;
    }

    /// Bland's rule simplex loop, maximizing. Returns the entering column on
    /// unboundedness.
    fn run(&mut self) -> Option<usize> {
        loop {
            let Some(c) = (0..self.cols)
                .find(|&j| self.allowed[j] && self.obj[j].is_positive())
            else {
                return None; // optimal
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows {
                if !self.t[r][c].is_positive() {
                    continue;
                }
                let ratio = self.rhs[r].clone() / self.t[r][c].clone();
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Some(c),
            }
        }
    }

    /// Prices the objective vector out against the current basis.
    fn load_objective(&mut self, c: &[Rat]) {
        self.obj = c.to_vec();
        self.obj_val = Rat::zero();
        for r in 0..self.rows {
            let b = self.basis[r];
            if self.obj[b].is_zero() {
                continue;
            }
            let f = self.obj[b].clone();
            for j in 0..self.cols {
                let delta = f.clone() * self.t[r][j].clone();
                self.obj[j] -= delta;
            }
            self.obj_val += f * self.rhs[r].clone();
        }
    }
}

/// Solves `sense` objective over K. See `LpOutcome` for the exact contracts.
pub fn lp_solve(objective: &AffineFunctional, region: &Polyhedron, sense: Sense) -> LpOutcome {
    assert_eq!(objective.n(), region.n, "objective dimension mismatch");
    let c_lin: Vec<Rat> = match sense {
        Sense::Max => objective.linear.clone(),
        Sense::Min => objective.linear.iter().map(|v| -v.clone()).collect(),
    };
    let out = lp_solve_max(&c_lin, region);
    match (sense, out) {
        (Sense::Max, LpOutcome::Optimal { point, value, dual }) => LpOutcome::Optimal {
            value: value + objective.a0.clone(),
            point,
            dual,
        },
        (Sense::Min, LpOutcome::Optimal { point, value, dual }) => LpOutcome::Optimal {
            value: -value + objective.a0.clone(),
            point,
            dual,
        },
        (_, other) => other,
    }
}

fn lp_solve_max(c_lin: &[Rat], region: &Polyhedron) -> LpOutcome {
    let n = region.n;
    let k = region.constraints.len();
    // columns: u(n) | w(n) | s(k) | z(k)
    let cols = 2 * n + 2 * k;
    let col_u = 0;
    let col_w = n;
    let col_s = 2 * n;
    let col_z = 2 * n + k;

    let mut sigma = vec![Rat::one(); k];
    let mut t = vec![vec![Rat::zero(); cols]; k];
    let mut rhs = vec![Rat::zero(); k];
    for (i, f) in region.constraints.iter().enumerate() {
        let b = -f.a0.clone();
        if b.is_negative() {
            sigma[i] = -Rat::one();
        }
        for j in 0..n {
            t[i][col_u + j] = sigma[i].clone() * f.linear[j].clone();
            t[i][col_w + j] = -t[i][col_u + j].clone();
        }
        t[i][col_s + i] = -sigma[i].clone();
        t[i][col_z + i] = Rat::one();
        rhs[i] = sigma[i].clone() * b;
    }

    let mut allowed = vec![true; cols];
    for j in col_z..cols {
        allowed[j] = false; // artificials never re-enter
    }

    let mut tab = Tableau {
        rows: k,
        cols,
        t,
        rhs,
        basis: (col_z..cols).collect(),
        obj: vec![Rat::zero(); cols],
        obj_val: Rat::zero(),
        allowed,
    };

    // phase 1: maximize -sum(z)
    let mut c1 = vec![Rat::zero(); cols];
    for j in col_z..cols {
        c1[j] = -Rat::one();
    }
    tab.load_objective(&c1);
    let unb = tab.run();
    debug_assert!(unb.is_none(), "phase 1 is bounded");

    if tab.obj_val.is_negative() {
        // infeasible: the phase-1 multiplier is y_i = -1 - objrow[z_i]
        // (artificials carry cost -1), and lambda_i = -sigma_i y_i >= 0 with
        // sum lambda_i f_i == obj_val identically
        let mut lambda = Vec::with_capacity(k);
        for i in 0..k {
            let y = -Rat::one() - tab.obj[col_z + i].clone();
            lambda.push(-(sigma[i].clone() * y));
        }
        let gap = -tab.obj_val.clone();
        verify_infeasibility(region, &lambda, &gap);
        return LpOutcome::Infeasible { multipliers: lambda, gap };
    }

    // drive artificials out of the basis where possible
    for r in 0..k {
        if tab.basis[r] >= col_z {
            if let Some(c) = (0..col_z).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, c);
            }
            // otherwise the row is redundant; the artificial stays basic at 0
        }
    }

    // phase 2
    let mut c2 = vec![Rat::zero(); cols];
    for j in 0..n {
        c2[col_u + j] = c_lin[j].clone();
        c2[col_w + j] = -c_lin[j].clone();
    }
    tab.load_objective(&c2);
    let unbounded_col = tab.run();

    let point = read_point(&tab, n, col_w);
    match unbounded_col {
        None => {
            let mut lambda = Vec::with_capacity(k);
            for i in 0..k {
                lambda.push(sigma[i].clone() * tab.obj[col_z + i].clone());
            }
            let value = tab.obj_val.clone();
            verify_optimal(region, c_lin, &point, &value, &lambda);
            LpOutcome::Optimal { point, value, dual: lambda }
        }
        Some(c) => {
            let mut full = vec![Rat::zero(); tab.cols];
            full[c] = Rat::one();
            for r in 0..tab.rows {
                full[tab.basis[r]] = -tab.t[r][c].clone();
            }
            let direction: Vec<Rat> = (0..n)
                .map(|j| full[col_u + j].clone() - full[col_w + j].clone())
                .collect();
            verify_ray(region, c_lin, &direction);
            LpOutcome::Unbounded { point, direction }
        }
    }
}

fn read_point(tab: &Tableau, n: usize, col_w: usize) -> Vec<Rat> {
    let mut full = vec![Rat::zero(); tab.cols];
    for r in 0..tab.rows {
        full[tab.basis[r]] = tab.rhs[r].clone();
    }
    (0..n).map(|j| full[j].clone() - full[col_w + j].clone()).collect()
}

fn verify_optimal(region: &Polyhedron, c_lin: &[Rat], point: &[Rat], value: &Rat, dual: &[Rat]) {
    assert!(region.contains(point), "optimal point must be feasible");
    let obj_at: Rat = c_lin
        .iter()
        .zip(point)
        .fold(Rat::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
    assert_eq!(&obj_at, value, "optimal value mismatch");
    assert!(dual.iter().all(|l| !l.is_negative()), "negative dual multiplier");
    // identity: value - c.x == sum dual_i f_i(x), as polynomials
    for j in 0..region.n {
        let lhs = -c_lin[j].clone();
        let rhs = region
            .constraints
            .iter()
            .zip(dual)
            .fold(Rat::zero(), |acc, (f, l)| acc + l.clone() * f.linear[j].clone());
        assert_eq!(lhs, rhs, "dual identity fails on x{}", j + 1);
    }
    let const_rhs = region
        .constraints
        .iter()
        .zip(dual)
        .fold(Rat::zero(), |acc, (f, l)| acc + l.clone() * f.a0.clone());
    assert_eq!(value, &const_rhs, "dual identity fails on the constant term");
}

fn verify_ray(region: &Polyhedron, c_lin: &[Rat], dir: &[Rat]) {
    let rate: Rat = c_lin
        .iter()
        .zip(dir)
        .fold(Rat::zero(), |acc, (c, d)| acc + c.clone() * d.clone());
    assert!(rate.is_positive(), "recession direction must improve the objective");
    for f in &region.constraints {
        let along: Rat = f
            .linear
            .iter()
            .zip(dir)
            .fold(Rat::zero(), |acc, (a, d)| acc + a.clone() * d.clone());
        assert!(!along.is_negative(), "direction leaves the region");
    }
}

fn verify_infeasibility(region: &Polyhedron, lambda: &[Rat], gap: &Rat) {
    assert!(gap.is_positive());
    assert!(lambda.iter().all(|l| !l.is_negative()), "negative Farkas multiplier");
    for j in 0..region.n {
        let s = region
            .constraints
            .iter()
            .zip(lambda)
            .fold(Rat::zero(), |acc, (f, l)| acc + l.clone() * f.linear[j].clone());
        assert!(s.is_zero(), "Farkas combination must cancel x{}", j + 1);
    }
    let s = region
        .constraints
        .iter()
        .zip(lambda)
        .fold(Rat::zero(), |acc, (f, l)| acc + l.clone() * f.a0.clone());
    assert_eq!(s, -gap.clone(), "Farkas combination must equal -gap");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn aff(a0: i64, lin: &[i64]) -> AffineFunctional {
        AffineFunctional::new(rat(a0), lin.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn bounded_interval() {
        // max x over {1-x >= 0, 1+x >= 0}
        let k = Polyhedron::new(1, vec![aff(1, &[-1]), aff(1, &[1])]);
        let out = lp_solve(&aff(0, &[1]), &k, Sense::Max);
        match out {
            LpOutcome::Optimal { point, value, .. } => {
                assert_eq!(point, vec![rat(1)]);
                assert_eq!(value, rat(1));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
        let out = lp_solve(&aff(0, &[1]), &k, Sense::Min);
        assert_eq!(out.optimal_value(), Some(&rat(-1)));
    }

    #[test]
    fn unbounded_with_direction() {
        // max x1 over the unbounded corner region
        let k = Polyhedron::new(
            2,
            vec![aff(1, &[1, 0]), aff(1, &[1, 1]), aff(1, &[0, 1])],
        );
        match lp_solve(&aff(0, &[1, 0]), &k, Sense::Max) {
            LpOutcome::Unbounded { direction, point } => {
                assert!(k.contains(&point));
                assert!(direction[0].is_positive());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_multipliers() {
        // {x >= 1, -x >= 0}: multipliers (1,1) give -1 >= 0
        let k = Polyhedron::new(1, vec![aff(-1, &[1]), aff(0, &[-1])]);
        match lp_solve(&aff(0, &[0]), &k, Sense::Max) {
            LpOutcome::Infeasible { multipliers, gap } => {
                let scale = gap.recip();
                let normalized: Vec<Rat> =
                    multipliers.iter().map(|l| l.clone() * scale.clone()).collect();
                assert_eq!(normalized, vec![rat(1), rat(1)]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn duals_reproduce_objective() {
        // max x1 + 2 x2 over the unit square
        let k = Polyhedron::new(
            2,
            vec![
                aff(0, &[1, 0]),
                aff(1, &[-1, 0]),
                aff(0, &[0, 1]),
                aff(1, &[0, -1]),
            ],
        );
        match lp_solve(&aff(0, &[1, 2]), &k, Sense::Max) {
            LpOutcome::Optimal { value, dual, .. } => {
                assert_eq!(value, rat(3));
                // verify_optimal already asserted the cone identity
                assert_eq!(dual.len(), 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_square_corner() {
        // redundant constraints meeting at a vertex; Bland's rule must not cycle
        let k = Polyhedron::new(
            2,
            vec![
                aff(0, &[1, 0]),
                aff(0, &[0, 1]),
                aff(0, &[1, 1]),
                aff(1, &[-1, -1]),
                aff(2, &[-1, -1]),
            ],
        );
        let out = lp_solve(&aff(0, &[1, 1]), &k, Sense::Max);
        assert_eq!(out.optimal_value(), Some(&rat(1)));
    }

    #[test]
    fn whole_space_cases() {
        let k = Polyhedron::whole_space(1);
        assert!(matches!(
            lp_solve(&aff(0, &[1]), &k, Sense::Max),
            LpOutcome::Unbounded { .. }
        ));
        assert_eq!(
            lp_solve(&aff(5, &[0]), &k, Sense::Max).optimal_value(),
            Some(&rat(5))
        );
    }

    #[test]
    fn fractional_vertex() {
        // max x over {2x <= 1, x >= 0} hits 1/2
        let k = Polyhedron::new(1, vec![aff(1, &[-2]), aff(0, &[1])]);
        assert_eq!(
            lp_solve(&aff(0, &[1]), &k, Sense::Max).optimal_value(),
            Some(&ratio(1, 2))
        );
    }
}
