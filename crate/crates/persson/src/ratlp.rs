//! Exact linear programming over the rationals.
//!
//! A small two-phase primal simplex with Bland's anti-cycling rule, run
//! entirely in [`crate::Rat`] arithmetic. Every feasibility and optimality
//! answer it returns is exact; there are no tolerances anywhere. Variables
//! are free by default (internally split into differences of nonnegative
//! parts); bounds are ordinary constraints.

use num::{One, Signed, Zero};

use crate::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rat]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// A linear program in `n` free variables.
#[derive(Clone, Debug, Default)]
pub struct Lp {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl Lp {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn add(&mut self, coeffs: Vec<Rat>, rel: Relation, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint arity mismatch");
        self.constraints.push(Constraint { coeffs, rel, rhs });
        self
    }

    /// Maximize `obj · x` over the feasible region.
    pub fn maximize(&self, obj: &[Rat]) -> LpOutcome {
        assert_eq!(obj.len(), self.num_vars);
        let neg: Vec<Rat> = obj.iter().map(|c| -c.clone()).collect();
        match self.minimize(&neg) {
            LpOutcome::Optimal { value, point } => {
                LpOutcome::Optimal { value: -value, point }
            }
            other => other,
        }
    }

    /// Minimize `obj · x` over the feasible region.
    pub fn minimize(&self, obj: &[Rat]) -> LpOutcome {
        assert_eq!(obj.len(), self.num_vars);
        // split each free variable into x⁺ − x⁻ and add slack/surplus columns
        let n2 = 2 * self.num_vars;
        let m = self.constraints.len();
        let mut num_slack = 0;
        for c in &self.constraints {
            if c.rel != Relation::Eq {
                num_slack += 1;
            }
        }
        let total = n2 + num_slack;
        let mut a = vec![vec![Rat::zero(); total]; m];
        let mut b = vec![Rat::zero(); m];
        let mut slack_at = 0;
        for (i, c) in self.constraints.iter().enumerate() {
            for (j, v) in c.coeffs.iter().enumerate() {
                a[i][2 * j] = v.clone();
                a[i][2 * j + 1] = -v.clone();
            }
            b[i] = c.rhs.clone();
            match c.rel {
                Relation::Le => {
                    a[i][n2 + slack_at] = Rat::one();
                    slack_at += 1;
                }
                Relation::Ge => {
                    a[i][n2 + slack_at] = -Rat::one();
                    slack_at += 1;
                }
                Relation::Eq => {}
            }
        }
        let mut cost = vec![Rat::zero(); total];
        for (j, v) in obj.iter().enumerate() {
            cost[2 * j] = v.clone();
            cost[2 * j + 1] = -v.clone();
        }
        match solve_standard(a, b, cost) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal { value, point } => {
                let x: Vec<Rat> = (0..self.num_vars)
                    .map(|j| point[2 * j].clone() - point[2 * j + 1].clone())
                    .collect();
                LpOutcome::Optimal { value, point: x }
            }
        }
    }

    /// Any feasible point, or `None` if the region is empty.
    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        match self.minimize(&vec![Rat::zero(); self.num_vars]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }
}

enum StdOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// Minimize `c·x` subject to `A x = b`, `x ≥ 0`. Returns `None` when
/// infeasible. Panics on an unbounded objective — callers use it only with
/// objectives bounded on the feasible region (convex-combination systems).
pub fn min_equality_nonneg(a: Vec<Vec<Rat>>, b: Vec<Rat>, c: Vec<Rat>) -> Option<(Rat, Vec<Rat>)> {
    match solve_standard(a, b, c) {
        StdOutcome::Optimal { value, point } => Some((value, point)),
        StdOutcome::Infeasible => None,
        StdOutcome::Unbounded => panic!("objective unbounded on a compact region"),
    }
}

/// Minimize c·x subject to A x = b, x ≥ 0 (after sign-normalizing b).
fn solve_standard(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>, c: Vec<Rat>) -> StdOutcome {
    let m = a.len();
    let n = if m == 0 { c.len() } else { a[0].len() };
    if m == 0 {
        // unconstrained: optimum 0 at the origin unless some cost is nonzero
        if c.iter().all(|v| v.is_zero()) {
            return StdOutcome::Optimal { value: Rat::zero(), point: vec![Rat::zero(); n] };
        }
        return StdOutcome::Unbounded;
    }
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    // phase 1: artificial columns n..n+m with unit cost
    let total = n + m;
    for (i, row) in a.iter_mut().enumerate() {
        row.resize(total, Rat::zero());
        row[n + i] = Rat::one();
    }
    let mut basis: Vec<usize> = (n..total).collect();
    let phase1_cost: Vec<Rat> = (0..total)
        .map(|j| if j >= n { Rat::one() } else { Rat::zero() })
        .collect();
    if simplex(&mut a, &mut b, &phase1_cost, &mut basis).is_err() {
        unreachable!("phase 1 objective is bounded below by zero");
    }
    let phase1_value: Rat = basis
        .iter()
        .zip(b.iter())
        .map(|(&j, bv)| if j >= n { bv.clone() } else { Rat::zero() })
        .sum();
    if !phase1_value.is_zero() {
        return StdOutcome::Infeasible;
    }
    // drive any residual zero-valued artificials out of the basis
    let mut drop_rows: Vec<usize> = Vec::new();
    for i in 0..m {
        if basis[i] >= n {
            match (0..n).find(|&j| !a[i][j].is_zero()) {
                Some(j) => pivot(&mut a, &mut b, &mut basis, i, j),
                None => drop_rows.push(i), // redundant constraint
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        a.remove(i);
        b.remove(i);
        basis.remove(i);
    }
    for row in a.iter_mut() {
        row.truncate(n);
    }
    // phase 2
    let mut c2 = c;
    c2.resize(n, Rat::zero());
    if simplex(&mut a, &mut b, &c2, &mut basis).is_err() {
        return StdOutcome::Unbounded;
    }
    let mut point = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        point[j] = b[i].clone();
    }
    let value = c2.iter().zip(point.iter()).map(|(cv, xv)| cv * xv).sum();
    StdOutcome::Optimal { value, point }
}

/// Primal simplex on a reduced tableau (basis columns are identity).
/// Bland's rule throughout, so it terminates. Errors on unboundedness.
fn simplex(
    a: &mut [Vec<Rat>],
    b: &mut [Rat],
    cost: &[Rat],
    basis: &mut [usize],
) -> Result<(), ()> {
    let m = a.len();
    let n = if m == 0 { return Ok(()) } else { a[0].len() };
    loop {
        // reduced costs r_j = c_j − c_B · A_j (tableau form)
        let mut entering = None;
        for j in 0..n {
            if basis.contains(&j) {
                continue;
            }
            let mut r = cost[j].clone();
            for i in 0..m {
                if !a[i][j].is_zero() {
                    r -= &cost[basis[i]] * &a[i][j];
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break; // Bland: smallest eligible index
            }
        }
        let Some(j) = entering else { return Ok(()) };
        // ratio test, ties by smallest basis index
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if a[i][j].is_positive() {
                let ratio = &b[i] / &a[i][j];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((i, _)) = leave else { return Err(()) };
        pivot(a, b, basis, i, j);
    }
}

fn pivot(a: &mut [Vec<Rat>], b: &mut [Rat], basis: &mut [usize], i: usize, j: usize) {
    let m = a.len();
    let p = a[i][j].clone();
    for v in a[i].iter_mut() {
        *v = &*v / &p;
    }
    b[i] = &b[i] / &p;
    for r in 0..m {
        if r != i && !a[r][j].is_zero() {
            let f = a[r][j].clone();
            for t in 0..a[r].len() {
                let s = &a[i][t] * &f;
                a[r][t] -= s;
            }
            let s = &b[i] * &f;
            b[r] -= s;
        }
    }
    basis[i] = j;
}
