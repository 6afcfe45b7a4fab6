//! Exact feasibility for systems of linear (in)equalities.
//!
//! Dense two-phase simplex over [`Rational`] with Bland's rule. Free
//! variables are split as `x = x⁺ − x⁻`. Strict inequalities `a·x > b` become
//! `a·x − t ≥ b` for a shared gap variable `0 ≤ t ≤ 1`, which phase two
//! maximizes; the strict system is feasible iff the optimum is positive.

use serde::{Deserialize, Serialize};

use super::matrix::RatVec;
use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "=")]
    Eq,
}

/// `coeffs · x  relation  rhs`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: RatVec,
    pub rhs: Rational,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(coeffs: RatVec, relation: Relation, rhs: Rational) -> Constraint {
        Constraint { coeffs, rhs, relation }
    }

    pub fn ge(coeffs: RatVec, rhs: Rational) -> Constraint {
        Constraint::new(coeffs, Relation::Ge, rhs)
    }

    pub fn gt(coeffs: RatVec, rhs: Rational) -> Constraint {
        Constraint::new(coeffs, Relation::Gt, rhs)
    }

    pub fn eq(coeffs: RatVec, rhs: Rational) -> Constraint {
        Constraint::new(coeffs, Relation::Eq, rhs)
    }

    pub fn le(coeffs: RatVec, rhs: Rational) -> Constraint {
        Constraint::new(coeffs.neg(), Relation::Ge, -rhs)
    }

    pub fn lt(coeffs: RatVec, rhs: Rational) -> Constraint {
        Constraint::new(coeffs.neg(), Relation::Gt, -rhs)
    }

    pub fn is_satisfied_by(&self, x: &RatVec) -> bool {
        let lhs = self.coeffs.dot(x);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(RatVec),
    Infeasible,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RatVec> {
        match self {
            LpOutcome::Feasible(x) => Some(x),
            LpOutcome::Infeasible => None,
        }
    }
}

/// Decide feasibility of `constraints` in `dim` variables, returning an exact
/// witness that satisfies every constraint when one exists.
pub fn lp_feasible(dim: usize, constraints: &[Constraint]) -> LpOutcome {
    for c in constraints {
        assert_eq!(c.coeffs.dim(), dim, "constraint has wrong dimension");
    }
    let has_strict = constraints.iter().any(|c| c.relation == Relation::Gt);

    // Column layout: x⁺ (dim), x⁻ (dim), [t], slacks, artificials.
    let n_struct = 2 * dim + usize::from(has_strict);
    let t_col = 2 * dim;
    let mut rows: Vec<(Vec<Rational>, Rational, bool)> = Vec::new();
    for c in constraints {
        let mut row = vec![Rational::zero(); n_struct];
        for (i, a) in c.coeffs.iter().enumerate() {
            row[i] = a.clone();
            row[dim + i] = -a;
        }
        if c.relation == Relation::Gt {
            row[t_col] = Rational::from_int(-1);
        }
        rows.push((row, c.rhs.clone(), c.relation != Relation::Eq));
    }
    if has_strict {
        // t ≤ 1  ⇔  −t ≥ −1
        let mut row = vec![Rational::zero(); n_struct];
        row[t_col] = Rational::from_int(-1);
        rows.push((row, Rational::from_int(-1), true));
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.2).count();
    let art0 = n_struct + n_slack;
    let width = art0 + m;
    let mut tab = Tableau::new(m, width);
    let mut slack = n_struct;
    for (i, (row, rhs, inequality)) in rows.into_iter().enumerate() {
        let flip = rhs.is_negative();
        let sign = |x: Rational| if flip { -x } else { x };
        for (j, a) in row.into_iter().enumerate() {
            tab.set(i, j, sign(a));
        }
        if inequality {
            tab.set(i, slack, sign(Rational::from_int(-1)));
            slack += 1;
        }
        tab.set(i, art0 + i, Rational::one());
        tab.rhs[i] = sign(rhs);
        tab.basis[i] = art0 + i;
    }

    // Phase one: maximize −Σ artificials.
    let mut cost = vec![Rational::zero(); width];
    for c in cost.iter_mut().skip(art0) {
        *c = Rational::from_int(-1);
    }
    tab.maximize(&cost, width);
    let infeasibility: Rational = (0..m)
        .filter(|&i| tab.basis[i] >= art0)
        .map(|i| tab.rhs[i].clone())
        .sum();
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }
    tab.drive_out_artificials(art0);

    if has_strict {
        let mut cost = vec![Rational::zero(); width];
        cost[t_col] = Rational::one();
        tab.maximize(&cost, art0);
        let t = tab.value(t_col);
        if !t.is_positive() {
            return LpOutcome::Infeasible;
        }
    }

    let x: RatVec = (0..dim).map(|i| tab.value(i) - tab.value(dim + i)).collect();
    debug_assert!(constraints.iter().all(|c| c.is_satisfied_by(&x)));
    LpOutcome::Feasible(x)
}

struct Tableau {
    width: usize,
    cells: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(rows: usize, width: usize) -> Tableau {
        Tableau {
            width,
            cells: vec![vec![Rational::zero(); width]; rows],
            rhs: vec![Rational::zero(); rows],
            basis: vec![0; rows],
        }
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.cells[i][j] = v;
    }

    fn value(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rational::zero, |i| self.rhs[i].clone())
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.cells[r][c].recip();
        for x in self.cells[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let pivot_row = self.cells[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.cells.len() {
            if i == r || self.cells[i][c].is_zero() {
                continue;
            }
            let f = self.cells[i][c].clone();
            for (j, p) in pivot_row.iter().enumerate() {
                if !p.is_zero() {
                    let d = &f * p;
                    self.cells[i][j] -= d;
                }
            }
            let d = &f * &pivot_rhs;
            self.rhs[i] -= d;
        }
        self.basis[r] = c;
    }

    /// Maximize `cost · y` over the current basic feasible solution, letting
    /// only columns `< allowed` enter. The objectives used here are bounded.
    fn maximize(&mut self, cost: &[Rational], allowed: usize) {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z: Rational = self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !self.cells[*i][j].is_zero())
                    .map(|(i, &b)| &cost[b] * &self.cells[i][j])
                    .sum();
                (z - &cost[j]).is_negative()
            });
            let Some(c) = entering else {
                return;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.cells.len() {
                let a = &self.cells[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave.expect("objective is bounded");
            self.pivot(r, c);
        }
    }

    fn drive_out_artificials(&mut self, art0: usize) {
        for i in 0..self.cells.len() {
            if self.basis[i] < art0 {
                continue;
            }
            if let Some(j) = (0..art0).find(|&j| !self.cells[i][j].is_zero()) {
                self.pivot(i, j);
            }
        }
        debug_assert!(self.width >= art0);
    }
}
