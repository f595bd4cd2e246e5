//! A small dense two-phase simplex over exact rationals.
//!
//! Bland's rule on both entering and leaving variables, so it terminates
//! without cycling. Meant for the few-dozen-row programs that decide
//! realizability; there is no attempt at sparsity.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `maximize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<(Vec<Rational>, Relation, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push((coeffs, relation, rhs));
        self
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars;
        let m = self.constraints.len();

        // Normalize to non-negative right-hand sides.
        let rows: Vec<(Vec<Rational>, Relation, Rational)> = self
            .constraints
            .iter()
            .map(|(a, rel, b)| {
                if b.is_negative() {
                    let flipped = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (a.iter().map(|x| -x).collect(), flipped, -b)
                } else {
                    (a.clone(), *rel, b.clone())
                }
            })
            .collect();

        let num_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let num_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let width = n + num_slack + num_art;
        let art_start = n + num_slack;

        let mut tab = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), width };
        let (mut slack, mut art) = (n, art_start);
        for (a, rel, b) in rows {
            let mut row = vec![Rational::zero(); width + 1];
            row[..n].clone_from_slice(&a);
            row[width] = b;
            match rel {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    tab.basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    row[art] = Rational::from_integer(1.into());
                    tab.basis.push(art);
                    slack += 1;
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::from_integer(1.into());
                    tab.basis.push(art);
                    art += 1;
                }
            }
            tab.rows.push(row);
        }

        // Phase 1: maximize −Σ artificials.
        if num_art > 0 {
            let mut cost = vec![Rational::zero(); width];
            for c in cost.iter_mut().skip(art_start) {
                *c = Rational::from_integer((-1).into());
            }
            let mut obj = tab.objective_row(&cost);
            let all = vec![true; width];
            tab.optimize(&mut obj, &all);
            if obj[width].is_negative() {
                return LpOutcome::Infeasible;
            }
            tab.evict_artificials(art_start);
        }

        // Phase 2 on the original objective, artificials frozen at zero.
        let mut cost = vec![Rational::zero(); width];
        cost[..n].clone_from_slice(&self.objective);
        let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
        let mut obj = tab.objective_row(&cost);
        if !tab.optimize(&mut obj, &allowed) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for (row, &b) in tab.rows.iter().zip(&tab.basis) {
            if b < n {
                x[b] = row[width].clone();
            }
        }
        LpOutcome::Optimal { x, value: obj[width].clone() }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    /// Reduced costs `c_B B⁻¹ A_j − c_j` and the current objective in the last slot.
    fn objective_row(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = cost.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(row) {
                *o += &cost[b] * a;
            }
        }
        obj
    }

    /// Returns false if the objective is unbounded.
    fn optimize(&mut self, obj: &mut [Rational], allowed: &[bool]) -> bool {
        loop {
            let Some(enter) = (0..self.width).find(|&j| allowed[j] && obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(obj, r, enter);
        }
    }

    fn pivot(&mut self, obj: &mut [Rational], r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        if !obj[c].is_zero() {
            let factor = obj[c].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// After a feasible phase 1, pivot zero-level artificials out of the
    /// basis; rows where that is impossible are redundant and dropped.
    fn evict_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < art_start {
                i += 1;
                continue;
            }
            match (0..art_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    let mut dummy = vec![Rational::zero(); self.width + 1];
                    self.pivot(&mut dummy, i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
