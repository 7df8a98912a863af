//! Dense two-phase primal simplex over exact rationals.
//!
//! Bland's rule picks both the entering and the leaving variable, so the
//! method cannot cycle. Pivots skip zero entries, which matters because
//! the programs built here are very sparse.

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<(usize, Rational)>,
    pub constraints: Vec<LinearConstraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { values: Vec<Rational>, objective: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, ..Default::default() }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        self.constraints.push(LinearConstraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of the current objective (entering when positive).
    reduced: Vec<Rational>,
    num_vars: usize,
    /// Columns at or past this index are artificial.
    first_artificial: usize,
    width: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let mut normalized = Vec::with_capacity(m);
        for c in &lp.constraints {
            if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                let coeffs = c.coeffs.iter().map(|(j, a)| (*j, -a)).collect::<Vec<_>>();
                normalized.push((coeffs, flipped, -&c.rhs));
            } else {
                normalized.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
            }
        }
        let slack_count = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
        let artificial_count = normalized.iter().filter(|c| c.1 != Relation::Le).count();
        let first_slack = lp.num_vars;
        let first_artificial = first_slack + slack_count;
        let width = first_artificial + artificial_count;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (first_slack, first_artificial);
        for (coeffs, relation, b) in normalized {
            let mut row = vec![Rational::zero(); width];
            for (j, a) in coeffs {
                row[j] += a;
            }
            match relation {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
            rhs.push(b);
        }

        // phase one: maximize -(sum of artificials)
        let mut reduced = vec![Rational::zero(); width];
        for (row, &b) in rows.iter().zip(&basis) {
            if b >= first_artificial {
                for (r, a) in reduced.iter_mut().zip(row) {
                    if !a.is_zero() {
                        *r += a;
                    }
                }
            }
        }
        for r in reduced.iter_mut().skip(first_artificial) {
            *r = Rational::zero();
        }

        Self {
            rows,
            rhs,
            basis,
            reduced,
            num_vars: lp.num_vars,
            first_artificial,
            width,
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = self.rows[pr][pc].recip();
        let nonzero: Vec<usize> = (0..self.width).filter(|&j| !self.rows[pr][j].is_zero()).collect();
        for &j in &nonzero {
            self.rows[pr][j] *= &inv;
        }
        self.rhs[pr] *= &inv;
        let pivot_row = std::mem::take(&mut self.rows[pr]);
        let pivot_rhs = self.rhs[pr].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pr || row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for &j in &nonzero {
                row[j] -= &factor * &pivot_row[j];
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.reduced[pc].is_zero() {
            let factor = self.reduced[pc].clone();
            for &j in &nonzero {
                self.reduced[j] -= &factor * &pivot_row[j];
            }
        }
        self.rows[pr] = pivot_row;
        self.basis[pr] = pc;
    }

    fn run(&mut self, allowed: usize) -> PhaseEnd {
        loop {
            let Some(pc) = (0..allowed).find(|&j| self.reduced[j].is_positive()) else {
                return PhaseEnd::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][pc];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((pr, _)) => self.pivot(pr, pc),
                None => return PhaseEnd::Unbounded,
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        if self.first_artificial < self.width {
            self.run(self.width);
            let infeasible = self
                .basis
                .iter()
                .zip(&self.rhs)
                .any(|(&b, v)| b >= self.first_artificial && v.is_positive());
            if infeasible {
                return LpOutcome::Infeasible;
            }
            // drive zero-level artificials out of the basis
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => self.pivot(i, j),
                        None => {
                            // redundant row
                            self.rows.swap_remove(i);
                            self.rhs.swap_remove(i);
                            self.basis.swap_remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }

        let mut cost = vec![Rational::zero(); self.width];
        for (j, c) in &lp.objective {
            cost[*j] += c;
        }
        self.reduced = cost.clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (r, a) in self.reduced.iter_mut().zip(row) {
                if !a.is_zero() {
                    *r -= &cost[b] * a;
                }
            }
        }

        match self.run(self.first_artificial) {
            PhaseEnd::Unbounded => LpOutcome::Unbounded,
            PhaseEnd::Optimal => {
                let mut values = vec![Rational::zero(); self.num_vars];
                for (&b, v) in self.basis.iter().zip(&self.rhs) {
                    if b < self.num_vars {
                        values[b] = v.clone();
                    }
                }
                let objective = lp.objective.iter().map(|(j, c)| c * &values[*j]).sum();
                LpOutcome::Optimal { values, objective }
            }
        }
    }
}
