//! Dense two-phase tableau simplex, generic over exact rationals and `f64`.

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpBackend, LpSolution, LpStatus, Relation, Sense, FLOAT_TOLERANCE};
use crate::error::{Error, Result};
use crate::rational::{from_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact rationals; results satisfy every constraint exactly.
    Exact,
    /// `f64` with absolute tolerance; results are checked within [`FLOAT_TOLERANCE`].
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest-index entering and leaving variables. Never cycles.
    Bland,
    /// Most negative reduced cost; falls back to Bland after a run of
    /// degenerate pivots.
    Dantzig,
}

#[derive(Debug, Clone, Copy)]
pub struct Simplex {
    pub arithmetic: Arithmetic,
    pub rule: PivotRule,
    pub max_iterations: usize,
}

impl Default for Simplex {
    fn default() -> Self {
        Self::new(Arithmetic::Exact, PivotRule::Bland)
    }
}

impl Simplex {
    pub fn new(arithmetic: Arithmetic, rule: PivotRule) -> Self {
        Self { arithmetic, rule, max_iterations: 1_000_000 }
    }
}

impl LpBackend for Simplex {
    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution> {
        let solution = match self.arithmetic {
            Arithmetic::Exact => run::<Rational>(lp, self)?,
            Arithmetic::Float => run::<f64>(lp, self)?,
        };
        if solution.status == LpStatus::Optimal {
            let tolerance = match self.arithmetic {
                Arithmetic::Exact => None,
                Arithmetic::Float => Some(FLOAT_TOLERANCE),
            };
            lp.check_feasible(&solution.values, tolerance)
                .map_err(|msg| Error::SolverFailure(format!("self-check failed: {msg}")))?;
        }
        Ok(solution)
    }
}

trait Field: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_rational(&self) -> Option<Rational>;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn less(&self, other: &Self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);
    fn clean(&mut self) {}
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn less(&self, other: &Self) -> bool {
        self < other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

const EPS: f64 = 1e-11;

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        crate::rational::to_f64(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        from_f64(*self)
    }
    fn is_zero(&self) -> bool {
        self.abs() <= EPS
    }
    fn is_positive(&self) -> bool {
        *self > EPS
    }
    fn is_negative(&self) -> bool {
        *self < -EPS
    }
    fn less(&self, other: &Self) -> bool {
        *self < other - EPS
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn clean(&mut self) {
        if self.abs() <= EPS {
            *self = 0.0;
        }
    }
}

/// How an original variable maps onto non-negative tableau columns.
enum ColumnMap {
    /// `x = shift + col`
    Shifted { col: usize, shift: Rational },
    /// `x = pos − neg`
    Split { pos: usize, neg: usize },
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// reduced costs; last entry is minus the objective value
    cost: Vec<T>,
    basis: Vec<usize>,
    width: usize,
    artificial_start: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl<T: Field> Tableau<T> {
    /// Overwrites `cost` with the reduced costs of `costs` for the current basis.
    fn price(&mut self, costs: &[T]) {
        let mut cost = costs.to_vec();
        cost.resize(self.width + 1, T::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = costs.get(b).cloned().unwrap_or_else(T::zero);
            if cb.is_zero() {
                continue;
            }
            for (c, a) in self.rows[r].iter().enumerate() {
                if !a.is_zero() {
                    cost[c].sub_mul(&cb, a);
                }
            }
        }
        for c in cost.iter_mut() {
            c.clean();
        }
        self.cost = cost;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        let inv = T::one().div(&pivot);
        for a in self.rows[row].iter_mut() {
            if !a.is_zero() {
                *a = a.mul(&inv);
            }
        }
        self.rows[row][col] = T::one();
        let support: Vec<usize> = (0..=self.width).filter(|&c| !self.rows[row][c].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let eliminate = |target: &mut Vec<T>| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for &c in &support {
                target[c].sub_mul(&factor, &pivot_row[c]);
                target[c].clean();
            }
            target[col] = T::zero();
        };
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(target);
            }
        }
        eliminate(&mut self.cost);
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }

    fn entering(&self, allowed: usize, rule: PivotRule) -> Option<usize> {
        match rule {
            PivotRule::Bland => (0..allowed).find(|&c| self.cost[c].is_negative()),
            PivotRule::Dantzig => {
                let mut best: Option<usize> = None;
                for c in 0..allowed {
                    if self.cost[c].is_negative() && best.is_none_or(|b| self.cost[c].less(&self.cost[b])) {
                        best = Some(c);
                    }
                }
                best
            }
        }
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = row[self.width].div(&row[col]);
            let better = match &best {
                None => true,
                Some((br, bratio)) => {
                    ratio.less(bratio) || (!bratio.less(&ratio) && self.basis[r] < self.basis[*br])
                }
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    fn optimize(&mut self, allowed: usize, rule: PivotRule, budget: &mut usize) -> Result<Outcome> {
        let mut degenerate_run = 0usize;
        loop {
            let effective = if degenerate_run > 50 { PivotRule::Bland } else { rule };
            let Some(col) = self.entering(allowed, effective) else {
                return Ok(Outcome::Optimal);
            };
            let Some(row) = self.leaving(col) else {
                return Ok(Outcome::Unbounded);
            };
            if *budget == 0 {
                return Err(Error::SolverFailure("iteration limit reached".into()));
            }
            *budget -= 1;
            if self.rows[row][self.width].is_zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(row, col);
        }
    }
}

fn run<T: Field>(lp: &LinearProgram, options: &Simplex) -> Result<LpSolution> {
    // columns for the original variables
    let mut maps = Vec::with_capacity(lp.num_variables());
    let mut ncols = 0usize;
    for b in lp.bounds() {
        match &b.lower {
            Some(lo) => {
                maps.push(ColumnMap::Shifted { col: ncols, shift: lo.clone() });
                ncols += 1;
            }
            None => {
                maps.push(ColumnMap::Split { pos: ncols, neg: ncols + 1 });
                ncols += 2;
            }
        }
    }

    // rows as (sparse terms over columns, relation, rhs)
    let mut rows: Vec<(Vec<(usize, Rational)>, Relation, Rational)> = Vec::new();
    let mut push_row = |terms: &[(usize, Rational)], relation: Relation, rhs: &Rational| {
        let mut out = Vec::with_capacity(terms.len());
        let mut rhs = rhs.clone();
        for (var, a) in terms {
            match &maps[*var] {
                ColumnMap::Shifted { col, shift } => {
                    rhs -= a * shift;
                    out.push((*col, a.clone()));
                }
                ColumnMap::Split { pos, neg } => {
                    out.push((*pos, a.clone()));
                    out.push((*neg, -a));
                }
            }
        }
        rows.push((out, relation, rhs));
    };
    for c in lp.constraints() {
        push_row(&c.terms, c.relation, &c.rhs);
    }
    for (var, b) in lp.bounds().iter().enumerate() {
        if let Some(hi) = &b.upper {
            push_row(&[(var, <Rational as One>::one())], Relation::Le, hi);
        }
    }
    for (terms, relation, rhs) in rows.iter_mut() {
        if Signed::is_negative(&*rhs) {
            *rhs = -rhs.clone();
            for (_, a) in terms.iter_mut() {
                *a = -a.clone();
            }
            *relation = match relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let slack_count = rows.iter().filter(|(_, rel, _)| *rel != Relation::Eq).count();
    let artificial_count = rows.iter().filter(|(_, rel, _)| *rel != Relation::Le).count();
    let artificial_start = ncols + slack_count;
    let width = artificial_start + artificial_count;

    let mut tableau = Tableau::<T> {
        rows: Vec::with_capacity(rows.len()),
        cost: vec![T::zero(); width + 1],
        basis: Vec::with_capacity(rows.len()),
        width,
        artificial_start,
    };
    let mut next_slack = ncols;
    let mut next_artificial = artificial_start;
    for (terms, relation, rhs) in &rows {
        let mut row = vec![T::zero(); width + 1];
        for (col, a) in terms {
            // repeated terms accumulate
            row[*col].sub_mul(&T::from_rational(a).neg(), &T::one());
        }
        row[width] = T::from_rational(rhs);
        match relation {
            Relation::Le => {
                row[next_slack] = T::one();
                tableau.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = T::one().neg();
                next_slack += 1;
                row[next_artificial] = T::one();
                tableau.basis.push(next_artificial);
                next_artificial += 1;
            }
            Relation::Eq => {
                row[next_artificial] = T::one();
                tableau.basis.push(next_artificial);
                next_artificial += 1;
            }
        }
        tableau.rows.push(row);
    }

    let mut budget = options.max_iterations;

    // phase 1
    if artificial_count > 0 {
        let mut costs = vec![T::zero(); width];
        for c in costs.iter_mut().skip(artificial_start) {
            *c = T::one();
        }
        tableau.price(&costs);
        tableau.optimize(width, options.rule, &mut budget)?;
        if tableau.cost[width].is_negative() {
            return Ok(LpSolution { status: LpStatus::Infeasible, values: Vec::new(), objective: <Rational as Zero>::zero() });
        }
        // drive remaining (zero-valued) artificials out of the basis
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] >= tableau.artificial_start {
                match (0..tableau.artificial_start).find(|&c| !tableau.rows[r][c].is_zero()) {
                    Some(col) => tableau.pivot(r, col),
                    None => {
                        tableau.rows.remove(r);
                        tableau.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    // phase 2, always minimizing
    let mut costs = vec![T::zero(); width];
    for (var, c) in lp.objective().iter().enumerate() {
        let c = match lp.sense() {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c,
        };
        match &maps[var] {
            ColumnMap::Shifted { col, .. } => costs[*col] = T::from_rational(&c),
            ColumnMap::Split { pos, neg } => {
                costs[*pos] = T::from_rational(&c);
                costs[*neg] = T::from_rational(&-c);
            }
        }
    }
    tableau.price(&costs);
    if let Outcome::Unbounded = tableau.optimize(artificial_start, options.rule, &mut budget)? {
        return Ok(LpSolution { status: LpStatus::Unbounded, values: Vec::new(), objective: <Rational as Zero>::zero() });
    }

    let mut column_values = vec![<Rational as Zero>::zero(); width];
    for (r, &b) in tableau.basis.iter().enumerate() {
        column_values[b] = tableau.rows[r][width]
            .to_rational()
            .ok_or_else(|| Error::SolverFailure("non-finite value in tableau".into()))?;
    }
    let values: Vec<Rational> = maps
        .iter()
        .map(|m| match m {
            ColumnMap::Shifted { col, shift } => shift + &column_values[*col],
            ColumnMap::Split { pos, neg } => &column_values[*pos] - &column_values[*neg],
        })
        .collect();
    let objective = lp.objective_value(&values);
    Ok(LpSolution { status: LpStatus::Optimal, values, objective })
}
