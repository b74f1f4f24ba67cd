//! Linear programs over exact rationals, a reference simplex solver, and an
//! LP-format exporter for cross-checking with external solvers.

mod export;
mod simplex;

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{from_f64, Rational};

pub use export::write_lp_format;
pub use simplex::{Arithmetic, PivotRule, Simplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `lower = None` means unbounded below, `upper = None` unbounded above.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bounds {
    pub fn non_negative() -> Self {
        Self { lower: Some(Rational::zero()), upper: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    sense: Sense,
    names: Vec<String>,
    index: HashMap<String, usize>,
    objective: Vec<Rational>,
    bounds: Vec<Bounds>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        Self {
            sense,
            names: Vec::new(),
            index: HashMap::new(),
            objective: Vec::new(),
            bounds: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add_variable(&mut self, name: impl Into<String>, bounds: Bounds) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::BadParameters(format!("duplicate LP variable '{name}'")));
        }
        if let (Some(lo), Some(hi)) = (&bounds.lower, &bounds.upper) {
            if lo > hi {
                return Err(Error::BadParameters(format!("inconsistent bounds on '{name}'")));
            }
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.objective.push(Rational::zero());
        self.bounds.push(bounds);
        Ok(id)
    }

    pub fn set_objective(&mut self, var: usize, coefficient: Rational) {
        self.objective[var] = coefficient;
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        let name = name.into();
        if let Some(&(var, _)) = terms.iter().find(|(var, _)| *var >= self.names.len()) {
            return Err(Error::BadParameters(format!("constraint '{name}' references unknown variable {var}")));
        }
        self.constraints.push(Constraint { name, terms, relation, rhs });
        Ok(())
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn num_variables(&self) -> usize {
        self.names.len()
    }

    pub fn variable(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective_value(&self, values: &[Rational]) -> Rational {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    /// Checks bounds and constraints; `tolerance = None` demands exact satisfaction.
    pub fn check_feasible(&self, values: &[Rational], tolerance: Option<f64>) -> std::result::Result<(), String> {
        if values.len() != self.num_variables() {
            return Err(format!("{} values for {} variables", values.len(), self.num_variables()));
        }
        let tol = tolerance.and_then(from_f64).unwrap_or_else(Rational::zero);
        for (var, (b, x)) in self.bounds.iter().zip(values).enumerate() {
            if b.lower.as_ref().is_some_and(|lo| x < &(lo - &tol)) || b.upper.as_ref().is_some_and(|hi| x > &(hi + &tol)) {
                return Err(format!("variable {} = {x} violates its bounds", self.names[var]));
            }
        }
        for c in &self.constraints {
            let lhs: Rational = c.terms.iter().map(|(v, a)| a * &values[*v]).sum();
            let diff = lhs - &c.rhs;
            let ok = match c.relation {
                Relation::Le => diff <= tol,
                Relation::Ge => diff >= -tol.clone(),
                Relation::Eq => diff.abs() <= tol,
            };
            if !ok {
                return Err(format!("constraint {} violated by {diff}", c.name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Variable values; meaningful only when optimal.
    pub values: Vec<Rational>,
    pub objective: Rational,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn value(&self, var: usize) -> &Rational {
        &self.values[var]
    }
}

/// Anything that can solve a [`LinearProgram`] under the same contract as
/// the reference simplex.
pub trait LpBackend {
    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution>;
}

/// Solves with the default backend: exact rational simplex, Bland's rule.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    Simplex::default().solve(lp)
}

/// Floating-point tolerance used by the float path's self-check.
pub const FLOAT_TOLERANCE: f64 = 1e-9;
