//! The two LP relaxations over the labeling polytope.
//!
//! Both share the `y` block: `Σ_i y[j][i] = 1` and `y[j][c(j)] = 1` for
//! pre-colored vertices. LP-MHV adds `z[j][i] ≤ y[h][i]` for every `h` in the
//! closed neighborhood of `j` and maximizes `Σ w_j z_j`; LP-MUHV adds
//! `x[j][i] ≥ y[j][i] − y[h][i]` over the open neighborhood and minimizes
//! `Σ w_j x_j`. Given `y`, the optimal auxiliaries are closed-form; see
//! [`tighten_mhv`] and [`tighten_muhv`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::{Instance, Objective};
use crate::lovasz::FractionalLabeling;
use crate::lp::{Bounds, LinearProgram, LpBackend, LpSolution, Relation, Sense};
use crate::rational::Rational;

/// A built relaxation plus the variable indices needed to read it back.
#[derive(Debug, Clone)]
pub struct RelaxationLp {
    pub objective: Objective,
    pub program: LinearProgram,
    /// `y[v][label]`
    pub y: Vec<Vec<usize>>,
    /// `z[v][label]` for MHV, `x[v][label]` for MUHV
    pub aux: Vec<Vec<usize>>,
    /// `z_v` or `x_v`
    pub per_vertex: Vec<usize>,
}

fn one() -> Rational {
    Rational::one()
}

fn base_program(inst: &Instance, sense: Sense, aux_name: &str) -> Result<(LinearProgram, Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<usize>)> {
    let n = inst.num_vertices();
    let k = inst.num_labels();
    let mut lp = LinearProgram::new(sense);
    let mut y = vec![Vec::with_capacity(k); n];
    for (j, row) in y.iter_mut().enumerate() {
        for i in 0..k {
            row.push(lp.add_variable(format!("y_{}_{}", j + 1, i + 1), Bounds::non_negative())?);
        }
    }
    let mut aux = vec![Vec::with_capacity(k); n];
    for (j, row) in aux.iter_mut().enumerate() {
        for i in 0..k {
            row.push(lp.add_variable(format!("{aux_name}_{}_{}", j + 1, i + 1), Bounds::non_negative())?);
        }
    }
    let mut per_vertex = Vec::with_capacity(n);
    for j in 0..n {
        let var = lp.add_variable(format!("{aux_name}_{}", j + 1), Bounds::non_negative())?;
        lp.set_objective(var, inst.weight(j).clone());
        per_vertex.push(var);
    }
    for j in 0..n {
        let terms = y[j].iter().map(|&var| (var, one())).collect();
        lp.add_constraint(format!("row_{}", j + 1), terms, Relation::Eq, one())?;
    }
    for (j, pre) in inst.precolor().iter().enumerate() {
        if let Some(label) = *pre {
            lp.add_constraint(format!("pre_{}", j + 1), vec![(y[j][label], one())], Relation::Eq, one())?;
        }
    }
    Ok((lp, y, aux, per_vertex))
}

fn add_sums(lp: &mut LinearProgram, aux: &[Vec<usize>], per_vertex: &[usize], name: &str) -> Result<()> {
    for (j, &total) in per_vertex.iter().enumerate() {
        let mut terms = vec![(total, one())];
        terms.extend(aux[j].iter().map(|&var| (var, -one())));
        lp.add_constraint(format!("{name}_{}", j + 1), terms, Relation::Eq, Rational::zero())?;
    }
    Ok(())
}

pub fn build_lp_mhv(inst: &Instance) -> Result<RelaxationLp> {
    let (mut lp, y, aux, per_vertex) = base_program(inst, Sense::Maximize, "z")?;
    for j in 0..inst.num_vertices() {
        let mut closed: Vec<usize> = inst.neighbors(j).to_vec();
        closed.push(j);
        closed.sort_unstable();
        for i in 0..inst.num_labels() {
            for &h in &closed {
                lp.add_constraint(
                    format!("happy_{}_{}_{}", j + 1, i + 1, h + 1),
                    vec![(aux[j][i], one()), (y[h][i], -one())],
                    Relation::Le,
                    Rational::zero(),
                )?;
            }
        }
    }
    add_sums(&mut lp, &aux, &per_vertex, "zsum")?;
    Ok(RelaxationLp { objective: Objective::Mhv, program: lp, y, aux, per_vertex })
}

pub fn build_lp_muhv(inst: &Instance) -> Result<RelaxationLp> {
    let (mut lp, y, aux, per_vertex) = base_program(inst, Sense::Minimize, "x")?;
    for j in 0..inst.num_vertices() {
        for i in 0..inst.num_labels() {
            for &h in inst.neighbors(j) {
                lp.add_constraint(
                    format!("unhappy_{}_{}_{}", j + 1, i + 1, h + 1),
                    vec![(aux[j][i], one()), (y[j][i], -one()), (y[h][i], one())],
                    Relation::Ge,
                    Rational::zero(),
                )?;
            }
        }
    }
    add_sums(&mut lp, &aux, &per_vertex, "xsum")?;
    Ok(RelaxationLp { objective: Objective::Muhv, program: lp, y, aux, per_vertex })
}

pub fn build_lp(inst: &Instance, objective: Objective) -> Result<RelaxationLp> {
    match objective {
        Objective::Mhv => build_lp_mhv(inst),
        Objective::Muhv => build_lp_muhv(inst),
    }
}

impl RelaxationLp {
    /// Reads the `y` block of a solution back as a labeling of `inst`.
    pub fn labeling(&self, inst: &Instance, solution: &LpSolution) -> Result<FractionalLabeling> {
        if !solution.is_optimal() {
            return Err(Error::SolverFailure(format!("relaxation not solved: {:?}", solution.status)));
        }
        let rows = self
            .y
            .iter()
            .map(|row| row.iter().map(|&var| solution.value(var).clone()).collect())
            .collect();
        FractionalLabeling::new(inst, rows)
    }
}

/// Solved relaxation.
#[derive(Debug, Clone)]
pub struct RelaxationSolution {
    pub relaxation: RelaxationLp,
    pub solution: LpSolution,
    pub labeling: FractionalLabeling,
}

impl RelaxationSolution {
    pub fn value(&self) -> &Rational {
        &self.solution.objective
    }
}

pub fn solve_relaxation(inst: &Instance, objective: Objective, backend: &dyn LpBackend) -> Result<RelaxationSolution> {
    let relaxation = build_lp(inst, objective)?;
    let solution = backend.solve(&relaxation.program)?;
    let labeling = relaxation.labeling(inst, &solution)?;
    Ok(RelaxationSolution { relaxation, solution, labeling })
}

/// LP-optimal auxiliary values for a fixed labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct Tightened {
    /// `z[v][label]` or `x[v][label]`
    pub per_label: Vec<Vec<Rational>>,
    /// `z_v` or `x_v`
    pub per_vertex: Vec<Rational>,
    /// `Σ_v w_v · per_vertex[v]`
    pub objective: Rational,
}

fn finish(inst: &Instance, per_label: Vec<Vec<Rational>>) -> Tightened {
    let per_vertex: Vec<Rational> = per_label.iter().map(|row| row.iter().sum()).collect();
    let objective = per_vertex.iter().zip(inst.weights()).map(|(x, w)| x * w).sum();
    Tightened { per_label, per_vertex, objective }
}

/// `z[j][i] = min_{h ∈ N[j]} y[h][i]`.
pub fn tighten_mhv(inst: &Instance, labeling: &FractionalLabeling) -> Tightened {
    let per_label = (0..inst.num_vertices())
        .map(|j| {
            (0..inst.num_labels())
                .map(|i| {
                    inst.neighbors(j)
                        .iter()
                        .map(|&h| labeling.get(h, i))
                        .fold(labeling.get(j, i), |m, y| if y < m { y } else { m })
                        .clone()
                })
                .collect()
        })
        .collect();
    finish(inst, per_label)
}

/// `x[j][i] = max(0, max_{h ∈ N(j)} (y[j][i] − y[h][i]))`; zero for isolated vertices.
pub fn tighten_muhv(inst: &Instance, labeling: &FractionalLabeling) -> Tightened {
    let per_label = (0..inst.num_vertices())
        .map(|j| {
            (0..inst.num_labels())
                .map(|i| {
                    let own = labeling.get(j, i);
                    inst.neighbors(j)
                        .iter()
                        .map(|&h| own - labeling.get(h, i))
                        .fold(Rational::zero(), |m, d| if d > m { d } else { m })
                })
                .collect()
        })
        .collect();
    finish(inst, per_label)
}

pub fn tighten(inst: &Instance, labeling: &FractionalLabeling, objective: Objective) -> Tightened {
    match objective {
        Objective::Mhv => tighten_mhv(inst, labeling),
        Objective::Muhv => tighten_muhv(inst, labeling),
    }
}
