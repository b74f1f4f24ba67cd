//! Lovász extension of set functions and the Lovász-extension relaxation
//! objective of a fractional labeling.
//!
//! The canonical evaluation is the level-set integral
//! `ĥ(y) = ∫₀¹ h({v : y_v ≥ t}) dt`, summed exactly over the distinct values
//! of `y`. The telescoping form over a sorted permutation, which needs a
//! largest entry of 1 and a smallest of 0, is kept as an independent
//! cross-check.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{Coloring, Instance, Objective};
use crate::rational::Rational;
use crate::subset::VertexSubset;

/// A set function on the vertex set `0..ground_size()`.
pub trait SetFunction: Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &VertexSubset) -> Rational;

    /// `h({order[0..=j]})` for every `j`. Implementations may update
    /// incrementally along the chain.
    fn chain_values(&self, order: &[usize]) -> Vec<Rational> {
        let mut set = VertexSubset::empty(self.ground_size());
        order
            .iter()
            .map(|&v| {
                set.insert(v);
                self.value(&set)
            })
            .collect()
    }
}

/// Adapter for closures.
pub struct FnSetFunction<F> {
    ground: usize,
    func: F,
}

impl<F> FnSetFunction<F>
where
    F: Fn(&VertexSubset) -> Rational + Sync,
{
    pub fn new(ground: usize, func: F) -> Self {
        Self { ground, func }
    }
}

impl<F> SetFunction for FnSetFunction<F>
where
    F: Fn(&VertexSubset) -> Rational + Sync,
{
    fn ground_size(&self) -> usize {
        self.ground
    }

    fn value(&self, set: &VertexSubset) -> Rational {
        (self.func)(set)
    }
}

/// `f(X) = w(∂X)` of an instance.
#[derive(Clone, Copy)]
pub struct BoundaryWeight<'a>(pub &'a Instance);

/// `g(X) = w(ι X)` of an instance.
#[derive(Clone, Copy)]
pub struct InteriorWeight<'a>(pub &'a Instance);

/// Walks the chain of growing prefixes, tracking for every member how many
/// of its neighbors are still outside. Yields `(boundary weight, set weight)`.
fn boundary_chain(inst: &Instance, order: &[usize]) -> Vec<(Rational, Rational)> {
    let n = inst.num_vertices();
    let mut inside = vec![false; n];
    let mut outside_neighbors: Vec<usize> = (0..n).map(|v| inst.degree(v)).collect();
    let mut boundary = Rational::zero();
    let mut total = Rational::zero();
    let mut out = Vec::with_capacity(order.len());
    for &v in order {
        inside[v] = true;
        total += inst.weight(v);
        for &u in inst.neighbors(v) {
            outside_neighbors[u] -= 1;
            if inside[u] && outside_neighbors[u] == 0 {
                boundary -= inst.weight(u);
            }
        }
        if outside_neighbors[v] > 0 {
            boundary += inst.weight(v);
        }
        out.push((boundary.clone(), total.clone()));
    }
    out
}

impl SetFunction for BoundaryWeight<'_> {
    fn ground_size(&self) -> usize {
        self.0.num_vertices()
    }

    fn value(&self, set: &VertexSubset) -> Rational {
        self.0.f_unhappy(set)
    }

    fn chain_values(&self, order: &[usize]) -> Vec<Rational> {
        boundary_chain(self.0, order).into_iter().map(|(b, _)| b).collect()
    }
}

impl SetFunction for InteriorWeight<'_> {
    fn ground_size(&self) -> usize {
        self.0.num_vertices()
    }

    fn value(&self, set: &VertexSubset) -> Rational {
        self.0.g_happy(set)
    }

    fn chain_values(&self, order: &[usize]) -> Vec<Rational> {
        boundary_chain(self.0, order).into_iter().map(|(b, t)| t - b).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Submodular,
    Supermodular,
    Unknown,
}

/// A set function checked to vanish on `∅`, tagged with its declared orientation.
pub struct SetFunctionHandle<F> {
    func: F,
    orientation: Orientation,
}

impl<F: SetFunction> SetFunctionHandle<F> {
    pub fn wrap(func: F, orientation: Orientation) -> Result<Self> {
        if !func.value(&VertexSubset::empty(func.ground_size())).is_zero() {
            return Err(Error::NonZeroAtEmpty);
        }
        Ok(Self { func, orientation })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn function(&self) -> &F {
        &self.func
    }

    fn check_point(&self, y: &[Rational]) -> Result<()> {
        if y.len() != self.func.ground_size() {
            return Err(Error::OutOfRange(format!(
                "point has {} coordinates, ground set has {}",
                y.len(),
                self.func.ground_size()
            )));
        }
        if let Some((v, value)) = y.iter().enumerate().find(|(_, x)| x.is_negative() || **x > Rational::one()) {
            return Err(Error::OutOfRange(format!("coordinate {} = {value} not in [0, 1]", v + 1)));
        }
        Ok(())
    }

    /// Level-set form of the extension.
    pub fn lovasz_value(&self, y: &[Rational]) -> Result<Rational> {
        self.check_point(y)?;
        let order = descending_order(y);
        let chain = self.func.chain_values(&order);
        let mut total = Rational::zero();
        for (j, &v) in order.iter().enumerate() {
            let next = order.get(j + 1).map_or_else(Rational::zero, |&u| y[u].clone());
            let gap = &y[v] - next;
            if !gap.is_zero() {
                total += gap * &chain[j];
            }
        }
        Ok(total)
    }

    /// `Σ_{j<n} (y_{π_j} − y_{π_{j+1}}) h({π_1..π_j})` for the index-tie-broken
    /// descending permutation. Requires `max y = 1` and `min y = 0`.
    pub fn lovasz_telescoping(&self, y: &[Rational]) -> Result<Rational> {
        self.lovasz_telescoping_with_order(y, &descending_order(y))
    }

    /// Telescoping form for a caller-chosen permutation, which must sort `y`
    /// non-increasingly. Every prefix is evaluated from scratch.
    pub fn lovasz_telescoping_with_order(&self, y: &[Rational], order: &[usize]) -> Result<Rational> {
        self.check_point(y)?;
        let n = y.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::OutOfRange("order is not a permutation".into()));
        }
        if order.windows(2).any(|p| y[p[0]] < y[p[1]]) {
            return Err(Error::OutOfRange("order does not sort the point".into()));
        }
        if n == 0 || !y[order[0]].is_one() || !y[order[n - 1]].is_zero() {
            return Err(Error::OutOfRange("telescoping form needs max 1 and min 0".into()));
        }
        let mut prefix = VertexSubset::empty(n);
        let mut total = Rational::zero();
        for j in 0..n - 1 {
            prefix.insert(order[j]);
            let gap = &y[order[j]] - &y[order[j + 1]];
            total += gap * self.func.value(&prefix);
        }
        Ok(total)
    }
}

/// Indices sorted by decreasing value, ties by increasing index.
pub fn descending_order(y: &[Rational]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by(|&a, &b| y[b].cmp(&y[a]).then(a.cmp(&b)));
    order
}

/// An `n × k` matrix `y[v][i]` with rows summing to 1 and pre-colored
/// vertices fixed to their label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalLabeling {
    rows: Vec<Vec<Rational>>,
}

impl FractionalLabeling {
    pub fn new(inst: &Instance, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let k = inst.num_labels();
        if rows.len() != inst.num_vertices() {
            return Err(Error::InvariantViolation(format!(
                "{} rows for {} vertices",
                rows.len(),
                inst.num_vertices()
            )));
        }
        for (v, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvariantViolation(format!("row {} has {} entries", v + 1, row.len())));
            }
            if row.iter().any(|x| x.is_negative() || *x > Rational::one()) {
                return Err(Error::InvariantViolation(format!("row {} has an entry outside [0, 1]", v + 1)));
            }
            if !row.iter().sum::<Rational>().is_one() {
                return Err(Error::InvariantViolation(format!("row {} does not sum to 1", v + 1)));
            }
            if let Some(label) = inst.precolor()[v] {
                if !row[label].is_one() {
                    return Err(Error::InvariantViolation(format!(
                        "pre-colored vertex {} not fixed to label {}",
                        v + 1,
                        label + 1
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn from_coloring(inst: &Instance, coloring: &Coloring) -> Self {
        let k = inst.num_labels();
        let rows = coloring
            .assignment()
            .iter()
            .map(|&label| {
                (0..k).map(|i| if i == label { Rational::one() } else { Rational::zero() }).collect()
            })
            .collect();
        Self { rows }
    }

    pub fn num_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn num_labels(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, v: usize, label: usize) -> &Rational {
        &self.rows[v][label]
    }

    pub fn row(&self, v: usize) -> &[Rational] {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// The vector `𝐲_i` of one label over all vertices.
    pub fn column(&self, label: usize) -> Vec<Rational> {
        self.rows.iter().map(|row| row[label].clone()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_zero() || x.is_one())
    }

    /// Distinct entries, ascending.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let mut values: Vec<Rational> = self.rows.iter().flatten().cloned().collect();
        values.sort();
        values.dedup();
        values
    }
}

/// `Σ_i f̂(𝐲_i)` for MUHV, `Σ_i ĝ(𝐲_i)` for MHV.
pub fn relaxation_objective(inst: &Instance, labeling: &FractionalLabeling, objective: Objective) -> Result<Rational> {
    FractionalLabeling::new(inst, labeling.rows.clone())?;
    let mut total = Rational::zero();
    for label in 0..inst.num_labels() {
        let column = labeling.column(label);
        total += match objective {
            Objective::Muhv => {
                SetFunctionHandle::wrap(BoundaryWeight(inst), Orientation::Submodular)?.lovasz_value(&column)?
            }
            Objective::Mhv => {
                SetFunctionHandle::wrap(InteriorWeight(inst), Orientation::Supermodular)?.lovasz_value(&column)?
            }
        };
    }
    Ok(total)
}
