//! Weighted graphs with a partial `k`-coloring, and the two set functions
//! that turn happy-vertex labeling into a multi-labeling problem:
//! `f(X) = w(∂X)` (submodular) and `g(X) = w(ι X)` (supermodular).

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::VertexSubset;

/// Which of the two complementary objectives is being optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Maximize the total weight of happy vertices.
    Mhv,
    /// Minimize the total weight of unhappy vertices.
    Muhv,
}

impl Objective {
    /// True when `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: &Rational, incumbent: &Rational) -> bool {
        match self {
            Objective::Mhv => candidate > incumbent,
            Objective::Muhv => candidate < incumbent,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Mhv => "mhv",
            Objective::Muhv => "muhv",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mhv" => Ok(Objective::Mhv),
            "muhv" => Ok(Objective::Muhv),
            other => Err(Error::BadParameters(format!("unknown objective '{other}'"))),
        }
    }
}

/// Unvalidated instance data, as read from a file or assembled by a generator.
///
/// Vertices are `0..num_vertices`, labels `0..num_labels`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawInstance {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<Rational>,
    pub num_labels: usize,
    pub precolor: Vec<Option<usize>>,
}

/// A validated instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    edges: Vec<(usize, usize)>,
    weights: Vec<Rational>,
    num_labels: usize,
    precolor: Vec<Option<usize>>,
    adjacency: Vec<Vec<usize>>,
}

/// Checks every instance invariant and builds the adjacency lists.
pub fn validate_instance(raw: RawInstance) -> Result<Instance> {
    let RawInstance { num_vertices: n, edges, weights, num_labels: k, precolor } = raw;
    if n == 0 {
        return Err(Error::InvalidInstance("instance needs at least one vertex".into()));
    }
    if k < 2 {
        return Err(Error::InvalidInstance(format!("need at least 2 labels, got {k}")));
    }
    if weights.len() != n || precolor.len() != n {
        return Err(Error::InvalidInstance(format!(
            "expected {n} weights and pre-colors, got {} and {}",
            weights.len(),
            precolor.len()
        )));
    }
    if let Some(v) = weights.iter().position(|w| w.is_negative()) {
        return Err(Error::NegativeWeight(v));
    }
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in &edges {
        if u >= n || v >= n {
            return Err(Error::BadEdge { u, v, reason: "endpoint out of range" });
        }
        if u == v {
            return Err(Error::BadEdge { u, v, reason: "self-loop" });
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for (u, list) in adjacency.iter_mut().enumerate() {
        list.sort_unstable();
        if let Some(pair) = list.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::BadEdge { u, v: pair[0], reason: "duplicate edge" });
        }
    }
    let mut used = vec![false; k];
    for (v, c) in precolor.iter().enumerate() {
        if let Some(c) = *c {
            if c >= k {
                return Err(Error::InvalidInstance(format!(
                    "vertex {} pre-colored {} but only {k} labels",
                    v + 1,
                    c + 1
                )));
            }
            used[c] = true;
        }
    }
    if let Some(label) = used.iter().position(|&u| !u) {
        return Err(Error::EmptyLabelClass(label));
    }
    Ok(Instance { edges, weights, num_labels: k, precolor, adjacency })
}

impl Instance {
    pub fn new(
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        weights: Vec<Rational>,
        num_labels: usize,
        precolor: Vec<Option<usize>>,
    ) -> Result<Self> {
        validate_instance(RawInstance { num_vertices, edges, weights, num_labels, precolor })
    }

    pub fn num_vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    /// Edges in their original order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn precolor(&self) -> &[Option<usize>] {
        &self.precolor
    }

    /// Sorted open neighborhood of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Maximum vertex degree; reported, never used by an algorithm.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn uncolored(&self) -> impl Iterator<Item = usize> + '_ {
        self.precolor.iter().enumerate().filter(|(_, c)| c.is_none()).map(|(v, _)| v)
    }

    /// Pre-colored vertices of one label.
    pub fn terminals(&self, label: usize) -> impl Iterator<Item = usize> + '_ {
        self.precolor
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c == Some(label))
            .map(|(v, _)| v)
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn weight_of(&self, set: &VertexSubset) -> Rational {
        set.iter().map(|v| &self.weights[v]).sum()
    }

    pub fn full_set(&self) -> VertexSubset {
        VertexSubset::full(self.num_vertices())
    }

    fn check_universe(&self, set: &VertexSubset) {
        assert_eq!(
            set.universe(),
            self.num_vertices(),
            "subset universe does not match the instance"
        );
    }

    /// `∂(X)`: members of `X` with at least one neighbor outside `X`.
    pub fn boundary(&self, set: &VertexSubset) -> VertexSubset {
        self.check_universe(set);
        let mut out = VertexSubset::empty(self.num_vertices());
        for v in set.iter() {
            if self.adjacency[v].iter().any(|&u| !set.contains(u)) {
                out.insert(v);
            }
        }
        out
    }

    /// `ι(X) = X − ∂(X)`.
    pub fn interior(&self, set: &VertexSubset) -> VertexSubset {
        set.difference(&self.boundary(set))
    }

    /// `f(X) = w(∂X)`.
    pub fn f_unhappy(&self, set: &VertexSubset) -> Rational {
        self.weight_of(&self.boundary(set))
    }

    /// `g(X) = w(ι X)`.
    pub fn g_happy(&self, set: &VertexSubset) -> Rational {
        self.weight_of(&self.interior(set))
    }

    /// Objective value of a total coloring, computed as `Σ_i f(S_i)` or `Σ_i g(S_i)`.
    pub fn evaluate(&self, coloring: &Coloring, objective: Objective) -> Result<Rational> {
        coloring.check_against(self)?;
        let parts = coloring.parts(self.num_labels);
        Ok(match objective {
            Objective::Muhv => parts.iter().map(|s| self.f_unhappy(s)).sum(),
            Objective::Mhv => parts.iter().map(|s| self.g_happy(s)).sum(),
        })
    }

    /// Both objective values of a coloring, `(happy, unhappy)`, by a direct
    /// per-vertex scan.
    pub fn happiness(&self, assignment: &[usize]) -> (Rational, Rational) {
        let mut happy = Rational::zero();
        let mut unhappy = Rational::zero();
        for v in 0..self.num_vertices() {
            if self.adjacency[v].iter().all(|&u| assignment[u] == assignment[v]) {
                happy += &self.weights[v];
            } else {
                unhappy += &self.weights[v];
            }
        }
        (happy, unhappy)
    }
}

/// A total labeling that agrees with the instance's pre-coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(inst: &Instance, assignment: Vec<usize>) -> Result<Self> {
        let coloring = Self { assignment };
        coloring.check_against(inst)?;
        Ok(coloring)
    }

    /// Every uncolored vertex gets `label`.
    pub fn uniform_completion(inst: &Instance, label: usize) -> Result<Self> {
        let assignment = inst.precolor().iter().map(|c| c.unwrap_or(label)).collect();
        Self::new(inst, assignment)
    }

    fn check_against(&self, inst: &Instance) -> Result<()> {
        if self.assignment.len() != inst.num_vertices() {
            return Err(Error::InvalidInstance(format!(
                "coloring has {} entries for {} vertices",
                self.assignment.len(),
                inst.num_vertices()
            )));
        }
        for (v, (&label, pre)) in self.assignment.iter().zip(inst.precolor()).enumerate() {
            if label >= inst.num_labels() {
                return Err(Error::OutOfRange(format!("label {} on vertex {}", label + 1, v + 1)));
            }
            if pre.is_some_and(|p| p != label) {
                return Err(Error::PrecolorViolation(v));
            }
        }
        Ok(())
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn label(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// The partition `S_1..S_k` induced by the coloring.
    pub fn parts(&self, num_labels: usize) -> Vec<VertexSubset> {
        let n = self.assignment.len();
        let mut parts = vec![VertexSubset::empty(n); num_labels];
        for (v, &label) in self.assignment.iter().enumerate() {
            parts[label].insert(v);
        }
        parts
    }

    pub fn into_assignment(self) -> Vec<usize> {
        self.assignment
    }
}
