//! Named property suites over random (and, for small `n`, exhaustive) inputs.
//!
//! Each trial draws from its own ChaCha stream, so a run is reproducible from
//! `(seed, trial)` and independent of thread scheduling. Violations carry the
//! offending instance, shrunk by dropping edges or hyperedges while the
//! property still fails.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{
    backmap_solution, disconnects_terminals, gen_random, random_hypergraph, random_labeling, reduce_hypmc,
    solve_hypmc_exact, Hypergraph, HypergraphSpec, RandomSpec, DEFAULT_HYPEREDGE_BUDGET,
};
use crate::instance::{Instance, Objective};
use crate::lovasz::{relaxation_objective, BoundaryWeight, InteriorWeight, Orientation, SetFunctionHandle};
use crate::lp::Simplex;
use crate::rational::Rational;
use crate::relaxation::{solve_relaxation, tighten};
use crate::rounding::round_derandomized;
use crate::solvers::{solve_exact_with_budget, DEFAULT_BUDGET};
use crate::subset::VertexSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Boundary,
    Submodular,
    LovaszLpMhv,
    LovaszLpMuhv,
    RoundingGuarantee,
    Reduction,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Boundary,
        Suite::Submodular,
        Suite::LovaszLpMhv,
        Suite::LovaszLpMuhv,
        Suite::RoundingGuarantee,
        Suite::Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Boundary => "boundary",
            Suite::Submodular => "submodular",
            Suite::LovaszLpMhv => "lovasz-lp-mhv",
            Suite::LovaszLpMuhv => "lovasz-lp-muhv",
            Suite::RoundingGuarantee => "rounding-guarantee",
            Suite::Reduction => "reduction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::BadParameters(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub trials: usize,
    pub seed: u64,
    /// Largest `n` for which every labeled graph is enumerated (boundary and
    /// submodular suites); 0 disables the exhaustive pass.
    pub exhaustive_max_n: usize,
    /// Random subset pairs drawn per random graph.
    pub pairs_per_graph: usize,
    /// Random fractional labelings per instance (Lovász/LP suites).
    pub labelings_per_instance: usize,
    /// Brute-force enumeration budget.
    pub budget: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            exhaustive_max_n: 5,
            pairs_per_graph: 50,
            labelings_per_instance: 10,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Graph(Instance),
    Hypergraph(Hypergraph),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Trial index, or `None` for the exhaustive pass.
    pub trial: Option<usize>,
    pub message: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suite: Suite,
    pub trials: usize,
    /// Individual property evaluations performed.
    pub assertions: u64,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of checking one input: assertions made and the first failure.
type Outcome = Result<(u64, Option<String>)>;

pub fn run_suite(suite: Suite, config: &CheckConfig) -> Result<CheckReport> {
    let mut assertions = 0;
    let mut violations = Vec::new();
    if matches!(suite, Suite::Boundary | Suite::Submodular) && config.exhaustive_max_n > 0 {
        let (count, found) = exhaustive_pass(suite, config.exhaustive_max_n, config.seed)?;
        assertions += count;
        violations.extend(found);
    }
    let results: Vec<Result<(u64, Option<Violation>)>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(config.seed, trial);
            run_trial(suite, config, &mut rng, trial)
        })
        .collect();
    for result in results {
        let (count, violation) = result?;
        assertions += count;
        violations.extend(violation);
    }
    Ok(CheckReport { suite, trials: config.trials, assertions, violations })
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(suite: Suite, config: &CheckConfig, rng: &mut ChaCha8Rng, trial: usize) -> Result<(u64, Option<Violation>)> {
    if suite == Suite::Reduction {
        let h = random_hypergraph(&HypergraphSpec {
            num_vertices: rng.gen_range(3..=8),
            num_hyperedges: rng.gen_range(1..=10),
            num_terminals: rng.gen_range(2..=3),
            max_size: rng.gen_range(2..=4),
            weight_low: 0,
            weight_high: 9,
            seed: rng.gen(),
        })?;
        let (count, failure) = check_reduction(&h, config.budget)?;
        let violation = match failure {
            None => None,
            Some(message) => {
                let witness = shrink_hypergraph(h, config.budget)?;
                Some(Violation { trial: Some(trial), message, witness: Witness::Hypergraph(witness) })
            }
        };
        return Ok((count, violation));
    }
    let (max_n, k_range) = match suite {
        Suite::Boundary | Suite::Submodular => (14, 2..=4),
        Suite::LovaszLpMhv | Suite::LovaszLpMuhv => (10, 2..=4),
        _ => (9, 3..=4),
    };
    let inst = random_instance(rng, max_n, k_range)?;
    let sub_seed: u64 = rng.gen();
    let check = |inst: &Instance| -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
        match suite {
            Suite::Boundary => check_boundary_random(inst, &mut rng, config.pairs_per_graph),
            Suite::Submodular => check_submodular_random(inst, &mut rng, config.pairs_per_graph),
            Suite::LovaszLpMhv => check_lovasz_lp(inst, Objective::Mhv, &mut rng, config.labelings_per_instance),
            Suite::LovaszLpMuhv => check_lovasz_lp(inst, Objective::Muhv, &mut rng, config.labelings_per_instance),
            Suite::RoundingGuarantee => {
                check_rounding(inst, &mut rng, config.labelings_per_instance.min(3), config.budget)
            }
            Suite::Reduction => unreachable!(),
        }
    };
    let (count, failure) = check(&inst)?;
    let violation = match failure {
        None => None,
        Some(message) => {
            let witness = shrink_instance(inst, |i| Ok(check(i)?.1.is_some()))?;
            Some(Violation { trial: Some(trial), message, witness: Witness::Graph(witness) })
        }
    };
    Ok((count, violation))
}

/// Random instance with `k + 1 ≤ n ≤ max_n`, one or two pre-colored
/// vertices per label and weights with denominators up to 4.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, labels: std::ops::RangeInclusive<usize>) -> Result<Instance> {
    let k = rng.gen_range(labels);
    let n = rng.gen_range(k + 1..=max_n.max(k + 1));
    let per_label = if n > 2 * k && rng.gen_bool(0.3) { 2 } else { 1 };
    gen_random(&RandomSpec {
        num_vertices: n,
        num_labels: k,
        edge_probability: rng.gen_range(0.15..0.7),
        weight_low: 0,
        weight_high: 12,
        weight_denominator: rng.gen_range(1..=4),
        precolored_per_label: per_label,
        seed: rng.gen(),
        connected: false,
    })
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSubset {
    VertexSubset::from_vertices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

fn boundary_failure(inst: &Instance, x: &VertexSubset, y: &VertexSubset) -> Option<String> {
    let (bx, by) = (inst.boundary(x), inst.boundary(y));
    let b_cap = inst.boundary(&x.intersection(y));
    let b_cup = inst.boundary(&x.union(y));
    let either = bx.union(&by);
    if !b_cap.is_subset(&either) {
        Some(format!("boundary of X∩Y not inside ∂X ∪ ∂Y for X = {x:?}, Y = {y:?}"))
    } else if !b_cup.is_subset(&either) {
        Some(format!("boundary of X∪Y not inside ∂X ∪ ∂Y for X = {x:?}, Y = {y:?}"))
    } else if !b_cap.intersection(&b_cup).is_subset(&bx.intersection(&by)) {
        Some(format!("∂(X∩Y) ∩ ∂(X∪Y) not inside ∂X ∩ ∂Y for X = {x:?}, Y = {y:?}"))
    } else if !bx.is_subset(x) {
        Some(format!("boundary escapes its set for X = {x:?}"))
    } else {
        None
    }
}

/// `(f, g)` values, checked against the complement identity by the caller.
fn submodular_failure(
    x: &VertexSubset,
    y: &VertexSubset,
    f: impl Fn(&VertexSubset) -> Rational,
    g: impl Fn(&VertexSubset) -> Rational,
) -> Option<String> {
    let (cap, cup) = (x.intersection(y), x.union(y));
    if f(x) + f(y) < f(&cap) + f(&cup) {
        return Some(format!("f not submodular at X = {x:?}, Y = {y:?}"));
    }
    if g(x) + g(y) > g(&cap) + g(&cup) {
        return Some(format!("g not supermodular at X = {x:?}, Y = {y:?}"));
    }
    None
}

fn check_boundary_random(inst: &Instance, rng: &mut ChaCha8Rng, pairs: usize) -> Outcome {
    let n = inst.num_vertices();
    if !inst.boundary(&VertexSubset::empty(n)).is_empty() || !inst.boundary(&inst.full_set()).is_empty() {
        return Ok((2, Some("boundary of ∅ or V is non-empty".into())));
    }
    for i in 0..pairs {
        let (x, y) = (random_subset(rng, n), random_subset(rng, n));
        if let Some(msg) = boundary_failure(inst, &x, &y) {
            return Ok((i as u64 + 3, Some(msg)));
        }
    }
    Ok((pairs as u64 + 2, None))
}

fn check_submodular_random(inst: &Instance, rng: &mut ChaCha8Rng, pairs: usize) -> Outcome {
    let n = inst.num_vertices();
    for i in 0..pairs {
        let (x, y) = (random_subset(rng, n), random_subset(rng, n));
        if inst.g_happy(&x) != inst.weight_of(&x) - inst.f_unhappy(&x) {
            return Ok((i as u64 + 1, Some(format!("g ≠ w − f at X = {x:?}"))));
        }
        if let Some(msg) = submodular_failure(&x, &y, |s| inst.f_unhappy(s), |s| inst.g_happy(s)) {
            return Ok((i as u64 + 1, Some(msg)));
        }
    }
    Ok((pairs as u64, None))
}

/// Every edge set on `n ≤ max_n` vertices with seeded integer weights; all
/// subset pairs of each graph.
fn exhaustive_pass(suite: Suite, max_n: usize, seed: u64) -> Result<(u64, Vec<Violation>)> {
    let max_n = max_n.min(6);
    let mut jobs = Vec::new();
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1 << pairs.len()) {
            jobs.push((n, pairs.clone(), mask));
        }
    }
    let results: Vec<Result<(u64, Option<Violation>)>> = jobs
        .into_par_iter()
        .map(|(n, pairs, mask)| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ mask.rotate_left(17) ^ n as u64);
            let weights = (0..n).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(0..8)))).collect();
            let mut precolor = vec![None; n];
            precolor[0] = Some(0);
            precolor[1] = Some(1);
            let inst = Instance::new(n, edges, weights, 2, precolor)?;
            let (count, failure) = exhaustive_graph(suite, &inst);
            Ok((count, failure.map(|message| Violation { trial: None, message, witness: Witness::Graph(inst) })))
        })
        .collect();
    let mut total = 0;
    let mut violations = Vec::new();
    for result in results {
        let (count, violation) = result?;
        total += count;
        violations.extend(violation);
    }
    Ok((total, violations))
}

fn exhaustive_graph(suite: Suite, inst: &Instance) -> (u64, Option<String>) {
    let n = inst.num_vertices();
    let subsets: Vec<VertexSubset> = (0..1u64 << n).map(|m| VertexSubset::from_mask(n, m)).collect();
    let index = |s: &VertexSubset| s.iter().map(|v| 1usize << v).sum::<usize>();
    let f: Vec<Rational> = subsets.iter().map(|s| inst.f_unhappy(s)).collect();
    let g: Vec<Rational> = subsets.iter().map(|s| inst.g_happy(s)).collect();
    let mut count = 0;
    for (i, s) in subsets.iter().enumerate() {
        if g[i] != inst.weight_of(s) - &f[i] {
            return (count + 1, Some(format!("g ≠ w − f at X = {s:?}")));
        }
    }
    for x in &subsets {
        for y in &subsets {
            count += 1;
            let failure = match suite {
                Suite::Boundary => boundary_failure(inst, x, y),
                _ => submodular_failure(x, y, |s| f[index(s)].clone(), |s| g[index(s)].clone()),
            };
            if failure.is_some() {
                return (count, failure);
            }
        }
    }
    (count, None)
}

/// Lovász objective of random labelings against the closed-form LP tightening,
/// plus the exact LP optimum against brute force.
fn check_lovasz_lp(inst: &Instance, objective: Objective, rng: &mut ChaCha8Rng, labelings: usize) -> Outcome {
    let mut count = 0;
    let total = inst.total_weight();
    for _ in 0..labelings {
        let y = random_labeling(inst, rng, 6)?;
        count += 3;
        let lovasz = relaxation_objective(inst, &y, objective)?;
        let tight = tighten(inst, &y, objective).objective;
        if lovasz != tight {
            return Ok((count, Some(format!("Lovász objective {lovasz} ≠ tightened LP objective {tight}"))));
        }
        let other = objective_pair(objective);
        let mirrored = tighten(inst, &y, other).objective;
        if &tight + &mirrored != total {
            return Ok((count, Some(format!("tightened objectives sum to {} not w(V) = {total}", &tight + &mirrored))));
        }
        // telescoping form agrees on every column (pre-coloring pins 1 and 0)
        for label in 0..inst.num_labels() {
            let column = y.column(label);
            let (a, b) = match objective {
                Objective::Mhv => {
                    let h = SetFunctionHandle::wrap(InteriorWeight(inst), Orientation::Supermodular)?;
                    (h.lovasz_value(&column)?, h.lovasz_telescoping(&column)?)
                }
                Objective::Muhv => {
                    let h = SetFunctionHandle::wrap(BoundaryWeight(inst), Orientation::Submodular)?;
                    (h.lovasz_value(&column)?, h.lovasz_telescoping(&column)?)
                }
            };
            if a != b {
                return Ok((count, Some(format!("level-set {a} ≠ telescoping {b} on label {}", label + 1))));
            }
        }
    }
    if inst.num_vertices() <= 8 {
        count += 3;
        let relaxed = solve_relaxation(inst, objective, &Simplex::default())?;
        let lp = relaxed.value();
        let tight = tighten(inst, &relaxed.labeling, objective).objective;
        if &tight != lp {
            return Ok((count, Some(format!("LP optimum {lp} ≠ tightened value {tight} of its own y"))));
        }
        let exact = solve_exact_with_budget(inst, objective, DEFAULT_BUDGET)?.value;
        let bounded = match objective {
            Objective::Mhv => *lp >= exact,
            Objective::Muhv => *lp <= exact,
        };
        if !bounded {
            return Ok((count, Some(format!("LP optimum {lp} on the wrong side of OPT {exact}"))));
        }
    }
    Ok((count, None))
}

fn objective_pair(objective: Objective) -> Objective {
    match objective {
        Objective::Mhv => Objective::Muhv,
        Objective::Muhv => Objective::Mhv,
    }
}

/// Upper factor `2 − 2/k` and lower factor `2/k`.
pub fn rounding_factors(k: usize) -> (Rational, Rational) {
    let lower = Rational::new(BigInt::from(2), BigInt::from(k));
    (Rational::from_integer(BigInt::from(2)) - &lower, lower)
}

/// Expectation bounds for LP optima and random labelings, and the best cell
/// against brute force.
fn check_rounding(inst: &Instance, rng: &mut ChaCha8Rng, labelings: usize, budget: u64) -> Outcome {
    let (upper, lower) = rounding_factors(inst.num_labels());
    let backend = Simplex::default();
    let mut count = 0;
    let muhv = solve_relaxation(inst, Objective::Muhv, &backend)?;
    let (best, dist) = round_derandomized(inst, &muhv.labeling, Objective::Muhv)?;
    count += 2;
    if dist.expected_muhv > &upper * muhv.value() {
        return Ok((count, Some(format!("E[MUHV] {} > (2 − 2/k)·LP {}", dist.expected_muhv, muhv.value()))));
    }
    let opt = solve_exact_with_budget(inst, Objective::Muhv, budget)?.value;
    if best.value_muhv > &upper * &opt {
        return Ok((count, Some(format!("best cell {} > (2 − 2/k)·OPT {opt}", best.value_muhv))));
    }
    let mhv = solve_relaxation(inst, Objective::Mhv, &backend)?;
    let (_, dist) = round_derandomized(inst, &mhv.labeling, Objective::Mhv)?;
    count += 1;
    if dist.expected_mhv < &lower * mhv.value() {
        return Ok((count, Some(format!("E[MHV] {} < (2/k)·LP {}", dist.expected_mhv, mhv.value()))));
    }
    for _ in 0..labelings {
        let y = random_labeling(inst, rng, 6)?;
        let (_, dist) = round_derandomized(inst, &y, Objective::Muhv)?;
        count += 3;
        let f_hat = relaxation_objective(inst, &y, Objective::Muhv)?;
        let g_hat = relaxation_objective(inst, &y, Objective::Mhv)?;
        if dist.expected_muhv > &upper * &f_hat {
            return Ok((count, Some(format!("E[MUHV] {} > (2 − 2/k)·f̂ {f_hat}", dist.expected_muhv))));
        }
        if dist.expected_mhv < &lower * &g_hat {
            return Ok((count, Some(format!("E[MHV] {} < (2/k)·ĝ {g_hat}", dist.expected_mhv))));
        }
        let probability: Rational = dist.cells.iter().map(|c| &c.probability).sum();
        if probability != Rational::from_integer(BigInt::from(1)) {
            return Ok((count, Some(format!("cell probabilities sum to {probability}"))));
        }
    }
    Ok((count, None))
}

fn check_reduction(h: &Hypergraph, budget: u64) -> Outcome {
    let (cut, cut_value) = solve_hypmc_exact(h, DEFAULT_HYPEREDGE_BUDGET)?;
    if !disconnects_terminals(h, &cut) {
        return Ok((1, Some("exact cut does not disconnect the terminals".into())));
    }
    let (inst, map) = reduce_hypmc(h)?;
    let sol = solve_exact_with_budget(&inst, Objective::Muhv, budget)?;
    if sol.value != cut_value {
        return Ok((2, Some(format!("Hyp-MC optimum {cut_value} ≠ MUHV optimum {}", sol.value))));
    }
    let back = backmap_solution(h, &map, &inst, &sol.coloring);
    if !disconnects_terminals(h, &back) {
        return Ok((3, Some("back-mapped hyperedges do not disconnect the terminals".into())));
    }
    if h.weight_of(&back) != sol.value {
        return Ok((4, Some(format!("back-mapped weight {} ≠ coloring value {}", h.weight_of(&back), sol.value))));
    }
    Ok((4, None))
}

/// Greedily drops edges while `fails` still holds.
fn shrink_instance(mut inst: Instance, fails: impl Fn(&Instance) -> Result<bool>) -> Result<Instance> {
    let mut i = 0;
    while i < inst.num_edges() {
        let mut edges = inst.edges().to_vec();
        edges.remove(i);
        let smaller = Instance::new(
            inst.num_vertices(),
            edges,
            inst.weights().to_vec(),
            inst.num_labels(),
            inst.precolor().to_vec(),
        )?;
        if fails(&smaller)? {
            inst = smaller;
        } else {
            i += 1;
        }
    }
    Ok(inst)
}

fn shrink_hypergraph(mut h: Hypergraph, budget: u64) -> Result<Hypergraph> {
    let mut i = 0;
    while i < h.num_hyperedges() {
        let mut edges: Vec<(Vec<usize>, Rational)> =
            h.hyperedges().iter().map(|e| (e.members.clone(), e.weight.clone())).collect();
        edges.remove(i);
        let smaller = Hypergraph::new(h.num_vertices(), edges, h.terminals().to_vec())?;
        if check_reduction(&smaller, budget)?.1.is_some() {
            h = smaller;
        } else {
            i += 1;
        }
    }
    Ok(h)
}
