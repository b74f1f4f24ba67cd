//! Instance constructions: the terminal/pair gap family, the contraction
//! counterexample pair, seeded random instances, and hypergraph multiway cut.

mod hypergraph;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::lovasz::FractionalLabeling;
use crate::rational::{ratio, Rational};

pub use hypergraph::{
    backmap_solution, disconnects_terminals, random_hypergraph, reduce_hypmc, solve_hypmc_exact, Hyperedge,
    Hypergraph, HypergraphSpec, ReductionMap, DEFAULT_HYPEREDGE_BUDGET,
};

/// Index of the pair vertex `b_{ij}` (`i < j`, 0-based labels) in the gap instance.
pub fn gap_pair_index(k: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < k);
    // pairs (0,1), (0,2), …, (0,k-1), (1,2), …
    let before: usize = (0..i).map(|a| k - 1 - a).sum();
    k + before + (j - i - 1)
}

/// `k` terminals `t_i` pre-colored `i` with weight `w_t`, then one pair
/// vertex `b_{ij}` of weight `w_b` for each `i < j`, adjacent to `t_i` and `t_j`.
pub fn gen_gap_instance(k: usize, w_t: Rational, w_b: Rational) -> Result<Instance> {
    if k < 2 {
        return Err(Error::BadParameters(format!("gap instance needs k >= 2, got {k}")));
    }
    let pairs = k * (k - 1) / 2;
    let n = k + pairs;
    let mut weights = vec![w_t; k];
    weights.extend(std::iter::repeat_n(w_b, pairs));
    let mut precolor: Vec<Option<usize>> = (0..k).map(Some).collect();
    precolor.extend(std::iter::repeat_n(None, pairs));
    let mut edges = Vec::with_capacity(2 * pairs);
    for i in 0..k {
        for j in i + 1..k {
            let b = gap_pair_index(k, i, j);
            edges.push((i, b));
            edges.push((j, b));
        }
    }
    Instance::new(n, edges, weights, k, precolor)
}

/// Terminals integral; each `b_{ij}` split evenly between labels `i` and `j`.
pub fn gap_fractional_labeling(inst: &Instance) -> Result<FractionalLabeling> {
    let k = inst.num_labels();
    let mut rows = vec![vec![Rational::zero(); k]; inst.num_vertices()];
    for (t, row) in rows.iter_mut().enumerate().take(k) {
        row[t] = Rational::one();
    }
    for i in 0..k {
        for j in i + 1..k {
            let b = gap_pair_index(k, i, j);
            rows[b][i] = ratio(1, 2);
            rows[b][j] = ratio(1, 2);
        }
    }
    FractionalLabeling::new(inst, rows)
}

/// The 9-vertex instance `I` (three triangles with cross edges, two
/// pre-colored vertices per label) and its contraction `I′`, a 6-cycle on
/// `v12, v3, v45, v6, v78, v9`.
pub fn gen_appendix_c(big: Rational, eps: Rational) -> Result<(Instance, Instance)> {
    if !(eps > Rational::zero() && eps < big) {
        return Err(Error::BadParameters("need W > eps > 0".into()));
    }
    // 0-based: v1 = 0, …, v9 = 8
    let mut edges = Vec::new();
    for i in [0, 3, 6] {
        edges.extend([(i, i + 1), (i, i + 2), (i + 1, i + 2)]);
    }
    edges.extend([(1, 5), (4, 8), (7, 2)]);
    let weights = (0..9).map(|v| if v % 3 == 0 { big.clone() } else { eps.clone() }).collect();
    let precolor = vec![Some(0), Some(0), None, Some(1), Some(1), None, Some(2), Some(2), None];
    let original = Instance::new(9, edges, weights, 3, precolor)?;

    // 0-based: v12 = 0, v3 = 1, v45 = 2, v6 = 3, v78 = 4, v9 = 5
    let merged = &big + &eps;
    let contracted = Instance::new(
        6,
        vec![(0, 1), (2, 3), (4, 5), (0, 3), (2, 5), (4, 1)],
        vec![merged.clone(), eps.clone(), merged.clone(), eps.clone(), merged, eps],
        3,
        vec![Some(0), None, Some(1), None, Some(2), None],
    )?;
    Ok((original, contracted))
}

/// Parameters for [`gen_random`]. Weights are `U{weight_low..=weight_high} / weight_denominator`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub num_vertices: usize,
    pub num_labels: usize,
    pub edge_probability: f64,
    pub weight_low: u32,
    pub weight_high: u32,
    pub weight_denominator: u32,
    pub precolored_per_label: usize,
    pub seed: u64,
    /// Redraw until all pre-colored vertices share one connected component.
    pub connected: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            num_vertices: 8,
            num_labels: 3,
            edge_probability: 0.4,
            weight_low: 1,
            weight_high: 10,
            weight_denominator: 1,
            precolored_per_label: 1,
            seed: 0,
            connected: false,
        }
    }
}

const MAX_REDRAWS: usize = 10_000;

/// Seeded Erdős–Rényi graph; the first `k · precolored_per_label` vertices
/// are pre-colored round-robin.
pub fn gen_random(spec: &RandomSpec) -> Result<Instance> {
    let RandomSpec { num_vertices: n, num_labels: k, edge_probability: p, .. } = *spec;
    if spec.precolored_per_label == 0 || n < k * spec.precolored_per_label {
        return Err(Error::BadParameters(format!(
            "need n >= k * precolored_per_label >= k, got n = {n}, k = {k}, per label = {}",
            spec.precolored_per_label
        )));
    }
    if k < 2 {
        return Err(Error::BadParameters("need k >= 2".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameters(format!("edge probability {p} outside [0, 1]")));
    }
    if spec.weight_denominator == 0 || spec.weight_low > spec.weight_high {
        return Err(Error::BadParameters("bad weight range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let den = BigInt::from(spec.weight_denominator);
    let colored = k * spec.precolored_per_label;
    let precolor: Vec<Option<usize>> = (0..n).map(|v| (v < colored).then_some(v % k)).collect();
    for _ in 0..MAX_REDRAWS {
        let weights: Vec<Rational> = (0..n)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(spec.weight_low..=spec.weight_high)), den.clone()))
            .collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let inst = Instance::new(n, edges, weights, k, precolor.clone())?;
        if !spec.connected || terminals_connected(&inst) {
            return Ok(inst);
        }
    }
    Err(Error::BadParameters("could not draw a graph with connected terminals".into()))
}

fn terminals_connected(inst: &Instance) -> bool {
    let n = inst.num_vertices();
    let start = match inst.precolor().iter().position(Option::is_some) {
        Some(v) => v,
        None => return true,
    };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &u in inst.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    inst.precolor().iter().enumerate().all(|(v, c)| c.is_none() || seen[v])
}

/// A random feasible labeling: pre-colored rows fixed; each free row is
/// integral with some probability, otherwise random small-integer weights
/// normalized to sum 1 (denominators up to `max_denominator`).
pub fn random_labeling(inst: &Instance, rng: &mut ChaCha8Rng, max_denominator: u32) -> Result<FractionalLabeling> {
    let k = inst.num_labels();
    let max_part = max_denominator.max(1);
    let rows = inst
        .precolor()
        .iter()
        .map(|pre| {
            let mut row = vec![Rational::zero(); k];
            match pre {
                Some(label) => row[*label] = Rational::one(),
                None if rng.gen_bool(0.2) => row[rng.gen_range(0..k)] = Rational::one(),
                None => {
                    let parts: Vec<u32> = loop {
                        let parts: Vec<u32> = (0..k)
                            .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..=max_part) })
                            .collect();
                        if parts.iter().any(|&p| p > 0) {
                            break parts;
                        }
                    };
                    let total: u32 = parts.iter().sum();
                    for (slot, part) in row.iter_mut().zip(parts) {
                        *slot = Rational::new(BigInt::from(part), BigInt::from(total));
                    }
                }
            }
            row
        })
        .collect();
    FractionalLabeling::new(inst, rows)
}
