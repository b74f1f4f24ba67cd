//! Threshold rounding of a fractional labeling.
//!
//! For `θ ∈ (1/2, 1]`, `S_i(θ) = {v : y[v][i] > θ}` gets label `i` and the
//! residual `R(θ) = V − ∪ S_i(θ)` gets one fallback label `i′`. The sampler
//! draws `θ` from the open interval `(1/2, 1)` and `i′` uniformly; the
//! derandomizer enumerates every `(θ-interval, i′)` cell, which gives the
//! exact expectation.
//!
//! Random draws use `ChaCha8Rng::seed_from_u64(seed)`. The first `u64`
//! drawn, `r`, is rejected while zero and gives `θ = (2^64 + r) / 2^65`; the
//! second draw is `i′ = gen_range(0..k)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Coloring, Instance, Objective};
use crate::lovasz::FractionalLabeling;
use crate::lp::{LpBackend, Simplex};
use crate::rational::{ratio, Rational, to_f64};
use crate::relaxation::solve_relaxation;
use crate::subset::VertexSubset;

/// The sets `S_1(θ)..S_k(θ)`, `S(θ)`, `R(θ)` and the diagnostic `Q(θ) = R(1 − θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSets {
    pub parts: Vec<VertexSubset>,
    pub covered: VertexSubset,
    pub residual: VertexSubset,
    pub q: VertexSubset,
}

fn above(labeling: &FractionalLabeling, label: usize, threshold: &Rational) -> VertexSubset {
    VertexSubset::from_vertices(
        labeling.num_vertices(),
        (0..labeling.num_vertices()).filter(|&v| labeling.get(v, label) > threshold),
    )
}

fn residual_at(labeling: &FractionalLabeling, threshold: &Rational) -> VertexSubset {
    let n = labeling.num_vertices();
    VertexSubset::from_vertices(n, (0..n).filter(|&v| labeling.row(v).iter().all(|y| y <= threshold)))
}

fn check_theta(theta: &Rational) -> Result<()> {
    if *theta <= ratio(1, 2) || *theta > Rational::one() {
        return Err(Error::ThetaOutOfRange(theta.to_string()));
    }
    Ok(())
}

pub fn level_sets(labeling: &FractionalLabeling, theta: &Rational) -> Result<LevelSets> {
    check_theta(theta)?;
    let n = labeling.num_vertices();
    let parts: Vec<VertexSubset> = (0..labeling.num_labels()).map(|i| above(labeling, i, theta)).collect();
    let covered = parts.iter().fold(VertexSubset::empty(n), |acc, s| acc.union(s));
    let residual = covered.complement();
    let q = residual_at(labeling, &(Rational::one() - theta));
    Ok(LevelSets { parts, covered, residual, q })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundingOutcome {
    pub theta: Rational,
    pub fallback_label: usize,
    pub coloring: Coloring,
    pub value_mhv: Rational,
    pub value_muhv: Rational,
}

impl RoundingOutcome {
    pub fn value(&self, objective: Objective) -> &Rational {
        match objective {
            Objective::Mhv => &self.value_mhv,
            Objective::Muhv => &self.value_muhv,
        }
    }
}

/// One fixed draw `(θ, i′)`.
pub fn round_at(inst: &Instance, labeling: &FractionalLabeling, theta: &Rational, fallback: usize) -> Result<RoundingOutcome> {
    if fallback >= inst.num_labels() {
        return Err(Error::OutOfRange(format!("fallback label {}", fallback + 1)));
    }
    let sets = level_sets(labeling, theta)?;
    let mut assignment = vec![fallback; inst.num_vertices()];
    for (label, part) in sets.parts.iter().enumerate() {
        for v in part.iter() {
            assignment[v] = label;
        }
    }
    let coloring = Coloring::new(inst, assignment)?;
    let (value_mhv, value_muhv) = inst.happiness(coloring.assignment());
    Ok(RoundingOutcome { theta: theta.clone(), fallback_label: fallback, coloring, value_mhv, value_muhv })
}

/// `θ = (2^64 + r) / 2^65` for `r ∈ [1, 2^64)`, i.e. strictly inside `(1/2, 1)`.
pub fn draw(rng: &mut ChaCha8Rng, num_labels: usize) -> (Rational, usize) {
    let r = loop {
        let r: u64 = rng.gen();
        if r != 0 {
            break r;
        }
    };
    let numerator = (BigInt::one() << 64u32) + BigInt::from(r);
    let theta = Rational::new(numerator, BigInt::one() << 65u32);
    let fallback = rng.gen_range(0..num_labels);
    (theta, fallback)
}

pub fn round_random(inst: &Instance, labeling: &FractionalLabeling, seed: u64) -> Result<RoundingOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (theta, fallback) = draw(&mut rng, inst.num_labels());
    round_at(inst, labeling, &theta, fallback)
}

/// One constant-outcome cell: `θ ∈ [theta_low, theta_high)` and a fallback label.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingCell {
    pub theta_low: Rational,
    pub theta_high: Rational,
    pub fallback_label: usize,
    pub probability: Rational,
    pub value_mhv: Rational,
    pub value_muhv: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundingDistribution {
    pub cells: Vec<RoundingCell>,
    pub expected_mhv: Rational,
    pub expected_muhv: Rational,
}

impl RoundingDistribution {
    pub fn expected(&self, objective: Objective) -> &Rational {
        match objective {
            Objective::Mhv => &self.expected_mhv,
            Objective::Muhv => &self.expected_muhv,
        }
    }

    /// Exact variance of the objective value under the rounding.
    pub fn variance(&self, objective: Objective) -> Rational {
        let mean = self.expected(objective);
        self.cells
            .iter()
            .map(|c| {
                let v = match objective {
                    Objective::Mhv => &c.value_mhv,
                    Objective::Muhv => &c.value_muhv,
                };
                let d = v - mean;
                &c.probability * &d * &d
            })
            .sum()
    }
}

/// Breakpoints: distinct entries strictly between 1/2 and 1, plus both ends.
fn theta_grid(labeling: &FractionalLabeling) -> Vec<Rational> {
    let half = ratio(1, 2);
    let mut grid = vec![half.clone()];
    grid.extend(labeling.distinct_values().into_iter().filter(|v| *v > half && *v < Rational::one()));
    grid.push(Rational::one());
    grid
}

pub fn round_derandomized(
    inst: &Instance,
    labeling: &FractionalLabeling,
    objective: Objective,
) -> Result<(RoundingOutcome, RoundingDistribution)> {
    let k = inst.num_labels();
    let grid = theta_grid(labeling);
    let label_share = Rational::new(BigInt::from(2), BigInt::from(k));
    let mut cells = Vec::with_capacity((grid.len() - 1) * k);
    let mut best: Option<RoundingOutcome> = None;
    let mut expected_mhv = Rational::zero();
    let mut expected_muhv = Rational::zero();
    for window in grid.windows(2) {
        // θ = residual value is in R(θ), so the outcome is constant on [low, high)
        let (low, high) = (&window[0], &window[1]);
        let probe = (low + high) / Rational::from_integer(BigInt::from(2));
        let probability = (high - low) * &label_share;
        for fallback in 0..k {
            let outcome = round_at(inst, labeling, &probe, fallback)?;
            expected_mhv += &probability * &outcome.value_mhv;
            expected_muhv += &probability * &outcome.value_muhv;
            cells.push(RoundingCell {
                theta_low: low.clone(),
                theta_high: high.clone(),
                fallback_label: fallback,
                probability: probability.clone(),
                value_mhv: outcome.value_mhv.clone(),
                value_muhv: outcome.value_muhv.clone(),
            });
            if best.as_ref().is_none_or(|b| objective.improves(outcome.value(objective), b.value(objective))) {
                best = Some(outcome);
            }
        }
    }
    let best = best.ok_or_else(|| Error::InvalidInstance("no rounding cells".into()))?;
    Ok((best, RoundingDistribution { cells, expected_mhv, expected_muhv }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundingMode {
    Random(u64),
    Derandomized,
}

/// LP value, fractional solution and rounding result of one pipeline run.
#[derive(Debug, Clone)]
pub struct ApproxRun {
    pub lp_value: Rational,
    pub labeling: FractionalLabeling,
    pub outcome: RoundingOutcome,
    /// Present in derandomized mode.
    pub distribution: Option<RoundingDistribution>,
}

impl ApproxRun {
    pub fn value(&self, objective: Objective) -> &Rational {
        self.outcome.value(objective)
    }
}

pub fn solve_approx(inst: &Instance, objective: Objective, mode: RoundingMode) -> Result<ApproxRun> {
    solve_approx_with(inst, objective, mode, &Simplex::default())
}

/// Solves the matching relaxation (LP-MUHV for MUHV, LP-MHV for MHV) with
/// `backend` and rounds its `y` block.
pub fn solve_approx_with(inst: &Instance, objective: Objective, mode: RoundingMode, backend: &dyn LpBackend) -> Result<ApproxRun> {
    let relaxed = solve_relaxation(inst, objective, backend)?;
    let (outcome, distribution) = match mode {
        RoundingMode::Random(seed) => (round_random(inst, &relaxed.labeling, seed)?, None),
        RoundingMode::Derandomized => {
            let (best, dist) = round_derandomized(inst, &relaxed.labeling, objective)?;
            (best, Some(dist))
        }
    };
    Ok(ApproxRun { lp_value: relaxed.value().clone(), labeling: relaxed.labeling, outcome, distribution })
}

/// Mean of `draws` seeded roundings; seeds are `base_seed, base_seed + 1, …`.
pub fn empirical_mean(inst: &Instance, labeling: &FractionalLabeling, objective: Objective, base_seed: u64, draws: u64) -> Result<f64> {
    let mut sum = 0.0;
    for i in 0..draws {
        let outcome = round_random(inst, labeling, base_seed.wrapping_add(i))?;
        sum += to_f64(outcome.value(objective));
    }
    Ok(sum / draws as f64)
}
