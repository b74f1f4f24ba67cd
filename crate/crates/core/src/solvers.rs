//! Exhaustive ground truth and the single-color greedy baseline.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Coloring, Instance, Objective};
use crate::rational::{common_denominator, scaled_numerator, Rational};

/// Default cap on the number of completions `k^u` enumerated.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Completions below this count are searched on one thread.
const PARALLEL_THRESHOLD: u64 = 50_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub coloring: Coloring,
    pub value: Rational,
}

pub fn solve_exact(inst: &Instance, objective: Objective) -> Result<Solution> {
    solve_exact_with_budget(inst, objective, DEFAULT_BUDGET)
}

/// Enumerates every completion of the pre-coloring. Ties go to the
/// lexicographically smallest assignment, which is the same completion for
/// both objectives.
pub fn solve_exact_with_budget(inst: &Instance, objective: Objective, budget: u64) -> Result<Solution> {
    let free: Vec<usize> = inst.uncolored().collect();
    let k = inst.num_labels();
    let count = (k as u64)
        .checked_pow(free.len() as u32)
        .filter(|&c| c <= budget)
        .ok_or(Error::BudgetExceeded { uncolored: free.len(), labels: k })?;

    let denominator = common_denominator(inst.weights());
    let scaled: Vec<BigInt> = inst.weights().iter().map(|w| scaled_numerator(w, &denominator)).collect();
    let total: BigInt = scaled.iter().sum();
    let digits = if total.to_i128().is_some() {
        let weights: Vec<i128> = scaled.iter().map(|w| w.to_i128().unwrap_or(0)).collect();
        Search { inst, free: &free, weights }.run(count)
    } else {
        Search { inst, free: &free, weights: scaled }.run(count)
    };

    let mut assignment: Vec<usize> = inst.precolor().iter().map(|c| c.unwrap_or(0)).collect();
    for (&v, &d) in free.iter().zip(&digits) {
        assignment[v] = d;
    }
    let coloring = Coloring::new(inst, assignment)?;
    let value = inst.evaluate(&coloring, objective)?;
    Ok(Solution { coloring, value })
}

struct Search<'a, W> {
    inst: &'a Instance,
    free: &'a [usize],
    weights: Vec<W>,
}

/// Colors plus, per vertex, the number of differently colored neighbors and
/// the running unhappy weight.
struct State<'s, W> {
    inst: &'s Instance,
    weights: &'s [W],
    colors: Vec<usize>,
    disagree: Vec<usize>,
    unhappy: W,
}

impl<'s, W> State<'s, W>
where
    W: Clone + Zero + for<'w> AddAssign<&'w W> + for<'w> SubAssign<&'w W>,
{
    fn new(inst: &'s Instance, weights: &'s [W], colors: Vec<usize>) -> Self {
        let n = inst.num_vertices();
        let mut disagree = vec![0; n];
        let mut unhappy = W::zero();
        for v in 0..n {
            disagree[v] = inst.neighbors(v).iter().filter(|&&u| colors[u] != colors[v]).count();
            if disagree[v] > 0 {
                unhappy += &weights[v];
            }
        }
        Self { inst, weights, colors, disagree, unhappy }
    }

    fn bump(&mut self, v: usize) {
        if self.disagree[v] == 0 {
            self.unhappy += &self.weights[v];
        }
        self.disagree[v] += 1;
    }

    fn drop_one(&mut self, v: usize) {
        self.disagree[v] -= 1;
        if self.disagree[v] == 0 {
            self.unhappy -= &self.weights[v];
        }
    }

    fn recolor(&mut self, v: usize, new: usize) {
        let old = self.colors[v];
        if old == new {
            return;
        }
        let inst = self.inst;
        for &u in inst.neighbors(v) {
            let c = self.colors[u];
            if c == old {
                self.bump(u);
                self.bump(v);
            } else if c == new {
                self.drop_one(u);
                self.drop_one(v);
            }
        }
        self.colors[v] = new;
    }
}

impl<W> Search<'_, W>
where
    W: Clone + Ord + Zero + Send + Sync + for<'w> AddAssign<&'w W> + for<'w> SubAssign<&'w W>,
{
    /// Digits (labels of the free vertices, in index order) of the first
    /// completion with minimum unhappy weight.
    fn run(&self, count: u64) -> Vec<usize> {
        let k = self.inst.num_labels() as u64;
        let mut prefix_len = 0usize;
        if count >= PARALLEL_THRESHOLD {
            let mut blocks = 1u64;
            while blocks < 256 && prefix_len < self.free.len() {
                blocks *= k;
                prefix_len += 1;
            }
        }
        let blocks = k.pow(prefix_len as u32);
        let results: Vec<(W, Vec<usize>)> = (0..blocks)
            .into_par_iter()
            .map(|block| {
                let mut prefix = vec![0usize; prefix_len];
                let mut rest = block;
                for slot in prefix.iter_mut().rev() {
                    *slot = (rest % k) as usize;
                    rest /= k;
                }
                self.run_block(&prefix)
            })
            .collect();
        let mut best: Option<(W, Vec<usize>)> = None;
        for (value, digits) in results {
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, digits));
            }
        }
        best.map(|(_, d)| d).unwrap_or_default()
    }

    fn run_block(&self, prefix: &[usize]) -> (W, Vec<usize>) {
        let k = self.inst.num_labels();
        let mut digits = vec![0usize; self.free.len()];
        digits[..prefix.len()].copy_from_slice(prefix);
        let mut colors: Vec<usize> = self.inst.precolor().iter().map(|c| c.unwrap_or(0)).collect();
        for (&v, &d) in self.free.iter().zip(&digits) {
            colors[v] = d;
        }
        let mut state = State::new(self.inst, &self.weights, colors);
        let mut best = state.unhappy.clone();
        let mut best_digits = digits.clone();
        'outer: loop {
            let mut pos = digits.len();
            loop {
                if pos == prefix.len() {
                    break 'outer;
                }
                pos -= 1;
                if digits[pos] + 1 < k {
                    digits[pos] += 1;
                    state.recolor(self.free[pos], digits[pos]);
                    break;
                }
                digits[pos] = 0;
                state.recolor(self.free[pos], 0);
            }
            if state.unhappy < best {
                best = state.unhappy.clone();
                best_digits.copy_from_slice(&digits);
            }
        }
        (best, best_digits)
    }
}

/// Best of the `k` colorings that give every uncolored vertex the same label.
pub fn solve_greedy(inst: &Instance, objective: Objective) -> Result<Solution> {
    let mut best: Option<Solution> = None;
    for label in 0..inst.num_labels() {
        let coloring = Coloring::uniform_completion(inst, label)?;
        let value = inst.evaluate(&coloring, objective)?;
        if best.as_ref().is_none_or(|b| objective.improves(&value, &b.value)) {
            best = Some(Solution { coloring, value });
        }
    }
    best.ok_or_else(|| Error::InvalidInstance("no labels".into()))
}
