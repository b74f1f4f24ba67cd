mod common;

use common::{instances, labeled_instances, unhappy_weight};
use happylab::generators::{gap_fractional_labeling, gap_pair_index, gen_appendix_c, gen_gap_instance};
use happylab::lovasz::relaxation_objective;
use happylab::rational::{int, ratio, to_f64};
use happylab::rounding::{
    empirical_mean, level_sets, round_at, round_derandomized, round_random, solve_approx, RoundingMode,
};
use happylab::{Coloring, FractionalLabeling, Instance, Objective, Rational, VertexSubset};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Expectation of the unhappy weight from first principles: breakpoints are
/// every entry of `y`, each interval probed at its midpoint with a direct
/// threshold scan.
fn oracle_expectation(inst: &Instance, y: &FractionalLabeling) -> Rational {
    let k = inst.num_labels();
    let half = ratio(1, 2);
    let mut points: Vec<Rational> = y.rows().iter().flatten().filter(|v| **v > half).cloned().collect();
    points.push(half);
    points.push(int(1));
    points.sort();
    points.dedup();
    let mut total = int(0);
    for w in points.windows(2) {
        let theta = (&w[0] + &w[1]) / int(2);
        for fallback in 0..k {
            let assignment: Vec<usize> = (0..inst.num_vertices())
                .map(|v| (0..k).find(|&i| *y.get(v, i) > theta).unwrap_or(fallback))
                .collect();
            total += (&w[1] - &w[0]) * unhappy_weight(inst, &assignment);
        }
    }
    total * Rational::new(BigInt::from(2), BigInt::from(k))
}

fn gap3(wb: i64) -> (Instance, FractionalLabeling) {
    let inst = gen_gap_instance(3, int(1), int(wb)).unwrap();
    let y = gap_fractional_labeling(&inst).unwrap();
    (inst, y)
}

#[test]
fn gap_level_sets() {
    let (inst, y) = gap3(1);
    let sets = level_sets(&y, &ratio(3, 5)).unwrap();
    for i in 0..3 {
        assert_eq!(sets.parts[i], VertexSubset::from_vertices(6, [i]));
    }
    assert_eq!(sets.residual, VertexSubset::from_vertices(6, 3..6));
    let top = level_sets(&y, &int(1)).unwrap();
    assert!(top.parts.iter().all(VertexSubset::is_empty));
    assert_eq!(top.residual, inst.full_set());
}

#[test]
fn gap_fixed_draw() {
    let (_, y) = gap3(1);
    let inst = gen_gap_instance(3, int(1), int(1)).unwrap();
    let out = round_at(&inst, &y, &ratio(3, 5), 0).unwrap();
    assert_eq!(out.value_muhv, int(5));
    assert_eq!(out.value_mhv, int(1));
    assert_eq!(out.coloring.label(gap_pair_index(3, 1, 2)), 0);
}

#[test]
fn gap_derandomized_is_tight() {
    let (inst, y) = gap3(0);
    let (best, dist) = round_derandomized(&inst, &y, Objective::Muhv).unwrap();
    assert!(dist.cells.iter().all(|c| c.value_muhv == int(2)));
    assert_eq!(dist.expected_muhv, int(2));
    assert_eq!(best.value_muhv, int(2));
    // (2 − 2/3) · 3/2
    assert_eq!(ratio(4, 3) * ratio(3, 2), int(2));
    let run = solve_approx(&inst, Objective::Muhv, RoundingMode::Derandomized).unwrap();
    assert_eq!(run.lp_value, ratio(3, 2));
    assert_eq!(run.value(Objective::Muhv), &int(2));
}

#[test]
fn nine_vertex_guarantee() {
    let (inst, _) = gen_appendix_c(int(10), int(1)).unwrap();
    let run = solve_approx(&inst, Objective::Muhv, RoundingMode::Derandomized).unwrap();
    assert!(*run.value(Objective::Muhv) <= int(8));
}

#[test]
fn edgeless_rounding_is_optimal() {
    let inst = Instance::new(4, vec![], vec![int(1); 4], 2, vec![Some(0), Some(1), None, None]).unwrap();
    for mode in [RoundingMode::Derandomized, RoundingMode::Random(5)] {
        assert_eq!(solve_approx(&inst, Objective::Muhv, mode).unwrap().value(Objective::Muhv), &int(0));
    }
}

#[test]
fn monte_carlo_on_gap_instance() {
    let (inst, y) = gap3(1);
    let (_, dist) = round_derandomized(&inst, &y, Objective::Muhv).unwrap();
    let mean = empirical_mean(&inst, &y, Objective::Muhv, 1000, 2000).unwrap();
    let se = (to_f64(&dist.variance(Objective::Muhv)) / 2000.0).sqrt();
    assert!((mean - to_f64(&dist.expected_muhv)).abs() <= 4.0 * se + 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integral_labelings_round_to_themselves(inst in instances(8, 3), seed in any::<u64>()) {
        let k = inst.num_labels();
        let assignment = (0..inst.num_vertices())
            .map(|v| inst.precolor()[v].unwrap_or((seed as usize >> (v % 16)) % k))
            .collect();
        let col = Coloring::new(&inst, assignment).unwrap();
        let y = FractionalLabeling::from_coloring(&inst, &col);
        prop_assert_eq!(&round_random(&inst, &y, seed).unwrap().coloring, &col);
        let (_, dist) = round_derandomized(&inst, &y, Objective::Mhv).unwrap();
        prop_assert_eq!(dist.cells.len(), k);
        prop_assert_eq!(dist.expected_mhv, inst.evaluate(&col, Objective::Mhv).unwrap());
    }

    #[test]
    fn level_sets_are_disjoint((_inst, y) in labeled_instances(9, 4), num in 1i64..100) {
        let theta = ratio(1, 2) + ratio(num, 200);
        let sets = level_sets(&y, &theta).unwrap();
        for i in 0..sets.parts.len() {
            for j in i + 1..sets.parts.len() {
                prop_assert!(sets.parts[i].is_disjoint(&sets.parts[j]));
            }
        }
        prop_assert!(sets.covered.is_disjoint(&sets.residual));
    }

    #[test]
    fn expectation_matches_oracle_and_bounds((inst, y) in labeled_instances(8, 4)) {
        let k = inst.num_labels() as i64;
        let (best, dist) = round_derandomized(&inst, &y, Objective::Muhv).unwrap();
        prop_assert_eq!(&dist.expected_muhv, &oracle_expectation(&inst, &y));
        prop_assert_eq!(&dist.expected_mhv + &dist.expected_muhv, inst.total_weight());
        let f_hat = relaxation_objective(&inst, &y, Objective::Muhv).unwrap();
        let g_hat = relaxation_objective(&inst, &y, Objective::Mhv).unwrap();
        prop_assert!(best.value_muhv <= dist.expected_muhv);
        prop_assert!(dist.expected_muhv <= (int(2) - ratio(2, k)) * f_hat);
        prop_assert!(dist.expected_mhv >= ratio(2, k) * g_hat);
        for cell in &dist.cells {
            prop_assert!(cell.theta_low < cell.theta_high);
        }
    }

    #[test]
    fn random_rounding_respects_precolor((inst, y) in labeled_instances(9, 4), seed in any::<u64>()) {
        let out = round_random(&inst, &y, seed).unwrap();
        for v in 0..inst.num_vertices() {
            if let Some(c) = inst.precolor()[v] {
                prop_assert_eq!(out.coloring.label(v), c);
            }
        }
        prop_assert!(out.theta > ratio(1, 2) && out.theta < int(1));
        prop_assert_eq!(&out, &round_random(&inst, &y, seed).unwrap());
    }
}
