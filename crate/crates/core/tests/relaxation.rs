mod common;

use common::{instances, labeled_instances, naive_muhv};
use happylab::generators::{gap_fractional_labeling, gen_appendix_c, gen_gap_instance};
use happylab::lovasz::relaxation_objective;
use happylab::lp::{write_lp_format, Arithmetic, LpBackend, PivotRule, Simplex};
use happylab::rational::{int, ratio, to_f64};
use happylab::relaxation::{build_lp, solve_relaxation, tighten, tighten_mhv, tighten_muhv, RelaxationLp};
use happylab::{FractionalLabeling, Instance, Objective, Rational};
use proptest::prelude::*;

fn exact() -> Simplex {
    Simplex::default()
}

/// Full LP point from `y` and its tightened auxiliaries.
fn lift(relax: &RelaxationLp, inst: &Instance, y: &FractionalLabeling) -> Vec<Rational> {
    let t = tighten(inst, y, relax.objective);
    let mut values = vec![int(0); relax.program.num_variables()];
    for v in 0..inst.num_vertices() {
        for i in 0..inst.num_labels() {
            values[relax.y[v][i]] = y.get(v, i).clone();
            values[relax.aux[v][i]] = t.per_label[v][i].clone();
        }
        values[relax.per_vertex[v]] = t.per_vertex[v].clone();
    }
    values
}

#[test]
fn edgeless_instances() {
    let inst = Instance::new(3, vec![], vec![int(1), int(2), int(5)], 3, vec![Some(0), Some(1), Some(2)]).unwrap();
    assert_eq!(solve_relaxation(&inst, Objective::Mhv, &exact()).unwrap().value(), &int(8));
    let inst = Instance::new(2, vec![], vec![int(3), int(4)], 2, vec![Some(0), Some(1)]).unwrap();
    assert_eq!(solve_relaxation(&inst, Objective::Muhv, &exact()).unwrap().value(), &int(0));
}

#[test]
fn gap_optima_are_half_k() {
    for k in 2..=5i64 {
        let inst = gen_gap_instance(k as usize, int(1), int(0)).unwrap();
        for objective in [Objective::Mhv, Objective::Muhv] {
            let relaxed = solve_relaxation(&inst, objective, &exact()).unwrap();
            assert_eq!(relaxed.value(), &ratio(k, 2), "k = {k}, {objective}");
            let at_y = relaxation_objective(&inst, &relaxed.labeling, objective).unwrap();
            assert_eq!(&at_y, relaxed.value());
        }
    }
}

#[test]
fn gap_bounds_with_pair_weight() {
    for k in 3..=4usize {
        let pairs = (k * (k - 1) / 2) as i64;
        let inst = gen_gap_instance(k, int(2), int(1)).unwrap();
        let mhv = solve_relaxation(&inst, Objective::Mhv, &exact()).unwrap();
        assert!(*mhv.value() >= int(k as i64));
        let muhv = solve_relaxation(&inst, Objective::Muhv, &exact()).unwrap();
        assert!(*muhv.value() <= int(k as i64 + pairs));
        assert_eq!(mhv.value() + muhv.value(), inst.total_weight());
    }
}

#[test]
fn gap_tightening_of_the_split_solution() {
    let k = 4;
    let inst = gen_gap_instance(k, int(1), int(1)).unwrap();
    let y = gap_fractional_labeling(&inst).unwrap();
    let z = tighten_mhv(&inst, &y);
    let x = tighten_muhv(&inst, &y);
    for t in 0..k {
        assert_eq!(z.per_vertex[t], ratio(1, 2));
        assert_eq!(x.per_vertex[t], ratio(1, 2));
    }
    for b in k..inst.num_vertices() {
        assert_eq!(z.per_vertex[b], int(0));
        assert_eq!(x.per_vertex[b], int(1));
    }
    assert_eq!(z.objective, int(2));
    assert_eq!(x.objective, int(2 + 6));
}

#[test]
fn nine_vertex_relaxation_is_below_opt() {
    let (inst, _) = gen_appendix_c(int(10), int(1)).unwrap();
    let muhv = solve_relaxation(&inst, Objective::Muhv, &exact()).unwrap();
    assert!(*muhv.value() <= int(6));
}

#[test]
fn export_mentions_every_constraint() {
    let inst = gen_gap_instance(3, int(1), int(0)).unwrap();
    let relax = build_lp(&inst, Objective::Muhv).unwrap();
    let text = write_lp_format(&relax.program);
    assert!(text.starts_with("\\ exported by happylab\nMinimize\n"));
    for c in relax.program.constraints() {
        assert!(text.contains(&format!(" {}:", c.name)), "{}", c.name);
    }
    assert!(text.ends_with("End\n"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tightening_matches_lovasz((inst, y) in labeled_instances(10, 4)) {
        prop_assert_eq!(tighten_mhv(&inst, &y).objective, relaxation_objective(&inst, &y, Objective::Mhv).unwrap());
        prop_assert_eq!(tighten_muhv(&inst, &y).objective, relaxation_objective(&inst, &y, Objective::Muhv).unwrap());
        prop_assert_eq!(tighten_mhv(&inst, &y).objective + tighten_muhv(&inst, &y).objective, inst.total_weight());
    }

    #[test]
    fn tightened_points_are_feasible((inst, y) in labeled_instances(8, 3)) {
        for objective in [Objective::Mhv, Objective::Muhv] {
            let relax = build_lp(&inst, objective).unwrap();
            let point = lift(&relax, &inst, &y);
            prop_assert!(relax.program.check_feasible(&point, None).is_ok());
            prop_assert_eq!(relax.program.objective_value(&point), tighten(&inst, &y, objective).objective);
        }
    }

    #[test]
    fn optima_bracket_brute_force(inst in instances(7, 3)) {
        let opt_muhv = naive_muhv(&inst);
        let opt_mhv = inst.total_weight() - &opt_muhv;
        let mhv = solve_relaxation(&inst, Objective::Mhv, &exact()).unwrap();
        let muhv = solve_relaxation(&inst, Objective::Muhv, &exact()).unwrap();
        prop_assert!(*mhv.value() >= opt_mhv);
        prop_assert!(*muhv.value() <= opt_muhv);
        prop_assert_eq!(mhv.value() + muhv.value(), inst.total_weight());
        prop_assert_eq!(&tighten(&inst, &muhv.labeling, Objective::Muhv).objective, muhv.value());
    }

    #[test]
    fn backends_agree(inst in instances(7, 3)) {
        let relax = build_lp(&inst, Objective::Muhv).unwrap();
        let reference = exact().solve(&relax.program).unwrap().objective;
        let dantzig = Simplex::new(Arithmetic::Exact, PivotRule::Dantzig).solve(&relax.program).unwrap();
        prop_assert_eq!(&dantzig.objective, &reference);
        let float = Simplex::new(Arithmetic::Float, PivotRule::Dantzig).solve(&relax.program).unwrap();
        prop_assert!((to_f64(&float.objective) - to_f64(&reference)).abs() < 1e-7);
    }
}
