mod common;

use common::{instances, unhappy_weight};
use happylab::generators::{gap_pair_index, gen_appendix_c, gen_gap_instance};
use happylab::rational::int;
use happylab::{validate_instance, Coloring, Error, Objective, RawInstance, Rational, VertexSubset};
use proptest::prelude::*;

fn subset(n: usize, vs: &[usize]) -> VertexSubset {
    VertexSubset::from_vertices(n, vs.iter().copied())
}

fn raw(edges: Vec<(usize, usize)>, precolor: Vec<Option<usize>>, k: usize) -> RawInstance {
    RawInstance { num_vertices: precolor.len(), edges, weights: vec![int(1); precolor.len()], num_labels: k, precolor }
}

#[test]
fn validation_errors() {
    assert!(matches!(
        validate_instance(raw(vec![], vec![Some(0), Some(1), None], 3)),
        Err(Error::EmptyLabelClass(2))
    ));
    assert!(matches!(
        validate_instance(raw(vec![(0, 0)], vec![Some(0), Some(1)], 2)),
        Err(Error::BadEdge { .. })
    ));
    assert!(matches!(
        validate_instance(raw(vec![(0, 1), (1, 0)], vec![Some(0), Some(1)], 2)),
        Err(Error::BadEdge { .. })
    ));
    let mut negative = raw(vec![], vec![Some(0), Some(1)], 2);
    negative.weights[1] = int(-1);
    assert!(matches!(validate_instance(negative), Err(Error::NegativeWeight(1))));
}

#[test]
fn nine_vertex_boundary_and_interior() {
    let (inst, _) = gen_appendix_c(int(10), int(1)).unwrap();
    let x = subset(9, &[0, 1, 2]);
    assert_eq!(inst.boundary(&x), subset(9, &[1, 2]));
    assert_eq!(inst.interior(&x), subset(9, &[0]));
    assert_eq!(inst.f_unhappy(&x), int(2));
    assert_eq!(inst.g_happy(&x), int(10));
}

#[test]
fn nine_vertex_optimal_colorings() {
    let (inst, contracted) = gen_appendix_c(int(10), int(1)).unwrap();
    // v3 -> 1, v6 -> 2, v9 -> 3
    let col = Coloring::new(&inst, vec![0, 0, 0, 1, 1, 1, 2, 2, 2]).unwrap();
    assert_eq!(inst.evaluate(&col, Objective::Muhv).unwrap(), int(6));
    // cycle v12 - v3 - v78 - v9 - v45 - v6; v3, v6 join v12 and v9 joins v78
    let col = Coloring::new(&contracted, vec![0, 0, 1, 0, 2, 2]).unwrap();
    assert_eq!(contracted.evaluate(&col, Objective::Muhv).unwrap(), int(25));
}

#[test]
fn gap_parts_have_expected_values() {
    for k in 2..=5 {
        let inst = gen_gap_instance(k, int(3), int(2)).unwrap();
        for i in 0..k {
            let mut part = vec![i];
            part.extend((0..k).filter(|&j| j != i).map(|j| gap_pair_index(k, i.min(j), i.max(j))));
            let s = subset(inst.num_vertices(), &part);
            assert_eq!(inst.f_unhappy(&s), int(2 * (k as i64 - 1)));
            assert_eq!(inst.g_happy(&s), int(3));
        }
    }
}

#[test]
fn path_coloring_and_precolor_check() {
    let inst = happylab::Instance::new(3, vec![(0, 1), (1, 2)], vec![int(1); 3], 2, vec![Some(0), None, Some(1)])
        .unwrap();
    let col = Coloring::new(&inst, vec![0, 0, 1]).unwrap();
    assert_eq!(inst.evaluate(&col, Objective::Muhv).unwrap(), int(2));
    assert!(matches!(Coloring::new(&inst, vec![1, 0, 1]), Err(Error::PrecolorViolation(0))));
}

proptest! {
    #[test]
    fn boundary_laws(inst in instances(9, 3), xs in any::<u16>(), ys in any::<u16>()) {
        let n = inst.num_vertices();
        let x = VertexSubset::from_mask(n, xs as u64 & ((1 << n) - 1));
        let y = VertexSubset::from_mask(n, ys as u64 & ((1 << n) - 1));
        prop_assert!(inst.boundary(&VertexSubset::empty(n)).is_empty());
        prop_assert!(inst.boundary(&inst.full_set()).is_empty());
        prop_assert_eq!(inst.interior(&inst.full_set()), inst.full_set());
        let (bx, by) = (inst.boundary(&x), inst.boundary(&y));
        let b_cap = inst.boundary(&x.intersection(&y));
        let b_cup = inst.boundary(&x.union(&y));
        prop_assert!(b_cap.is_subset(&bx.union(&by)));
        prop_assert!(b_cup.is_subset(&bx.union(&by)));
        prop_assert!(b_cap.intersection(&b_cup).is_subset(&bx.intersection(&by)));
        prop_assert!(inst.interior(&x).is_disjoint(&bx));
        prop_assert_eq!(inst.interior(&x).union(&bx), x);
    }

    #[test]
    fn submodular_pair(inst in instances(9, 3), xs in any::<u16>(), ys in any::<u16>()) {
        let n = inst.num_vertices();
        let x = VertexSubset::from_mask(n, xs as u64 & ((1 << n) - 1));
        let y = VertexSubset::from_mask(n, ys as u64 & ((1 << n) - 1));
        let (cap, cup) = (x.intersection(&y), x.union(&y));
        prop_assert!(inst.f_unhappy(&x) + inst.f_unhappy(&y) >= inst.f_unhappy(&cap) + inst.f_unhappy(&cup));
        prop_assert!(inst.g_happy(&x) + inst.g_happy(&y) <= inst.g_happy(&cap) + inst.g_happy(&cup));
        prop_assert_eq!(inst.g_happy(&x), inst.weight_of(&x) - inst.f_unhappy(&x));
    }

    #[test]
    fn evaluations_split_total_weight(inst in instances(9, 4), seed in any::<u64>()) {
        let n = inst.num_vertices();
        let k = inst.num_labels();
        let assignment: Vec<usize> = (0..n)
            .map(|v| inst.precolor()[v].unwrap_or((seed.rotate_left(v as u32 * 7) % k as u64) as usize))
            .collect();
        let col = Coloring::new(&inst, assignment.clone()).unwrap();
        let mhv = inst.evaluate(&col, Objective::Mhv).unwrap();
        let muhv = inst.evaluate(&col, Objective::Muhv).unwrap();
        prop_assert_eq!(&muhv, &unhappy_weight(&inst, &assignment));
        prop_assert_eq!(mhv + muhv, inst.total_weight());
        let (happy, unhappy) = inst.happiness(&assignment);
        prop_assert_eq!(happy + unhappy, inst.total_weight());
        let zero: Rational = num_traits::Zero::zero();
        prop_assert_eq!(inst.f_unhappy(&VertexSubset::empty(n)), zero);
    }
}
