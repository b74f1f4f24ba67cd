#![allow(dead_code)]

use happylab::generators::Hypergraph;
use happylab::rational::int;
use happylab::{FractionalLabeling, Instance, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Instances with `2 ≤ k ≤ max_k`, `k ≤ n ≤ max_n`; vertex `v < k` is pre-colored `v`.
pub fn instances(max_n: usize, max_k: usize) -> impl Strategy<Value = Instance> {
    (2..=max_k)
        .prop_flat_map(move |k| (Just(k), k..=max_n.max(k)))
        .prop_flat_map(|(k, n)| {
            let pairs = n * (n - 1) / 2;
            (
                Just(k),
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(0i64..10, n),
                1i64..4,
                proptest::collection::vec(proptest::option::weighted(0.2, 0..k), n),
            )
        })
        .prop_map(|(k, n, mask, weights, den, extra)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
            let weights = weights.into_iter().map(|w| Rational::new(BigInt::from(w), BigInt::from(den))).collect();
            let precolor = (0..n).map(|v| if v < k { Some(v) } else { extra[v] }).collect();
            Instance::new(n, edges, weights, k, precolor).unwrap()
        })
}

/// Feasible labeling given raw non-negative integer row weights.
pub fn labeling_from_parts(inst: &Instance, parts: &[Vec<u32>]) -> FractionalLabeling {
    let k = inst.num_labels();
    let rows = (0..inst.num_vertices())
        .map(|v| match inst.precolor()[v] {
            Some(c) => (0..k).map(|i| int((i == c) as i64)).collect(),
            None => {
                let mut row: Vec<u32> = parts[v][..k].to_vec();
                if row.iter().all(|&p| p == 0) {
                    row[v % k] = 1;
                }
                let total: u32 = row.iter().sum();
                row.into_iter().map(|p| Rational::new(BigInt::from(p), BigInt::from(total))).collect()
            }
        })
        .collect();
    FractionalLabeling::new(inst, rows).unwrap()
}

/// An instance together with a feasible fractional labeling.
pub fn labeled_instances(max_n: usize, max_k: usize) -> impl Strategy<Value = (Instance, FractionalLabeling)> {
    instances(max_n, max_k).prop_flat_map(|inst| {
        let n = inst.num_vertices();
        let k = inst.num_labels();
        proptest::collection::vec(proptest::collection::vec(0u32..5, k), n).prop_map(move |parts| {
            let y = labeling_from_parts(&inst, &parts);
            (inst.clone(), y)
        })
    })
}

/// Unhappy weight of an assignment straight from the edge list.
pub fn unhappy_weight(inst: &Instance, assignment: &[usize]) -> Rational {
    let mut unhappy = vec![false; inst.num_vertices()];
    for &(u, v) in inst.edges() {
        if assignment[u] != assignment[v] {
            unhappy[u] = true;
            unhappy[v] = true;
        }
    }
    (0..inst.num_vertices()).filter(|&v| unhappy[v]).map(|v| inst.weight(v).clone()).sum()
}

/// Every completion of the pre-coloring, all vertices as digits.
pub fn completions(inst: &Instance) -> Vec<Vec<usize>> {
    let n = inst.num_vertices();
    let k = inst.num_labels();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        if (0..n).all(|v| inst.precolor()[v].is_none_or(|c| c == digits[v])) {
            out.push(digits.clone());
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Minimum unhappy weight over all completions.
pub fn naive_muhv(inst: &Instance) -> Rational {
    completions(inst).iter().map(|a| unhappy_weight(inst, a)).min().unwrap()
}

/// Minimum-weight disconnecting hyperedge set found by enumerating subsets
/// in order of size; connectivity by repeated relaxation.
pub fn naive_hypmc(h: &Hypergraph) -> Rational {
    let m = h.num_hyperedges();
    let mut best: Option<Rational> = None;
    for mask in 0u32..(1 << m) {
        let mut comp: Vec<usize> = (0..h.num_vertices()).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for (e, edge) in h.hyperedges().iter().enumerate() {
                if mask >> e & 1 == 1 {
                    continue;
                }
                let low = edge.members.iter().map(|&v| comp[v]).min().unwrap();
                for &v in &edge.members {
                    if comp[v] != low {
                        comp[v] = low;
                        changed = true;
                    }
                }
            }
        }
        let t = h.terminals();
        let separated = (0..t.len()).all(|i| (i + 1..t.len()).all(|j| comp[t[i]] != comp[t[j]]));
        if separated {
            let w: Rational = (0..m).filter(|e| mask >> e & 1 == 1).map(|e| h.hyperedges()[e].weight.clone()).sum();
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    best.unwrap()
}

/// Edge-weighted min s–t cut by Edmonds–Karp on an integer-capacity graph.
pub fn min_cut(n: usize, edges: &[(usize, usize, i64)], s: usize, t: usize) -> i64 {
    let mut cap = vec![vec![0i64; n]; n];
    for &(u, v, c) in edges {
        cap[u][v] += c;
        cap[v][u] += c;
    }
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(cap[parent[v]][v]);
            v = parent[v];
        }
        let mut v = t;
        while v != s {
            cap[parent[v]][v] -= bottleneck;
            cap[v][parent[v]] += bottleneck;
            v = parent[v];
        }
        flow += bottleneck;
    }
}
