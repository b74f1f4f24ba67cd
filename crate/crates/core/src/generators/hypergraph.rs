use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Coloring, Instance};
use crate::rational::Rational;

/// Largest hyperedge count [`solve_hypmc_exact`] enumerates by default.
pub const DEFAULT_HYPEREDGE_BUDGET: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    /// Sorted, distinct vertex indices.
    pub members: Vec<usize>,
    pub weight: Rational,
}

/// Weighted hypergraph with `k` distinct terminals; terminal `i` gets label `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    num_vertices: usize,
    hyperedges: Vec<Hyperedge>,
    terminals: Vec<usize>,
}

impl Hypergraph {
    pub fn new(num_vertices: usize, hyperedges: Vec<(Vec<usize>, Rational)>, terminals: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidHypergraph(msg));
        if terminals.len() < 2 {
            return bad(format!("need at least 2 terminals, got {}", terminals.len()));
        }
        let mut seen = vec![false; num_vertices];
        for &t in &terminals {
            if t >= num_vertices {
                return bad(format!("terminal {} out of range", t + 1));
            }
            if std::mem::replace(&mut seen[t], true) {
                return bad(format!("terminal {} listed twice", t + 1));
            }
        }
        let mut edges = Vec::with_capacity(hyperedges.len());
        for (e, (mut members, weight)) in hyperedges.into_iter().enumerate() {
            if members.is_empty() {
                return bad(format!("hyperedge {} is empty", e + 1));
            }
            if weight.is_negative() {
                return bad(format!("hyperedge {} has negative weight", e + 1));
            }
            members.sort_unstable();
            if members.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("hyperedge {} repeats a vertex", e + 1));
            }
            if members.last().is_some_and(|&v| v >= num_vertices) {
                return bad(format!("hyperedge {} has a vertex out of range", e + 1));
            }
            edges.push(Hyperedge { members, weight });
        }
        Ok(Self { num_vertices, hyperedges: edges, terminals })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_hyperedges(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn num_terminals(&self) -> usize {
        self.terminals.len()
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn weight_of(&self, edges: &[usize]) -> Rational {
        edges.iter().map(|&e| &self.hyperedges[e].weight).sum()
    }
}

/// Where each hypergraph element lives in the reduced instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    /// hypergraph vertex → instance vertex
    pub vertex: Vec<usize>,
    /// hyperedge → its vertex `v_e`
    pub hyperedge: Vec<usize>,
    /// instance vertex → label, for terminals
    pub terminal_label: Vec<Option<usize>>,
}

/// Hypergraph vertices keep their indices with weight 0; hyperedge `e` becomes
/// vertex `n + e` of weight `w(e)`, adjacent to each member.
pub fn reduce_hypmc(h: &Hypergraph) -> Result<(Instance, ReductionMap)> {
    let n = h.num_vertices();
    let m = h.num_hyperedges();
    let mut weights = vec![Rational::zero(); n];
    weights.extend(h.hyperedges().iter().map(|e| e.weight.clone()));
    let mut precolor = vec![None; n + m];
    for (label, &t) in h.terminals().iter().enumerate() {
        precolor[t] = Some(label);
    }
    let edges = h
        .hyperedges()
        .iter()
        .enumerate()
        .flat_map(|(e, edge)| edge.members.iter().map(move |&v| (v, n + e)))
        .collect();
    let inst = Instance::new(n + m, edges, weights, h.num_terminals(), precolor.clone())
        .map_err(|err| Error::InvalidHypergraph(err.to_string()))?;
    let map = ReductionMap { vertex: (0..n).collect(), hyperedge: (n..n + m).collect(), terminal_label: precolor };
    Ok((inst, map))
}

/// Hyperedges whose vertex is unhappy under `col`, in index order.
pub fn backmap_solution(h: &Hypergraph, map: &ReductionMap, inst: &Instance, col: &Coloring) -> Vec<usize> {
    (0..h.num_hyperedges())
        .filter(|&e| {
            let ve = map.hyperedge[e];
            inst.neighbors(ve).iter().any(|&u| col.label(u) != col.label(ve))
        })
        .collect()
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// True when no two terminals share a component after deleting `removed`.
pub fn disconnects_terminals(h: &Hypergraph, removed: &[usize]) -> bool {
    let mut gone = vec![false; h.num_hyperedges()];
    for &e in removed {
        gone[e] = true;
    }
    disconnects_mask(h, |e| gone[e])
}

fn disconnects_mask(h: &Hypergraph, is_removed: impl Fn(usize) -> bool) -> bool {
    let mut parent: Vec<usize> = (0..h.num_vertices()).collect();
    for (e, edge) in h.hyperedges().iter().enumerate() {
        if is_removed(e) {
            continue;
        }
        let root = find(&mut parent, edge.members[0]);
        for &v in &edge.members[1..] {
            let r = find(&mut parent, v);
            parent[r] = root;
        }
    }
    let mut roots: Vec<usize> = h.terminals().iter().map(|&t| find(&mut parent, t)).collect();
    roots.sort_unstable();
    roots.windows(2).all(|w| w[0] != w[1])
}

/// Minimum-weight disconnecting hyperedge set by enumeration over subsets.
/// Ties go to the subset with the smallest bitmask.
pub fn solve_hypmc_exact(h: &Hypergraph, budget: usize) -> Result<(Vec<usize>, Rational)> {
    let m = h.num_hyperedges();
    if m > budget.min(63) {
        return Err(Error::HyperedgeBudgetExceeded { hyperedges: m, budget });
    }
    let mut best: Option<(u64, Rational)> = None;
    for mask in 0u64..(1u64 << m) {
        let weight: Rational = (0..m).filter(|e| mask >> e & 1 == 1).map(|e| &h.hyperedges()[e].weight).sum();
        if best.as_ref().is_some_and(|(_, w)| weight >= *w) {
            continue;
        }
        if disconnects_mask(h, |e| mask >> e & 1 == 1) {
            best = Some((mask, weight));
        }
    }
    // removing everything always disconnects distinct terminals
    let (mask, weight) = best.expect("full removal disconnects");
    Ok(((0..m).filter(|e| mask >> e & 1 == 1).collect(), weight))
}

/// Parameters for [`random_hypergraph`]. Terminals are vertices `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergraphSpec {
    pub num_vertices: usize,
    pub num_hyperedges: usize,
    pub num_terminals: usize,
    pub max_size: usize,
    pub weight_low: u32,
    pub weight_high: u32,
    pub seed: u64,
}

impl Default for HypergraphSpec {
    fn default() -> Self {
        Self { num_vertices: 6, num_hyperedges: 6, num_terminals: 2, max_size: 3, weight_low: 1, weight_high: 9, seed: 0 }
    }
}

pub fn random_hypergraph(spec: &HypergraphSpec) -> Result<Hypergraph> {
    let n = spec.num_vertices;
    if spec.num_terminals > n || spec.max_size == 0 || spec.weight_low > spec.weight_high {
        return Err(Error::BadParameters("bad hypergraph parameters".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let max_size = spec.max_size.min(n);
    let edges = (0..spec.num_hyperedges)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            let members = sample(&mut rng, n, size).into_vec();
            let weight = Rational::from_integer(BigInt::from(rng.gen_range(spec.weight_low..=spec.weight_high)));
            (members, weight)
        })
        .collect();
    Hypergraph::new(n, edges, (0..spec.num_terminals).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Objective;
    use crate::rational::int;
    use crate::solvers::solve_exact;

    fn single_edge() -> Hypergraph {
        Hypergraph::new(2, vec![(vec![0, 1], int(5))], vec![0, 1]).unwrap()
    }

    #[test]
    fn single_hyperedge_reduction() {
        let h = single_edge();
        let (inst, map) = reduce_hypmc(&h).unwrap();
        assert_eq!(inst.num_vertices(), 3);
        assert_eq!(map.hyperedge, vec![2]);
        let sol = solve_exact(&inst, Objective::Muhv).unwrap();
        assert_eq!(sol.value, int(5));
        for label in 0..2 {
            let col = Coloring::uniform_completion(&inst, label).unwrap();
            assert_eq!(backmap_solution(&h, &map, &inst, &col), vec![0]);
        }
        assert_eq!(solve_hypmc_exact(&h, DEFAULT_HYPEREDGE_BUDGET).unwrap(), (vec![0], int(5)));
    }

    #[test]
    fn already_disconnected() {
        let h = Hypergraph::new(4, vec![(vec![0, 2], int(3)), (vec![1, 3], int(4))], vec![0, 1]).unwrap();
        assert_eq!(solve_hypmc_exact(&h, 22).unwrap(), (vec![], int(0)));
        let (inst, _) = reduce_hypmc(&h).unwrap();
        assert_eq!(solve_exact(&inst, Objective::Muhv).unwrap().value, int(0));
    }

    #[test]
    fn empty_hyperedge_set() {
        let h = Hypergraph::new(2, vec![], vec![0, 1]).unwrap();
        let (inst, _) = reduce_hypmc(&h).unwrap();
        assert_eq!((inst.num_vertices(), inst.num_edges()), (2, 0));
    }

    #[test]
    fn rejects_malformed() {
        assert!(Hypergraph::new(2, vec![], vec![0, 0]).is_err());
        assert!(Hypergraph::new(2, vec![], vec![0]).is_err());
        assert!(Hypergraph::new(2, vec![(vec![], int(1))], vec![0, 1]).is_err());
        assert!(Hypergraph::new(2, vec![(vec![0, 2], int(1))], vec![0, 1]).is_err());
        assert!(Hypergraph::new(2, vec![(vec![1, 1], int(1))], vec![0, 1]).is_err());
        assert!(Hypergraph::new(2, vec![(vec![1], int(-1))], vec![0, 1]).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let h = random_hypergraph(&HypergraphSpec { num_hyperedges: 5, ..Default::default() }).unwrap();
        assert!(matches!(solve_hypmc_exact(&h, 4), Err(Error::HyperedgeBudgetExceeded { .. })));
    }
}
