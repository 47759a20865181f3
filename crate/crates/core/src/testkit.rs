//! Seeded generators and brute-force oracles for tests.
//!
//! Randomness comes from [`SplitMix64`] only, so generated instances are
//! identical on every platform for a given seed.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::ShadowError;
use crate::graph::Graph;
use crate::instance::{is_compression_solution, normalize_pair, CompressionInstance, MulticutInstance, Witness};
use crate::separators::enumerate_important_separators;
use crate::set::VertexSet;
use crate::shadow::{is_k_shadow_removable, shadow};
use crate::solver::{least_subset, SolverResult};

/// SplitMix64 (Steele, Lea and Flood). State increment `0x9E3779B97F4A7C15`,
/// output mix multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `0..bound` by rejection; `bound` must be positive.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

/// `G(n, p)` in the order `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn gen_random_graph(rng: &mut SplitMix64, n: usize, edge_prob: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(edge_prob) {
                g.add_edge(u, v).expect("distinct endpoints in range");
            }
        }
    }
    g
}

/// Up to `count` distinct pairs of distinct vertices. Fewer are returned
/// only when the graph has fewer than `count` possible pairs.
fn gen_pairs(rng: &mut SplitMix64, n: usize, count: usize) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    let count = count.min(n * n.saturating_sub(1) / 2);
    while pairs.len() < count {
        let s = rng.next_below(n as u64) as usize;
        let t = rng.next_below(n as u64) as usize;
        if s != t {
            pairs.insert(normalize_pair(s, t));
        }
    }
    pairs
}

/// A random multicut instance: `G(n, edge_prob)` plus `pairs` random pairs.
pub fn gen_random_instance(seed: u64, n: usize, edge_prob: f64, pairs: usize, k: usize) -> MulticutInstance {
    let mut rng = SplitMix64::new(seed);
    let g = gen_random_graph(&mut rng, n, edge_prob);
    let pairs = gen_pairs(&mut rng, n, pairs);
    MulticutInstance::new(g, pairs, k).expect("generated pairs are valid")
}

/// A random compression instance with `|W| = w_size` (capped at `n`). Only
/// sampled pairs that `W` already separates are kept.
pub fn gen_compression_instance(
    seed: u64,
    n: usize,
    edge_prob: f64,
    pairs: usize,
    w_size: usize,
    k: usize,
) -> CompressionInstance {
    let mut rng = SplitMix64::new(seed);
    let g = gen_random_graph(&mut rng, n, edge_prob);
    let mut w_set = VertexSet::new(n);
    while w_set.len() < w_size.min(n) {
        w_set.insert(rng.next_below(n as u64) as usize);
    }
    let labels = g.component_labels(&w_set);
    let pairs: BTreeSet<_> = gen_pairs(&mut rng, n, pairs)
        .into_iter()
        .filter(|&(s, t)| w_set.contains(s) || w_set.contains(t) || labels[s] != labels[t])
        .collect();
    CompressionInstance::new(g, pairs, w_set, k).expect("W separates the kept pairs")
}

/// Least multicut of size at most `k`, by size then colex order.
pub fn brute_force_vmc(inst: &MulticutInstance) -> SolverResult {
    let g = inst.graph();
    let items = g.vertices().to_vec();
    match least_subset(g.universe(), &items, inst.k(), |x| inst.is_solution(x)) {
        Some(x) => SolverResult::yes(x),
        None => SolverResult::no(),
    }
}

/// Outcome of [`brute_force_compression`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionOracle {
    /// The least solution.
    pub result: SolverResult,
    /// The least solution whose shadow is empty, if there is one.
    pub shadowless: Option<Witness>,
}

impl CompressionOracle {
    pub fn has_shadowless(&self) -> bool {
        self.shadowless.is_some()
    }
}

pub fn brute_force_compression(inst: &CompressionInstance) -> CompressionOracle {
    let g = inst.graph();
    let n = g.universe();
    let items = g.vertices().difference(inst.w_set()).to_vec();
    let result = match least_subset(n, &items, inst.k(), |x| is_compression_solution(inst, x)) {
        Some(x) => SolverResult::yes(x),
        None => SolverResult::no(),
    };
    let shadowless = least_subset(n, &items, inst.k(), |x| {
        is_compression_solution(inst, x) && shadow(g, inst.w_set(), x).map_or(false, |s| s.is_empty())
    })
    .map(Witness::new);
    CompressionOracle { result, shadowless }
}

/// Every subset of `items` of size at most `k`, in size then colex order.
fn subsets_up_to(n: usize, items: &[usize], k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    least_subset(n, items, k, |x| {
        out.push(x.clone());
        false
    });
    out
}

/// Important `(S, T)` separators of size at most `k`, straight from the
/// definition: `X` separates, and no `X'` with `|X'| <= |X|` has a strictly
/// larger source side. Sorted by set order.
pub fn brute_force_important_separators(g: &Graph, s: &VertexSet, t: &VertexSet, k: usize) -> Vec<VertexSet> {
    let n = g.universe();
    let items = g.vertices().difference(&s.union(t)).to_vec();
    // every separator, not only size <= k, could dominate; but a dominating
    // separator must be no larger, so the same bound suffices
    let seps: Vec<(VertexSet, VertexSet)> = subsets_up_to(n, &items, k)
        .into_iter()
        .filter_map(|x| {
            let r = g.reach(s, &x);
            r.is_disjoint(t).then_some((x, r))
        })
        .collect();
    let mut out: Vec<VertexSet> = seps
        .iter()
        .filter(|(x, r)| {
            g.neighborhood(r) == *x
                && !seps
                    .iter()
                    .any(|(x2, r2)| x2.len() <= x.len() && x2 != x && r.is_proper_subset(r2))
        })
        .map(|(x, _)| x.clone())
        .collect();
    out.sort();
    out
}

/// Size of a smallest vertex set outside `W` separating every two members
/// of `W`, searching sizes up to `limit`.
pub fn brute_force_min_multiway_cut(g: &Graph, w_set: &VertexSet, limit: usize) -> Option<usize> {
    let items = g.vertices().difference(w_set).to_vec();
    least_subset(g.universe(), &items, limit, |x| {
        let labels = g.component_labels(x);
        let mut seen = BTreeSet::new();
        w_set.iter().all(|w| seen.insert(labels[w]))
    })
    .map(|x| x.len())
}

/// A planted structure: `Y` is `k`-shadow-removable with respect to `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planted {
    pub graph: Graph,
    pub w_set: VertexSet,
    pub y: VertexSet,
}

/// Attempts before [`plant_shadow_removable`] gives up.
pub const PLANTING_ATTEMPTS: usize = 10_000;

/// Samples connected-ish random graphs with two or three terminals and
/// offers important separators between a vertex and `W` as candidates for
/// `Y`, keeping the first one that is `k`-shadow-removable and has a
/// nonempty shadow. With `k = 0`, `Y` is empty and the shadow must be too.
pub fn plant_shadow_removable(seed: u64, n: usize, k: usize) -> Result<Planted, ShadowError> {
    let mut rng = SplitMix64::new(seed);
    if n < 3 {
        return Err(ShadowError::PlantingExhausted(0));
    }
    for _ in 0..PLANTING_ATTEMPTS {
        let graph = gen_random_graph(&mut rng, n, 0.3);
        let mut w_set = VertexSet::new(n);
        let w_size = 2 + rng.next_below(2) as usize;
        while w_set.len() < w_size.min(n - 1) {
            w_set.insert(rng.next_below(n as u64) as usize);
        }
        if k == 0 {
            let y = VertexSet::new(n);
            if shadow(&graph, &w_set, &y)?.is_empty() {
                return Ok(Planted { graph, w_set, y });
            }
            continue;
        }
        let outside = graph.vertices().difference(&w_set).to_vec();
        let v = outside[rng.next_below(outside.len() as u64) as usize];
        let seps = enumerate_important_separators(&graph, &VertexSet::singleton(n, v), &w_set, k)
            .expect("v is outside W");
        for sep in seps {
            let y = sep.cut;
            if !y.is_empty()
                && !shadow(&graph, &w_set, &y)?.is_empty()
                && is_k_shadow_removable(&graph, &w_set, &y, k)?
            {
                return Ok(Planted { graph, w_set, y });
            }
        }
    }
    Err(ShadowError::PlantingExhausted(PLANTING_ATTEMPTS))
}
