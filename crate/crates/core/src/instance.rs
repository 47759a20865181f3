//! Problem instances, solution predicates, and the `torso` / `contract`
//! instance transformations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::InstanceError;
use crate::graph::Graph;
use crate::set::VertexSet;

/// Unordered vertex pair, stored with the smaller id first.
pub type Pair = (usize, usize);

#[inline]
pub fn normalize_pair(s: usize, t: usize) -> Pair {
    if s <= t {
        (s, t)
    } else {
        (t, s)
    }
}

/// `(G, T, k)`: find at most `k` vertices whose removal disconnects every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticutInstance {
    graph: Graph,
    pairs: BTreeSet<Pair>,
    k: usize,
}

impl MulticutInstance {
    pub fn new<I>(graph: Graph, pairs: I, k: usize) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = Pair>,
    {
        let pairs = collect_pairs(&graph, pairs, true)?;
        Ok(MulticutInstance { graph, pairs, k })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pairs(&self) -> &BTreeSet<Pair> {
        &self.pairs
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(&self, k: usize) -> Self {
        MulticutInstance { k, ..self.clone() }
    }

    pub fn is_solution(&self, x: &VertexSet) -> bool {
        x.len() <= self.k && is_multicut(&self.graph, &self.pairs, x)
    }
}

/// `(G, T, W, k)` where `W` is a known vertex multicut of `(G, T)`.
///
/// A solution is a set `X` with `|X| <= k`, disjoint from `W`, that is both a
/// multicut of `(G, T)` and a multiway cut of `(G, W)`.
///
/// `|W| <= k + 1` holds for instances produced by iterative compression but
/// is not enforced here: deletion branches lower `k` while keeping `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionInstance {
    graph: Graph,
    pairs: BTreeSet<Pair>,
    w_set: VertexSet,
    k: usize,
}

/// Result of an instance transformation. `infeasible` is set when a terminal
/// pair collapsed onto a single vertex of `W`, which no solution can cut; such
/// pairs are not kept in `instance`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub instance: CompressionInstance,
    pub infeasible: bool,
}

impl CompressionInstance {
    pub fn new<I>(graph: Graph, pairs: I, w_set: VertexSet, k: usize) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = Pair>,
    {
        let pairs = collect_pairs(&graph, pairs, false)?;
        if let Some(v) = w_set.iter().find(|&v| !graph.contains_vertex(v)) {
            return Err(InstanceError::PairEndpoint(v));
        }
        if !is_multicut(&graph, &pairs, &w_set) {
            return Err(InstanceError::WNotMulticut);
        }
        Ok(CompressionInstance {
            graph,
            pairs,
            w_set,
            k,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pairs(&self) -> &BTreeSet<Pair> {
        &self.pairs
    }

    pub fn w_set(&self) -> &VertexSet {
        &self.w_set
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(&self, k: usize) -> Self {
        CompressionInstance { k, ..self.clone() }
    }

    pub fn is_solution(&self, x: &VertexSet) -> bool {
        is_compression_solution(self, x)
    }

    /// `(G - v, T - v, W, k - 1)`.
    pub fn delete(&self, v: usize) -> Result<CompressionInstance, InstanceError> {
        if self.w_set.contains(v) {
            return Err(InstanceError::TouchesW { what: "deleted vertex", vertex: v });
        }
        if self.k == 0 {
            return Err(InstanceError::NoBudget);
        }
        Ok(CompressionInstance {
            graph: self.graph.remove_vertex(v),
            pairs: self.pairs.iter().copied().filter(|&(s, t)| s != v && t != v).collect(),
            w_set: self.w_set.clone(),
            k: self.k - 1,
        })
    }

    /// Removes `z` while keeping connectivity among the remaining vertices:
    /// `u, v` become adjacent iff a path with all internal vertices in `z`
    /// joins them. A pair endpoint `s ∈ z` is replaced by every vertex outside
    /// `z` reachable from `s` through `z`; endpoints with no such vertex make
    /// the pair vacuous and it is dropped.
    pub fn torso(&self, z: &VertexSet) -> Result<Transformed, InstanceError> {
        if let Some(v) = z.intersection(&self.w_set).first() {
            return Err(InstanceError::TouchesW { what: "torso set", vertex: v });
        }
        let z = z.intersection(self.graph.vertices());
        let n = self.graph.universe();
        let mut image: Vec<Option<usize>> = vec![None; n];
        let attachments = self.graph.z_attachments(&z);
        for (idx, (comp, _)) in attachments.iter().enumerate() {
            for v in comp.iter() {
                image[v] = Some(idx);
            }
        }
        let phi = |v: usize| -> Vec<usize> {
            match image[v] {
                Some(idx) => attachments[idx].1.to_vec(),
                None => vec![v],
            }
        };

        let mut pairs = BTreeSet::new();
        let mut infeasible = false;
        for &(s, t) in &self.pairs {
            let (ps, pt) = (phi(s), phi(t));
            for &a in &ps {
                for &b in &pt {
                    if a == b {
                        infeasible = true;
                    } else {
                        pairs.insert(normalize_pair(a, b));
                    }
                }
            }
        }
        Ok(Transformed {
            instance: CompressionInstance {
                graph: self.graph.torso(&z),
                pairs,
                w_set: self.w_set.clone(),
                k: self.k,
            },
            infeasible,
        })
    }

    /// Merges each `v` in the domain of `f` into `f(v) ∈ W`.
    pub fn contract(&self, f: &BTreeMap<usize, usize>) -> Result<Transformed, InstanceError> {
        let n = self.graph.universe();
        let mut target: Vec<Option<usize>> = vec![None; n];
        for (&v, &w) in f {
            if self.w_set.contains(v) {
                return Err(InstanceError::TouchesW { what: "contraction domain", vertex: v });
            }
            if !self.w_set.contains(w) {
                return Err(InstanceError::TargetNotInW(w));
            }
            if !self.graph.contains_vertex(v) {
                return Err(InstanceError::PairEndpoint(v));
            }
            target[v] = Some(w);
        }
        let image = |v: usize| target[v].unwrap_or(v);
        let mut pairs = BTreeSet::new();
        let mut infeasible = false;
        for &(s, t) in &self.pairs {
            let (a, b) = (image(s), image(t));
            if a == b {
                infeasible = true;
            } else {
                pairs.insert(normalize_pair(a, b));
            }
        }
        Ok(Transformed {
            instance: CompressionInstance {
                graph: self.graph.contract(&target),
                pairs,
                w_set: self.w_set.clone(),
                k: self.k,
            },
            infeasible,
        })
    }

    /// Single-vertex contraction `v -> w`.
    pub fn contract_one(&self, v: usize, w: usize) -> Result<Transformed, InstanceError> {
        let mut f = BTreeMap::new();
        f.insert(v, w);
        self.contract(&f)
    }
}

fn collect_pairs<I>(graph: &Graph, pairs: I, allow_self: bool) -> Result<BTreeSet<Pair>, InstanceError>
where
    I: IntoIterator<Item = Pair>,
{
    let mut out = BTreeSet::new();
    for (s, t) in pairs {
        for v in [s, t] {
            if !graph.contains_vertex(v) {
                return Err(InstanceError::PairEndpoint(v));
            }
        }
        if s == t && !allow_self {
            return Err(InstanceError::SelfPair(s));
        }
        out.insert(normalize_pair(s, t));
    }
    Ok(out)
}

/// A vertex set claimed to solve an instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub vertices: VertexSet,
}

impl Witness {
    pub fn new(vertices: VertexSet) -> Self {
        Witness { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Every pair is disconnected in `G - x`; a pair with an endpoint in `x` counts as cut.
pub fn is_multicut<'a, I>(g: &Graph, pairs: I, x: &VertexSet) -> bool
where
    I: IntoIterator<Item = &'a Pair>,
{
    let labels = g.component_labels(x);
    pairs.into_iter().all(|&(s, t)| {
        x.contains(s) || x.contains(t) || labels[s] == usize::MAX || labels[s] != labels[t]
    })
}

/// No component of `G - x` contains two vertices of `w_set`.
pub fn is_multiway_cut(g: &Graph, w_set: &VertexSet, x: &VertexSet) -> Result<bool, InstanceError> {
    if let Some(v) = x.intersection(w_set).first() {
        return Err(InstanceError::TouchesW { what: "cut", vertex: v });
    }
    let labels = g.component_labels(x);
    let mut seen = BTreeSet::new();
    Ok(w_set.iter().all(|w| labels[w] == usize::MAX || seen.insert(labels[w])))
}

pub fn is_compression_solution(inst: &CompressionInstance, x: &VertexSet) -> bool {
    x.len() <= inst.k()
        && x.is_disjoint(inst.w_set())
        && x.is_subset(inst.graph().vertices())
        && is_multicut(inst.graph(), inst.pairs(), x)
        && is_multiway_cut(inst.graph(), inst.w_set(), x).unwrap_or(false)
}
