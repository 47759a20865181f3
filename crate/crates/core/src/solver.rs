//! Exact solvers for (bipedal) compression instances.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::instance::{is_compression_solution, CompressionInstance, Witness};
use crate::set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
}

/// A verdict, with a witness exactly when the verdict is yes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolverResult {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl SolverResult {
    pub fn yes(vertices: VertexSet) -> Self {
        SolverResult {
            verdict: Verdict::Yes,
            witness: Some(Witness::new(vertices)),
        }
    }

    pub fn no() -> Self {
        SolverResult {
            verdict: Verdict::No,
            witness: None,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Calls `f` on each `size`-subset of `items` in colexicographic order of
/// positions until it returns `true`; returns that subset.
pub fn first_subset_colex<F>(items: &[usize], size: usize, mut f: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    let m = items.len();
    if size > m {
        return None;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut chosen: Vec<usize> = vec![0; size];
    loop {
        for (c, &i) in chosen.iter_mut().zip(&idx) {
            *c = items[i];
        }
        if f(&chosen) {
            return Some(chosen);
        }
        // advance: lowest position that can move up without hitting its successor
        let mut p = 0;
        while p < size {
            let limit = if p + 1 < size { idx[p + 1] } else { m };
            if idx[p] + 1 < limit {
                break;
            }
            p += 1;
        }
        if p == size {
            return None;
        }
        idx[p] += 1;
        for (q, slot) in idx.iter_mut().enumerate().take(p) {
            *slot = q;
        }
    }
}

/// Least set (by size, then colex) among subsets of `items` of size at most
/// `k` that satisfy `accept`.
pub fn least_subset<F>(n: usize, items: &[usize], k: usize, mut accept: F) -> Option<VertexSet>
where
    F: FnMut(&VertexSet) -> bool,
{
    (0..=k.min(items.len())).find_map(|size| {
        first_subset_colex(items, size, |sub| accept(&VertexSet::from_iter(n, sub.iter().copied())))
            .map(|sub| VertexSet::from_iter(n, sub))
    })
}

/// A solver for compression instances produced by the bipedal pipeline.
pub trait BipedalSolver: Sync {
    fn solve(&self, inst: &CompressionInstance) -> SolverResult;
}

/// Subset enumeration over `V \ W`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactSolver;

/// Bounded search tree over violated paths.
#[derive(Clone, Copy, Debug, Default)]
pub struct BranchingSolver;

impl BipedalSolver for ExactSolver {
    fn solve(&self, inst: &CompressionInstance) -> SolverResult {
        solve_bipedal_exact(inst)
    }
}

impl BipedalSolver for BranchingSolver {
    fn solve(&self, inst: &CompressionInstance) -> SolverResult {
        solve_bipedal_branching(inst)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SolverKind {
    Exact,
    #[default]
    Branching,
}

impl SolverKind {
    pub fn solver(self) -> &'static dyn BipedalSolver {
        match self {
            SolverKind::Exact => &ExactSolver,
            SolverKind::Branching => &BranchingSolver,
        }
    }
}

/// Least solution of size at most `k`, if any.
pub fn solve_bipedal_exact(inst: &CompressionInstance) -> SolverResult {
    let g = inst.graph();
    let free = g.vertices().difference(inst.w_set()).to_vec();
    match least_subset(g.universe(), &free, inst.k(), |x| is_compression_solution(inst, x)) {
        Some(x) => SolverResult::yes(x),
        None => SolverResult::no(),
    }
}

/// Picks a path that `G - x` still leaves uncut (two terminals in one
/// component, or a connected pair) and branches on its vertices outside `W`.
pub fn solve_bipedal_branching(inst: &CompressionInstance) -> SolverResult {
    let mut x = inst.graph().empty_set();
    if branch_on_paths(inst, &mut x, inst.k()) {
        SolverResult::yes(x)
    } else {
        SolverResult::no()
    }
}

fn branch_on_paths(inst: &CompressionInstance, x: &mut VertexSet, budget: usize) -> bool {
    let Some(path) = violated_path(inst, x) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in path {
        if inst.w_set().contains(v) {
            continue;
        }
        x.insert(v);
        if branch_on_paths(inst, x, budget - 1) {
            return true;
        }
        x.remove(v);
    }
    false
}

/// A shortest uncut path in `G - x`: first between terminals (in id order),
/// then between pair endpoints (in pair order).
fn violated_path(inst: &CompressionInstance, x: &VertexSet) -> Option<Vec<usize>> {
    let g = inst.graph();
    let w_set = inst.w_set();
    for w in w_set.iter() {
        let mut others = w_set.clone();
        others.remove(w);
        if let Some(p) = bfs_path(g, x, w, &others) {
            return Some(p);
        }
    }
    for &(s, t) in inst.pairs() {
        if x.contains(s) || x.contains(t) {
            continue;
        }
        if let Some(p) = bfs_path(g, x, s, &VertexSet::singleton(g.universe(), t)) {
            return Some(p);
        }
    }
    None
}

fn bfs_path(g: &Graph, removed: &VertexSet, from: usize, to: &VertexSet) -> Option<Vec<usize>> {
    if removed.contains(from) || !g.contains_vertex(from) {
        return None;
    }
    let mut pred = vec![usize::MAX; g.universe()];
    let mut seen = g.empty_set();
    seen.insert(from);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u).iter() {
            if removed.contains(v) || !seen.insert(v) {
                continue;
            }
            pred[v] = u;
            if to.contains(v) {
                let mut path = vec![v];
                let mut c = v;
                while c != from {
                    c = pred[c];
                    path.push(c);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}
