//! Top-level solvers: the compression pipeline and iterative compression.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::bipedal::{make_bipedal_one, visit_branching, Bipedal, BranchConfig, BranchStats, Edit};
use crate::error::SolveError;
use crate::graph::Graph;
use crate::instance::{is_multicut, normalize_pair, CompressionInstance, MulticutInstance, Witness};
use crate::par;
use crate::set::VertexSet;
use crate::shadow::{shadow_removal_step, CoverMode};
use crate::solver::{SolverKind, SolverResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: CoverMode,
    pub solver: SolverKind,
    pub branch: BranchConfig,
    /// Insertion order for iterative compression; `None` means ascending ids.
    pub order: Option<Vec<usize>>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: CoverMode::Deterministic,
            solver: SolverKind::default(),
            branch: BranchConfig::default(),
            order: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Compression instances handed to the pipeline.
    pub compressions: u64,
    /// Instances produced by shadow removal.
    pub cover_sets: u64,
    /// Bipedal instances passed to the leaf solver.
    pub leaves: u64,
    pub branch: BranchStats,
}

impl SolveStats {
    pub fn absorb(&mut self, other: &SolveStats) {
        self.compressions += other.compressions;
        self.cover_sets += other.cover_sets;
        self.leaves += other.leaves;
        self.branch.absorb(&other.branch);
    }
}

/// Maps a leaf witness back through the edits that produced the leaf.
/// Deleted vertices join the witness; torso and contraction steps keep it.
pub fn propagate_witness(leaf: &Witness, provenance: &[Edit]) -> Witness {
    let mut x = leaf.vertices.clone();
    for edit in provenance.iter().rev() {
        if let Edit::Delete(v) = *edit {
            x.insert(v);
        }
    }
    Witness::new(x)
}

/// Shadow removal, branching down to bipedal instances, and the leaf solver.
/// Returns the first witness found, verified against `inst`.
pub fn solve_compression(
    inst: &CompressionInstance,
    opts: &SolveOptions,
) -> Result<(SolverResult, SolveStats), SolveError> {
    let family = shadow_removal_step(inst, opts.mode);
    let outcomes = par::prefix_until(
        &family,
        |z_inst| solve_shadowless(z_inst, opts),
        |r| r.as_ref().map_or(true, |(res, _)| res.is_yes()),
    );
    let mut stats = SolveStats {
        compressions: 1,
        cover_sets: family.len() as u64,
        ..Default::default()
    };
    for outcome in outcomes {
        let (res, s) = outcome?;
        stats.absorb(&s);
        if let Some(w) = res.witness {
            if !inst.is_solution(&w.vertices) {
                return Err(SolveError::WitnessRejected(w.vertices.to_vec()));
            }
            return Ok((SolverResult::yes(w.vertices), stats));
        }
    }
    Ok((SolverResult::no(), stats))
}

/// Branching and bipedal solving on one instance of the covering family.
/// A witness is mapped back to this instance, which has the same solutions
/// as the original up to the torso.
fn solve_shadowless(
    inst: &CompressionInstance,
    opts: &SolveOptions,
) -> Result<(SolverResult, SolveStats), SolveError> {
    let solver = opts.solver.solver();
    let mut found = None;
    let mut leaves = 0;
    let (branch, _) = visit_branching(inst, &opts.branch, &mut |node| {
        let Bipedal::Instance(b) = make_bipedal_one(&node.instance) else {
            return ControlFlow::Continue(());
        };
        leaves += 1;
        match solver.solve(&b).witness {
            Some(w) => {
                found = Some(propagate_witness(&w, &node.provenance));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    })?;
    let stats = SolveStats {
        leaves,
        branch,
        ..Default::default()
    };
    Ok((
        found.map_or_else(SolverResult::no, |w| SolverResult::yes(w.vertices)),
        stats,
    ))
}

/// Set partitions of `m` elements with a distinguished, possibly empty,
/// first block. Label 0 marks the first block; the other labels are in
/// restricted-growth form. Vectors come in lexicographic order, so there
/// are `Bell(m + 1)` of them.
pub fn labelled_partitions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0; m];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, out);
        }
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

/// The compression instance for one partition guess of `members`: vertices
/// labelled 0 are deleted, every other block is merged into its smallest
/// member, and the merged vertices form `W`. `None` if the guess deletes
/// more than `k` vertices or merges both ends of a pair.
pub fn partition_instance(
    g: &Graph,
    pairs: &BTreeSet<(usize, usize)>,
    k: usize,
    members: &[usize],
    labels: &[usize],
) -> Option<(CompressionInstance, VertexSet)> {
    let n = g.universe();
    let deleted = VertexSet::from_iter(n, members.iter().zip(labels).filter(|(_, &l)| l == 0).map(|(&v, _)| v));
    if deleted.len() > k {
        return None;
    }
    let mut rep = vec![usize::MAX; labels.iter().copied().max().unwrap_or(0) + 1];
    for (&v, &l) in members.iter().zip(labels) {
        if l > 0 && rep[l] == usize::MAX {
            rep[l] = v;
        }
    }
    let mut target = vec![None; n];
    let mut w_set = VertexSet::new(n);
    for (&v, &l) in members.iter().zip(labels) {
        if l == 0 {
            continue;
        }
        if rep[l] == v {
            w_set.insert(v);
        } else {
            target[v] = Some(rep[l]);
        }
    }
    let image = |v: usize| target[v].unwrap_or(v);
    let mut new_pairs = BTreeSet::new();
    for &(s, t) in pairs {
        if deleted.contains(s) || deleted.contains(t) {
            continue;
        }
        let (a, b) = (image(s), image(t));
        if a == b {
            return None;
        }
        new_pairs.insert(normalize_pair(a, b));
    }
    let graph = g.remove_vertices(&deleted).contract(&target);
    let inst = CompressionInstance::new(graph, new_pairs, w_set, k - deleted.len())
        .expect("the guessed vertices form a multicut");
    Some((inst, deleted))
}

/// Iterative compression: insert vertices one by one, keeping a solution of
/// the induced prefix instance. When the old solution plus the new vertex
/// is too large or fails, try every partition guess of it.
pub fn solve_vmc(inst: &MulticutInstance, opts: &SolveOptions) -> Result<(SolverResult, SolveStats), SolveError> {
    let g = inst.graph();
    let n = g.universe();
    let order: Vec<usize> = opts.order.clone().unwrap_or_else(|| g.vertices().to_vec());
    let mut stats = SolveStats::default();
    let mut prefix = VertexSet::new(n);
    let mut x = VertexSet::new(n);
    for &v in &order {
        prefix.insert(v);
        let g_i = g.remove_vertices(&g.vertices().difference(&prefix));
        let pairs_i: BTreeSet<(usize, usize)> = inst
            .pairs()
            .iter()
            .copied()
            .filter(|&(s, t)| prefix.contains(s) && prefix.contains(t))
            .collect();
        if is_multicut(&g_i, &pairs_i, &x) {
            continue;
        }
        let mut s = x.clone();
        s.insert(v);
        if s.len() <= inst.k() {
            x = s;
            continue;
        }
        let members = s.to_vec();
        let guesses = labelled_partitions(members.len());
        let outcomes = par::prefix_until(
            &guesses,
            |labels| match partition_instance(&g_i, &pairs_i, inst.k(), &members, labels) {
                None => Ok((None, SolveStats::default())),
                Some((ci, deleted)) => {
                    let (res, st) = solve_compression(&ci, opts)?;
                    Ok((res.witness.map(|w| w.vertices.union(&deleted)), st))
                }
            },
            |r: &Result<(Option<VertexSet>, SolveStats), SolveError>| r.as_ref().map_or(true, |(w, _)| w.is_some()),
        );
        let mut next = None;
        for outcome in outcomes {
            let (w, st) = outcome?;
            stats.absorb(&st);
            if w.is_some() {
                next = w;
            }
        }
        match next {
            Some(w) => {
                if w.len() > inst.k() || !is_multicut(&g_i, &pairs_i, &w) {
                    return Err(SolveError::WitnessRejected(w.to_vec()));
                }
                x = w;
            }
            None => return Ok((SolverResult::no(), stats)),
        }
    }
    if !inst.is_solution(&x) {
        return Err(SolveError::WitnessRejected(x.to_vec()));
    }
    Ok((SolverResult::yes(x), stats))
}
