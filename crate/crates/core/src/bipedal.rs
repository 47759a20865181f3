//! LP-guided branching and the contraction to bipedal instances.
//!
//! [`branching`] explores a search tree whose measure is `2k - OPT_lp`. A node
//! with a non-zero vertex `v` branches on torsoing or deleting `v`; a node
//! without one is emitted itself and then branches, for every terminal `w`
//! and every `v` on the boundary of `FC(w)`, on contracting `v` into `w` or
//! deleting `v`. [`make_bipedal_one`] then contracts the inner boundary of
//! each single-terminal region into its terminal.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{LpError, SeparatorError, SolveError};
use crate::graph::Graph;
use crate::instance::CompressionInstance;
use crate::lp::{find_nonzero_vertex_from, LpCounter, Rational};
use crate::separators::{farthest_isolating_min_cut, isolating_cut_size, Separator};
use crate::set::VertexSet;

/// One step from a parent instance to a child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edit {
    Delete(usize),
    Torso(usize),
    Contract { v: usize, w: usize },
}

/// An emitted instance with its measure and the edits leading to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchNode {
    pub instance: CompressionInstance,
    pub measure: Rational,
    pub provenance: Vec<Edit>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BranchStats {
    pub nodes: u64,
    pub lp_solves: u64,
    pub pruned: u64,
    pub max_depth: usize,
    /// Largest number of `(w, v)` pairs at a node without non-zero vertices.
    pub max_rule2_pairs: usize,
    /// Largest number of children created at any single node.
    pub max_children: usize,
    pub region_checks: u64,
    pub region_violations: u64,
    pub identity_checks: u64,
    pub identity_violations: u64,
}

impl BranchStats {
    pub fn absorb(&mut self, other: &BranchStats) {
        self.nodes += other.nodes;
        self.lp_solves += other.lp_solves;
        self.pruned += other.pruned;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.max_rule2_pairs = self.max_rule2_pairs.max(other.max_rule2_pairs);
        self.max_children = self.max_children.max(other.max_children);
        self.region_checks += other.region_checks;
        self.region_violations += other.region_violations;
        self.identity_checks += other.identity_checks;
        self.identity_violations += other.identity_violations;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchConfig {
    /// Depth beyond which the search aborts with [`SolveError::DepthExceeded`].
    /// `None` means `4k + 4` for the root budget `k`.
    pub depth_cap: Option<usize>,
    /// Verify region structure and `2·OPT_lp = Σ mincut` at every node
    /// without non-zero vertices.
    pub check_invariants: bool,
    pub record_tree: bool,
}

impl Default for BranchConfig {
    fn default() -> Self {
        BranchConfig {
            depth_cap: None,
            check_invariants: cfg!(debug_assertions),
            record_tree: false,
        }
    }
}

pub fn default_depth_cap(k: usize) -> usize {
    4 * k + 4
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Terminals adjacent, or `2k - OPT_lp < 0`.
    Pruned,
    NonZero(usize),
    Emitted { pairs: usize },
}

/// One node of the search tree. `measure` is `None` when the LP is
/// infeasible (measure `-∞`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRecord {
    pub id: u64,
    pub parent: Option<u64>,
    pub edit: Option<Edit>,
    pub depth: usize,
    pub measure: Option<Rational>,
    pub kind: NodeKind,
}

struct Search<'a> {
    config: BranchConfig,
    cap: usize,
    stats: BranchStats,
    lp: LpCounter,
    tree: Vec<TreeRecord>,
    emit: &'a mut dyn FnMut(BranchNode) -> ControlFlow<()>,
}

impl Search<'_> {
    fn node(
        &mut self,
        inst: &CompressionInstance,
        depth: usize,
        parent: Option<u64>,
        provenance: &mut Vec<Edit>,
    ) -> Result<ControlFlow<()>, SolveError> {
        let id = self.stats.nodes;
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if depth > self.cap {
            return Err(SolveError::DepthExceeded { depth, cap: self.cap });
        }
        let (g, w_set) = (inst.graph(), inst.w_set());
        let sol = match self.lp.solve(g, w_set) {
            Ok(sol) => sol,
            Err(LpError::Infeasible) => {
                self.prune(id, parent, provenance.last().copied(), depth, None);
                return Ok(ControlFlow::Continue(()));
            }
            Err(e) => unreachable!("LP solve failed: {e}"),
        };
        let measure = Rational::from_integer(BigInt::from(2 * inst.k())) - &sol.objective;
        if measure.is_negative() {
            self.prune(id, parent, provenance.last().copied(), depth, Some(measure));
            return Ok(ControlFlow::Continue(()));
        }

        if let Some(v) = find_nonzero_vertex_from(g, w_set, &sol, &mut self.lp) {
            self.record(id, parent, provenance.last().copied(), depth, Some(measure), NodeKind::NonZero(v));
            let mut children = 0;
            let torso = inst.torso(&VertexSet::singleton(g.universe(), v))?;
            if !torso.infeasible {
                children += 1;
                if self.child(&torso.instance, Edit::Torso(v), depth, id, provenance)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            if inst.k() > 0 {
                children += 1;
                let deleted = inst.delete(v)?;
                if self.child(&deleted, Edit::Delete(v), depth, id, provenance)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.stats.max_children = self.stats.max_children.max(children);
            return Ok(ControlFlow::Continue(()));
        }

        let fcs = fc_sets(g, w_set).expect("LP feasible, so terminals are pairwise non-adjacent");
        let pairs: Vec<(usize, usize)> = fcs
            .iter()
            .flat_map(|(w, sep)| sep.cut.difference(w_set).iter().map(move |v| (*w, v)).collect::<Vec<_>>())
            .collect();
        self.stats.max_rule2_pairs = self.stats.max_rule2_pairs.max(pairs.len());
        self.record(
            id,
            parent,
            provenance.last().copied(),
            depth,
            Some(measure.clone()),
            NodeKind::Emitted { pairs: pairs.len() },
        );
        if self.config.check_invariants {
            self.check(g, w_set, &sol.objective);
        }
        let node = BranchNode {
            instance: inst.clone(),
            measure,
            provenance: provenance.clone(),
        };
        if (self.emit)(node).is_break() {
            return Ok(ControlFlow::Break(()));
        }
        let mut children = 0;
        for &(w, v) in &pairs {
            let contracted = inst.contract_one(v, w)?;
            if !contracted.infeasible {
                children += 1;
                let edit = Edit::Contract { v, w };
                if self.child(&contracted.instance, edit, depth, id, provenance)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            if inst.k() > 0 {
                children += 1;
                let deleted = inst.delete(v)?;
                if self.child(&deleted, Edit::Delete(v), depth, id, provenance)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        self.stats.max_children = self.stats.max_children.max(children);
        Ok(ControlFlow::Continue(()))
    }

    fn child(
        &mut self,
        inst: &CompressionInstance,
        edit: Edit,
        depth: usize,
        parent: u64,
        provenance: &mut Vec<Edit>,
    ) -> Result<ControlFlow<()>, SolveError> {
        provenance.push(edit);
        let r = self.node(inst, depth + 1, Some(parent), provenance);
        provenance.pop();
        r
    }

    fn prune(&mut self, id: u64, parent: Option<u64>, edit: Option<Edit>, depth: usize, measure: Option<Rational>) {
        self.stats.pruned += 1;
        self.record(id, parent, edit, depth, measure, NodeKind::Pruned);
    }

    fn record(
        &mut self,
        id: u64,
        parent: Option<u64>,
        edit: Option<Edit>,
        depth: usize,
        measure: Option<Rational>,
        kind: NodeKind,
    ) {
        if self.config.record_tree {
            self.tree.push(TreeRecord {
                id,
                parent,
                edit,
                depth,
                measure,
                kind,
            });
        }
    }

    fn check(&mut self, g: &Graph, w_set: &VertexSet, objective: &Rational) {
        let report = check_region_invariants(g, w_set);
        if report.applicable {
            self.stats.region_checks += 1;
            if !report.holds() {
                self.stats.region_violations += 1;
            }
        }
        self.stats.identity_checks += 1;
        let total: usize = w_set
            .intersection(g.vertices())
            .iter()
            .map(|w| isolating_cut_size(g, w_set, w).ok().flatten().unwrap_or(usize::MAX / 4))
            .sum();
        if objective * Rational::from_integer(BigInt::from(2)) != Rational::from_integer(BigInt::from(total)) {
            self.stats.identity_violations += 1;
        }
    }
}

/// Runs the search, passing every emitted instance to `emit` in depth-first
/// order. `emit` may stop the search early.
pub fn visit_branching(
    inst: &CompressionInstance,
    config: &BranchConfig,
    emit: &mut dyn FnMut(BranchNode) -> ControlFlow<()>,
) -> Result<(BranchStats, Vec<TreeRecord>), SolveError> {
    let mut search = Search {
        config: *config,
        cap: config.depth_cap.unwrap_or_else(|| default_depth_cap(inst.k())),
        stats: BranchStats::default(),
        lp: LpCounter::default(),
        tree: Vec::new(),
        emit,
    };
    // an early stop by `emit` is not an error
    let _ = search.node(inst, 0, None, &mut Vec::new())?;
    search.stats.lp_solves = search.lp.solves;
    Ok((search.stats, search.tree))
}

/// Every instance emitted by the search, with statistics.
pub fn branching_with(
    inst: &CompressionInstance,
    config: &BranchConfig,
) -> Result<(Vec<BranchNode>, BranchStats, Vec<TreeRecord>), SolveError> {
    let mut out = Vec::new();
    let (stats, tree) = visit_branching(inst, config, &mut |node| {
        out.push(node);
        ControlFlow::Continue(())
    })?;
    Ok((out, stats, tree))
}

/// The instances emitted by the search with the default configuration.
pub fn branching(inst: &CompressionInstance) -> Result<Vec<CompressionInstance>, SolveError> {
    let (nodes, _, _) = branching_with(inst, &BranchConfig::default())?;
    Ok(nodes.into_iter().map(|n| n.instance).collect())
}

/// `FC(w)` for every terminal, in ascending order of `w`.
pub fn fc_sets(g: &Graph, w_set: &VertexSet) -> Result<Vec<(usize, Separator)>, SeparatorError> {
    w_set
        .intersection(g.vertices())
        .iter()
        .map(|w| farthest_isolating_min_cut(g, w_set, w).map(|sep| (w, sep)))
        .collect()
}

/// `x` avoids every boundary `N(FC(w)) \ W`, and each boundary vertex of
/// `FC(w)` is disconnected from `w` in `G - x`.
pub fn is_contractible_solution(inst: &CompressionInstance, x: &VertexSet) -> bool {
    let (g, w_set) = (inst.graph(), inst.w_set());
    let Ok(fcs) = fc_sets(g, w_set) else {
        return false;
    };
    let labels = g.component_labels(x);
    fcs.iter().all(|(w, sep)| {
        sep.cut.difference(w_set).iter().all(|v| !x.contains(v) && labels[v] != labels[*w])
    })
}

/// The regions `P_W(G, R)`: vertices grouped by the set `R` of terminals
/// whose `FC` contains them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pub fc: Vec<(usize, Separator)>,
    /// `R` for every present vertex; `None` for absent vertices.
    pub membership: Vec<Option<VertexSet>>,
    /// Nonempty regions keyed by `R`.
    pub cells: BTreeMap<VertexSet, VertexSet>,
}

impl Regions {
    pub fn region(&self, r: &VertexSet) -> VertexSet {
        self.cells
            .get(r)
            .cloned()
            .unwrap_or_else(|| VertexSet::new(self.membership.len()))
    }

    pub fn empty_region(&self) -> VertexSet {
        self.region(&VertexSet::new(self.membership.len()))
    }

    pub fn single(&self, w: usize) -> VertexSet {
        self.region(&VertexSet::singleton(self.membership.len(), w))
    }
}

pub fn regions(g: &Graph, w_set: &VertexSet) -> Result<Regions, SeparatorError> {
    let fc = fc_sets(g, w_set)?;
    let n = g.universe();
    let mut membership = vec![None; n];
    let mut cells: BTreeMap<VertexSet, VertexSet> = BTreeMap::new();
    for v in g.vertices().iter() {
        let r = VertexSet::from_iter(n, fc.iter().filter(|(_, s)| s.reachable.contains(v)).map(|(w, _)| *w));
        cells.entry(r.clone()).or_insert_with(|| VertexSet::new(n)).insert(v);
        membership[v] = Some(r);
    }
    Ok(Regions { fc, membership, cells })
}

/// Outcome of the region checks on one graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionReport {
    /// `P(∅) = ∅`, so the checks apply.
    pub applicable: bool,
    /// Edges joining two regions outside the allowed patterns.
    pub bad_edges: Vec<(usize, usize)>,
    /// Vertices on the boundary of two different `FC` sets.
    pub shared_boundary: Vec<usize>,
    /// Nonempty regions with `|R| >= 3`.
    pub large_regions: usize,
}

impl RegionReport {
    pub fn holds(&self) -> bool {
        self.bad_edges.is_empty() && self.shared_boundary.is_empty() && self.large_regions == 0
    }
}

/// An edge between regions `R1 != R2` is allowed iff both are singletons,
/// or one is a singleton contained in the other, which has size two.
fn allowed_between(r1: &VertexSet, r2: &VertexSet) -> bool {
    match (r1.len(), r2.len()) {
        (1, 1) => true,
        (1, 2) => r1.is_subset(r2),
        (2, 1) => r2.is_subset(r1),
        _ => false,
    }
}

pub fn check_region_invariants(g: &Graph, w_set: &VertexSet) -> RegionReport {
    let Ok(reg) = regions(g, w_set) else {
        return RegionReport::default();
    };
    if !reg.empty_region().is_empty() {
        return RegionReport::default();
    }
    let mut report = RegionReport {
        applicable: true,
        ..Default::default()
    };
    for (u, v) in g.edges() {
        let (ru, rv) = (reg.membership[u].as_ref().unwrap(), reg.membership[v].as_ref().unwrap());
        if ru != rv && !allowed_between(ru, rv) {
            report.bad_edges.push((u, v));
        }
    }
    let mut seen = g.empty_set();
    for (_, sep) in &reg.fc {
        for v in sep.cut.iter() {
            if !seen.insert(v) {
                report.shared_boundary.push(v);
            }
        }
    }
    report.large_regions = reg.cells.keys().filter(|r| r.len() >= 3).count();
    report
}

/// Result of contracting to a bipedal instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipedal {
    Instance(CompressionInstance),
    /// A vertex lies in no `FC(w)`, or a pair collapsed onto a terminal.
    TrivialNo,
}

impl Bipedal {
    /// The instance, with [`TrivialNo`](Bipedal::TrivialNo) rendered as two
    /// adjacent terminals and budget zero.
    pub fn into_instance(self) -> CompressionInstance {
        match self {
            Bipedal::Instance(inst) => inst,
            Bipedal::TrivialNo => {
                let g = Graph::from_edges(2, [(0, 1)]).expect("valid edge");
                CompressionInstance::new(g, [], VertexSet::full(2), 0).expect("no pairs")
            }
        }
    }
}

/// Step 1: a nonempty `P(∅)` gives a trivial no-instance. Step 2: contract
/// the inner boundary of every `P({w})`, minus `W`, into `w`.
pub fn make_bipedal_one(inst: &CompressionInstance) -> Bipedal {
    let (g, w_set) = (inst.graph(), inst.w_set());
    let Ok(reg) = regions(g, w_set) else {
        return Bipedal::TrivialNo;
    };
    if !reg.empty_region().is_empty() {
        return Bipedal::TrivialNo;
    }
    let mut f = BTreeMap::new();
    for w in w_set.intersection(g.vertices()).iter() {
        for v in g.inner_boundary(&reg.single(w)).difference(w_set).iter() {
            f.insert(v, w);
        }
    }
    let t = inst.contract(&f).expect("boundary vertices lie outside W");
    if t.infeasible {
        Bipedal::TrivialNo
    } else {
        Bipedal::Instance(t.instance)
    }
}

/// Search tree followed by [`make_bipedal_one`] on every emitted instance;
/// trivial no-instances are dropped.
pub fn make_bipedal(inst: &CompressionInstance) -> Result<Vec<CompressionInstance>, SolveError> {
    Ok(branching(inst)?
        .iter()
        .filter_map(|i| match make_bipedal_one(i) {
            Bipedal::Instance(b) => Some(b),
            Bipedal::TrivialNo => None,
        })
        .collect())
}

/// Every component of `G - W` is adjacent to at most two terminals.
pub fn is_bipedal(g: &Graph, w_set: &VertexSet) -> bool {
    g.connected_components(w_set)
        .iter()
        .all(|c| g.neighborhood(c).intersection_len(w_set) <= 2)
}
