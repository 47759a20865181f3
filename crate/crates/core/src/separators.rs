//! Minimum, farthest-minimum and important vertex separators.
//!
//! All routines work on vertex separators disjoint from both terminal sets.
//! A separator is reported as `N(C)` together with its source side `C`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::SeparatorError;
use crate::flow::FlowState;
use crate::graph::Graph;
use crate::set::VertexSet;

/// A minimal separator `cut = N(reachable)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Separator {
    pub cut: VertexSet,
    pub reachable: VertexSet,
}

impl Separator {
    pub fn size(&self) -> usize {
        self.cut.len()
    }
}

fn check_disjoint(s: &VertexSet, t: &VertexSet) -> Result<(), SeparatorError> {
    match s.intersection(t).first() {
        Some(v) => Err(SeparatorError::Overlap(v)),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Source,
    Sink,
}

/// Minimum separator in `G - removed`, or `None` if the sets cannot be
/// separated or every separator is larger than `limit`.
fn min_cut_in(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
    removed: &VertexSet,
    limit: usize,
    side: Side,
) -> Option<Separator> {
    let mut flow = FlowState::build(g, s, t, removed)?;
    if !flow.run(limit) {
        return None;
    }
    let cut = match side {
        Side::Source => flow.source_side_cut(),
        Side::Sink => flow.sink_side_cut(),
    };
    debug_assert_eq!(cut.len(), flow.value);
    let reachable = g.reach(s, &removed.union(&cut));
    Some(Separator { cut, reachable })
}

/// Size of a minimum `S`–`T` separator, `None` if some source is adjacent to a sink.
pub fn min_cut_size(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<Option<usize>, SeparatorError> {
    check_disjoint(s, t)?;
    Ok(FlowState::build(g, s, t, &g.empty_set()).map(|mut f| {
        f.run(usize::MAX);
        f.value
    }))
}

/// A minimum `S`–`T` separator (the one closest to `S`) and its size.
pub fn min_vertex_separator(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
) -> Result<Option<(usize, Separator)>, SeparatorError> {
    check_disjoint(s, t)?;
    Ok(min_cut_in(g, s, t, &g.empty_set(), usize::MAX, Side::Source).map(|sep| (sep.size(), sep)))
}

/// The unique minimum separator whose source side is inclusion-maximal.
pub fn farthest_min_separator(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<Option<Separator>, SeparatorError> {
    check_disjoint(s, t)?;
    Ok(min_cut_in(g, s, t, &g.empty_set(), usize::MAX, Side::Sink))
}

/// `FC(w)` as a separator: the farthest minimum cut between `w` and `W \ {w}`.
pub fn farthest_isolating_min_cut(g: &Graph, w_set: &VertexSet, w: usize) -> Result<Separator, SeparatorError> {
    if !w_set.contains(w) {
        return Err(SeparatorError::NotInW(w));
    }
    let source = VertexSet::singleton(g.universe(), w);
    let mut rest = w_set.clone();
    rest.remove(w);
    farthest_min_separator(g, &source, &rest)?.ok_or(SeparatorError::Inseparable(w))
}

/// `mincut(G, w, W \ {w})`, `None` if `w` is adjacent to another terminal.
pub fn isolating_cut_size(g: &Graph, w_set: &VertexSet, w: usize) -> Result<Option<usize>, SeparatorError> {
    if !w_set.contains(w) {
        return Err(SeparatorError::NotInW(w));
    }
    let mut rest = w_set.clone();
    rest.remove(w);
    min_cut_size(g, &VertexSet::singleton(g.universe(), w), &rest)
}

/// Whether `x` is an important `S`–`T` separator: it is minimal, and no
/// separator of size at most `|x|` has a strictly larger source side.
pub fn is_important_separator(g: &Graph, s: &VertexSet, t: &VertexSet, x: &VertexSet) -> bool {
    if !x.is_disjoint(s) || !x.is_disjoint(t) || !x.is_subset(g.vertices()) {
        return false;
    }
    let c = g.reach(s, x);
    if !c.is_disjoint(t) || g.neighborhood(&c) != *x {
        return false;
    }
    // Every separator with source side containing C is a (C, T) separator,
    // so x is important iff it is the farthest minimum (C, T) separator.
    match min_cut_in(g, &c, t, &g.empty_set(), x.len(), Side::Sink) {
        Some(far) => far.cut == *x,
        None => false,
    }
}

/// All important `S`–`T` separators of size at most `k`, sorted by cut.
///
/// Branches on the lowest vertex `v` of the farthest minimum separator
/// `N(C0)`: either `v` joins the cut, or `C0 ∪ {v}` becomes the new source.
/// Leaves are filtered through [`is_important_separator`] and deduplicated.
pub fn enumerate_important_separators(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
    k: usize,
) -> Result<Vec<Separator>, SeparatorError> {
    check_disjoint(s, t)?;
    let mut candidates = BTreeSet::new();
    let s = s.intersection(g.vertices());
    enumerate_rec(g, &s, t, &g.empty_set(), k, &mut candidates);
    Ok(candidates
        .into_iter()
        .filter(|x| is_important_separator(g, &s, t, x))
        .map(|cut| Separator {
            reachable: g.reach(&s, &cut),
            cut,
        })
        .collect())
}

fn enumerate_rec(
    g: &Graph,
    source: &VertexSet,
    t: &VertexSet,
    chosen: &VertexSet,
    budget: usize,
    out: &mut BTreeSet<VertexSet>,
) {
    let Some(far) = min_cut_in(g, source, t, chosen, budget, Side::Sink) else {
        return;
    };
    let Some(v) = far.cut.first() else {
        out.insert(chosen.clone());
        return;
    };
    if budget > 0 {
        let mut with_v = chosen.clone();
        with_v.insert(v);
        enumerate_rec(g, source, t, &with_v, budget - 1, out);
    }
    let mut grown = far.reachable;
    grown.insert(v);
    enumerate_rec(g, &grown, t, chosen, budget, out);
}

/// A set of at most `k` vertices outside `y` meeting every important
/// `S`–`T` separator of size at most `k`.
///
/// Repeatedly takes the farthest minimum separator from the grown source,
/// marks its lowest vertex outside `y`, and folds that vertex into the
/// source. Fails if some separator met along the way lies inside `y`.
pub fn hitting_set_for_important_separators(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
    k: usize,
    y: &VertexSet,
) -> Result<VertexSet, SeparatorError> {
    check_disjoint(s, t)?;
    let mut hits = g.empty_set();
    let mut source = s.intersection(g.vertices());
    while let Some(far) = min_cut_in(g, &source, t, &g.empty_set(), k, Side::Sink) {
        let Some(v) = far.cut.difference(y).first() else {
            return Err(SeparatorError::SeparatorInsideAvoided(far.cut.to_vec()));
        };
        hits.insert(v);
        source = far.reachable;
        source.insert(v);
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    /// 0 = a, 5 = d, interiors 1-2 and 3-4.
    fn two_paths() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn min_separator_examples() {
        let (size, _) = min_vertex_separator(&path(4), &set(4, &[0]), &set(4, &[3])).unwrap().unwrap();
        assert_eq!(size, 1);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(min_vertex_separator(&k4, &set(4, &[0]), &set(4, &[1])).unwrap(), None);
        let (size, _) = min_vertex_separator(&two_paths(), &set(6, &[0]), &set(6, &[5])).unwrap().unwrap();
        assert_eq!(size, 2);
        assert_eq!(
            min_vertex_separator(&path(3), &set(3, &[0, 1]), &set(3, &[1])),
            Err(SeparatorError::Overlap(1))
        );
    }

    #[test]
    fn farthest_separator_examples() {
        let far = farthest_min_separator(&path(4), &set(4, &[0]), &set(4, &[3])).unwrap().unwrap();
        assert_eq!(far.cut.to_vec(), [2]);
        assert_eq!(far.reachable.to_vec(), [0, 1]);

        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let far = farthest_min_separator(&g, &set(4, &[0]), &set(4, &[3])).unwrap().unwrap();
        assert!(far.cut.is_empty());
        assert_eq!(far.reachable.to_vec(), [0, 1]);

        let far = farthest_min_separator(&two_paths(), &set(6, &[0]), &set(6, &[5])).unwrap().unwrap();
        assert_eq!(far.cut.to_vec(), [2, 4]);
    }

    #[test]
    fn isolating_cut_examples() {
        let g = path(4);
        let w = set(4, &[0, 3]);
        let fc = farthest_isolating_min_cut(&g, &w, 0).unwrap();
        assert_eq!((fc.reachable.to_vec(), fc.cut.to_vec()), (vec![0, 1], vec![2]));
        let fc = farthest_isolating_min_cut(&g, &w, 3).unwrap();
        assert_eq!((fc.reachable.to_vec(), fc.cut.to_vec()), (vec![2, 3], vec![1]));
        let iso = Graph::new(2);
        let fc = farthest_isolating_min_cut(&iso, &set(2, &[0, 1]), 0).unwrap();
        assert_eq!((fc.reachable.to_vec(), fc.cut.to_vec()), (vec![0], vec![]));
        assert_eq!(farthest_isolating_min_cut(&g, &w, 1), Err(SeparatorError::NotInW(1)));
    }

    #[test]
    fn important_separator_examples() {
        let g = path(4);
        for k in [1, 2] {
            let seps = enumerate_important_separators(&g, &set(4, &[0]), &set(4, &[3]), k).unwrap();
            assert_eq!(seps.iter().map(|s| s.cut.to_vec()).collect::<Vec<_>>(), [vec![2]]);
        }
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let seps = enumerate_important_separators(&star, &set(4, &[1]), &set(4, &[2]), 1).unwrap();
        assert_eq!(seps.iter().map(|s| s.cut.to_vec()).collect::<Vec<_>>(), [vec![0]]);
        assert!(enumerate_important_separators(&star, &set(4, &[1]), &set(4, &[2]), 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn hitting_set_examples() {
        let g = path(4);
        let (s, t) = (set(4, &[0]), set(4, &[3]));
        assert_eq!(hitting_set_for_important_separators(&g, &s, &t, 1, &set(4, &[])).unwrap().to_vec(), [2]);
        assert!(hitting_set_for_important_separators(&two_paths(), &set(6, &[0]), &set(6, &[5]), 1, &set(6, &[]))
            .unwrap()
            .is_empty());
        assert_eq!(
            hitting_set_for_important_separators(&g, &s, &t, 2, &set(4, &[2])),
            Err(SeparatorError::SeparatorInsideAvoided(vec![2]))
        );
    }
}
