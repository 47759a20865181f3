//! Simple undirected graphs with stable vertex ids.
//!
//! Vertex ids are `0..universe`. Transformations (deletion, torso, contraction)
//! never renumber: removed vertices simply leave the `present` set, so a
//! vertex set computed on a derived graph is meaningful on the original.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    present: VertexSet,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
            present: VertexSet::full(n),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.universe();
        if u >= n || !self.present.contains(u) {
            return Err(GraphError::VertexOutOfRange { vertex: u, n });
        }
        if v >= n || !self.present.contains(v) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.link(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn link(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Size of the id space, including vertices that were removed.
    #[inline]
    pub fn universe(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn vertices(&self) -> &VertexSet {
        &self.present
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.present.len()
    }

    #[inline]
    pub fn contains_vertex(&self, v: usize) -> bool {
        v < self.universe() && self.present.contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.present
            .iter()
            .flat_map(move |u| self.adj[u].iter().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.present.iter().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.universe())
    }

    /// Open neighbourhood `N(S)`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in set.iter() {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(set);
        out
    }

    /// Inner boundary `B(S) = N(V \ S)`: members of `S` with a neighbour outside `S`.
    pub fn inner_boundary(&self, set: &VertexSet) -> VertexSet {
        let outside = self.present.difference(set);
        self.neighborhood(&outside).intersection(set)
    }

    /// Vertices reachable from `from` in `G - removed`. Members of `from` that
    /// are themselves removed do not seed the search.
    pub fn reach(&self, from: &VertexSet, removed: &VertexSet) -> VertexSet {
        let mut seen = from.difference(removed);
        seen.intersect_with(&self.present);
        let mut queue: VecDeque<usize> = seen.iter().collect();
        while let Some(u) = queue.pop_front() {
            for v in self.adj[u].iter() {
                if !removed.contains(v) && seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Connected components of `G - removed`, ordered by their smallest vertex.
    pub fn connected_components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut left = self.present.difference(removed);
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let comp = self.reach(&VertexSet::singleton(self.universe(), v), removed);
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Component label for every present vertex of `G - removed`
    /// (`usize::MAX` for removed or absent vertices).
    pub fn component_labels(&self, removed: &VertexSet) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.universe()];
        for (i, comp) in self.connected_components(removed).iter().enumerate() {
            for v in comp.iter() {
                labels[v] = i;
            }
        }
        labels
    }

    /// `G - S`.
    pub fn remove_vertices(&self, set: &VertexSet) -> Graph {
        let mut g = self.clone();
        for v in set.iter() {
            if !g.present.contains(v) {
                continue;
            }
            for u in self.adj[v].iter() {
                g.adj[u].remove(v);
            }
            g.adj[v].clear();
            g.present.remove(v);
        }
        g
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.remove_vertices(&VertexSet::singleton(self.universe(), v))
    }

    /// For each component `K` of `G[z]`, the vertices outside `z` adjacent to `K`
    /// (the `φ`-image shared by every member of `K`), paired with `K`.
    pub(crate) fn z_attachments(&self, z: &VertexSet) -> Vec<(VertexSet, VertexSet)> {
        let outside = self.present.difference(z);
        self.connected_components(&outside)
            .into_iter()
            .map(|comp| {
                let attach = self.neighborhood(&comp);
                (comp, attach)
            })
            .collect()
    }

    /// Torso of the graph on `V \ z`: `u, v` become adjacent iff they are
    /// joined by a path whose internal vertices all lie in `z`.
    pub fn torso(&self, z: &VertexSet) -> Graph {
        let attachments = self.z_attachments(z);
        let mut g = self.remove_vertices(z);
        for (_, attach) in &attachments {
            let members = attach.to_vec();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    g.link(u, v);
                }
            }
        }
        g
    }

    /// Merges every `v` with `target[v] = Some(w)` into `w`, dropping loops and
    /// parallel edges. Targets must be present and not themselves merged.
    pub fn contract(&self, target: &[Option<usize>]) -> Graph {
        let image = |v: usize| target[v].unwrap_or(v);
        let mut g = Graph {
            adj: vec![VertexSet::new(self.universe()); self.universe()],
            present: self.present.clone(),
        };
        for (v, t) in target.iter().enumerate() {
            if t.is_some() {
                g.present.remove(v);
            }
        }
        for (u, v) in self.edges() {
            let (a, b) = (image(u), image(v));
            if a != b {
                g.link(a, b);
            }
        }
        g
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.present)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { .. })));
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn components_of_path_minus_cut_vertex() {
        let g = path(3);
        let comps = g.connected_components(&VertexSet::from_iter(3, [1]));
        assert_eq!(comps.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), [vec![0], vec![2]]);
    }

    #[test]
    fn components_with_everything_removed() {
        let g = path(4);
        assert!(g.connected_components(&VertexSet::full(4)).is_empty());
    }

    #[test]
    fn triangle_is_one_component() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let comps = g.connected_components(&g.empty_set());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 3);
    }

    #[test]
    fn torso_of_path_middle() {
        let g = path(3).torso(&VertexSet::from_iter(3, [1]));
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 2)]);
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn torso_of_star_center_is_triangle() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = g.torso(&VertexSet::from_iter(4, [0]));
        assert_eq!(t.edges().collect::<Vec<_>>(), [(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn inner_boundary_and_neighborhood() {
        let g = path(5);
        let s = VertexSet::from_iter(5, [0, 1, 2]);
        assert_eq!(g.neighborhood(&s).to_vec(), [3]);
        assert_eq!(g.inner_boundary(&s).to_vec(), [2]);
    }

    #[test]
    fn contract_merges_and_drops_loops() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = g.contract(&[None, Some(0), Some(0)]);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 0);
    }
}
