//! Unit-capacity vertex flow on the split graph.
//!
//! Each vertex `v` becomes `in(v) -> out(v)`. Ordinary vertices get capacity 1
//! on that arc; source and sink vertices get an unbounded one, so they can
//! never be cut. Graph edges become unbounded arcs in both directions.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::set::VertexSet;

const INF: u32 = u32::MAX / 2;

/// Residual network plus the current integral flow value.
pub(crate) struct FlowState {
    n: usize,
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
    pub value: usize,
}

const NIL: usize = usize::MAX;

impl FlowState {
    #[inline]
    fn node_in(v: usize) -> usize {
        2 * v
    }

    #[inline]
    fn node_out(v: usize) -> usize {
        2 * v + 1
    }

    fn source(&self) -> usize {
        2 * self.n
    }

    fn sink(&self) -> usize {
        2 * self.n + 1
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u32) {
        for (a, b, c) in [(u, v, cap), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// Builds the network for `G - removed` with the given terminal sets.
    /// Returns `None` when some source is adjacent to some sink, in which
    /// case no vertex separator exists.
    pub fn build(g: &Graph, sources: &VertexSet, sinks: &VertexSet, removed: &VertexSet) -> Option<FlowState> {
        let n = g.universe();
        let alive = g.vertices().difference(removed);
        let sources = sources.intersection(&alive);
        let sinks = sinks.intersection(&alive);
        for s in sources.iter() {
            if !g.neighbors(s).is_disjoint(&sinks) {
                return None;
            }
        }
        let mut st = FlowState {
            n,
            head: vec![NIL; 2 * n + 2],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
            value: 0,
        };
        for v in alive.iter() {
            let c = if sources.contains(v) || sinks.contains(v) { INF } else { 1 };
            st.add_arc(Self::node_in(v), Self::node_out(v), c);
            for u in g.neighbors(v).iter() {
                if alive.contains(u) {
                    st.add_arc(Self::node_out(v), Self::node_in(u), INF);
                }
            }
        }
        let (src, snk) = (st.source(), st.sink());
        for s in sources.iter() {
            st.add_arc(src, Self::node_in(s), INF);
        }
        for t in sinks.iter() {
            st.add_arc(Self::node_out(t), snk, INF);
        }
        Some(st)
    }

    /// One BFS augmentation of a single unit. Returns `false` when no
    /// augmenting path remains.
    fn augment(&mut self) -> bool {
        let (src, snk) = (self.source(), self.sink());
        let mut via = vec![NIL; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        'bfs: while let Some(u) = queue.pop_front() {
            let mut a = self.head[u];
            while a != NIL {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = a;
                    if v == snk {
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
                a = self.next[a];
            }
        }
        if !seen[snk] {
            return false;
        }
        let mut v = snk;
        while v != src {
            let a = via[v];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            v = self.to[a ^ 1];
        }
        true
    }

    /// Augments until maximum, or until the value exceeds `limit`.
    /// Returns `true` iff the flow is maximum and at most `limit`.
    pub fn run(&mut self, limit: usize) -> bool {
        while self.augment() {
            self.value += 1;
            if self.value > limit {
                return false;
            }
        }
        true
    }

    /// Original vertices whose `out` node can still reach the sink while the
    /// `in` node cannot: the cut closest to the sink, i.e. farthest from the source.
    pub fn sink_side_cut(&self) -> VertexSet {
        let snk = self.sink();
        let mut reaches = vec![false; self.head.len()];
        reaches[snk] = true;
        let mut queue = VecDeque::from([snk]);
        while let Some(y) = queue.pop_front() {
            let mut b = self.head[y];
            while b != NIL {
                let x = self.to[b];
                if self.cap[b ^ 1] > 0 && !reaches[x] {
                    reaches[x] = true;
                    queue.push_back(x);
                }
                b = self.next[b];
            }
        }
        VertexSet::from_iter(
            self.n,
            (0..self.n).filter(|&v| !reaches[Self::node_in(v)] && reaches[Self::node_out(v)]),
        )
    }

    /// The cut closest to the source: `in` reachable from the source in the
    /// residual network, `out` not.
    pub fn source_side_cut(&self) -> VertexSet {
        let src = self.source();
        let mut seen = vec![false; self.head.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let mut a = self.head[u];
            while a != NIL {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
                a = self.next[a];
            }
        }
        VertexSet::from_iter(
            self.n,
            (0..self.n).filter(|&v| seen[Self::node_in(v)] && !seen[Self::node_out(v)]),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_has_unit_flow() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = VertexSet::singleton(4, 0);
        let t = VertexSet::singleton(4, 3);
        let mut f = FlowState::build(&g, &s, &t, &g.empty_set()).unwrap();
        assert!(f.run(10));
        assert_eq!(f.value, 1);
        assert_eq!(f.source_side_cut().to_vec(), [1]);
        assert_eq!(f.sink_side_cut().to_vec(), [2]);
    }

    #[test]
    fn limit_stops_early() {
        // two disjoint 0 -> 5 paths
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
        let s = VertexSet::singleton(6, 0);
        let t = VertexSet::singleton(6, 5);
        let mut f = FlowState::build(&g, &s, &t, &g.empty_set()).unwrap();
        assert!(!f.run(1));
        let mut f = FlowState::build(&g, &s, &t, &g.empty_set()).unwrap();
        assert!(f.run(2));
        assert_eq!(f.value, 2);
    }

    #[test]
    fn adjacent_terminals_have_no_network() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(FlowState::build(&g, &VertexSet::singleton(2, 0), &VertexSet::singleton(2, 1), &g.empty_set()).is_none());
    }
}
