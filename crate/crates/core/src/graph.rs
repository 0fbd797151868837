//! Value-semantic mixed graphs and structural queries on their underlying graphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unit::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Undirected,
    /// Directed from `u` to `v`.
    Arc,
}

/// An edge as stored in a [`MixedGraph`]. Undirected edges keep `u < v`;
/// arcs keep their direction `u -> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn undirected(u: usize, v: usize) -> Edge {
        Edge { u: u.min(v), v: u.max(v), kind: EdgeKind::Undirected }
    }

    pub fn arc(from: usize, to: usize) -> Edge {
        Edge { u: from, v: to, kind: EdgeKind::Arc }
    }

    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// A simple graph with some edges oriented into arcs.
///
/// Vertices are `0..order`. Edges are kept sorted by their unordered pair so
/// that two graphs with the same vertex labelling compare equal exactly when
/// they have the same edges and orientations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    order: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    entry: Vec<Option<Weight>>,
}

impl MixedGraph {
    pub fn build(order: usize, edges: &[(usize, usize, EdgeKind)]) -> Result<MixedGraph> {
        let list = edges
            .iter()
            .map(|&(u, v, kind)| match kind {
                EdgeKind::Undirected => Edge::undirected(u, v),
                EdgeKind::Arc => Edge::arc(u, v),
            })
            .collect::<Vec<_>>();
        MixedGraph::from_edges(order, list)
    }

    pub fn from_edges(order: usize, mut edges: Vec<Edge>) -> Result<MixedGraph> {
        let mut entry = vec![None; order * order];
        let mut adj = vec![Vec::new(); order];
        for e in &edges {
            for index in [e.u, e.v] {
                if index >= order {
                    return Err(Error::IndexOutOfRange { index, order });
                }
            }
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u));
            }
            if entry[e.u * order + e.v].is_some() {
                let (a, b) = e.key();
                return Err(Error::DuplicateEdge(a, b));
            }
            let w = match e.kind {
                EdgeKind::Undirected => Weight::ONE,
                EdgeKind::Arc => Weight::I,
            };
            entry[e.u * order + e.v] = Some(w);
            entry[e.v * order + e.u] = Some(w.conj());
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        edges.sort_by_key(|e| e.key());
        Ok(MixedGraph { order, edges, adj, entry })
    }

    /// Builds a graph from Hermitian entries on the upper triangle.
    /// An entry of `-1` has no mixed-graph encoding.
    pub fn from_entries(order: usize, entries: &[(usize, usize, Weight)]) -> Result<MixedGraph> {
        let mut edges = Vec::with_capacity(entries.len());
        for &(u, v, w) in entries {
            let e = match w.exponent() {
                0 => Edge::undirected(u, v),
                1 => Edge::arc(u, v),
                3 => Edge::arc(v, u),
                _ => return Err(Error::NotRepresentable(u.min(v), u.max(v))),
            };
            edges.push(e);
        }
        MixedGraph::from_edges(order, edges)
    }

    pub fn empty(order: usize) -> MixedGraph {
        MixedGraph::from_edges(order, Vec::new()).expect("edgeless graph is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.entry[u * self.order + v].is_some()
    }

    /// The Hermitian entry `h_uv` as a unit, or `None` for non-adjacent pairs.
    pub fn entry(&self, u: usize, v: usize) -> Option<Weight> {
        self.entry[u * self.order + v]
    }

    pub fn underlying(&self) -> MixedGraph {
        let edges = self.edges.iter().map(|e| Edge::undirected(e.u, e.v)).collect();
        MixedGraph::from_edges(self.order, edges).expect("underlying graph of a valid graph is valid")
    }

    pub fn converse(&self) -> MixedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| match e.kind {
                EdgeKind::Undirected => *e,
                EdgeKind::Arc => Edge::arc(e.v, e.u),
            })
            .collect();
        MixedGraph::from_edges(self.order, edges).expect("converse of a valid graph is valid")
    }

    /// The subgraph induced on `vs`, relabelled densely in the order given.
    pub fn induced_subgraph(&self, vs: &[usize]) -> MixedGraph {
        let mut label = vec![usize::MAX; self.order];
        for (i, &v) in vs.iter().enumerate() {
            label[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| label[e.u] != usize::MAX && label[e.v] != usize::MAX)
            .map(|e| match e.kind {
                EdgeKind::Undirected => Edge::undirected(label[e.u], label[e.v]),
                EdgeKind::Arc => Edge::arc(label[e.u], label[e.v]),
            })
            .collect();
        MixedGraph::from_edges(vs.len(), edges).expect("induced subgraph of a valid graph is valid")
    }

    /// `self - v`, keeping the remaining vertices in increasing order.
    pub fn remove_vertex(&self, v: usize) -> MixedGraph {
        let keep: Vec<usize> = (0..self.order).filter(|&x| x != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> MixedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| match e.kind {
                EdgeKind::Undirected => Edge::undirected(perm[e.u], perm[e.v]),
                EdgeKind::Arc => Edge::arc(perm[e.u], perm[e.v]),
            })
            .collect();
        MixedGraph::from_edges(self.order, edges).expect("relabelling by a permutation is valid")
    }

    /// Adds a pendant path of `len` new vertices hanging from `at`.
    pub fn attach_path(&self, at: usize, len: usize) -> MixedGraph {
        let mut edges = self.edges.clone();
        let mut prev = at;
        for j in 0..len {
            let next = self.order + j;
            edges.push(Edge::undirected(prev, next));
            prev = next;
        }
        MixedGraph::from_edges(self.order + len, edges).expect("attaching a path keeps the graph simple")
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Cyclomatic number `m - n + c`.
    pub fn cyclomatic_number(&self) -> usize {
        self.size() + self.components().len() - self.order
    }

    fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.order == 0 || self.bfs(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for s in 0..self.order {
            for d in self.bfs(s) {
                if d == usize::MAX {
                    return Err(Error::Disconnected);
                }
                best = best.max(d);
            }
        }
        Ok(best)
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.order {
            let mut dist = vec![usize::MAX; self.order];
            let mut parent = vec![usize::MAX; self.order];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Every cycle of the underlying graph of length at most `max_len`,
    /// each reported once.
    pub fn enumerate_cycles(&self, max_len: Option<usize>) -> Vec<CycleDescriptor> {
        let cap = max_len.unwrap_or(self.order).min(self.order);
        let mut out = Vec::new();
        let mut on_path = vec![false; self.order];
        for start in 0..self.order {
            let mut path = vec![start];
            on_path[start] = true;
            self.extend_cycles(start, cap, &mut path, &mut on_path, &mut out);
            on_path[start] = false;
        }
        out
    }

    fn extend_cycles(
        &self,
        start: usize,
        cap: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<CycleDescriptor>,
    ) {
        let last = *path.last().unwrap();
        for &w in &self.adj[last] {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(CycleDescriptor { vertices: path.clone() });
            } else if w > start && !on_path[w] && path.len() < cap {
                on_path[w] = true;
                path.push(w);
                self.extend_cycles(start, cap, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    /// Bitmask of each vertex's neighbourhood. Only for graphs of order at most 64.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.order <= 64, "bitmask adjacency needs order <= 64");
        self.adj.iter().map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w))).collect()
    }

    /// True iff no 4-cycle of the underlying graph has weight -1.
    pub fn is_negative_c4_free(&self) -> bool {
        self.enumerate_cycles(Some(4))
            .iter()
            .filter(|c| c.len() == 4)
            .all(|c| c.weight_in(self) != Weight::NEG_ONE)
    }
}

/// A simple cycle `v_1 v_2 ... v_l v_1` of the underlying graph.
///
/// The stored rotation starts at the smallest vertex and runs towards its
/// smaller cycle-neighbour; the weight is taken along this direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleDescriptor {
    vertices: Vec<usize>,
}

impl CycleDescriptor {
    /// Canonicalises a cyclic vertex sequence. Rejects sequences that are
    /// too short or repeat a vertex; adjacency is not checked here.
    pub fn new(vertices: &[usize]) -> Result<CycleDescriptor> {
        let l = vertices.len();
        if l < 3 {
            return Err(Error::NotACycle);
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != l {
            return Err(Error::NotACycle);
        }
        let pos = (0..l).min_by_key(|&i| vertices[i]).unwrap();
        let fwd: Vec<usize> = (0..l).map(|j| vertices[(pos + j) % l]).collect();
        let bwd: Vec<usize> = (0..l).map(|j| vertices[(pos + l - j) % l]).collect();
        Ok(CycleDescriptor { vertices: if fwd[1] < bwd[1] { fwd } else { bwd } })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub(crate) fn weight_in(&self, g: &MixedGraph) -> Weight {
        walk_weight(g, &self.vertices).expect("cycle from enumeration lies in the graph")
    }
}

/// Product of Hermitian entries along the closed walk `vs[0] vs[1] ... vs[0]`.
pub(crate) fn walk_weight(g: &MixedGraph, vs: &[usize]) -> Option<Weight> {
    let l = vs.len();
    let mut w = Weight::ONE;
    for j in 0..l {
        w = w * g.entry(vs[j], vs[(j + 1) % l])?;
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeKind::{Arc, Undirected as U};

    fn cycle(n: usize) -> MixedGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, U)).collect();
        MixedGraph::build(n, &e).unwrap()
    }

    fn path(n: usize) -> MixedGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i, U)).collect();
        MixedGraph::build(n, &e).unwrap()
    }

    #[test]
    fn build_examples() {
        let c3 = MixedGraph::build(3, &[(0, 1, U), (1, 2, U), (2, 0, U)]).unwrap();
        assert_eq!(c3.size(), 3);
        let arc = MixedGraph::build(2, &[(0, 1, Arc)]).unwrap();
        assert_eq!(arc.entry(0, 1), Some(Weight::I));
        assert_eq!(arc.entry(1, 0), Some(Weight::NEG_I));
        assert_eq!(MixedGraph::build(3, &[(0, 1, U), (0, 1, Arc)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(MixedGraph::build(3, &[(1, 0, U), (0, 1, U)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(MixedGraph::build(3, &[(1, 1, U)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            MixedGraph::build(3, &[(0, 3, U)]),
            Err(Error::IndexOutOfRange { index: 3, order: 3 })
        );
    }

    #[test]
    fn underlying_and_converse() {
        let arc = MixedGraph::build(2, &[(0, 1, Arc)]).unwrap();
        assert_eq!(arc.underlying(), MixedGraph::build(2, &[(0, 1, U)]).unwrap());
        assert_eq!(arc.converse(), MixedGraph::build(2, &[(1, 0, Arc)]).unwrap());
        assert_eq!(cycle(4).converse(), cycle(4));
        assert_eq!(MixedGraph::empty(0).underlying(), MixedGraph::empty(0));
        let c4p = MixedGraph::build(4, &[(0, 1, Arc), (1, 2, U), (2, 3, U), (3, 0, U)]).unwrap();
        assert_eq!(c4p.underlying(), cycle(4));
        assert_eq!(c4p.converse().converse(), c4p);
    }

    #[test]
    fn induced_subgraphs() {
        assert_eq!(cycle(5).induced_subgraph(&[0, 1, 2]), path(3));
        let c4p = MixedGraph::build(4, &[(0, 1, Arc), (1, 2, U), (2, 3, U), (3, 0, U)]).unwrap();
        assert_eq!(c4p.induced_subgraph(&[0, 1]), MixedGraph::build(2, &[(0, 1, Arc)]).unwrap());
        assert_eq!(c4p.induced_subgraph(&[0, 1, 2, 3]), c4p);
    }

    #[test]
    fn structural_queries() {
        let star = MixedGraph::build(5, &[(0, 1, U), (0, 2, U), (0, 3, U), (0, 4, U)]).unwrap();
        assert_eq!(star.max_degree(), 4);
        assert_eq!(path(5).diameter(), Ok(4));
        assert_eq!(cycle(6).girth(), Some(6));
        assert_eq!(path(6).girth(), None);
        assert_eq!(MixedGraph::empty(2).diameter(), Err(Error::Disconnected));
        assert!(!MixedGraph::empty(2).is_connected());
        assert_eq!(cycle(5).cyclomatic_number(), 1);
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(cycle(4).enumerate_cycles(None).len(), 1);
        let k4: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j, U))).collect();
        let k4 = MixedGraph::build(4, &k4).unwrap();
        let cycles = k4.enumerate_cycles(None);
        assert_eq!(cycles.len(), 7);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert!(path(7).enumerate_cycles(None).is_empty());
        assert_eq!(k4.enumerate_cycles(Some(3)).len(), 4);
    }

    #[test]
    fn negative_quadrangles() {
        let c4pp = MixedGraph::build(4, &[(0, 1, Arc), (1, 2, Arc), (2, 3, U), (3, 0, U)]).unwrap();
        let c4p = MixedGraph::build(4, &[(0, 1, Arc), (1, 2, U), (2, 3, U), (3, 0, U)]).unwrap();
        assert!(!c4pp.is_negative_c4_free());
        assert!(cycle(4).is_negative_c4_free());
        assert!(c4p.is_negative_c4_free());
        assert!(!c4pp.converse().is_negative_c4_free());
    }

    #[test]
    fn cycle_descriptor_canonical() {
        let a = CycleDescriptor::new(&[2, 0, 1]).unwrap();
        let b = CycleDescriptor::new(&[0, 2, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices(), &[0, 1, 2]);
        assert_eq!(CycleDescriptor::new(&[0, 1]), Err(Error::NotACycle));
        assert_eq!(CycleDescriptor::new(&[0, 1, 0]), Err(Error::NotACycle));
    }
}
