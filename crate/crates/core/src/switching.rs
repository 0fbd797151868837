//! Cycle weights, four-way switching and switching isomorphism.
//!
//! A connected mixed graph is determined up to switching by the weights of
//! its fundamental cycles with respect to a fixed spanning tree.

use std::collections::VecDeque;

use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{walk_weight, CycleDescriptor, MixedGraph};
use crate::hermitian::Spectrum;
use crate::jacobi::symmetric_eigenvalues;
use crate::unit::Weight;

/// Weight of `c` in `g`, along its stored direction.
pub fn cycle_weight(g: &MixedGraph, c: &CycleDescriptor) -> Result<Weight> {
    if c.vertices().iter().any(|&v| v >= g.order()) {
        return Err(Error::NotACycle);
    }
    walk_weight(g, c.vertices()).ok_or(Error::NotACycle)
}

/// The switched graph with entries `conj(d_u) h_uv d_v`.
pub fn apply_switching(g: &MixedGraph, d: &[Weight]) -> Result<MixedGraph> {
    if d.len() != g.order() {
        return Err(Error::SizeMismatch(format!("{} switching values for {} vertices", d.len(), g.order())));
    }
    let entries: Vec<(usize, usize, Weight)> = g
        .edges()
        .iter()
        .map(|e| {
            let h = g.entry(e.u, e.v).expect("edge entry");
            (e.u, e.v, d[e.u].conj() * h * d[e.v])
        })
        .collect();
    MixedGraph::from_entries(g.order(), &entries)
}

/// BFS spanning forest (ascending neighbour order, roots at the smallest
/// vertex of each component) and its fundamental cycles.
#[derive(Clone, Debug)]
pub(crate) struct CycleBasis {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    /// Non-tree edges `(a, b)` with `a < b`, sorted.
    non_tree: Vec<(usize, usize)>,
}

impl CycleBasis {
    pub(crate) fn new(adj: &[Vec<usize>]) -> CycleBasis {
        let n = adj.len();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let mut nb = adj[u].clone();
                nb.sort_unstable();
                for w in nb {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = Some(u);
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut non_tree = Vec::new();
        for (a, list) in adj.iter().enumerate() {
            for &b in list {
                if a < b && parent[b] != Some(a) && parent[a] != Some(b) {
                    non_tree.push((a, b));
                }
            }
        }
        non_tree.sort_unstable();
        CycleBasis { parent, depth, non_tree }
    }

    pub(crate) fn from_masks(masks: &[u64]) -> CycleBasis {
        let adj: Vec<Vec<usize>> = masks
            .iter()
            .map(|&m| (0..64).filter(|&w| m >> w & 1 == 1).collect())
            .collect();
        CycleBasis::new(&adj)
    }

    pub(crate) fn len(&self) -> usize {
        self.non_tree.len()
    }

    pub(crate) fn non_tree(&self) -> &[(usize, usize)] {
        &self.non_tree
    }

    pub(crate) fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p.min(v), p.max(v)))).collect();
        out.sort_unstable();
        out
    }

    /// Closed walk `a, b, ..., back towards a` through non-tree edge `j`.
    pub(crate) fn cycle(&self, j: usize) -> Vec<usize> {
        let (a, b) = self.non_tree[j];
        let (mut x, mut y) = (b, a);
        let mut up = vec![];
        let mut down = vec![];
        while x != y {
            if self.depth[x] >= self.depth[y] {
                up.push(x);
                x = self.parent[x].expect("non-root");
            } else {
                down.push(y);
                y = self.parent[y].expect("non-root");
            }
        }
        let mut walk = vec![a];
        walk.extend(up);
        walk.push(x);
        walk.extend(down.into_iter().rev());
        walk.pop();
        walk
    }

    pub(crate) fn cycles(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|j| self.cycle(j)).collect()
    }

    /// Net number of forward traversals of each non-tree edge along a closed walk.
    pub(crate) fn coefficients(&self, walk: &[usize]) -> Vec<i8> {
        let mut c = vec![0i8; self.len()];
        let l = walk.len();
        for k in 0..l {
            let (u, v) = (walk[k], walk[(k + 1) % l]);
            if let Ok(j) = self.non_tree.binary_search(&(u.min(v), u.max(v))) {
                c[j] += if u < v { 1 } else { -1 };
            }
        }
        c
    }
}

/// Fundamental-cycle data of a connected mixed graph.
#[derive(Clone, Debug, Serialize)]
pub struct WeightSignature {
    pub tree_edges: Vec<(usize, usize)>,
    pub cycles: Vec<Vec<usize>>,
    pub weights: Vec<Weight>,
}

pub fn weight_signature(g: &MixedGraph) -> Result<WeightSignature> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let basis = graph_basis(g);
    let cycles = basis.cycles();
    let weights = cycles.iter().map(|c| walk_weight(g, c).expect("fundamental cycle")).collect();
    Ok(WeightSignature { tree_edges: basis.tree_edges(), cycles, weights })
}

fn graph_basis(g: &MixedGraph) -> CycleBasis {
    let adj: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect();
    CycleBasis::new(&adj)
}

/// How `g1` maps onto `g2`: vertex `v` goes to `isomorphism[v]`, after
/// taking the converse of `g1` when `conjugated` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchingWitness {
    pub isomorphism: Vec<usize>,
    pub conjugated: bool,
}

impl SwitchingWitness {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialises")
    }
}

/// Backtracking search over isomorphisms of the underlying graphs; each
/// complete map is tested against the fundamental cycles of `g2`.
pub fn switching_isomorphic(g1: &MixedGraph, g2: &MixedGraph) -> Option<SwitchingWitness> {
    let n = g1.order();
    if n != g2.order() || g1.size() != g2.size() || g1.degree_sequence() != g2.degree_sequence() {
        return None;
    }
    let basis = graph_basis(g2);
    let cycles = basis.cycles();
    let target: Vec<Weight> = cycles.iter().map(|c| walk_weight(g2, c).unwrap()).collect();
    // Visit g1 in BFS order so each vertex after a component root has a placed neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g1.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut iso = IsoSearch { g1, g2, order, map: vec![usize::MAX; n], used: vec![false; n], cycles, target, found: None };
    iso.extend(0);
    iso.found
}

struct IsoSearch<'a> {
    g1: &'a MixedGraph,
    g2: &'a MixedGraph,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    cycles: Vec<Vec<usize>>,
    target: Vec<Weight>,
    found: Option<SwitchingWitness>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) {
        if self.found.is_some() {
            return;
        }
        if depth == self.order.len() {
            self.check();
            return;
        }
        let v = self.order[depth];
        for x in 0..self.g2.order() {
            if self.used[x] || self.g2.degree(x) != self.g1.degree(v) {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| self.g1.adjacent(u, v) == self.g2.adjacent(self.map[u], x));
            if !consistent {
                continue;
            }
            self.map[v] = x;
            self.used[x] = true;
            self.extend(depth + 1);
            self.used[x] = false;
            self.map[v] = usize::MAX;
            if self.found.is_some() {
                return;
            }
        }
    }

    fn check(&mut self) {
        let mut inv = vec![0; self.map.len()];
        for (v, &x) in self.map.iter().enumerate() {
            inv[x] = v;
        }
        let pulled: Vec<Weight> = self
            .cycles
            .iter()
            .map(|c| {
                let back: Vec<usize> = c.iter().map(|&x| inv[x]).collect();
                walk_weight(self.g1, &back).expect("isomorphism maps cycles to cycles")
            })
            .collect();
        if pulled == self.target {
            self.found = Some(SwitchingWitness { isomorphism: self.map.clone(), conjugated: false });
        } else if pulled.iter().zip(&self.target).all(|(a, b)| a.conj() == *b) {
            self.found = Some(SwitchingWitness { isomorphism: self.map.clone(), conjugated: true });
        }
    }
}

/// A signed graph: a simple graph with edge signs in `{+1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedGraph {
    pub order: usize,
    /// `(u, v, sign)` with `u < v`.
    pub edges: Vec<(usize, usize, i8)>,
}

impl SignedGraph {
    pub fn adjacency(&self) -> Vec<f64> {
        let n = self.order;
        let mut a = vec![0.0; n * n];
        for &(u, v, s) in &self.edges {
            a[u * n + v] = f64::from(s);
            a[v * n + u] = f64::from(s);
        }
        a
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Ok(Spectrum::from_values(symmetric_eigenvalues(&self.adjacency(), self.order)?))
    }

    pub fn negative_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.2 < 0).count()
    }
}

/// Tree edges signed `+1`, each non-tree edge signed by the weight of its
/// fundamental cycle. Cospectral with `g` when `g` has no imaginary cycle.
pub fn to_signed_graph(g: &MixedGraph) -> Result<SignedGraph> {
    let sig = weight_signature(g)?;
    if sig.weights.iter().any(|w| w.is_imaginary()) {
        return Err(Error::ImaginaryCyclePresent);
    }
    let basis = graph_basis(g);
    let mut edges: Vec<(usize, usize, i8)> = sig.tree_edges.iter().map(|&(u, v)| (u, v, 1)).collect();
    for (&(a, b), w) in basis.non_tree().iter().zip(&sig.weights) {
        edges.push((a, b, if *w == Weight::ONE { 1 } else { -1 }));
    }
    edges.sort_unstable();
    Ok(SignedGraph { order: g.order(), edges })
}

/// Exponents `k` of `i^k` on the fundamental cycles of the canonical graph,
/// minimised over all canonical labellings and conjugation.
pub(crate) fn canonical_weights(g: &MixedGraph, cf: &CanonicalForm) -> Vec<u8> {
    let basis = CycleBasis::from_masks(cf.rows());
    let cycles = basis.cycles();
    let mut best: Option<Vec<u8>> = None;
    for lab in cf.labelings() {
        let mut inv = vec![0; lab.len()];
        for (v, &p) in lab.iter().enumerate() {
            inv[p] = v;
        }
        let e: Vec<u8> = cycles
            .iter()
            .map(|c| {
                let back: Vec<usize> = c.iter().map(|&p| inv[p]).collect();
                walk_weight(g, &back).expect("labelling preserves adjacency").exponent()
            })
            .collect();
        let conj: Vec<u8> = e.iter().map(|&k| (4 - k) % 4).collect();
        for cand in [e, conj] {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn encode_signature(order: usize, cert_hex: &str, weights: &[u8]) -> String {
    let digits: String = weights.iter().map(|&k| char::from(b'0' + k)).collect();
    format!("{order}:{cert_hex}:{digits}")
}

/// A string equal for two connected graphs exactly when they are switching
/// isomorphic: order, canonical underlying graph, and the least weight vector
/// over its automorphisms and conjugation.
pub fn canonical_signature(g: &MixedGraph) -> Result<String> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let cf = canonical_form(g)?;
    Ok(encode_signature(g.order(), &cf.certificate_hex(), &canonical_weights(g, &cf)))
}

/// Switching values in `Z4` (as exponents) that remove every `-1` gain, where
/// `gain(u, v)` is the exponent of the entry on the edge `u -> v`. Vertex 0 of
/// each component is fixed to 0.
pub(crate) fn representable_switch(adj: &[Vec<usize>], gain: impl Fn(usize, usize) -> u8) -> Option<Vec<u8>> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut d = vec![u8::MAX; n];
    fn go(k: usize, order: &[usize], adj: &[Vec<usize>], d: &mut [u8], gain: &dyn Fn(usize, usize) -> u8) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let first = adj[v].iter().all(|&w| d[w] == u8::MAX);
        let choices: &[u8] = if first { &[0] } else { &[0, 1, 2, 3] };
        for &x in choices {
            let ok = adj[v].iter().all(|&w| d[w] == u8::MAX || (gain(w, v) + 4 - d[w] + x) % 4 != 2);
            if ok {
                d[v] = x;
                if go(k + 1, order, adj, d, gain) {
                    return true;
                }
                d[v] = u8::MAX;
            }
        }
        false
    }
    if go(0, &order, adj, &mut d, &gain) {
        Some(d)
    } else {
        None
    }
}
