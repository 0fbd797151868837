//! Canonical labelling of simple graphs by individualisation and refinement.
//!
//! The search tree is explored in full, so the leaves sharing the best
//! certificate are exactly one coset of the automorphism group. That coset
//! is what the switching-class signature minimises over.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;

/// Search-tree leaves visited before giving up.
pub const LEAF_CAP: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    order: usize,
    /// `labelings[i][v]` is the canonical position of vertex `v`.
    labelings: Vec<Vec<usize>>,
    /// Neighbourhood bitmask of each position in the canonical graph.
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labeling(&self) -> &[usize] {
        &self.labelings[0]
    }

    /// Every labelling that produces the canonical graph, one per automorphism.
    pub fn labelings(&self) -> &[Vec<usize>] {
        &self.labelings
    }

    pub fn automorphism_count(&self) -> usize {
        self.labelings.len()
    }

    /// Automorphisms of the canonical graph, as position permutations, identity first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let base = &self.labelings[0];
        let mut inv = vec![0; self.order];
        for (v, &p) in base.iter().enumerate() {
            inv[p] = v;
        }
        self.labelings.iter().map(|lab| (0..self.order).map(|p| lab[inv[p]]).collect()).collect()
    }

    /// Adjacency rows of the canonical graph.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Upper triangle of the canonical adjacency matrix, row by row, packed
    /// into bytes and written in hex. Equal strings mean isomorphic graphs.
    pub fn certificate_hex(&self) -> String {
        let mut bits = Vec::new();
        for p in 0..self.order {
            for q in p + 1..self.order {
                bits.push(self.rows[p] >> q & 1 == 1);
            }
        }
        let mut out = String::with_capacity(bits.len().div_ceil(4));
        for chunk in bits.chunks(4) {
            let nib = chunk.iter().enumerate().fold(0u8, |a, (i, &b)| a | (u8::from(b) << (3 - i)));
            out.push(char::from_digit(nib as u32, 16).unwrap());
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// The packed upper triangle when it fits in 128 bits (order at most 16).
    pub fn certificate_u128(&self) -> Option<u128> {
        if self.order > 16 {
            return None;
        }
        let mut key = 0u128;
        for p in 0..self.order {
            for q in p + 1..self.order {
                key = key << 1 | u128::from(self.rows[p] >> q & 1 == 1);
            }
        }
        Some(key)
    }
}

/// Canonical form of the underlying graph of `g`.
pub fn canonical_form(g: &MixedGraph) -> Result<CanonicalForm> {
    if g.order() > 64 {
        return Err(Error::CapExceeded(format!("canonical labelling needs order <= 64, got {}", g.order())));
    }
    canonical_form_masks(&g.adjacency_masks())
}

/// Canonical form of the simple graph with the given neighbourhood masks.
pub fn canonical_form_masks(masks: &[u64]) -> Result<CanonicalForm> {
    let n = masks.len();
    let mut search = Search { masks, best: None, labelings: Vec::new(), leaves: 0 };
    let cells = if n == 0 { Vec::new() } else { vec![(0..n).collect::<Vec<_>>()] };
    search.run(cells)?;
    Ok(CanonicalForm { order: n, labelings: search.labelings, rows: search.best.unwrap_or_default() })
}

struct Search<'a> {
    masks: &'a [u64],
    best: Option<Vec<u64>>,
    labelings: Vec<Vec<usize>>,
    leaves: usize,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<Vec<usize>>) -> Result<()> {
        refine(&mut cells, self.masks);
        if cells.iter().all(|c| c.len() == 1) {
            self.leaf(&cells);
            self.leaves += 1;
            if self.leaves > LEAF_CAP {
                return Err(Error::CapExceeded(format!("canonical labelling visited more than {LEAF_CAP} leaves")));
            }
            return Ok(());
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| cells[i].len())
            .expect("partition is not discrete");
        for &v in &cells[target] {
            let rest: Vec<usize> = cells[target].iter().copied().filter(|&w| w != v).collect();
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(rest);
            next.extend_from_slice(&cells[target + 1..]);
            self.run(next)?;
        }
        Ok(())
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = cells.len();
        let mut pos = vec![0; n];
        for (p, c) in cells.iter().enumerate() {
            pos[c[0]] = p;
        }
        let rows: Vec<u64> = cells
            .iter()
            .map(|c| {
                let mut m = self.masks[c[0]];
                let mut row = 0u64;
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    row |= 1 << pos[w];
                }
                row
            })
            .collect();
        match self.best.as_ref().map(|b| rows.cmp(b)) {
            None | Some(Ordering::Greater) => {
                self.best = Some(rows);
                self.labelings = vec![pos];
            }
            Some(Ordering::Equal) => self.labelings.push(pos),
            Some(Ordering::Less) => {}
        }
    }
}

/// Splits cells by neighbour counts into every cell until the partition is
/// equitable. Sub-cells are ordered by their count vectors, which keeps the
/// result independent of vertex names.
fn refine(cells: &mut Vec<Vec<usize>>, masks: &[u64]) {
    loop {
        let cell_masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (cell_masks.iter().map(|cm| (masks[v] & cm).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != cells.len();
        *cells = next;
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKind::Undirected as U;

    fn graph(n: usize, e: &[(usize, usize)]) -> MixedGraph {
        let e: Vec<_> = e.iter().map(|&(u, v)| (u, v, U)).collect();
        MixedGraph::build(n, &e).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(canonical_form(&c5).unwrap().automorphism_count(), 10);
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(canonical_form(&star).unwrap().automorphism_count(), 24);
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(canonical_form(&p4).unwrap().automorphism_count(), 2);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(canonical_form(&k4).unwrap().automorphism_count(), 24);
        let petersen = graph(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        );
        assert_eq!(canonical_form(&petersen).unwrap().automorphism_count(), 120);
    }

    #[test]
    fn relabelled_graphs_share_certificates() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (3, 5)]);
        let h = g.relabel(&[5, 3, 1, 0, 2, 4]);
        let (cg, ch) = (canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert_eq!(cg.certificate_hex(), ch.certificate_hex());
        assert_eq!(cg.certificate_u128(), ch.certificate_u128());
        let other = graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]);
        assert_ne!(canonical_form(&other).unwrap().certificate_hex(), cg.certificate_hex());
    }

    #[test]
    fn automorphisms_preserve_rows() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let cf = canonical_form(&g).unwrap();
        let rows = cf.rows();
        for a in cf.automorphisms() {
            for p in 0..6 {
                for q in 0..6 {
                    assert_eq!(rows[p] >> q & 1, rows[a[p]] >> a[q] & 1);
                }
            }
        }
        assert_eq!(cf.automorphisms()[0], (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn tiny_graphs() {
        assert_eq!(canonical_form(&MixedGraph::empty(0)).unwrap().automorphism_count(), 1);
        assert_eq!(canonical_form(&MixedGraph::empty(1)).unwrap().certificate_hex(), "0");
        assert_eq!(canonical_form(&MixedGraph::empty(3)).unwrap().automorphism_count(), 6);
    }
}
