//! Seeded random mixed graphs for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, MixedGraph};

/// Environment variable overriding the default seed of 0.
pub const SEED_VAR: &str = "MGSPEC_SEED";

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_edge<R: Rng>(rng: &mut R, u: usize, v: usize) -> Edge {
    match rng.gen_range(0..3) {
        0 => Edge::undirected(u, v),
        1 => Edge::arc(u, v),
        _ => Edge::arc(v, u),
    }
}

/// Each pair is joined with probability `density`; a joined pair is an
/// undirected edge or an arc in either direction with equal odds.
pub fn random_mixed_graph<R: Rng>(rng: &mut R, order: usize, density: f64) -> MixedGraph {
    let mut edges = Vec::new();
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen_bool(density) {
                edges.push(random_edge(rng, u, v));
            }
        }
    }
    MixedGraph::from_edges(order, edges).expect("pairs are distinct")
}

/// A random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_mixed_graph<R: Rng>(rng: &mut R, order: usize, density: f64) -> MixedGraph {
    let mut perm: Vec<usize> = (0..order).collect();
    perm.shuffle(rng);
    let mut joined = vec![false; order * order];
    let mut edges = Vec::new();
    for i in 1..order {
        let (u, v) = (perm[rng.gen_range(0..i)], perm[i]);
        joined[u * order + v] = true;
        joined[v * order + u] = true;
        edges.push(random_edge(rng, u, v));
    }
    for u in 0..order {
        for v in u + 1..order {
            if !joined[u * order + v] && rng.gen_bool(density) {
                edges.push(random_edge(rng, u, v));
            }
        }
    }
    MixedGraph::from_edges(order, edges).expect("pairs are distinct")
}

/// A nonempty random vertex subset, sorted.
pub fn random_subset<R: Rng>(rng: &mut R, order: usize) -> Vec<usize> {
    loop {
        let vs: Vec<usize> = (0..order).filter(|_| rng.gen_bool(0.5)).collect();
        if !vs.is_empty() {
            return vs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graphs_are_connected() {
        let mut r = rng(7);
        for n in 1..10 {
            assert!(random_connected_mixed_graph(&mut r, n, 0.2).is_connected());
        }
    }

    #[test]
    fn seeded_output_repeats() {
        let a = random_mixed_graph(&mut rng(3), 8, 0.5);
        let b = random_mixed_graph(&mut rng(3), 8, 0.5);
        assert_eq!(a.edges(), b.edges());
    }
}
