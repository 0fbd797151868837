use mgspec::charpoly::{charpoly_exact, charpoly_recurrence};
use mgspec::hermitian::{h_matrix, has_real_odd_cycle, interlaces, SPECTRAL_TOL};
use mgspec::mgfile::{parse_mg, to_mg};
use mgspec::sample::seed_from_env;
use mgspec::switching::{apply_switching, canonical_signature};
use mgspec::{spectrum, Edge, MixedGraph, Weight};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Pair codes: 0 absent, 1 undirected, 2 arc up, 3 arc down.
fn mixed_graph(max_order: usize) -> impl Strategy<Value = MixedGraph> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(0u8..4, n * (n - 1) / 2).prop_map(move |codes| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match codes[k] {
                        1 => edges.push(Edge::undirected(u, v)),
                        2 => edges.push(Edge::arc(u, v)),
                        3 => edges.push(Edge::arc(v, u)),
                        _ => {}
                    }
                    k += 1;
                }
            }
            MixedGraph::from_edges(n, edges).unwrap()
        })
    })
}

fn runner(cases: u32) -> TestRunner {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&seed_from_env().to_le_bytes());
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, TestRng::from_seed(RngAlgorithm::ChaCha, &seed))
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn hermitian_matrices() {
    runner(300)
        .run(&mixed_graph(9), |g| {
            let h = h_matrix(&g);
            prop_assert!(h.is_hermitian());
            for u in 0..g.order() {
                prop_assert_eq!((h.get(u, u).re, h.get(u, u).im), (0, 0));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn converse_is_cospectral() {
    runner(300)
        .run(&mixed_graph(9), |g| {
            let a = spectrum(&g).unwrap();
            let b = spectrum(&g.converse()).unwrap();
            prop_assert!(close(a.values(), b.values(), 1e-9));
            Ok(())
        })
        .unwrap();
}

#[test]
fn switching_is_cospectral() {
    let strategy = mixed_graph(8).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0i64..4, n))
    });
    runner(500)
        .run(&strategy, |(g, exps)| {
            let d: Vec<Weight> = exps.into_iter().map(Weight::from_exponent).collect();
            // Switchings that produce an entry of -1 leave the mixed graphs.
            if let Ok(h) = apply_switching(&g, &d) {
                let (a, b) = (spectrum(&g).unwrap(), spectrum(&h).unwrap());
                prop_assert!(close(a.values(), b.values(), 1e-9));
                if g.is_connected() {
                    prop_assert_eq!(canonical_signature(&g).unwrap(), canonical_signature(&h).unwrap());
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn induced_subgraphs_interlace() {
    let strategy = mixed_graph(9).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(any::<bool>(), n))
    });
    runner(500)
        .run(&strategy, |(g, keep)| {
            let vs: Vec<usize> = (0..g.order()).filter(|&v| keep[v]).collect();
            prop_assume!(!vs.is_empty());
            let outer = spectrum(&g).unwrap();
            let inner = spectrum(&g.induced_subgraph(&vs)).unwrap();
            prop_assert!(interlaces(&outer, &inner).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn no_real_odd_cycle_means_symmetric_spectrum() {
    runner(500)
        .run(&mixed_graph(9), |g| {
            if !has_real_odd_cycle(&g) {
                prop_assert!(spectrum(&g).unwrap().is_symmetric(SPECTRAL_TOL));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn radius_lies_between_root_degree_and_degree() {
    runner(300)
        .run(&mixed_graph(10), |g| {
            let rho = spectrum(&g).unwrap().rho();
            let delta = g.max_degree() as f64;
            prop_assert!(rho >= delta.sqrt() - 1e-9 && rho <= delta + 1e-9);
            Ok(())
        })
        .unwrap();
}

#[test]
fn both_characteristic_polynomial_routes_agree() {
    let strategy = mixed_graph(9).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n)
    });
    runner(300)
        .run(&strategy, |(g, u)| {
            prop_assert_eq!(charpoly_exact(&g).unwrap(), charpoly_recurrence(&g, u).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn mg_round_trip_keeps_the_signature() {
    runner(200)
        .run(&mixed_graph(8), |g| {
            let back = parse_mg(&to_mg(&g)).unwrap();
            prop_assert_eq!(back.edges(), g.edges());
            if g.is_connected() {
                prop_assert_eq!(canonical_signature(&back).unwrap(), canonical_signature(&g).unwrap());
            }
            Ok(())
        })
        .unwrap();
}
