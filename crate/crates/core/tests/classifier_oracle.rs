use std::collections::{BTreeSet, HashMap};

use mgspec::charpoly::charpoly_exact;
use mgspec::classifier::{
    enumerate_classes, enumerate_switching_classes, signature_set, survivors, survivors_below, verify_theorem35,
    GraphFilter,
};
use mgspec::families::{CycleType, FamilySpec};
use mgspec::limits::{real_roots, rho_star};
use mgspec::sample;
use mgspec::suites::random_switching;
use mgspec::switching::{canonical_signature, switching_isomorphic};
use mgspec::{spectral_radius, Edge, IntPolynomial, MixedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn edge_set(n: usize, pairs: &[(usize, usize)], perm: &[usize]) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = pairs
        .iter()
        .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
        .collect();
    e.sort();
    debug_assert!(e.iter().all(|&(u, v)| v < n && u < v));
    e
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in pairs {
            let w = if a == u { b } else if b == u { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Connected simple graphs on `n` labelled vertices, one per isomorphism
/// type, found by trying every permutation.
fn brute_force_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let all_pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for mask in 0u32..1 << all_pairs.len() {
        let pairs: Vec<_> = (0..all_pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| all_pairs[i]).collect();
        if !connected(n, &pairs) {
            continue;
        }
        let key = perms.iter().map(|p| edge_set(n, &pairs, p)).min().unwrap();
        if seen.insert(key) {
            reps.push(pairs);
        }
    }
    reps
}

/// Class count by brute force: every orientation of every edge, grouped
/// by exact characteristic polynomial and split by pairwise switching
/// isomorphism.
fn brute_force_class_count(n: usize, c4_free_only: bool) -> usize {
    let mut total = 0;
    for pairs in brute_force_graphs(n) {
        let mut buckets: HashMap<IntPolynomial, Vec<MixedGraph>> = HashMap::new();
        for code in 0..3usize.pow(pairs.len() as u32) {
            let mut c = code;
            let edges: Vec<Edge> = pairs
                .iter()
                .map(|&(u, v)| {
                    let e = match c % 3 {
                        0 => Edge::undirected(u, v),
                        1 => Edge::arc(u, v),
                        _ => Edge::arc(v, u),
                    };
                    c /= 3;
                    e
                })
                .collect();
            let g = MixedGraph::from_edges(n, edges).unwrap();
            if c4_free_only && !g.is_negative_c4_free() {
                continue;
            }
            let bucket = buckets.entry(charpoly_exact(&g).unwrap()).or_default();
            if !bucket.iter().any(|h| switching_isomorphic(h, &g).is_some()) {
                bucket.push(g);
            }
        }
        total += buckets.values().map(Vec::len).sum::<usize>();
    }
    total
}

#[test]
fn brute_force_graph_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| brute_force_graphs(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21]);
}

#[test]
fn enumeration_is_complete_to_order_5() {
    for n in 1..=5 {
        let enumerated = enumerate_switching_classes(n, n).unwrap();
        assert_eq!(enumerated.len(), brute_force_class_count(n, false), "order {n}");
        let free = enumerate_classes(n, GraphFilter::max_degree(n), true).unwrap();
        assert_eq!(free.len(), brute_force_class_count(n, true), "order {n}, negative-4-cycle-free");
        assert_eq!(signature_set(&enumerated).len(), enumerated.len());
    }
}

#[test]
fn enumerated_classes_are_pairwise_distinct() {
    let classes = enumerate_switching_classes(5, 4).unwrap();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if a.spectrum.values() == b.spectrum.values() {
                assert!(switching_isomorphic(&a.representative, &b.representative).is_none());
            }
        }
    }
}

#[test]
fn high_degree_classes_exceed_the_threshold() {
    let mut rng = sample::rng(11);
    for _ in 0..100 {
        let n = rng.gen_range(6..=9);
        let mut g = sample::random_connected_mixed_graph(&mut rng, n, 0.3);
        while g.max_degree() < 5 {
            g = sample::random_connected_mixed_graph(&mut rng, n, 0.5);
        }
        let r = spectral_radius(&g).unwrap();
        assert!(r >= 5f64.sqrt() - 1e-12 && r > rho_star(), "radius {r} with max degree {}", g.max_degree());
    }
}

#[test]
fn signatures_are_class_invariants() {
    let mut rng = sample::rng(5);
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let g = sample::random_connected_mixed_graph(&mut rng, n, 0.35);
        let sig = canonical_signature(&g).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut h = g.relabel(&perm);
        if let Some(s) = random_switching(&mut rng, &h) {
            h = s;
        }
        if rng.gen_bool(0.5) {
            h = h.converse();
        }
        assert_eq!(canonical_signature(&h).unwrap(), sig);
    }
}

#[test]
fn signatures_separate_classes() {
    let mut rng = sample::rng(6);
    let mut separated = 0;
    for _ in 0..300 {
        let n = rng.gen_range(3..=7);
        let g = sample::random_connected_mixed_graph(&mut rng, n, 0.4);
        // Same underlying graph, fresh orientations.
        let edges: Vec<Edge> = g
            .edges()
            .iter()
            .map(|e| match rng.gen_range(0..3) {
                0 => Edge::undirected(e.u, e.v),
                1 => Edge::arc(e.u, e.v),
                _ => Edge::arc(e.v, e.u),
            })
            .collect();
        let h = MixedGraph::from_edges(n, edges).unwrap();
        let same_sig = canonical_signature(&g).unwrap() == canonical_signature(&h).unwrap();
        assert_eq!(same_sig, switching_isomorphic(&g, &h).is_some());
        separated += usize::from(!same_sig);
    }
    assert!(separated > 0);
}

#[test]
fn survivors_match_exact_roots() {
    for n in 1..=7 {
        for (c, _) in survivors(n).unwrap() {
            assert!(c.negative_c4_free && c.representative.is_negative_c4_free());
            let roots = real_roots(&charpoly_exact(&c.representative).unwrap()).unwrap();
            for &x in c.spectrum.values() {
                assert!(roots.iter().any(|r| (r - x).abs() < 1e-8), "eigenvalue {x} not a root");
            }
            assert!(*roots.last().unwrap() <= rho_star() + 1e-9);
        }
    }
}

#[test]
fn small_survivor_lists() {
    let sig = |spec: FamilySpec| canonical_signature(&spec.generate().unwrap()).unwrap();
    let three = signature_set(&survivors(3).unwrap().into_iter().map(|(c, _)| c).collect::<Vec<_>>());
    for ty in [CycleType::Positive, CycleType::Imaginary, CycleType::Negative] {
        assert!(three.contains(&sig(FamilySpec::Cycle(ty, 3))));
    }
    assert!(three.contains(&sig(FamilySpec::Path(3))));
    let four = signature_set(&survivors(4).unwrap().into_iter().map(|(c, _)| c).collect::<Vec<_>>());
    assert!(four.contains(&sig(FamilySpec::Tadpole(CycleType::Imaginary, 3, 4))));
    assert!(!four.contains(&sig(FamilySpec::Tadpole(CycleType::Positive, 3, 4))));
}

#[test]
fn reports_are_deterministic() {
    let a = verify_theorem35(6).unwrap();
    let b = verify_theorem35(6).unwrap();
    assert!(a.verified());
    assert_eq!(a.to_json(false), b.to_json(false));
}

#[test]
fn lowering_the_threshold_shrinks_the_survivors() {
    for n in 3..=7 {
        let full = signature_set(&survivors(n).unwrap().into_iter().map(|(c, _)| c).collect::<Vec<_>>());
        let mid = signature_set(&survivors_below(n, 2.03).unwrap());
        let low = signature_set(&survivors_below(n, 2.0).unwrap());
        assert!(low.is_subset(&mid) && mid.is_subset(&full), "order {n}");
    }
}
