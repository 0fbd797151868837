use mgspec::families::{CycleType, FamilySpec};
use mgspec::limits::hoffman_limit;
use mgspec::mgfile::parse_mg;
use mgspec::sample::{random_connected_mixed_graph, rng, seed_from_env};
use mgspec::{spectral_radius, Error, MixedGraph};

/// Path length at which the attached sequence is compared with its limit.
const FAR: usize = 400;

fn assert_limit_is_approached(g: &MixedGraph, v: usize, label: &str) {
    let limit = hoffman_limit(g, v).unwrap_or_else(|e| panic!("{label}: {e}"));
    let rho = spectral_radius(g).unwrap();
    assert!(limit >= rho - 1e-9, "{label}: limit {limit} below rho {rho}");
    let far = spectral_radius(&g.attach_path(v, FAR)).unwrap();
    assert!((far - limit).abs() < 1e-6, "{label}: rho at {FAR} is {far}, limit {limit}");
}

#[test]
fn named_graphs_approach_their_limits() {
    let tadpole = FamilySpec::Tadpole(CycleType::Imaginary, 3, 4).generate().unwrap();
    // The arc end of the triangle and the end of the tail.
    for v in [1, 3] {
        assert_limit_is_approached(&tadpole, v, &format!("C'_{{3,4}} at {v}"));
    }
    let star = parse_mg("n 5\n0 -- 1\n0 -- 2\n0 -- 3\n0 -- 4\n").unwrap();
    assert_limit_is_approached(&star, 1, "K_{1,4} at a leaf");
    let mixed = parse_mg("n 5\n0 -> 1\n1 -> 2\n2 -- 3\n3 -- 0\n0 -- 2\n1 -- 4\n").unwrap();
    assert_limit_is_approached(&mixed, 4, "chorded 4-cycle with arcs");
}

#[test]
fn random_graphs_approach_their_limits() {
    let mut rng = rng(seed_from_env());
    let mut tested = 0;
    while tested < 3 {
        let g = random_connected_mixed_graph(&mut rng, 6, 0.4);
        match hoffman_limit(&g, 0) {
            Ok(_) => {
                assert_limit_is_approached(&g, 0, &format!("random graph {:?}", g.edges()));
                tested += 1;
            }
            Err(Error::HypothesisUnmet(_)) => {}
            Err(e) => panic!("unexpected {e}"),
        }
    }
}
