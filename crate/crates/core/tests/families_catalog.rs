use mgspec::catalog::{self, EntryStatus, Reconstruction};
use mgspec::families::{is_in_theorem35, theorem35_hosts, CycleType, FamilySpec, FAMILY_NAMES};
use mgspec::limits::rho_star;
use mgspec::mgfile::{parse_mg, to_mg};
use mgspec::spectral_radius;

#[test]
fn every_named_family_parses() {
    let samples: &[(&str, &[usize])] = &[
        ("P", &[4]),
        ("C", &[5]),
        ("C'", &[5]),
        ("C''", &[5]),
        ("K1_4", &[]),
        ("T_abc", &[1, 2, 3]),
        ("Q_abc", &[1, 1, 2]),
        ("C_kn", &[3, 6]),
        ("C'_kn", &[3, 6]),
        ("C''_kn", &[3, 6]),
        ("G_nk", &[6, 3]),
        ("G'_nk", &[6, 3]),
        ("G''_nk", &[8, 4]),
        ("U''_k_m", &[1, 2]),
        ("U''_6", &[]),
        ("U''_8", &[]),
        ("Ts_star", &[2]),
        ("Ts_dstar", &[2]),
        ("Theta_prime_k", &[7]),
    ];
    assert_eq!(samples.len(), FAMILY_NAMES.len());
    let orders = [4, 5, 5, 5, 5, 7, 7, 6, 6, 6, 8, 8, 10, 9, 10, 12, 7, 7, 9];
    for (&(name, params), want) in samples.iter().zip(orders) {
        let spec = FamilySpec::parse(name, params).unwrap();
        let g = spec.generate().unwrap();
        assert_eq!(g.order(), want, "{name}");
        assert_eq!(spec.order(), want, "{name}");
        assert!(g.is_connected(), "{name}");
        assert_eq!(spec.family_name(), name);
    }
}

#[test]
fn generated_graphs_round_trip_through_mg() {
    for spec in [FamilySpec::Qabc(2, 4, 2), FamilySpec::ThetaPrime(9), FamilySpec::Upp6] {
        let g = spec.generate().unwrap();
        assert_eq!(parse_mg(&to_mg(&g)).unwrap().edges(), g.edges());
    }
}

#[test]
fn hosts_are_negative_c4_free_and_within_threshold() {
    let hosts = theorem35_hosts(10);
    assert!(hosts.len() > 20);
    for h in &hosts {
        assert!(h.graph.is_connected(), "{}", h.name);
        assert!(h.graph.is_negative_c4_free(), "{}", h.name);
        assert!(h.graph.max_degree() <= 4, "{}", h.name);
        let r = spectral_radius(&h.graph).unwrap();
        assert!(r <= rho_star() + 1e-9, "{}: {r}", h.name);
    }
}

#[test]
fn c3_tadpoles_climb_towards_the_threshold() {
    let radii: Vec<f64> = (4..=40)
        .map(|n| spectral_radius(&FamilySpec::Tadpole(CycleType::Imaginary, 3, n).generate().unwrap()).unwrap())
        .collect();
    assert!(radii.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    assert!(radii.iter().all(|&r| r <= rho_star() + 1e-12));
}

#[test]
fn membership_follows_the_host_lists() {
    let yes = FamilySpec::Tadpole(CycleType::Imaginary, 3, 7).generate().unwrap();
    let (witness, _) = is_in_theorem35(&yes).unwrap().expect("C'_{3,7} is a host subgraph");
    assert!(!witness.host.is_empty());
    let no = FamilySpec::Tadpole(CycleType::Positive, 3, 4).generate().unwrap();
    assert!(is_in_theorem35(&no).unwrap().is_none());
}

#[test]
fn manifest_reports_every_entry() {
    let manifest = catalog::reconstruct_all(catalog::DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(manifest.len(), catalog::entries().len());
    for m in &manifest {
        match (&m.reconstruction, m.status) {
            (Reconstruction::Found(c), _) => {
                let target = m.target_rho.expect("found entries have a target");
                assert!((c.rho - target).abs() <= catalog::PUBLISHED_TOL, "{}", m.name);
                let g = parse_mg(&c.mg).unwrap();
                assert!(catalog::entry(m.name).unwrap().satisfies_constraints(&g), "{}", m.name);
            }
            (Reconstruction::NotFound { .. }, status) => assert_ne!(status, EntryStatus::Required, "{}", m.name),
        }
    }
    let json: serde_json::Value = serde_json::from_str(&catalog::manifest_json(catalog::DEFAULT_ORDER_CAP).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), manifest.len());
}

#[test]
fn found_entries_are_distinct_classes() {
    let manifest = catalog::reconstruct_all(catalog::DEFAULT_ORDER_CAP).unwrap();
    let sigs: Vec<&str> = manifest.iter().filter_map(|m| m.reconstruction.candidate()).map(|c| c.signature.as_str()).collect();
    let unique: std::collections::BTreeSet<_> = sigs.iter().collect();
    assert_eq!(unique.len(), sigs.len());
}

#[test]
fn two_hexagon_host_has_radius_two() {
    let g = catalog::two_cycle_host().expect("reconstructed");
    assert_eq!(g.order(), 9);
    assert!((spectral_radius(g).unwrap() - 2.0).abs() < 1e-9);
}
