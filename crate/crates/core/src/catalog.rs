//! Catalogue of small obstruction graphs known only by a printed spectral
//! radius and a structural description. Each entry carries machine-checkable
//! predicates; reconstruction returns the smallest switching class that
//! satisfies them and matches the printed radius. A reconstruction is a
//! candidate consistent with the description, not a recovered drawing.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{classes_on, connected_graphs, GraphFilter};
use crate::error::Result;
use crate::families::{for_each_connected_subset, CycleType, FamilySpec};
use crate::graph::MixedGraph;
use crate::mgfile::to_mg;
use crate::switching::{canonical_signature, switching_isomorphic};
use crate::unit::Weight;

/// Agreement required with a printed four-decimal radius.
pub const PUBLISHED_TOL: f64 = 5e-5;

/// Default largest order searched.
pub const DEFAULT_ORDER_CAP: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    /// Constraints pin the graph; reconstruction must succeed.
    Required,
    /// Constraints are partial; reconstruction is attempted but may miss.
    BestEffort,
    /// No radius or no usable constraints; nothing is searched.
    Advisory,
}

#[derive(Clone, Copy)]
struct Search {
    min_order: usize,
    max_order: usize,
    filter: GraphFilter,
    accept: fn(&MixedGraph) -> bool,
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub constraints: &'static [&'static str],
    /// Printed radius, `None` when none is known.
    pub target_rho: Option<f64>,
    pub status: EntryStatus,
    search: Option<Search>,
}

impl CatalogEntry {
    pub fn is_searchable(&self) -> bool {
        self.search.is_some() && self.target_rho.is_some()
    }

    pub fn satisfies_constraints(&self, g: &MixedGraph) -> bool {
        self.search.is_some_and(|s| {
            (s.min_order..=s.max_order).contains(&g.order())
                && g.max_degree() <= s.filter.max_degree
                && g.is_connected()
                && (s.accept)(g)
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    #[serde(skip)]
    pub graph: MixedGraph,
    pub order: usize,
    pub edges: usize,
    pub rho: f64,
    pub signature: String,
    pub mg: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Reconstruction {
    Found(Candidate),
    NotFound { reason: String },
}

impl Reconstruction {
    pub fn candidate(&self) -> Option<&Candidate> {
        match self {
            Reconstruction::Found(c) => Some(c),
            Reconstruction::NotFound { .. } => None,
        }
    }
}

fn cycle_weights(g: &MixedGraph) -> Vec<(usize, Weight, Vec<usize>)> {
    g.enumerate_cycles(None).into_iter().map(|c| (c.len(), c.weight_in(g), c.vertices().to_vec())).collect()
}

fn kind(w: Weight) -> CycleType {
    match w.exponent() {
        0 => CycleType::Positive,
        2 => CycleType::Negative,
        _ => CycleType::Imaginary,
    }
}

fn cycle_lengths(g: &MixedGraph) -> Vec<usize> {
    let mut l: Vec<usize> = g.enumerate_cycles(None).iter().map(|c| c.len()).collect();
    l.sort_unstable();
    l
}

/// The only cycle has length `len` and type `ty`, and one of its vertices
/// has degree at least 4.
fn unicyclic_heavy(g: &MixedGraph, len: usize, ty: CycleType) -> bool {
    let cs = cycle_weights(g);
    cs.len() == 1
        && cs[0].0 == len
        && kind(cs[0].1) == ty
        && cs[0].2.iter().any(|&v| g.degree(v) >= 4)
}

fn z1(g: &MixedGraph) -> bool {
    unicyclic_heavy(g, 3, CycleType::Imaginary)
}

fn z2(g: &MixedGraph) -> bool {
    unicyclic_heavy(g, 4, CycleType::Imaginary)
}

/// Induced subgraph of an imaginary `k`-cycle with two pendants at one
/// vertex (`5 <= k <= 8`), through a vertex of degree 4.
fn z3(g: &MixedGraph) -> bool {
    if g.size() + 1 != g.order() || g.max_degree() < 4 {
        return false;
    }
    let Ok(sig) = canonical_signature(g) else { return false };
    (5..=8).any(|k| {
        let host = FamilySpec::TwoPendant(CycleType::Imaginary, k, 1).generate().expect("valid parameters");
        let mut hit = false;
        for_each_connected_subset(&host.adjacency_masks(), g.order(), |vs| {
            if !hit {
                hit = canonical_signature(&host.induced_subgraph(vs)).is_ok_and(|s| s == sig);
            }
        });
        hit
    })
}

/// Imaginary 4-cycle with three further vertices, cycle degrees at most 3,
/// exactly one cycle vertex of degree 3, and not the tadpole.
fn z4(g: &MixedGraph) -> bool {
    let cs = cycle_weights(g);
    if g.order() != 7 || cs.len() != 1 || cs[0].0 != 4 || kind(cs[0].1) != CycleType::Imaginary {
        return false;
    }
    let degs: Vec<usize> = cs[0].2.iter().map(|&v| g.degree(v)).collect();
    let tadpole = FamilySpec::Tadpole(CycleType::Imaginary, 4, 7).generate().expect("valid parameters");
    degs.iter().all(|&d| d <= 3) && degs.iter().filter(|&&d| d == 3).count() == 1 && switching_isomorphic(g, &tadpole).is_none()
}

/// Exactly two cycles, both imaginary triangles, meeting in one vertex.
fn z5(g: &MixedGraph) -> bool {
    let cs = cycle_weights(g);
    cs.len() == 2
        && cs.iter().all(|c| c.0 == 3 && kind(c.1) == CycleType::Imaginary)
        && cs[0].2.iter().filter(|v| cs[1].2.contains(v)).count() == 1
}

/// A triangle plus a fourth vertex adjacent to at least two of its vertices.
fn theta_triangle_plus(g: &MixedGraph) -> bool {
    g.order() == 4 && g.size() >= 5 && g.is_negative_c4_free()
}

/// A triangle sharing one edge with an induced 4-cycle, the triangle
/// imaginary and no other triangle present.
fn theta_house(g: &MixedGraph) -> bool {
    let cs = cycle_weights(g);
    cycle_lengths(g) == [3, 4, 5]
        && g.size() == 6
        && cs.iter().any(|c| c.0 == 3 && kind(c.1) == CycleType::Imaginary)
        && g.is_negative_c4_free()
}

fn girth_four_multi(g: &MixedGraph) -> bool {
    g.girth() == Some(4) && g.cyclomatic_number() >= 2 && g.is_negative_c4_free()
}

fn theta13(g: &MixedGraph) -> bool {
    girth_four_multi(g) && cycle_weights(g).iter().any(|c| c.0 == 4 && c.1 == Weight::ONE)
}

fn theta_imaginary_square(g: &MixedGraph) -> bool {
    girth_four_multi(g) && cycle_weights(g).iter().any(|c| c.0 == 4 && kind(c.1) == CycleType::Imaginary)
}

/// Two 5-cycles sharing a path of length 2 and nothing else.
fn theta_pentagons(g: &MixedGraph) -> bool {
    g.order() == 7 && g.size() == 8 && cycle_lengths(g) == [5, 5, 6]
}

/// Two 6-cycles sharing a path of length 3 and nothing else.
fn theta_hexagons(g: &MixedGraph) -> bool {
    g.order() == 8 && g.size() == 9 && cycle_lengths(g) == [6, 6, 6]
}

/// Two negative 6-cycles sharing a path of length 2 and nothing else.
fn two_negative_hexagons(g: &MixedGraph) -> bool {
    let cs = cycle_weights(g);
    g.order() == 9
        && g.size() == 10
        && cycle_lengths(g) == [6, 6, 8]
        && cs.iter().filter(|c| c.0 == 6).all(|c| c.1 == Weight::NEG_ONE)
}

const fn filter(max_degree: usize, max_excess: Option<usize>, min_girth: usize) -> GraphFilter {
    GraphFilter { max_degree, max_excess, min_girth }
}

const fn search(min_order: usize, max_order: usize, f: GraphFilter, accept: fn(&MixedGraph) -> bool) -> Option<Search> {
    Some(Search { min_order, max_order, filter: f, accept })
}

fn theta(name: &'static str, rho: f64, constraints: &'static [&'static str], s: Option<Search>) -> CatalogEntry {
    CatalogEntry { name, constraints, target_rho: Some(rho), status: EntryStatus::BestEffort, search: s }
}

/// Every entry, in a fixed order. Entries with equal radius and equal
/// constraints receive distinct classes in this order.
pub fn entries() -> Vec<CatalogEntry> {
    const TRI4: &[&str] = &[
        "order 4",
        "a triangle and a fourth vertex adjacent to two or three of its vertices",
        "no negative 4-cycle",
    ];
    const HOUSE: &[&str] = &[
        "order 5",
        "a triangle sharing one edge with an induced 4-cycle",
        "the triangle is imaginary",
        "no negative 4-cycle",
    ];
    const G4: &[&str] = &["girth 4", "at least two cycles", "no negative 4-cycle"];
    const G4P: &[&str] = &["girth 4", "at least two cycles", "a positive 4-cycle", "no negative 4-cycle"];
    const G4I: &[&str] = &["girth 4", "at least two cycles", "an imaginary 4-cycle", "no negative 4-cycle"];
    const PENT: &[&str] = &["two 5-cycles sharing two adjacent edges", "no further vertices or edges"];
    let tri4 = search(4, 4, filter(3, None, 0), theta_triangle_plus);
    let house = search(5, 5, filter(3, Some(1), 0), theta_house);
    let g4 = search(5, 7, filter(4, None, 4), girth_four_multi);
    let g4p = search(5, 7, filter(4, None, 4), theta13);
    let g4i = search(5, 7, filter(4, None, 4), theta_imaginary_square);
    let pent = search(7, 7, filter(3, Some(1), 5), theta_pentagons);
    let mut out = vec![
        CatalogEntry {
            name: "Z_1",
            constraints: &["one cycle, an imaginary triangle", "a triangle vertex of degree at least 4"],
            target_rho: Some(2.1358),
            status: EntryStatus::Required,
            search: search(4, 7, filter(5, Some(0), 0), z1),
        },
        CatalogEntry {
            name: "Z_2",
            constraints: &["one cycle, an imaginary 4-cycle", "a cycle vertex of degree at least 4"],
            target_rho: Some(2.1753),
            status: EntryStatus::Required,
            search: search(5, 7, filter(5, Some(0), 0), z2),
        },
        CatalogEntry {
            name: "Z_3",
            constraints: &[
                "a tree with a vertex of degree at least 4",
                "induced in an imaginary k-cycle, 5 <= k <= 8, with two pendant edges at one cycle vertex",
            ],
            target_rho: Some(2.0743),
            status: EntryStatus::Required,
            search: search(5, 7, filter(4, Some(0), 0), z3),
        },
        CatalogEntry {
            name: "Z_4",
            constraints: &[
                "order 7, one cycle, an imaginary 4-cycle",
                "cycle vertices of degree at most 3, exactly one of degree 3",
                "not switching isomorphic to C'_{4,7}",
            ],
            target_rho: Some(2.1358),
            status: EntryStatus::BestEffort,
            search: search(7, 7, filter(4, Some(0), 0), z4),
        },
        CatalogEntry {
            name: "Z_5",
            constraints: &["exactly two cycles, both imaginary triangles", "the triangles share one vertex"],
            target_rho: Some(2.2361),
            status: EntryStatus::Required,
            search: search(5, 7, filter(4, Some(1), 0), z5),
        },
    ];
    let tri_rhos = [2.5616, 2.3429, 2.2361, 2.3429, 2.5616, 3.0, 2.7093, 2.7093, 3.0];
    const TRI_NAMES: [&str; 9] = ["Θ_1", "Θ_2", "Θ_3", "Θ_4", "Θ_5", "Θ_6", "Θ_7", "Θ_8", "Θ_9"];
    for (name, rho) in TRI_NAMES.iter().zip(tri_rhos) {
        out.push(theta(name, rho, TRI4, tri4));
    }
    out.push(theta("Θ_10", 2.2882, HOUSE, house));
    out.push(theta("Θ_11", 2.2303, HOUSE, house));
    out.push(theta("Θ_12", 2.2303, HOUSE, house));
    out.push(theta("Θ_13", 2.4495, G4P, g4p));
    out.push(theta("Θ_14", 2.2882, G4, g4));
    out.push(theta("Θ_15", 2.2562, G4I, g4i));
    out.push(theta("Θ_16", 2.2562, G4I, g4i));
    out.push(theta("Θ_17", 2.1701, G4I, g4i));
    out.push(theta("Θ_18", 2.2361, G4I, g4i));
    out.push(theta("Θ_19", 2.2361, PENT, pent));
    out.push(theta("Θ_20", 2.1358, PENT, pent));
    out.push(theta(
        "Θ_21",
        2.1149,
        &["two 6-cycles sharing a path of length 3", "no further vertices or edges"],
        search(8, 8, filter(3, Some(1), 6), theta_hexagons),
    ));
    out.push(CatalogEntry {
        name: "M*",
        constraints: &[
            "two 6-cycles sharing a path of length 2, no further vertices or edges",
            "both 6-cycles negative",
        ],
        target_rho: Some(2.0),
        status: EntryStatus::BestEffort,
        search: search(9, 9, filter(3, Some(1), 6), two_negative_hexagons),
    });
    const DRAWN_ONLY: &[&str] = &["drawn only; no spectral radius is given"];
    const LIMIT_ONLY: &[&str] = &["drawn only; known through its limit value"];
    for (name, constraints) in [("F*", DRAWN_ONLY), ("G_t*", DRAWN_ONLY), ("Ω_{k,n}", LIMIT_ONLY), ("Ω'_n", LIMIT_ONLY)] {
        out.push(CatalogEntry { name, constraints, target_rho: None, status: EntryStatus::Advisory, search: None });
    }
    out
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// Smallest class (by order, then edge count, then signature) meeting the
/// entry's constraints with radius within [`PUBLISHED_TOL`] of the target.
pub fn reconstruct(entry: &CatalogEntry, order_cap: usize) -> Result<Reconstruction> {
    reconstruct_excluding(entry, order_cap, &BTreeSet::new())
}

/// As [`reconstruct`], skipping classes whose signature is in `exclude`.
pub fn reconstruct_excluding(
    entry: &CatalogEntry,
    order_cap: usize,
    exclude: &BTreeSet<String>,
) -> Result<Reconstruction> {
    let (Some(s), Some(target)) = (entry.search, entry.target_rho) else {
        return Ok(Reconstruction::NotFound { reason: "advisory entry; no search is defined".into() });
    };
    for n in s.min_order..=s.max_order.min(order_cap) {
        let graphs = connected_graphs(n, s.filter)?;
        let found: Vec<Candidate> = graphs
            .par_iter()
            .map(|rows| -> Result<Vec<Candidate>> {
                Ok(classes_on(rows, false)?
                    .into_iter()
                    .filter(|c| (c.rho - target).abs() <= PUBLISHED_TOL && !exclude.contains(&c.signature))
                    .filter(|c| (s.accept)(&c.representative))
                    .map(|c| Candidate {
                        order: n,
                        edges: c.representative.size(),
                        rho: c.rho,
                        mg: to_mg(&c.representative),
                        signature: c.signature,
                        graph: c.representative,
                    })
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if let Some(best) = found.into_iter().min_by(|a, b| (a.edges, &a.signature).cmp(&(b.edges, &b.signature))) {
            return Ok(Reconstruction::Found(best));
        }
    }
    Ok(Reconstruction::NotFound { reason: format!("no class within {PUBLISHED_TOL} of {target} up to order {order_cap}") })
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub name: &'static str,
    pub status: EntryStatus,
    pub constraints: &'static [&'static str],
    pub target_rho: Option<f64>,
    pub reconstruction: Reconstruction,
}

/// Reconstructs every entry in catalogue order, keeping assigned classes
/// distinct.
pub fn reconstruct_all(order_cap: usize) -> Result<Vec<ManifestEntry>> {
    let mut taken = BTreeSet::new();
    let mut out = Vec::new();
    for e in entries() {
        let r = reconstruct_excluding(&e, order_cap, &taken)?;
        if let Some(c) = r.candidate() {
            taken.insert(c.signature.clone());
        }
        out.push(ManifestEntry {
            name: e.name,
            status: e.status,
            constraints: e.constraints,
            target_rho: e.target_rho,
            reconstruction: r,
        });
    }
    Ok(out)
}

pub fn manifest_json(order_cap: usize) -> Result<String> {
    Ok(serde_json::to_string_pretty(&reconstruct_all(order_cap)?).expect("manifest serialises"))
}

/// The reconstructed two-hexagon host, computed once.
pub fn two_cycle_host() -> Option<&'static MixedGraph> {
    static HOST: OnceLock<Option<MixedGraph>> = OnceLock::new();
    HOST.get_or_init(|| {
        let e = entry("M*")?;
        reconstruct(&e, DEFAULT_ORDER_CAP).ok()?.candidate().map(|c| c.graph.clone())
    })
    .as_ref()
}
