//! Self-checks bundled for the command line: closed-form identities at
//! `rho*`, seeded spectral properties, convergence of the tadpole families,
//! the exhaustive characterisation run, and catalogue reconstruction.

use rand::Rng;
use serde::Serialize;

use crate::catalog::{self, EntryStatus, Reconstruction};
use crate::charpoly::{self, charpoly_exact, charpoly_recurrence, identities};
use crate::classifier::{verify_theorem35, VerificationReport};
use crate::dd::Dd;
use crate::error::Result;
use crate::families::{CycleType, FamilySpec};
use crate::graph::MixedGraph;
use crate::hermitian::{self, h_matrix, interlaces, spectrum};
use crate::limits::{self, hoffman_limit, rho_star, LimitSet};
use crate::poly::IntPolynomial;
use crate::sample;
use crate::switching::apply_switching;
use crate::unit::Weight;

/// Relative tolerance of the closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &'static str, checks: Vec<Check>) -> SuiteReport {
        SuiteReport { suite, passed: checks.iter().all(|c| c.passed), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn relative_gap(value: f64, expected: f64) -> f64 {
    (value - expected).abs() / expected.abs()
}

fn at_rho_star(p: &IntPolynomial) -> f64 {
    p.eval_dd(limits::rho_star_dd()).to_f64()
}

/// One identity on the range `range`: the graph polynomial and the printed
/// polynomial must agree, and both must match the closed form at `rho*`.
fn identity_family(
    name: &str,
    range: std::ops::RangeInclusive<usize>,
    graph: impl Fn(usize) -> FamilySpec,
    printed: impl Fn(usize) -> Result<IntPolynomial>,
    closed: impl Fn(usize) -> Dd,
) -> Result<Check> {
    let mut worst = 0.0f64;
    let mut mismatched = Vec::new();
    for k in range.clone() {
        let from_graph = charpoly_exact(&graph(k).generate()?)?;
        let from_expansion = printed(k)?;
        if from_graph != from_expansion {
            mismatched.push(k);
        }
        let expected = closed(k).to_f64();
        worst = worst.max(relative_gap(at_rho_star(&from_graph), expected));
        worst = worst.max(relative_gap(at_rho_star(&from_expansion), expected));
    }
    let passed = mismatched.is_empty() && worst <= IDENTITY_TOL;
    let detail = if mismatched.is_empty() {
        format!("{}..={}: max relative gap {worst:.3e}", range.start(), range.end())
    } else {
        format!("expansion differs from the graph polynomial at {mismatched:?}")
    };
    Ok(check(name, passed, detail))
}

pub fn identities() -> Result<SuiteReport> {
    let mut checks = vec![
        identity_family(
            "Phi(C'_{n-1,n}, rho*)",
            4..=40,
            |n| FamilySpec::Tadpole(CycleType::Imaginary, n - 1, n),
            charpoly::near_cycle_tadpole_poly,
            identities::near_cycle_tadpole,
        )?,
        identity_family("Phi(T*_s, rho*)", 1..=30, FamilySpec::TsStar, charpoly::ts_star_poly, identities::ts_star)?,
        identity_family(
            "Phi(T**_s, rho*)",
            1..=30,
            FamilySpec::TsDoubleStar,
            charpoly::ts_double_star_poly,
            identities::ts_double_star,
        )?,
        identity_family(
            "Phi(Theta'_k, rho*)",
            7..=30,
            FamilySpec::ThetaPrime,
            charpoly::theta_prime_poly,
            identities::theta_prime,
        )?,
    ];
    let c3 = FamilySpec::Cycle(CycleType::Imaginary, 3).generate()?;
    let limit = hoffman_limit(&c3, 0)?;
    checks.push(check(
        "limit functional of C'_3",
        (limit - rho_star()).abs() <= 1e-10,
        format!("{limit:.15} vs rho* {:.15}", rho_star()),
    ));
    Ok(SuiteReport::new("identities", checks))
}

/// A random switching of `g` that keeps every entry representable, if one
/// turns up within a few draws.
pub fn random_switching<R: Rng>(rng: &mut R, g: &MixedGraph) -> Option<MixedGraph> {
    (0..64).find_map(|_| {
        let d: Vec<Weight> = (0..g.order()).map(|_| Weight::from_exponent(rng.gen_range(0..4))).collect();
        apply_switching(g, &d).ok()
    })
}

/// Spectral property checks on `samples` seeded random graphs of order at
/// most 8.
pub fn properties(seed: u64, samples: usize) -> Result<SuiteReport> {
    let mut rng = sample::rng(seed);
    let mut counts = [0usize; 6];
    let mut failures: [Vec<String>; 6] = Default::default();
    let mut symmetric_tested = 0;
    for _ in 0..samples {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.2..0.8);
        let g = sample::random_mixed_graph(&mut rng, n, density);
        let mg = crate::mgfile::to_mg(&g).replace('\n', ";");
        let spec = spectrum(&g)?;

        counts[0] += 1;
        if !h_matrix(&g).is_hermitian() {
            failures[0].push(mg.clone());
        }

        counts[1] += 1;
        let mut images = vec![g.converse()];
        images.extend(random_switching(&mut rng, &g));
        for h in images {
            let other = spectrum(&h)?;
            if spec.values().iter().zip(other.values()).any(|(a, b)| (a - b).abs() > 1e-9) {
                failures[1].push(mg.clone());
            }
        }

        counts[2] += 1;
        let vs = sample::random_subset(&mut rng, n);
        if !interlaces(&spec, &spectrum(&g.induced_subgraph(&vs))?)? {
            failures[2].push(format!("{mg} on {vs:?}"));
        }

        if !hermitian::has_real_odd_cycle(&g) {
            symmetric_tested += 1;
            if !spec.is_symmetric(hermitian::SPECTRAL_TOL) {
                failures[3].push(mg.clone());
            }
        }

        counts[4] += 1;
        let delta = g.max_degree() as f64;
        if spec.rho() < delta.sqrt() - 1e-9 || spec.rho() > delta + 1e-9 {
            failures[4].push(mg.clone());
        }

        counts[5] += 1;
        let exact = charpoly_exact(&g)?;
        if n > 0 && exact != charpoly_recurrence(&g, rng.gen_range(0..n))? {
            failures[5].push(mg.clone());
        }
    }
    counts[3] = symmetric_tested;
    let names = [
        "hermitian matrix",
        "converse and switching are cospectral",
        "induced subgraphs interlace",
        "no real odd cycle gives a symmetric spectrum",
        "sqrt(max degree) <= rho <= max degree",
        "Berkowitz and vertex recurrence agree",
    ];
    let checks = names
        .iter()
        .zip(counts)
        .zip(failures)
        .map(|((name, count), fails)| {
            let detail = match fails.first() {
                None => format!("{count} graphs, seed {seed}"),
                Some(f) => format!("{} of {count} failed, first: {f}", fails.len()),
            };
            check(*name, fails.is_empty(), detail)
        })
        .collect();
    Ok(SuiteReport::new("properties", checks))
}

/// Orders at which the convergence families are tabulated.
pub const CONVERGENCE_ORDERS: &[usize] = &[10, 20, 50, 100, 200];

pub fn convergence() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let set = LimitSet::get();
    let eta = |k| limits::eta(k).map(|p| p.value);
    let eta1 = eta(1)?;
    checks.push(check("eta_1 = 2", (eta1 - 2.0).abs() <= 1e-12, format!("{eta1:.15}")));
    let etas = (1..=20).map(eta).collect::<Result<Vec<_>>>()?;
    let zetas: Vec<f64> = (1..=20).map(|k| limits::zeta(k).value).collect();
    checks.push(check("eta_k increasing for k <= 20", etas.windows(2).all(|w| w[0] < w[1]), ""));
    checks.push(check("zeta_k increasing for k <= 20", zetas.windows(2).all(|w| w[0] < w[1]), ""));
    let rs = rho_star();
    let inside = set.points.iter().all(|p| p.value >= 2.0 - 1e-12 && p.value < rs);
    checks.push(check("tabulated points lie in [2, rho*)", inside, format!("{} points", set.points.len())));
    checks.push(check(
        "rho* = sqrt(2 + sqrt 5)",
        (rs - 2.058_171).abs() <= 1e-6,
        format!("{rs:.12}"),
    ));

    type Family = fn(usize) -> FamilySpec;
    let families: [(&str, f64, f64, Family); 3] = [
        ("C'_n -> 2", 2.0, 1e-3, |n| FamilySpec::Cycle(CycleType::Imaginary, n)),
        ("C'_{3,n} -> rho*", rs, 1e-6, |n| FamilySpec::Tadpole(CycleType::Imaginary, 3, n)),
        ("C'_{n-1,n} -> rho*", rs, 1e-6, |n| FamilySpec::Tadpole(CycleType::Imaginary, n - 1, n)),
    ];
    for (name, limit, gap, family) in families {
        let table = limits::convergence_table(|n| family(n).generate(), CONVERGENCE_ORDERS, limit)?;
        let last = table.final_gap().unwrap_or(f64::INFINITY);
        let monotone = table.is_nondecreasing(1e-12);
        checks.push(check(
            name,
            last < gap && monotone,
            format!("gap at n = 200 is {last:.3e}, monotone: {monotone}"),
        ));
    }
    Ok(SuiteReport::new("convergence", checks))
}

pub fn theorem35(max_order: usize) -> Result<(SuiteReport, VerificationReport)> {
    let report = verify_theorem35(max_order)?;
    let survivors: usize = report.orders.iter().map(|o| o.survivors).sum();
    let checks = vec![check(
        format!("characterisation up to order {max_order}"),
        report.verified(),
        format!("{survivors} survivors, {} counterexamples", report.counterexamples.len()),
    )];
    Ok((SuiteReport::new("theorem35", checks), report))
}

/// Required entries must be found within tolerance; other entries are
/// reported but never fail the suite.
pub fn catalog(order_cap: usize) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for m in catalog::reconstruct_all(order_cap)? {
        let required = m.status == EntryStatus::Required;
        let (found, detail) = match &m.reconstruction {
            Reconstruction::Found(c) => (true, format!("order {}, rho {:.4}", c.order, c.rho)),
            Reconstruction::NotFound { reason } => (false, reason.clone()),
        };
        let status = match m.status {
            EntryStatus::Required => "required",
            EntryStatus::BestEffort => "best effort",
            EntryStatus::Advisory => "advisory",
        };
        checks.push(check(format!("{} ({status})", m.name), found || !required, detail));
    }
    Ok(SuiteReport::new("catalog", checks))
}
