use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mgspec::charpoly::{charpoly_exact, charpoly_recurrence};
use mgspec::classifier::{verify_theorem35_with, SearchMode, VerifyOptions};
use mgspec::families::FamilySpec;
use mgspec::hermitian::SpectrumRecord;
use mgspec::limits::{self, LimitPoint, LimitSet};
use mgspec::mgfile::{parse_mg, to_mg};
use mgspec::suites::{self, SuiteReport};
use mgspec::switching::{canonical_signature, switching_isomorphic, weight_signature};
use mgspec::{spectrum, MixedGraph};
use serde_json::{json, Value};

mod render;

use render::{csv_number, json_number, Rendered};

#[derive(Parser)]
#[command(name = "mgspec", version, about = "Spectral tools for mixed graphs and their Hermitian adjacency matrices")]
struct Cli {
    /// Output format. Text rounds to 4 decimals, JSON and CSV keep 12 significant digits.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Verb {
    /// Spectral radius of a graph.
    Rho { file: PathBuf },
    /// All eigenvalues, largest first.
    Spectrum { file: PathBuf },
    /// Characteristic polynomial, lowest coefficient first in JSON and CSV.
    Charpoly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Expansion vertex for the recurrence.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Fundamental cycles, their weights and the switching-class signature.
    Weights { file: PathBuf },
    /// Decide switching isomorphism, printing a witness when one exists.
    SwitchIso { first: PathBuf, second: PathBuf },
    /// Generate a family member as a .mg file.
    Family {
        name: String,
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Limit points, the limit functional and convergence tables.
    Limits(LimitArgs),
    /// Limit of the radius as a path grows from a vertex.
    Hoffman {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Enumerate negative-4-cycle-free classes and check them against the host lists.
    Classify {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Restrict underlying graphs to at most order + 3 edges.
        #[arg(long)]
        fast: bool,
        /// Also count classes with negative 4-cycles.
        #[arg(long)]
        count_all: bool,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads; defaults to the number of logical cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the bundled self-check suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest order for the characterisation suite.
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Seed for the property suite; falls back to MGSPEC_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Random graphs drawn by the property suite.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Recurrence,
    /// Both routes, failing if they disagree.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Properties,
    Convergence,
    Theorem35,
    Catalog,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConvergenceFamily {
    /// Imaginary cycles, tending to 2.
    Cycle,
    /// `C'_{3,n}`, tending to rho*.
    ThreeTadpole,
    /// `C'_{n-1,n}`, tending to rho*.
    NearCycleTadpole,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("what").required(true).multiple(true)))]
struct LimitArgs {
    #[arg(long, group = "what")]
    eta: Option<usize>,
    #[arg(long, group = "what")]
    zeta: Option<usize>,
    #[arg(long, group = "what")]
    xi: bool,
    #[arg(long, group = "what")]
    rho_star: bool,
    /// Every tabulated limit point.
    #[arg(long, group = "what")]
    set: bool,
    /// Limit functional of a graph file; needs --vertex.
    #[arg(long, group = "what", requires = "vertex")]
    hoffman: Option<PathBuf>,
    #[arg(long)]
    vertex: Option<usize>,
    /// Radii of a family approaching its limit.
    #[arg(long, value_enum, group = "what")]
    convergence: Option<ConvergenceFamily>,
    #[arg(long, value_delimiter = ',', default_values_t = suites::CONVERGENCE_ORDERS.to_vec())]
    orders: Vec<usize>,
}

/// Nonzero exit without an underlying library error, such as a failing suite.
struct Failed(Rendered);

enum CliError {
    Domain(mgspec::Error),
    Io(String),
    Failed(Failed),
}

impl From<mgspec::Error> for CliError {
    fn from(e: mgspec::Error) -> CliError {
        CliError::Domain(e)
    }
}

type CliResult = Result<Rendered, CliError>;

fn read_graph(path: &Path) -> Result<MixedGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_mg(&text)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn rho(file: &Path) -> CliResult {
    let r = spectrum(&read_graph(file)?)?.rho();
    Ok(Rendered::new(format!("{r:.4}"), json!({ "rho": json_number(r) }), format!("rho\n{}", csv_number(r))))
}

fn spectrum_verb(file: &Path) -> CliResult {
    let s = spectrum(&read_graph(file)?)?;
    let text = s.values().iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join("\n");
    let mut csv = String::from("index,eigenvalue");
    for (i, x) in s.values().iter().enumerate() {
        csv.push_str(&format!("\n{i},{}", csv_number(*x)));
    }
    let record = serde_json::to_value(SpectrumRecord::new(&s)).expect("record serialises");
    Ok(Rendered::new(text, record, csv))
}

fn charpoly_verb(file: &Path, method: Method, vertex: usize) -> CliResult {
    let g = read_graph(file)?;
    let p = match method {
        Method::Exact => charpoly_exact(&g)?,
        Method::Recurrence => charpoly_recurrence(&g, vertex)?,
        Method::Both => {
            let (a, b) = (charpoly_exact(&g)?, charpoly_recurrence(&g, vertex)?);
            if a != b {
                let msg = format!("Berkowitz gives {a} but the recurrence gives {b}");
                return Err(CliError::Failed(Failed(Rendered::new(msg.clone(), json!({ "error": msg }), msg))));
            }
            a
        }
    };
    let mut csv = String::from("power,coefficient");
    for (k, c) in p.coeffs().iter().enumerate() {
        csv.push_str(&format!("\n{k},{c}"));
    }
    Ok(Rendered::new(p.to_string(), json!({ "degree": p.degree(), "coefficients": p.to_json() }), csv))
}

fn weights(file: &Path) -> CliResult {
    let g = read_graph(file)?;
    let ws = weight_signature(&g)?;
    let sig = canonical_signature(&g)?;
    let mut text = format!("signature {sig}");
    let mut csv = String::from("cycle,weight");
    let mut cycles = Vec::new();
    for (c, w) in ws.cycles.iter().zip(&ws.weights) {
        let vs = c.iter().map(|v| v.to_string()).collect::<Vec<_>>();
        text.push_str(&format!("\ncycle {}: {w}", vs.join(" ")));
        csv.push_str(&format!("\n{},{w}", vs.join(" ")));
        cycles.push(json!({ "vertices": c, "weight": w.to_string() }));
    }
    let value = json!({ "signature": sig, "tree_edges": ws.tree_edges, "cycles": cycles });
    Ok(Rendered::new(text, value, csv))
}

fn switch_iso(first: &Path, second: &Path) -> CliResult {
    let (a, b) = (read_graph(first)?, read_graph(second)?);
    Ok(match switching_isomorphic(&a, &b) {
        Some(w) => Rendered::new(
            format!(
                "switching isomorphic: map {:?}{}",
                w.isomorphism,
                if w.conjugated { " after taking the converse" } else { "" }
            ),
            json!({ "isomorphic": true, "isomorphism": w.isomorphism, "conjugated": w.conjugated }),
            "isomorphic\ntrue".into(),
        ),
        None => Rendered::new(
            "not switching isomorphic".into(),
            json!({ "isomorphic": false }),
            "isomorphic\nfalse".into(),
        ),
    })
}

fn family(name: &str, params: &[usize], out: Option<&Path>) -> CliResult {
    let spec = FamilySpec::parse(name, params)?;
    let g = spec.generate()?;
    let mg = format!("# {spec}\n{}", to_mg(&g));
    let r = spectrum(&g)?.rho();
    let text = match out {
        Some(path) => {
            write_file(path, &mg)?;
            format!("wrote {spec} ({} vertices, rho {r:.4}) to {}", g.order(), path.display())
        }
        None => mg.trim_end().to_string(),
    };
    let value = json!({ "family": spec.to_string(), "order": g.order(), "size": g.size(), "rho": json_number(r), "mg": mg });
    let csv = format!("family,order,size,rho\n\"{spec}\",{},{},{}", g.order(), g.size(), csv_number(r));
    Ok(Rendered::new(text, value, csv))
}

fn point_name(p: &LimitPoint) -> String {
    match p.kind {
        limits::LimitKind::Eta(k) => format!("eta_{k}"),
        limits::LimitKind::Zeta(k) => format!("zeta_{k}"),
        limits::LimitKind::Xi => "xi".into(),
        limits::LimitKind::RhoStar => "rho*".into(),
        limits::LimitKind::Custom => "custom".into(),
    }
}

/// Limit values print with 12 decimals in text mode.
fn named_values(rows: Vec<(String, f64, Value)>) -> Rendered {
    let text = if rows.len() == 1 {
        format!("{:.12}", rows[0].1)
    } else {
        rows.iter().map(|(n, v, _)| format!("{n} {v:.12}")).collect::<Vec<_>>().join("\n")
    };
    let mut csv = String::from("name,value");
    for (n, v, _) in &rows {
        csv.push_str(&format!("\n{n},{}", csv_number(*v)));
    }
    let value = Value::Array(rows.into_iter().map(|(_, _, j)| j).collect());
    Rendered::new(text, value, csv)
}

fn point_row(p: &LimitPoint) -> (String, f64, Value) {
    let name = point_name(p);
    let value = json!({
        "name": name,
        "value": json_number(p.value),
        "root": json_number(p.root),
        "polynomial": p.polynomial.to_json(),
    });
    (name, p.value, value)
}

fn limits_verb(a: &LimitArgs) -> CliResult {
    if let Some(family) = a.convergence {
        use mgspec::families::CycleType::Imaginary;
        let (limit, spec): (f64, fn(usize) -> FamilySpec) = match family {
            ConvergenceFamily::Cycle => (2.0, |n| FamilySpec::Cycle(Imaginary, n)),
            ConvergenceFamily::ThreeTadpole => (limits::rho_star(), |n| FamilySpec::Tadpole(Imaginary, 3, n)),
            ConvergenceFamily::NearCycleTadpole => (limits::rho_star(), |n| FamilySpec::Tadpole(Imaginary, n - 1, n)),
        };
        let table = limits::convergence_table(|n| spec(n).generate(), &a.orders, limit)?;
        let mut text = String::from("n rho gap");
        for r in &table.rows {
            text.push_str(&format!("\n{} {:.12} {:.3e}", r.n, r.rho, r.gap));
        }
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|r| json!({ "n": r.n, "rho": json_number(r.rho), "gap": json_number(r.gap) }))
            .collect();
        let value = json!({ "limit": json_number(limit), "rows": rows });
        return Ok(Rendered::new(text, value, table.to_csv().trim_end().to_string()));
    }
    let mut rows = Vec::new();
    if let Some(k) = a.eta {
        rows.push(point_row(&limits::eta(k)?));
    }
    if let Some(k) = a.zeta {
        rows.push(point_row(&limits::zeta(k)));
    }
    if a.xi {
        rows.push(point_row(&limits::xi()));
    }
    if a.rho_star {
        rows.push(point_row(&limits::rho_star_point()));
    }
    if a.set {
        rows.extend(LimitSet::get().points.iter().map(point_row));
    }
    if let Some(file) = &a.hoffman {
        let v = a.vertex.expect("clap enforces --vertex");
        let x = limits::hoffman_limit(&read_graph(file)?, v)?;
        rows.push(("hoffman".into(), x, json!({ "name": "hoffman", "vertex": v, "value": json_number(x) })));
    }
    Ok(named_values(rows))
}

fn hoffman(file: &Path, vertex: usize) -> CliResult {
    let x = limits::hoffman_limit(&read_graph(file)?, vertex)?;
    Ok(named_values(vec![("hoffman".into(), x, json!({ "vertex": vertex, "value": json_number(x) }))]))
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(j) = jobs {
        // Fails only if a pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
}

fn classify(max_order: usize, fast: bool, count_all: bool, report_path: Option<&Path>, jobs: Option<usize>) -> CliResult {
    set_jobs(jobs);
    let mode = if fast { SearchMode::Fast } else { SearchMode::Exhaustive };
    let report = verify_theorem35_with(max_order, VerifyOptions { mode, count_all_classes: count_all })?;
    let json_text = report.to_json(true);
    if let Some(path) = report_path {
        write_file(path, &json_text)?;
    }
    let mut text = String::from("order graphs classes c4-free survivors boundary host-subgraphs");
    let mut csv = String::from("order,underlying_graphs,classes,negative_c4_free_classes,survivors,boundary_cases,host_subgraph_classes");
    for o in &report.orders {
        let classes = o.classes.map_or("-".to_string(), |c| c.to_string());
        text.push_str(&format!(
            "\n{} {} {classes} {} {} {} {}",
            o.order, o.underlying_graphs, o.negative_c4_free_classes, o.survivors, o.boundary_cases, o.host_subgraph_classes
        ));
        csv.push_str(&format!(
            "\n{},{},{},{},{},{},{}",
            o.order,
            o.underlying_graphs,
            o.classes.map_or(String::new(), |c| c.to_string()),
            o.negative_c4_free_classes,
            o.survivors,
            o.boundary_cases,
            o.host_subgraph_classes
        ));
    }
    text.push_str(&format!(
        "\ncounterexamples: {}\nwall time: {:.1}s",
        report.counterexamples.len(),
        report.wall_time_s.unwrap_or(0.0)
    ));
    let rendered = Rendered::new(text, serde_json::from_str(&json_text).expect("report is JSON"), csv);
    if report.verified() {
        Ok(rendered)
    } else {
        Err(CliError::Failed(Failed(rendered)))
    }
}

fn suite_lines(r: &SuiteReport, text: &mut Vec<String>, csv: &mut Vec<String>) {
    for c in &r.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let detail = if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) };
        text.push(format!("{verdict} {} / {}{detail}", r.suite, c.name));
        csv.push(format!("{},\"{}\",{},\"{}\"", r.suite, c.name, c.passed, c.detail.replace('"', "'")));
    }
}

fn verify(suite: Suite, max_order: usize, seed: Option<u64>, samples: usize) -> CliResult {
    let seed = seed.unwrap_or_else(mgspec::sample::seed_from_env);
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut reports = Vec::new();
    let mut theorem = None;
    if wants(Suite::Identities) {
        reports.push(suites::identities()?);
    }
    if wants(Suite::Properties) {
        reports.push(suites::properties(seed, samples)?);
    }
    if wants(Suite::Convergence) {
        reports.push(suites::convergence()?);
    }
    if wants(Suite::Theorem35) {
        let (r, full) = suites::theorem35(max_order)?;
        reports.push(r);
        theorem = Some(full);
    }
    if wants(Suite::Catalog) {
        reports.push(suites::catalog(mgspec::catalog::DEFAULT_ORDER_CAP)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let (mut text, mut csv) = (Vec::new(), vec!["suite,check,passed,detail".to_string()]);
    for r in &reports {
        suite_lines(r, &mut text, &mut csv);
    }
    text.push(if passed { "all suites passed".into() } else { "some suites failed".into() });
    let value = match (&theorem, suite) {
        // The characterisation alone prints its full report.
        (Some(full), Suite::Theorem35) => serde_json::from_str(&full.to_json(true)).expect("report is JSON"),
        _ => json!({
            "passed": passed,
            "suites": reports,
            "theorem35": theorem.as_ref().map(|t| serde_json::from_str::<Value>(&t.to_json(true)).expect("report is JSON")),
        }),
    };
    let rendered = Rendered::new(text.join("\n"), value, csv.join("\n"));
    if passed {
        Ok(rendered)
    } else {
        Err(CliError::Failed(Failed(rendered)))
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.verb {
        Verb::Rho { file } => rho(file),
        Verb::Spectrum { file } => spectrum_verb(file),
        Verb::Charpoly { file, method, vertex } => charpoly_verb(file, *method, *vertex),
        Verb::Weights { file } => weights(file),
        Verb::SwitchIso { first, second } => switch_iso(first, second),
        Verb::Family { name, params, out } => family(name, params, out.as_deref()),
        Verb::Limits(a) => limits_verb(a),
        Verb::Hoffman { file, vertex } => hoffman(file, *vertex),
        Verb::Classify { max_order, fast, count_all, report, jobs } => {
            classify(*max_order, *fast, *count_all, report.as_deref(), *jobs)
        }
        Verb::Verify { suite, max_order, seed, samples } => verify(*suite, *max_order, *seed, *samples),
    }
}

/// A closed stdout, as when piped into `head`, is not an error.
fn emit(out: &Rendered, format: Format) {
    let _ = writeln!(io::stdout().lock(), "{}", out.format(format));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(&out, cli.format);
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(Failed(out))) => {
            emit(&out, cli.format);
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn limits_needs_a_target() {
        assert!(Cli::try_parse_from(["mgspec", "limits"]).is_err());
        assert!(Cli::try_parse_from(["mgspec", "limits", "--hoffman", "g.mg"]).is_err());
        assert!(Cli::try_parse_from(["mgspec", "limits", "--eta", "1"]).is_ok());
    }

    #[test]
    fn unknown_verbs_are_rejected() {
        assert!(Cli::try_parse_from(["mgspec", "eigen"]).is_err());
    }
}
