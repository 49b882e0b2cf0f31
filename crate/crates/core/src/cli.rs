//! Command-line front end. [`run`] parses arguments, writes the result to
//! `out` and a JSON error record to `err`, and returns the exit code:
//! `0` on success, `1` for invalid input, `2` when a verification fails.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{GaussPoly, GaussRat};
use crate::charts::{self, cyclic_charts, instantiate, verify_chart, verify_cluster_bounded, Chart, ChartVerification, ClusterReport, CyclicChart};
use crate::error::{Error, Result};
use crate::ggraph::{default_bound, enumerate_ggraphs, find_ggraph, multiplicities, quotient_basis, reduce_generators, verify_regular_rep, GGraph, RegularRepReport};
use crate::group::{enumerate_small_groups, irreps, make_group, GroupParams};
use crate::lattice::{hj_expand, newton_boundary, newton_boundary_bruteforce, LatticePoint};
use crate::quiver::{dihedral_mckay, export_dot, relation_set, verify_relations_symbolic, QuiverData};

#[derive(Parser, Debug)]
#[command(name = "bdhilb", version, about = "G-graphs, McKay quivers and G-Hilb charts for BD_2n(a)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Degree bound for quotients and cluster ideals (default 4n).
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Seed for random chart points.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Random points per chart in `verify`.
    #[arg(long, default_value_t = 2, global = true)]
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group invariants and irreducible representations.
    Group { two_n: i64, a: i64 },
    /// All G-graphs with ideals and multiplicities.
    Ggraphs { two_n: i64, a: i64 },
    /// The McKay quiver with relations.
    Quiver {
        two_n: i64,
        a: i64,
        /// Print Graphviz DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Chart records, optionally of one G-graph.
    Charts {
        two_n: i64,
        a: i64,
        /// G-graph id, index or kind label.
        #[arg(long)]
        graph: Option<String>,
    },
    /// The G-cluster ideal at a point of a chart.
    Cluster {
        two_n: i64,
        a: i64,
        /// G-graph id, index or kind label.
        #[arg(long)]
        chart: String,
        /// Values of the free parameters in order, such as `1/2,-1+2/3*i`.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Charts of the cyclic quotient `1/m(1,a)`.
    Cyclic { m: i64, a: i64 },
    /// Every check for one group.
    Verify { two_n: i64, a: i64 },
    /// All supported groups up to a bound.
    Enumerate {
        #[arg(long, default_value_t = 60)]
        max: i64,
    },
}

/// A finished command: what to print and whether its checks passed.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub verified: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, verified: true }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn family(two_n: i64, a: i64) -> Result<GroupParams> {
    let g = make_group(two_n, a)?;
    g.require_family()?;
    Ok(g)
}

fn group_cmd(two_n: i64, a: i64) -> Result<Output> {
    let g = family(two_n, a)?;
    let reps: Vec<Value> = irreps(&g).iter().map(|r| json!({"label": r.label(), "dim": r.dim()})).collect();
    let mut json = to_json(&g);
    json["order"] = json!(g.order());
    json["irreps"] = Value::Array(reps);
    let labels: Vec<String> = irreps(&g).iter().map(|r| r.label()).collect();
    let text = format!(
        "{g}: order {}, n = {}, q = {}, k = {}\nirreps: {}\n",
        g.order(),
        g.n,
        g.q,
        g.k,
        labels.join(" ")
    );
    Ok(Output::ok(json, text))
}

#[derive(Serialize)]
struct GGraphRecord<'a> {
    id: &'a str,
    kind: String,
    points: (LatticePoint, LatticePoint),
    generators: &'a [GaussPoly],
    standard: Vec<String>,
    regular: RegularRepReport,
}

fn ggraph_record<'a>(gg: &'a GGraph, g: &GroupParams, bound: u32) -> Result<GGraphRecord<'a>> {
    let basis = quotient_basis(&gg.ideal, g, bound)?;
    let standard = basis.slots.iter().flat_map(|s| s.polys.iter().map(|p| p.to_string())).collect();
    Ok(GGraphRecord {
        id: &gg.id,
        kind: gg.kind.label(),
        points: gg.points,
        generators: &gg.ideal,
        standard,
        regular: verify_regular_rep(&basis, g),
    })
}

fn ggraphs_cmd(g: &GroupParams, bound: u32) -> Result<Output> {
    let graphs = enumerate_ggraphs(g)?;
    let records: Vec<GGraphRecord> = graphs.iter().map(|gg| ggraph_record(gg, g, bound)).collect::<Result<_>>()?;
    let mut text = String::new();
    for r in &records {
        let gens: Vec<String> = r.generators.iter().map(|p| p.to_string()).collect();
        text.push_str(&format!("{}\n  ideal: ({})\n  dim {}, regular {}\n", r.id, gens.join(", "), r.regular.dimension, r.regular.ok));
    }
    let verified = records.iter().all(|r| r.regular.ok);
    Ok(Output { json: to_json(&records), text, verified })
}

fn quiver_json(qd: &QuiverData, g: &GroupParams) -> Result<Value> {
    let rels: Vec<String> = relation_set(g, qd)?.iter().map(|r| r.render(qd)).collect();
    let mut json = to_json(qd);
    json["relations"] = json!(rels);
    json["relations_verified"] = json!(verify_relations_symbolic(g)?.ok);
    Ok(json)
}

fn quiver_cmd(g: &GroupParams, dot: bool) -> Result<Output> {
    let qd = dihedral_mckay(g)?;
    let json = quiver_json(&qd, g)?;
    let text = if dot {
        export_dot(&qd)
    } else {
        let mut s = format!("{}: {} vertices, {} arrows\n", qd.name, qd.vertices.len(), qd.arrows.len());
        for a in &qd.arrows {
            s.push_str(&format!("  {}: {} -> {}\n", a.name, qd.vertices[a.tail].name, qd.vertices[a.head].name));
        }
        s.push_str("relations:\n");
        for r in json["relations"].as_array().into_iter().flatten() {
            s.push_str(&format!("  {}\n", r.as_str().unwrap_or_default()));
        }
        s
    };
    let verified = json["relations_verified"].as_bool() == Some(true);
    Ok(Output { json, text, verified })
}

fn chart_text(c: &Chart) -> String {
    let mut s = format!("{}\n  free: {}\n", c.ggraph, c.free_params.join(", "));
    for e in &c.equations_display {
        s.push_str(&format!("  equation: {e}\n"));
    }
    for e in &c.implied_equations {
        s.push_str(&format!("  implied: {e} = 0\n"));
    }
    for (v, p) in &c.bindings {
        s.push_str(&format!("  {v} = {p}\n"));
    }
    let origin: Vec<String> = c.origin.iter().map(|(v, x)| format!("{v}={x}")).collect();
    s.push_str(&format!("  origin: {}\n", origin.join(", ")));
    s
}

fn selected_graphs(g: &GroupParams, graph: Option<&str>) -> Result<Vec<GGraph>> {
    let graphs = enumerate_ggraphs(g)?;
    match graph {
        None => Ok(graphs),
        Some(key) => Ok(vec![find_ggraph(&graphs, key)?.clone()]),
    }
}

fn charts_cmd(g: &GroupParams, graph: Option<&str>) -> Result<Output> {
    let charts: Vec<Chart> = selected_graphs(g, graph)?.iter().map(|gg| charts::chart_for(gg, g)).collect::<Result<_>>()?;
    let text = charts.iter().map(chart_text).collect::<Vec<_>>().join("");
    Ok(Output::ok(to_json(&charts), text))
}

/// Parses comma-separated exact values.
pub fn parse_params(s: &str) -> Result<Vec<GaussRat>> {
    s.split(',').map(|t| t.trim().parse()).collect()
}

#[derive(Serialize)]
struct ClusterOutput {
    ggraph: String,
    params: BTreeMap<String, String>,
    dim: usize,
    multiplicities: Vec<(String, usize)>,
    generators: Vec<GaussPoly>,
    report: ClusterReport,
}

fn cluster_cmd(g: &GroupParams, chart_key: &str, params: &str, bound: u32) -> Result<Output> {
    let values = parse_params(params)?;
    let gg = selected_graphs(g, Some(chart_key))?.remove(0);
    let chart = charts::chart_for(&gg, g)?;
    if values.len() != chart.free_params.len() {
        return Err(Error::Invalid(format!(
            "chart {} has {} free parameters ({}), got {} values",
            chart.ggraph,
            chart.free_params.len(),
            chart.free_params.join(", "),
            values.len()
        )));
    }
    let qd = dihedral_mckay(g)?;
    let rep = instantiate(&chart, &qd, &values)?;
    let (report, ideal) = verify_cluster_bounded(g, &qd, &rep, bound)?;
    let (dim, mults, gens) = match &ideal {
        Some(ideal) => {
            let quot = ideal.quotient.as_ref().expect("quotient");
            let mults = multiplicities(quot, g).iter().map(|(r, m)| (r.label(), *m)).collect();
            (ideal.dimension, mults, reduce_generators(&ideal.generators, bound))
        }
        None => (0, Vec::new(), Vec::new()),
    };
    let out = ClusterOutput {
        ggraph: chart.ggraph.clone(),
        params: chart.free_params.iter().cloned().zip(values.iter().map(|v| v.to_string())).collect(),
        dim,
        multiplicities: mults,
        generators: gens,
        report,
    };
    let mut text = format!("{} at {}\n", out.ggraph, out.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", "));
    text.push_str(&format!("  dim {}, ok {}\n", out.dim, out.report.ok));
    if let Some(f) = &out.report.failure {
        text.push_str(&format!("  failure: {f}\n"));
    }
    for p in &out.generators {
        text.push_str(&format!("  {p}\n"));
    }
    let verified = out.report.ok;
    Ok(Output { json: to_json(&out), text, verified })
}

fn cyclic_cmd(m: i64, a: i64) -> Result<Output> {
    let charts: Vec<CyclicChart> = cyclic_charts(m, a)?;
    let mut text = String::new();
    for c in &charts {
        let gens: Vec<String> = c.ideal.iter().map(|p| p.to_string()).collect();
        text.push_str(&format!("{}\n  ideal: ({})\n  free: {}\n", c.ggraph, gens.join(", "), c.free_params.join(", ")));
        for f in &c.free_params {
            if let Some((_, v)) = c.name_map.iter().find(|(n, _)| n == f) {
                text.push_str(&format!("  {f} = {v}\n"));
            }
        }
    }
    Ok(Output::ok(to_json(&charts), text))
}

#[derive(Serialize)]
struct Check {
    name: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct VerifyOutput {
    group: String,
    checks: Vec<Check>,
    ggraphs: Vec<RegularRepReport>,
    charts: Vec<ChartVerification>,
    ok: bool,
}

fn verify_cmd(g: &GroupParams, opts: &GlobalOpts) -> Result<Output> {
    let bound = opts.max_degree.unwrap_or_else(|| default_bound(g));
    let mut checks = Vec::new();
    let newton = newton_boundary(g)?;
    let brute = newton_boundary_bruteforce(g, g.two_n);
    checks.push(Check { name: "newton boundary".into(), ok: newton == brute, detail: None });
    let hj = hj_expand(g.two_n, g.two_n - g.a)?;
    checks.push(Check { name: "palindromic expansion".into(), ok: hj.is_palindrome(), detail: Some(format!("{:?}", hj.digits)) });
    let rel = verify_relations_symbolic(g)?;
    checks.push(Check { name: "relations".into(), ok: rel.ok, detail: rel.residues.first().map(|r| format!("{} -> {}", r.0, r.1)) });
    let graphs = enumerate_ggraphs(g)?;
    let mut regular = Vec::new();
    for gg in &graphs {
        let mut r = verify_regular_rep(&quotient_basis(&gg.ideal, g, bound)?, g);
        r.offending = r.offending.map(|o| format!("{}: {o}", gg.id));
        regular.push(r);
    }
    let sum_sq: usize = irreps(g).iter().map(|r| r.dim() * r.dim()).sum();
    checks.push(Check { name: "sum of squared dimensions".into(), ok: sum_sq == g.order() as usize, detail: Some(sum_sq.to_string()) });
    let qd = dihedral_mckay(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut charts_out = Vec::new();
    for gg in &graphs {
        let chart = charts::chart_for(gg, g)?;
        let shape = chart.dimension_count() == 2;
        checks.push(Check { name: format!("chart shape {}", gg.id), ok: shape, detail: None });
        charts_out.push(verify_chart(&chart, gg, g, &qd, opts.samples, &mut rng)?);
    }
    let ok = checks.iter().all(|c| c.ok) && regular.iter().all(|r| r.ok) && charts_out.iter().all(|c| c.ok);
    let mut text = format!("{g}: {} G-graphs\n", graphs.len());
    for c in &checks {
        text.push_str(&format!("  {} {}\n", if c.ok { "ok  " } else { "FAIL" }, c.name));
    }
    for (gg, r) in graphs.iter().zip(&regular) {
        text.push_str(&format!("  {} regular {}\n", if r.ok { "ok  " } else { "FAIL" }, gg.id));
    }
    for c in &charts_out {
        text.push_str(&format!(
            "  {} chart {} (origin {}, {}/{} {} samples)\n",
            if c.ok { "ok  " } else { "FAIL" },
            c.ggraph,
            c.origin_is_graph_ideal,
            c.samples_checked,
            c.samples_requested,
            c.sampling
        ));
        for f in &c.failures {
            text.push_str(&format!("       {f}\n"));
        }
    }
    text.push_str(if ok { "verified\n" } else { "verification failed\n" });
    let out = VerifyOutput { group: g.to_string(), checks, ggraphs: regular, charts: charts_out, ok };
    Ok(Output { json: to_json(&out), text, verified: ok })
}

fn enumerate_cmd(max: i64) -> Result<Output> {
    if max < 4 {
        return Err(Error::Invalid(format!("--max must be at least 4, got {max}")));
    }
    let groups = enumerate_small_groups(max);
    let text = groups.iter().map(|g| format!("{g}  n={} q={} k={}\n", g.n, g.q, g.k)).collect();
    Ok(Output::ok(to_json(&groups), text))
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    let opts = &cli.global;
    let bound_of = |g: &GroupParams| opts.max_degree.unwrap_or_else(|| default_bound(g));
    match &cli.command {
        Command::Group { two_n, a } => group_cmd(*two_n, *a),
        Command::Ggraphs { two_n, a } => {
            let g = family(*two_n, *a)?;
            ggraphs_cmd(&g, bound_of(&g))
        }
        Command::Quiver { two_n, a, dot } => quiver_cmd(&family(*two_n, *a)?, *dot),
        Command::Charts { two_n, a, graph } => charts_cmd(&family(*two_n, *a)?, graph.as_deref()),
        Command::Cluster { two_n, a, chart, params } => {
            let g = family(*two_n, *a)?;
            cluster_cmd(&g, chart, params, bound_of(&g))
        }
        Command::Cyclic { m, a } => cyclic_cmd(*m, *a),
        Command::Verify { two_n, a } => verify_cmd(&family(*two_n, *a)?, opts),
        Command::Enumerate { max } => enumerate_cmd(*max),
    }
}

fn error_kind(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Parse(_) => ("parse", 1),
        Error::Invalid(_) => ("invalid", 1),
        Error::Unsupported(_) => ("unsupported", 1),
        Error::Verification(_) => ("verification", 2),
    }
}

fn write_error(err: &mut dyn Write, kind: &str, message: &str) {
    let record = json!({"error": {"kind": kind, "message": message}});
    let _ = writeln!(err, "{record}");
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{e}");
                return 0;
            }
            write_error(err, "usage", e.to_string().trim());
            return 1;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let dot = matches!(cli.command, Command::Quiver { dot: true, .. });
            let printed = match (cli.global.format, dot) {
                (_, true) | (Format::Text, _) => output.text,
                (Format::Json, false) => format!("{}\n", serde_json::to_string_pretty(&output.json).expect("json")),
            };
            let _ = out.write_all(printed.as_bytes());
            if output.verified {
                0
            } else {
                write_error(err, "verification", "one or more checks failed");
                2
            }
        }
        Err(e) => {
            let (kind, code) = error_kind(&e);
            write_error(err, kind, &e.to_string());
            code
        }
    }
}
