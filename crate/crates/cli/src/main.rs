//! Command-line front end: build a graph, run the spectral pipeline, and
//! emit JSON / CSV / plain-text reports.
//!
//! Exit codes: 0 success, 1 domain error (validation, negative discriminant,
//! ...), 2 usage error. Diagnostics go to stderr, data to stdout, and
//! identical invocations produce identical output bytes.

mod render;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use adiasearch::evolve::evolve;
use adiasearch::gap::{GapModel, Quantity};
use adiasearch::graph::{Family, Graph};
use adiasearch::jsonfmt::to_json_string;
use adiasearch::poly::PolynomialTable;
use adiasearch::schedule::local_schedule;
use adiasearch::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use render::{cell, cell_exact, comparison_table, csv, kv_table, list, ComparisonRow};
use report::{
    build_report, graph_section, lanczos_section, spectrum_section, ExactScheduleSection,
    MinimumSection, Pipeline, Report, ReportConfig,
};

#[derive(Parser)]
#[command(
    name = "adiasearch",
    version,
    about = "Adiabatic search-time estimation on regular graphs",
    long_about = "Computes the Krylov reduction, Jacobi spectrum, perturbative gap model, \
                  exact gaps, local adiabatic schedules and Schrödinger evolution for a \
                  marked-vertex search on a regular connected graph."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the graph (vertices, degree, edges)
    Describe(CommonArgs),
    /// Jacobi coefficients, eigenvalues and spectral weights
    Spectrum(CommonArgs),
    /// Monic polynomial coefficients and orthonormal scales
    Polynomials(CommonArgs),
    /// Gap at one point, exact or from the perturbative model
    Gap(GapArgs),
    /// Critical hopping strength of the model at one point
    GammaCrit(PointArgs),
    /// Spectral moments up to 2d-1
    Moments(CommonArgs),
    /// Local adiabatic schedule t(s)
    Schedule(ScheduleArgs),
    /// Propagate the scheduled evolution and trace the fidelity
    Evolve(ScheduleArgs),
    /// Full report: pipeline, model, exact verification, closed-form columns
    Report(ReportArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Graph family: complete | dihedral | mpartite | crown
    #[arg(long)]
    family: Option<String>,
    /// Vertex count for the complete family
    #[arg(long = "N")]
    cap_n: Option<usize>,
    /// Size parameter for the dihedral / mpartite / crown families
    #[arg(long)]
    n: Option<usize>,
    /// Part count for the mpartite family
    #[arg(long)]
    m: Option<usize>,
    /// Path to an edge-list file (two 0-based indices per line, '#' comments)
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Marked vertex
    #[arg(long, default_value_t = 0)]
    marked: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Perturbative,
    Exact,
}

#[derive(Clone, Debug)]
enum GammaSpec {
    Explicit(f64),
    CritAt(f64),
}

fn parse_gamma(text: &str) -> Result<GammaSpec, String> {
    if let Some(rest) = text.strip_prefix("crit@") {
        let s: f64 = rest
            .parse()
            .map_err(|_| format!("invalid crit@ point '{rest}'"))?;
        if !(0.0 < s && s < 1.0) {
            return Err(format!("crit@ point must lie in (0, 1), got {s}"));
        }
        return Ok(GammaSpec::CritAt(s));
    }
    let v: f64 = text
        .parse()
        .map_err(|_| format!("expected a positive number or crit@<s>, got '{text}'"))?;
    if v <= 0.0 {
        return Err(format!("hopping strength must be positive, got {v}"));
    }
    Ok(GammaSpec::Explicit(v))
}

#[derive(Args)]
struct CommonArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Output format (default: json)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct GapArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Which gap to evaluate
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Interpolation point
    #[arg(long, default_value_t = 0.5)]
    s: f64,
    /// Hopping strength: a number or crit@<s>
    #[arg(long, value_parser = parse_gamma, default_value = "crit@0.5")]
    gamma: GammaSpec,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Interpolation point
    #[arg(long, default_value_t = 0.5)]
    s: f64,
}

#[derive(Args)]
struct ScheduleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Gap driving the schedule
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Schedule start point s_min
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    /// Hopping strength: a number or crit@<s>
    #[arg(long, value_parser = parse_gamma, default_value = "crit@0.5")]
    gamma: GammaSpec,
    /// Adiabaticity parameter
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Number of schedule samples
    #[arg(long, default_value_t = 1001)]
    grid: usize,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Adiabaticity parameter
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Hopping strength: a number or crit@<s>
    #[arg(long, value_parser = parse_gamma, default_value = "crit@0.5")]
    gamma: GammaSpec,
    /// Number of schedule samples
    #[arg(long, default_value_t = 1001)]
    grid: usize,
    /// Also propagate the evolution and report the fidelity
    #[arg(long)]
    evolve: bool,
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Describe(args) => describe(args),
        Command::Spectrum(args) => spectrum(args),
        Command::Polynomials(args) => polynomials(args),
        Command::Gap(args) => gap(args),
        Command::GammaCrit(args) => gamma_crit(args),
        Command::Moments(args) => moments(args),
        Command::Schedule(args) => schedule(args),
        Command::Evolve(args) => evolve_verb(args),
        Command::Report(args) => report_verb(args),
    }
}

fn build_graph(args: &GraphArgs) -> Result<Graph, CliError> {
    let forbid = |flag: &str, set: bool| -> Result<(), CliError> {
        if set {
            Err(CliError::Usage(format!(
                "{flag} is not accepted by this graph source"
            )))
        } else {
            Ok(())
        }
    };
    match (&args.family, &args.edges) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--family and --edges are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "one of --family or --edges is required".into(),
        )),
        (None, Some(path)) => {
            forbid("--N", args.cap_n.is_some())?;
            forbid("--n", args.n.is_some())?;
            forbid("--m", args.m.is_some())?;
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Domain(Error::Io(format!("{}: {e}", path.display()))))?;
            Ok(Graph::load_edge_list(&text)?)
        }
        (Some(name), None) => {
            let family = match name.as_str() {
                "complete" => {
                    forbid("--n", args.n.is_some())?;
                    forbid("--m", args.m.is_some())?;
                    let n = args.cap_n.ok_or_else(|| {
                        CliError::Usage("--family complete requires --N".into())
                    })?;
                    Family::Complete { n }
                }
                "dihedral" => {
                    forbid("--N", args.cap_n.is_some())?;
                    forbid("--m", args.m.is_some())?;
                    let n = args
                        .n
                        .ok_or_else(|| CliError::Usage("--family dihedral requires --n".into()))?;
                    Family::Dihedral { n }
                }
                "mpartite" => {
                    forbid("--N", args.cap_n.is_some())?;
                    let m = args
                        .m
                        .ok_or_else(|| CliError::Usage("--family mpartite requires --m".into()))?;
                    let n = args
                        .n
                        .ok_or_else(|| CliError::Usage("--family mpartite requires --n".into()))?;
                    Family::Mpartite { m, n }
                }
                "crown" => {
                    forbid("--N", args.cap_n.is_some())?;
                    forbid("--m", args.m.is_some())?;
                    let n = args
                        .n
                        .ok_or_else(|| CliError::Usage("--family crown requires --n".into()))?;
                    Family::Crown { n }
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown family '{other}' for --family (expected complete | dihedral | \
                         mpartite | crown)"
                    )))
                }
            };
            Ok(Graph::build_family(family)?)
        }
    }
}

fn pipeline(args: &GraphArgs) -> Result<Pipeline, CliError> {
    let graph = build_graph(args)?;
    Ok(Pipeline::new(graph, args.marked)?)
}

fn check_epsilon(epsilon: f64) -> Result<(), CliError> {
    if epsilon <= 0.0 || epsilon >= 1.0 {
        return Err(CliError::Usage(format!(
            "--epsilon must lie strictly between 0 and 1, got {epsilon}"
        )));
    }
    Ok(())
}

fn check_grid(grid: usize) -> Result<(), CliError> {
    if grid < 11 {
        return Err(CliError::Usage(format!(
            "--grid must be at least 11, got {grid}"
        )));
    }
    Ok(())
}

fn resolve_gamma(p: &Pipeline, spec: &GammaSpec) -> f64 {
    match spec {
        GammaSpec::Explicit(v) => *v,
        GammaSpec::CritAt(s) => p.gamma_crit_or_default(*s),
    }
}

fn describe(args: CommonArgs) -> Result<String, CliError> {
    let graph = build_graph(&args.graph)?;
    if args.graph.marked >= graph.vertex_count() {
        return Err(CliError::Domain(Error::VertexOutOfRange {
            index: args.graph.marked,
            len: graph.vertex_count(),
        }));
    }
    let section = graph_section(&graph, args.graph.marked);
    let out = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&section),
        Format::Csv => csv(
            &["key", "value"],
            &[
                vec!["family".into(), section.family.clone()],
                vec!["vertices".into(), section.vertices.to_string()],
                vec!["degree".into(), section.degree.to_string()],
                vec!["edges".into(), section.edges.to_string()],
                vec!["marked".into(), section.marked.to_string()],
            ],
        ),
        Format::Table => kv_table(&[
            ("family".into(), section.family.clone()),
            ("vertices".into(), section.vertices.to_string()),
            ("degree".into(), section.degree.to_string()),
            ("edges".into(), section.edges.to_string()),
            ("marked".into(), section.marked.to_string()),
        ]),
    };
    Ok(out)
}

fn spectrum(args: CommonArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct SpectrumDoc {
        lanczos: report::LanczosSection,
        roots: Vec<f64>,
        norms: Vec<f64>,
        weights: Vec<f64>,
    }
    let p = pipeline(&args.graph)?;
    let spectrum = spectrum_section(&p);
    let doc = SpectrumDoc {
        lanczos: lanczos_section(&p),
        roots: spectrum.roots,
        norms: spectrum.norms,
        weights: spectrum.weights,
    };
    let out = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&doc),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .roots
                .iter()
                .zip(&doc.norms)
                .zip(&doc.weights)
                .enumerate()
                .map(|(i, ((r, n), w))| {
                    vec![i.to_string(), cell_exact(*r), cell_exact(*n), cell_exact(*w)]
                })
                .collect();
            csv(&["level", "root", "norm", "weight"], &rows)
        }
        Format::Table => kv_table(&[
            ("dim".into(), doc.lanczos.dim.to_string()),
            ("marked".into(), doc.lanczos.marked.to_string()),
            ("alphas".into(), list(&doc.lanczos.alphas)),
            ("betas".into(), list(&doc.lanczos.betas)),
            (
                "breakdown_residual".into(),
                cell(doc.lanczos.breakdown_residual),
            ),
            ("roots".into(), list(&doc.roots)),
            ("norms".into(), list(&doc.norms)),
            ("weights".into(), list(&doc.weights)),
        ]),
    };
    Ok(out)
}

fn polynomials(args: CommonArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct PolyDoc {
        dim: usize,
        monic: Vec<Vec<f64>>,
        scales: Vec<f64>,
    }
    let p = pipeline(&args.graph)?;
    let table = PolynomialTable::new(&p.kr);
    let doc = PolyDoc {
        dim: table.dim(),
        monic: (0..=table.dim())
            .map(|k| table.monic_coefficients(k).to_vec())
            .collect(),
        scales: (0..=table.dim()).map(|k| table.orthonormal_scale(k)).collect(),
    };
    let out = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&doc),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .monic
                .iter()
                .enumerate()
                .map(|(k, coeffs)| {
                    vec![
                        k.to_string(),
                        cell_exact(doc.scales[k]),
                        coeffs
                            .iter()
                            .map(|&c| cell_exact(c))
                            .collect::<Vec<_>>()
                            .join(";"),
                    ]
                })
                .collect();
            csv(&["degree", "scale", "coefficients_ascending"], &rows)
        }
        Format::Table => {
            let rows: Vec<(String, String)> = doc
                .monic
                .iter()
                .enumerate()
                .map(|(k, coeffs)| (format!("Q_{k}"), list(coeffs)))
                .collect();
            kv_table(&rows)
        }
    };
    Ok(out)
}

fn gap(args: GapArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct GapDoc {
        mode: &'static str,
        s: f64,
        gamma: f64,
        gap: f64,
    }
    let p = pipeline(&args.graph)?;
    let gamma = resolve_gamma(&p, &args.gamma);
    let (mode, value) = match args.mode {
        Mode::Exact => ("exact", p.reduced().exact_gap(args.s, gamma)?),
        Mode::Perturbative => {
            let model = GapModel::new(&p.st)?;
            ("perturbative", model.gap_perturbative(args.s, gamma)?)
        }
    };
    let doc = GapDoc {
        mode,
        s: args.s,
        gamma,
        gap: value,
    };
    let out = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&doc),
        Format::Csv => csv(
            &["mode", "s", "gamma", "gap"],
            &[vec![
                mode.into(),
                cell_exact(doc.s),
                cell_exact(doc.gamma),
                cell_exact(doc.gap),
            ]],
        ),
        Format::Table => kv_table(&[
            ("mode".into(), mode.into()),
            ("s".into(), cell(doc.s)),
            ("gamma".into(), cell(doc.gamma)),
            ("gap".into(), format!("{}", doc.gap)),
        ]),
    };
    Ok(out)
}

fn gamma_crit(args: PointArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct GammaCritDoc {
        s: f64,
        gamma_crit: f64,
    }
    let p = pipeline(&args.graph)?;
    let model = GapModel::new(&p.st)?;
    let doc = GammaCritDoc {
        s: args.s,
        gamma_crit: model.gamma_crit(args.s)?,
    };
    let out = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&doc),
        Format::Csv => csv(
            &["s", "gamma_crit"],
            &[vec![cell_exact(doc.s), cell_exact(doc.gamma_crit)]],
        ),
        Format::Table => kv_table(&[
            ("s".into(), cell(doc.s)),
            ("gamma_crit".into(), format!("{}", doc.gamma_crit)),
        ]),
    };
    Ok(out)
}

fn moments(args: CommonArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct MomentsDoc {
        marked: usize,
        mmax: usize,
        moments: Vec<f64>,
    }
    let p = pipeline(&args.graph)?;
    let mmax = 2 * p.st.dim() - 1;
    let doc = MomentsDoc {
        marked: p.marked,
        mmax,
        moments: p.st.spectral_moments(mmax),
    };
    let out = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&doc),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .moments
                .iter()
                .enumerate()
                .map(|(m, &v)| vec![m.to_string(), cell_exact(v)])
                .collect();
            csv(&["m", "moment"], &rows)
        }
        Format::Table => {
            let rows: Vec<(String, String)> = doc
                .moments
                .iter()
                .enumerate()
                .map(|(m, &v)| (format!("m={m}"), format!("{v}")))
                .collect();
            kv_table(&rows)
        }
    };
    Ok(out)
}

fn build_schedule(
    p: &Pipeline,
    args: &ScheduleArgs,
) -> Result<(adiasearch::ScheduleResult, f64, &'static str), CliError> {
    check_epsilon(args.epsilon)?;
    check_grid(args.grid)?;
    let gamma = resolve_gamma(p, &args.gamma);
    let rh = p.reduced();
    let sched = match args.mode {
        Mode::Exact => local_schedule(
            |s| rh.exact_gap(s, gamma).unwrap_or(-1.0),
            args.epsilon,
            args.s,
            args.grid,
        )?,
        Mode::Perturbative => {
            let model = GapModel::new(&p.st)?;
            // g_min(s) scales linearly in s; it vanishes at s = 0, so the
            // schedule demands an explicit positive start point there.
            let slope = model.g_min(1.0)?.magnitude;
            local_schedule(|s| slope * s, args.epsilon, args.s, args.grid)?
        }
    };
    let mode = match args.mode {
        Mode::Exact => "exact",
        Mode::Perturbative => "perturbative",
    };
    Ok((sched, gamma, mode))
}

fn schedule(args: ScheduleArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct ScheduleDoc {
        mode: &'static str,
        epsilon: f64,
        s_min: f64,
        gamma: f64,
        grid: usize,
        total_time: f64,
        samples: Vec<adiasearch::schedule::ScheduleSample>,
    }
    let p = pipeline(&args.graph)?;
    let (sched, gamma, mode) = build_schedule(&p, &args)?;
    let doc = ScheduleDoc {
        mode,
        epsilon: args.epsilon,
        s_min: args.s,
        gamma,
        grid: args.grid,
        total_time: sched.total_time(),
        samples: sched.samples().to_vec(),
    };
    let out = match args.format.unwrap_or(Format::Csv) {
        Format::Json => json_line(&doc),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .samples
                .iter()
                .map(|p| vec![cell_exact(p.s), cell_exact(p.t), cell_exact(p.gap)])
                .collect();
            csv(&["s", "t", "gap"], &rows)
        }
        Format::Table => kv_table(&[
            ("mode".into(), mode.into()),
            ("epsilon".into(), cell(doc.epsilon)),
            ("s_min".into(), cell(doc.s_min)),
            ("gamma".into(), cell(doc.gamma)),
            ("samples".into(), doc.samples.len().to_string()),
            ("total_time".into(), format!("{}", doc.total_time)),
        ]),
    };
    Ok(out)
}

fn evolve_verb(args: ScheduleArgs) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct EvolveDoc {
        epsilon: f64,
        gamma: f64,
        total_time: f64,
        final_fidelity: f64,
        norm_drift: f64,
        samples: Vec<adiasearch::evolve::EvolutionSample>,
    }
    let p = pipeline(&args.graph)?;
    let (sched, gamma, _) = build_schedule(&p, &args)?;
    let rh = p.reduced();
    let (coords, _) = p.kr.project_state(&p.graph.uniform_state())?;
    let result = evolve(&rh, gamma, &sched, &coords)?;
    let doc = EvolveDoc {
        epsilon: args.epsilon,
        gamma,
        total_time: sched.total_time(),
        final_fidelity: result.final_fidelity(),
        norm_drift: result.norm_drift(),
        samples: result.trace().to_vec(),
    };
    let out = match args.format.unwrap_or(Format::Csv) {
        Format::Json => json_line(&doc),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .samples
                .iter()
                .map(|p| vec![cell_exact(p.t), cell_exact(p.fidelity), cell_exact(p.norm)])
                .collect();
            csv(&["t", "fidelity", "norm"], &rows)
        }
        Format::Table => kv_table(&[
            ("epsilon".into(), cell(doc.epsilon)),
            ("gamma".into(), cell(doc.gamma)),
            ("total_time".into(), format!("{}", doc.total_time)),
            ("final_fidelity".into(), format!("{}", doc.final_fidelity)),
            ("norm_drift".into(), cell(doc.norm_drift)),
        ]),
    };
    Ok(out)
}

fn report_verb(args: ReportArgs) -> Result<String, CliError> {
    check_epsilon(args.epsilon)?;
    check_grid(args.grid)?;
    let p = pipeline(&args.graph)?;
    let gamma = match &args.gamma {
        GammaSpec::Explicit(v) => Some(*v),
        GammaSpec::CritAt(s) => Some(p.gamma_crit_or_default(*s)),
    };
    let config = ReportConfig {
        epsilon: args.epsilon,
        gamma,
        grid: args.grid,
        evolve: args.evolve,
    };
    let doc = build_report(&p, &config)?;
    let out = match args.format.unwrap_or(Format::Table) {
        Format::Json => json_line(&doc),
        Format::Csv => report_csv(&doc),
        Format::Table => report_table(&doc),
    };
    Ok(out)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut line = to_json_string(value);
    line.push('\n');
    line
}

fn quantity_cell(q: &Quantity, exact: bool) -> String {
    match (q.value, q.error) {
        (Some(v), _) => {
            if exact {
                cell_exact(v)
            } else {
                cell(v)
            }
        }
        (None, Some(code)) => format!("error: {code}"),
        (None, None) => "-".into(),
    }
}

fn minimum_cell(m: &MinimumSection) -> String {
    match (m.value, m.error) {
        (Some(v), _) => cell(v),
        (None, Some(code)) => format!("error: {code}"),
        (None, None) => "-".into(),
    }
}

fn schedule_cell(s: &ExactScheduleSection) -> String {
    match (s.total_time, s.error) {
        (Some(t), _) => format!("{t}"),
        (None, Some(code)) => format!("error: {code}"),
        (None, None) => "-".into(),
    }
}

fn report_table(doc: &Report) -> String {
    let mut out = String::new();
    out.push_str("[graph]\n");
    out.push_str(&kv_table(&[
        ("family".into(), doc.graph.family.clone()),
        ("vertices".into(), doc.graph.vertices.to_string()),
        ("degree".into(), doc.graph.degree.to_string()),
        ("edges".into(), doc.graph.edges.to_string()),
        ("marked".into(), doc.graph.marked.to_string()),
    ]));
    out.push_str("\n[lanczos]\n");
    out.push_str(&kv_table(&[
        ("dim".into(), doc.lanczos.dim.to_string()),
        ("alphas".into(), list(&doc.lanczos.alphas)),
        ("betas".into(), list(&doc.lanczos.betas)),
        (
            "breakdown_residual".into(),
            cell(doc.lanczos.breakdown_residual),
        ),
    ]));
    out.push_str("\n[spectrum]\n");
    out.push_str(&kv_table(&[
        ("roots".into(), list(&doc.spectrum.roots)),
        ("norms".into(), list(&doc.spectrum.norms)),
        ("weights".into(), list(&doc.spectrum.weights)),
    ]));
    out.push_str("\n[gap model]\n");
    out.push_str(&kv_table(&[
        ("term_a".into(), cell(doc.gap_terms.term_a)),
        ("term_b".into(), cell(doc.gap_terms.term_b)),
        ("gamma_crit@0.5".into(), quantity_cell(&doc.gamma_crit, false)),
        ("g_min@1".into(), minimum_cell(&doc.g_min)),
        (
            "t_perturbative".into(),
            quantity_cell(&doc.t_perturbative, false),
        ),
    ]));
    out.push_str("\n[exact schedule]\n");
    let mut rows = vec![
        ("gamma".into(), cell(doc.t_schedule_exact.gamma)),
        (
            "t_schedule_exact".into(),
            schedule_cell(&doc.t_schedule_exact),
        ),
    ];
    if let Some(g) = doc.t_schedule_exact.g_min_exact {
        rows.push(("g_min_exact".into(), cell(g)));
    }
    if let Some(s) = doc.t_schedule_exact.s_star {
        rows.push(("s_star".into(), cell(s)));
    }
    if let Some(a) = doc.t_schedule_exact.asymptotic_complete {
        rows.push(("asymptotic_complete".into(), cell(a)));
    }
    out.push_str(&kv_table(&rows));
    if let Some(f) = &doc.fidelity {
        out.push_str("\n[fidelity]\n");
        out.push_str(&kv_table(&[
            ("epsilon".into(), cell(f.epsilon)),
            ("total_time".into(), format!("{}", f.total_time)),
            ("final_fidelity".into(), format!("{}", f.final_fidelity)),
            ("norm_drift".into(), cell(f.norm_drift)),
        ]));
    }
    if let Some(cmp) = &doc.closed_form_comparison {
        out.push_str("\n[comparison: computed vs closed form]\n");
        let diff_cell = |d: Option<f64>| d.map(cell).unwrap_or_else(|| "-".into());
        let rows = vec![
            ComparisonRow {
                quantity: "term_a",
                computed: quantity_cell(&cmp.computed.term_a, false),
                closed_form: quantity_cell(&cmp.closed_form.term_a, false),
                relative_diff: diff_cell(cmp.relative_diff.term_a),
            },
            ComparisonRow {
                quantity: "term_b",
                computed: quantity_cell(&cmp.computed.term_b, false),
                closed_form: quantity_cell(&cmp.closed_form.term_b, false),
                relative_diff: diff_cell(cmp.relative_diff.term_b),
            },
            ComparisonRow {
                quantity: "gamma_crit",
                computed: quantity_cell(&cmp.computed.gamma_crit, false),
                closed_form: quantity_cell(&cmp.closed_form.gamma_crit, false),
                relative_diff: diff_cell(cmp.relative_diff.gamma_crit),
            },
            ComparisonRow {
                quantity: "g_min",
                computed: quantity_cell(&cmp.computed.g_min, false),
                closed_form: quantity_cell(&cmp.closed_form.g_min, false),
                relative_diff: diff_cell(cmp.relative_diff.g_min),
            },
            ComparisonRow {
                quantity: "search_time",
                computed: quantity_cell(&cmp.computed.search_time, false),
                closed_form: quantity_cell(&cmp.closed_form.search_time, false),
                relative_diff: diff_cell(cmp.relative_diff.search_time),
            },
        ];
        out.push_str(&comparison_table(&rows));
    }
    out
}

fn report_csv(doc: &Report) -> String {
    let value = serde_json::to_value(doc).expect("report serializes");
    let mut rows: Vec<Vec<String>> = Vec::new();
    flatten_value("", &value, &mut rows);
    csv(&["key", "value"], &rows)
}

fn flatten_value(prefix: &str, value: &serde_json::Value, rows: &mut Vec<Vec<String>>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_value(&key, v, rows);
            }
        }
        serde_json::Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(scalar_cell).collect();
            rows.push(vec![prefix.to_string(), cells.join(";")]);
        }
        other => rows.push(vec![prefix.to_string(), scalar_cell(other)]),
    }
}

fn scalar_cell(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::Number(n) if n.is_f64() => cell_exact(n.as_f64().unwrap()),
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => String::new(),
        other => other.to_string(),
    }
}
