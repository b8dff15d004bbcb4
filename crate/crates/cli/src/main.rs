use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linkscope_core::edgelist::{parse_edge_list, write_edge_list};
use linkscope_core::expansion::{link_expansion_profile, LinkExpansionProfile, DEFAULT_EXACT_CAP};
use linkscope_core::generators::FamilySpec;
use linkscope_core::link::{link_degree_profile, min_link_degree, LinkReport, Mode};
use linkscope_core::theorems::{conjecture_explorer, sweep, ExploreRow, Source, SweepReport, TheoremId};
use linkscope_core::Graph;

#[derive(Parser)]
#[command(name = "linkscope", version, about = "Link graphs, ball graphs and extremal bounds of regular graphs")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "LINKSCOPE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Link (and ball) degree report of one graph.
    Analyze(AnalyzeArgs),
    /// Build a family member and write its edge list.
    Generate(GenerateArgs),
    /// Run bound checks over samples of a family or a graph file.
    Verify(VerifyArgs),
    /// Run bound checks over every labeled d-regular graph on n vertices.
    Enumerate(EnumerateArgs),
    /// Minimum link expansion along a size ladder of one family.
    Explore(ExploreArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file: vertex count on the first line, then one `u v` pair per line.
    #[arg(long, conflicts_with_all = ["family", "params"])]
    input: Option<PathBuf>,

    #[arg(long, requires = "params")]
    family: Option<String>,

    /// Comma-separated `key=value` pairs, e.g. `n=7,k=2`.
    #[arg(long)]
    params: Option<String>,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sphere,
    Ball,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExploreFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    graph: GraphArgs,

    #[arg(long, value_enum, default_value_t = ModeArg::Sphere)]
    mode: ModeArg,

    /// Also compute the vertex expansion of every link graph.
    #[arg(long)]
    expansion: bool,

    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: String,

    #[arg(long)]
    params: String,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Destination file; the edge list goes to stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Number of seeded samples for stochastic families.
    #[arg(long, default_value_t = 1)]
    samples: usize,

    /// Comma-separated check ids, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,

    #[arg(long)]
    d: usize,

    /// Only connected graphs.
    #[arg(long)]
    connected: bool,

    #[arg(long, default_value = "all")]
    checks: String,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long)]
    family: String,

    #[arg(long, default_value = "")]
    params: String,

    /// Shorthand for `--params k=…`.
    #[arg(long)]
    k: Option<u64>,

    /// Shorthand for `--params t=…`.
    #[arg(long)]
    t: Option<u64>,

    /// Shorthand for `--params d=…`.
    #[arg(long)]
    d: Option<u64>,

    /// Values of the family's size parameter.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u64>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,

    #[arg(long, value_enum, default_value_t = ExploreFormat::Csv)]
    format: ExploreFormat,

    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    /// Bad flags, unreadable input, or a library error.
    Usage(String),
    /// Output was produced and some check failed.
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Explore(a) => cmd_explore(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn family_spec(family: &str, params: &str, seed: u64) -> Result<FamilySpec, Failure> {
    let spec = FamilySpec::parse(family, params)?;
    Ok(if spec.family.is_stochastic() && spec.get("seed").is_none() {
        spec.with_param("seed", seed)
    } else {
        spec
    })
}

/// The graph named by `--input` or `--family/--params`, with a label for reports.
fn load_graph(args: &GraphArgs) -> Result<(Graph, String), Failure> {
    match (&args.input, &args.family, &args.params) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let g = parse_edge_list(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok((g, format!("file {}", path.display())))
        }
        (None, Some(family), Some(params)) => {
            let spec = family_spec(family, params, args.seed)?;
            Ok((spec.build()?, spec.to_string()))
        }
        _ => Err(Failure::Usage("give either --input or --family with --params".into())),
    }
}

fn parse_checks(list: &str) -> Result<Vec<TheoremId>, Failure> {
    if list.trim() == "all" {
        return Ok(TheoremId::SWEEPABLE.to_vec());
    }
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let id: TheoremId = item.parse()?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    if out.is_empty() {
        return Err(Failure::Usage("--checks selects nothing".into()));
    }
    Ok(out)
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let (g, source) = load_graph(&args.graph)?;
    let modes: &[Mode] = match args.mode {
        ModeArg::Sphere => &[Mode::Sphere],
        ModeArg::Ball => &[Mode::Ball],
        ModeArg::Both => &[Mode::Sphere, Mode::Ball],
    };
    let reports: Vec<LinkReport> = modes
        .iter()
        .map(|&m| min_link_degree(&g, m))
        .collect::<Result<_, _>>()?;
    let profile = if modes.contains(&Mode::Sphere) {
        Some(link_degree_profile(&g)?)
    } else {
        None
    };
    let expansion = if args.expansion {
        Some(link_expansion_profile(&g, args.exact_cap, args.graph.seed)?)
    } else {
        None
    };

    let text = match args.format {
        Format::Json => {
            let mut out = json!({
                "source": source,
                "seed": args.graph.seed,
                "n": g.n(),
                "edges": g.edge_count(),
                "reports": reports.iter().map(LinkReport::to_json).collect::<Vec<_>>(),
            });
            if let Some(p) = &profile {
                out["profile"] = serde_json::to_value(p)?;
            }
            if let Some(e) = &expansion {
                out["expansion"] = e.to_json();
            }
            pretty(&out)
        }
        Format::Table => analyze_table(&source, args.graph.seed, &reports, expansion.as_ref()),
    };
    emit(args.output.as_ref(), &text)
}

fn analyze_table(source: &str, seed: u64, reports: &[LinkReport], expansion: Option<&LinkExpansionProfile>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {source} seed={seed}");
    for report in reports {
        let _ = writeln!(s, "{:>6} {:>4} {:>6} {:>8} {:>10} {:>5}", "v", "r", "size", "min_deg", "avg_deg", "comps");
        for rec in &report.links {
            let _ = writeln!(
                s,
                "{:>6} {:>4} {:>6} {:>8} {:>10} {:>5}",
                rec.v,
                rec.r,
                rec.sphere_size,
                rec.min_degree,
                rec.avg_degree().to_string(),
                rec.components
            );
        }
        let _ = writeln!(
            s,
            "summary {}: min {} at (v={}, r={}); n={} diameter={}",
            report.mode, report.global_min, report.witness.v, report.witness.r, report.n, report.diameter
        );
    }
    if let Some(e) = expansion {
        let _ = writeln!(s, "{:>6} {:>4} {:>6} {:>10} {:>6} {:>5}", "v", "r", "size", "h", "exact", "comps");
        for rec in &e.records {
            let h = rec.h().map_or_else(|| "-".to_string(), |h| h.to_string());
            let _ = writeln!(s, "{:>6} {:>4} {:>6} {:>10} {:>6} {:>5}", rec.v, rec.r, rec.size, h, rec.exact, rec.components);
        }
        let min = e.global_min().map_or_else(|| "undefined".to_string(), |h| h.to_string());
        let _ = writeln!(s, "summary expansion: min h {min}");
    }
    s
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let spec = family_spec(&args.family, &args.params, args.seed)?;
    let g = spec.build()?;
    emit(args.output.as_ref(), &write_edge_list(&g))?;
    let d = g.regular_degree().map_or_else(|| "irregular".to_string(), |d| d.to_string());
    let diameter = g.diameter().map_or_else(|| "infinite".to_string(), |d| d.to_string());
    eprintln!("{spec}: n={} edges={} d={d} diameter={diameter} seed={}", g.n(), g.edge_count(), spec.seed());
    Ok(())
}

fn sweep_output(report: &SweepReport, seed: Option<u64>, format: Format, output: Option<&PathBuf>) -> CmdResult {
    let text = match format {
        Format::Json => {
            let mut out = json!({
                "source": report.source,
                "graphs": report.graphs,
                "failed": report.failed(),
                "checks": serde_json::to_value(&report.checks)?,
            });
            if let Some(seed) = seed {
                out["seed"] = json!(seed);
            }
            pretty(&out)
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "# {}", report.source);
            let _ = writeln!(s, "{:<22} {:>9} {:>11} {:>9} {:>7}", "check", "graphs", "applicable", "passed", "failed");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{:<22} {:>9} {:>11} {:>9} {:>7}",
                    c.check.name(),
                    c.graphs,
                    c.applicable,
                    c.passed,
                    c.failed
                );
            }
            for c in report.checks.iter().filter(|c| c.counterexample.is_some()) {
                let _ = write!(s, "counterexample for {}:\n{}", c.check.name(), c.counterexample.as_deref().unwrap_or(""));
            }
            s
        }
    };
    emit(output, &text)?;
    if report.failed() > 0 {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let checks = parse_checks(&args.checks)?;
    let seed = args.graph.seed;
    let source = match (&args.graph.input, &args.graph.family, &args.graph.params) {
        (Some(_), _, _) => {
            let (g, _) = load_graph(&args.graph)?;
            Source::Graphs(vec![g])
        }
        (None, Some(family), Some(params)) => Source::Family {
            spec: FamilySpec::parse(family, params)?,
            samples: args.samples,
            seed,
        },
        _ => return Err(Failure::Usage("give either --input or --family with --params".into())),
    };
    let mut report = sweep(&source, &checks)?;
    if let Some(path) = &args.graph.input {
        report.source = format!("file {}", path.display());
    }
    sweep_output(&report, Some(seed), args.format, args.output.as_ref())
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    let checks = parse_checks(&args.checks)?;
    let source = Source::Enumeration {
        n: args.n,
        d: args.d,
        connected_only: args.connected,
    };
    let report = sweep(&source, &checks)?;
    sweep_output(&report, None, args.format, args.output.as_ref())
}

fn cmd_explore(args: ExploreArgs) -> CmdResult {
    let family = args.family.parse::<linkscope_core::generators::Family>()?;
    let mut params: Vec<String> = args
        .params
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect();
    for (key, value) in [("k", args.k), ("t", args.t), ("d", args.d)] {
        if let Some(v) = value {
            params.push(format!("{key}={v}"));
        }
    }
    let size_key = family.size_key();
    if !params.iter().any(|p| p.split('=').next().map(str::trim) == Some(size_key)) {
        params.push(format!("{size_key}={}", args.sizes[0]));
    }
    let spec = FamilySpec::parse(family.name(), &params.join(","))?;
    let rows = conjecture_explorer(&spec, &args.sizes, args.exact_cap, args.seed)?;

    let text = match args.format {
        ExploreFormat::Json => pretty(&json!({
            "family": spec.to_string(),
            "size_key": size_key,
            "seed": args.seed,
            "exact_cap": args.exact_cap,
            "rows": serde_json::to_value(&rows)?,
        })),
        ExploreFormat::Csv => explore_csv(&rows),
    };
    emit(args.output.as_ref(), &text)
}

fn explore_csv(rows: &[ExploreRow]) -> String {
    let mut s = String::from(
        "size,n,d,diameter,min_link_expansion,min_link_expansion_f64,exact,defined_links,disconnected_links,disconnected_fraction,zero,seed\n",
    );
    for row in rows {
        let h = row.min_link_expansion();
        let float = |r: num_rational::Ratio<u64>| format!("{:.6}", *r.numer() as f64 / *r.denom() as f64);
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            row.size,
            row.n,
            row.d.map_or_else(String::new, |d| d.to_string()),
            row.diameter,
            h.map_or_else(String::new, |h| h.to_string()),
            h.map_or_else(String::new, float),
            row.exact,
            row.defined_links,
            row.disconnected_links,
            row.disconnected_fraction().map_or_else(String::new, float),
            row.zero,
            row.seed
        );
    }
    s
}
