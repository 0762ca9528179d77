//! Command-line front end: generate, analyze, reduce, census, verify and
//! witness, with JSON or table output.
//!
//! Exit codes: 0 success, 1 usage, parse or precondition error,
//! 2 verification failure, 3 resource guard.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use girthcycles::bounds::{bondy_simonovits_limit, verify_theorem, BoundReport, BoundsError};
use girthcycles::census::{count_cycles, CensusError, CycleCensus, DEFAULT_BUDGET};
use girthcycles::generators::{GeneratorError, GeneratorSpec};
use girthcycles::graph::{read_edge_list, write_edge_list};
use girthcycles::reduction::{almost_regular_pipeline, ReductionReport};
use girthcycles::rootview::{constructive_cycle_count, constructive_cycles, RootViewError};
use girthcycles::{DegreeProfile, Graph, GraphError, Vertex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "girthcycles", version, about = "Even-cycle counts in high-girth graphs")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Omit the `generated_at` field from reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    /// Point-line incidence graph of PG(2, q).
    Pg,
    /// Complete bipartite K_{a,b}.
    Kab,
    /// Random graph with short cycles broken.
    Random,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub girth: usize,
    #[arg(long, default_value_t = 3.0)]
    pub avg_degree: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (default: standard output).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BudgetArg {
    /// Work budget for exact enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Girth, degree profile, bipartiteness and edge-bound headroom.
    Analyze {
        input: PathBuf,
        #[arg(short, default_value_t = 2, value_parser = positive)]
        m: usize,
    },
    /// Reduce to a bipartite almost-regular subgraph.
    Reduce {
        input: PathBuf,
        #[arg(short, default_value_t = 2, value_parser = positive)]
        m: usize,
        /// Edge density constant (default: e / n^{1+1/m} of the input).
        #[arg(short)]
        c: Option<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Exact cycle counts by length.
    Census {
        input: PathBuf,
        #[arg(short = 'L', long, default_value_t = 10)]
        max_length: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Compare exact counts with the explicit lower bound.
    Verify {
        input: PathBuf,
        #[arg(short, default_value_t = 2, value_parser = positive)]
        m: usize,
        #[arg(short = 'M', long = "max-ell", default_value_t = 4)]
        max_ell: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Deduplicated cycles produced by the layer-path construction.
    Witness {
        input: PathBuf,
        #[arg(short, default_value_t = 2, value_parser = positive)]
        m: usize,
        #[arg(short = 'l', long)]
        ell: usize,
        /// Write the witness cycles here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Count without materializing cycles.
        #[arg(long, conflicts_with = "output")]
        count_only: bool,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    RootView(#[from] RootViewError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Census(CensusError::BudgetExceeded { .. })
            | CliError::Bounds(BoundsError::Census(CensusError::BudgetExceeded { .. })) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

/// What a command prints and the exit code it asks for.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

/// Runs `cli` on a pool of `--threads` workers.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t as usize);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = Context {
        format: cli.format,
        timestamp: (!cli.no_timestamp).then(unix_now),
    };
    match &cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Analyze { input, m } => cmd_analyze(&ctx, input, *m),
        Command::Reduce { input, m, c, output } => cmd_reduce(&ctx, input, *m, *c, output),
        Command::Census { input, max_length, budget } => cmd_census(&ctx, input, *max_length, budget.budget),
        Command::Verify { input, m, max_ell, budget } => cmd_verify(&ctx, input, *m, *max_ell, budget.budget),
        Command::Witness { input, m, ell, output, count_only } => {
            cmd_witness(&ctx, input, *m, *ell, output.as_deref(), *count_only)
        }
    }
}

struct Context {
    format: Format,
    timestamp: Option<u64>,
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
    #[serde(flatten)]
    body: &'a T,
}

impl Context {
    fn json<T: Serialize>(&self, body: &T) -> String {
        let envelope = Envelope {
            generated_at: self.timestamp,
            body,
        };
        let mut s = serde_json::to_string_pretty(&envelope).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn load(path: &Path) -> Result<Graph, CliError> {
    Ok(read_edge_list(path)?.graph)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for family {family}")))
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<Outcome, CliError> {
    let spec = match args.family {
        Family::Cycle => GeneratorSpec::Cycle {
            n: require(args.n, "n", "cycle")?,
        },
        Family::Pg => GeneratorSpec::ProjectivePlaneIncidence {
            q: require(args.q, "q", "pg")?,
        },
        Family::Kab => GeneratorSpec::CompleteBipartite {
            a: require(args.a, "a", "kab")?,
            b: require(args.b, "b", "kab")?,
        },
        Family::Random => GeneratorSpec::RandomGirthEnforced {
            n: require(args.n, "n", "random")?,
            girth: args.girth,
            avg_degree: args.avg_degree,
            seed: args.seed,
        },
    };
    let generated = spec.generate()?;
    let text = write_edge_list(&generated.graph, &generated.comments());
    match &args.output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome::ok(format!(
                "wrote {} (n = {}, e = {})\n",
                path.display(),
                generated.graph.num_vertices(),
                generated.graph.num_edges()
            )))
        }
        None => Ok(Outcome::ok(text)),
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub edges: usize,
    pub m: usize,
    pub girth: Option<usize>,
    pub girth_exceeds_2m: bool,
    pub bipartite: bool,
    pub regular: bool,
    pub degree_profile: DegreeProfile,
    pub edge_limit: f64,
    /// `edge_limit / edges`.
    pub headroom: Option<f64>,
    pub below_edge_limit: bool,
}

pub fn analyze(g: &Graph, m: usize) -> AnalyzeReport {
    let girth = g.girth();
    let limit = bondy_simonovits_limit(g.num_vertices(), m);
    let edges = g.num_edges();
    AnalyzeReport {
        n: g.num_vertices(),
        edges,
        m,
        girth,
        girth_exceeds_2m: girth.is_none_or(|girth| girth > 2 * m),
        bipartite: g.is_bipartite(),
        regular: g.min_degree() == g.max_degree(),
        degree_profile: g.degree_profile(m),
        edge_limit: limit,
        headroom: (edges > 0).then(|| limit / edges as f64),
        below_edge_limit: (edges as f64) < limit,
    }
}

fn cmd_analyze(ctx: &Context, input: &Path, m: usize) -> Result<Outcome, CliError> {
    let report = analyze(&load(input)?, m);
    let out = match ctx.format {
        Format::Json => ctx.json(&report),
        Format::Table => {
            let p = &report.degree_profile;
            let girth = report.girth.map_or("inf".to_string(), |g| g.to_string());
            let mut s = String::new();
            let _ = writeln!(s, "vertices        {}", report.n);
            let _ = writeln!(s, "edges           {}", report.edges);
            let _ = writeln!(s, "girth           {girth}");
            let _ = writeln!(s, "bipartite       {}", report.bipartite);
            let _ = writeln!(s, "degrees         {}..{}", p.min_degree, p.max_degree);
            let _ = writeln!(s, "c1, c2 (m={m})    {:.4}, {:.4}", p.c1, p.c2);
            let _ = writeln!(s, "edge limit      {:.4e}", report.edge_limit);
            let _ = writeln!(s, "below limit     {}", report.below_edge_limit);
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_reduce(ctx: &Context, input: &Path, m: usize, c: Option<f64>, output: &Path) -> Result<Outcome, CliError> {
    let g = load(input)?;
    let c = match c {
        Some(c) if c > 0.0 && c.is_finite() => c,
        Some(c) => return Err(CliError::Usage(format!("c must be positive, got {c}"))),
        None => {
            let n = g.num_vertices() as f64;
            let measured = g.num_edges() as f64 / n.powf(1.0 + 1.0 / m as f64);
            // An edgeless input still needs a positive constant.
            if measured > 0.0 {
                measured
            } else {
                1.0
            }
        }
    };
    let out = almost_regular_pipeline(&g, m, c);
    let mut comments = vec![format!("reduced: m={m} c={c}")];
    let ids: Vec<String> = out.new_to_old.iter().map(Vertex::to_string).collect();
    comments.push(format!("origin: {}", ids.join(" ")));
    write_file(output, &write_edge_list(&out.graph, &comments))?;
    let text = match ctx.format {
        Format::Json => ctx.json(&out.report),
        Format::Table => reduction_table(&out.report),
    };
    Ok(Outcome::ok(text))
}

fn reduction_table(r: &ReductionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:>8} {:>8} {:>8} {:>8} {:>6} {:>12}",
        "stage", "v_in", "v_out", "e_in", "e_out", "iters", "threshold"
    );
    for st in &r.stages {
        let threshold = st.threshold.map_or("-".to_string(), |t| format!("{t:.4}"));
        let _ = writeln!(
            s,
            "{:<16} {:>8} {:>8} {:>8} {:>8} {:>6} {:>12}",
            st.stage, st.vertices_before, st.vertices_after, st.edges_before, st.edges_after, st.iterations, threshold
        );
    }
    for check in &r.checks {
        let _ = writeln!(s, "check {}: {} ({})", check.name, check.holds, check.detail);
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

/// Census as `{"length": count}` with lengths in increasing order.
pub fn census_json(census: &CycleCensus) -> String {
    let map: serde_json::Map<String, serde_json::Value> = census
        .counts
        .iter()
        .map(|(len, count)| (len.to_string(), (*count).into()))
        .collect();
    let mut s = serde_json::to_string(&map).expect("census serializes");
    s.push('\n');
    s
}

fn cmd_census(ctx: &Context, input: &Path, max_length: usize, budget: u64) -> Result<Outcome, CliError> {
    let census = count_cycles(&load(input)?, max_length, budget)?;
    let out = match ctx.format {
        // The bare map: reproducible without a timestamp.
        Format::Json => census_json(&census),
        Format::Table => {
            let mut s = format!("{:>6} {:>14}\n", "length", "cycles");
            for (len, count) in &census.counts {
                let _ = writeln!(s, "{len:>6} {count:>14}");
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}

pub fn bound_table(r: &BoundReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, e = {}, m = {}, c1 = {:.4}, c2 = {:.4}",
        r.n, r.edges, r.m, r.constants_used.c1, r.constants_used.c2
    );
    let _ = writeln!(
        s,
        "{:>4} {:>6} {:>12} {:>12} {:>14} {:>14} {:>5}",
        "ell", "length", "alpha", "bound", "exact", "witness", "pass"
    );
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{:>4} {:>6} {:>12} {:>12} {:>14} {:>14} {:>5}",
            row.ell,
            row.length,
            row.alpha.map_or("-".to_string(), |a| format!("{a:.4e}")),
            row.bound.map_or("-".to_string(), |b| format!("{b:.4e}")),
            row.exact,
            fmt_opt(row.witness),
            row.pass
        );
    }
    for c in &r.caveats {
        let _ = writeln!(s, "note: {c}");
    }
    s
}

fn cmd_verify(ctx: &Context, input: &Path, m: usize, max_ell: usize, budget: u64) -> Result<Outcome, CliError> {
    let report = verify_theorem(&load(input)?, m, max_ell, budget)?;
    let code = if report.all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let stdout = match ctx.format {
        Format::Json => ctx.json(&report),
        Format::Table => bound_table(&report),
    };
    Ok(Outcome { stdout, code })
}

#[derive(Serialize)]
struct WitnessFile<'a> {
    m: usize,
    ell: usize,
    count: usize,
    cycles: &'a [Vec<Vertex>],
}

fn cmd_witness(
    ctx: &Context,
    input: &Path,
    m: usize,
    ell: usize,
    output: Option<&Path>,
    count_only: bool,
) -> Result<Outcome, CliError> {
    let g = load(input)?;
    let stdout = if count_only {
        let tally = constructive_cycle_count(&g, m, ell)?;
        match ctx.format {
            Format::Json => ctx.json(&tally),
            Format::Table => format!("{} witnesses of length {}\n", tally.distinct, 2 * ell),
        }
    } else {
        let set = constructive_cycles(&g, m, ell)?;
        if let Some(path) = output {
            let file = WitnessFile {
                m,
                ell,
                count: set.cycles.len(),
                cycles: &set.cycles,
            };
            write_file(path, &ctx.json(&file))?;
        }
        match ctx.format {
            Format::Json => {
                #[derive(Serialize)]
                struct Summary {
                    m: usize,
                    ell: usize,
                    count: usize,
                    triples: u64,
                    attempted: u64,
                    exceptions: u64,
                    max_exceptions_per_path: u64,
                    max_multiplicity: u64,
                }
                ctx.json(&Summary {
                    m,
                    ell,
                    count: set.cycles.len(),
                    triples: set.triples,
                    attempted: set.attempted,
                    exceptions: set.exceptions,
                    max_exceptions_per_path: set.max_exceptions_per_path,
                    max_multiplicity: set.max_multiplicity,
                })
            }
            Format::Table => format!("{} witnesses of length {}\n", set.cycles.len(), 2 * ell),
        }
    };
    Ok(Outcome::ok(stdout))
}
