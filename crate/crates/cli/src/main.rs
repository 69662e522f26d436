//! `fracpow`: build fractional graph powers, colour them, and check the results.
//!
//! Exit codes: 0 success, 1 a checked object is invalid (e.g. `verify` found
//! violations), 2 invalid input, 3 oracle cap exceeded, 4 internal proof
//! violation.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use fracpow::colouring::{colour_kk, ColourConfig, EngineError};
use fracpow::corpus::corpus_families;
use fracpow::format;
use fracpow::graph::{fractional_power, generate, Family, Graph};
use fracpow::oracle::{
    branch_clique, exact_chromatic, exact_dst, exact_incidence_number, mc_list_transversal, verify_colouring,
    ExclusionStyle, OracleError, DEFAULT_DST_CAP, DEFAULT_VERTEX_CAP,
};
use fracpow::star::{star_forest_decompose, validate};

const BENCH_SCHEMA: &str = "# fracpow-bench v1";

#[derive(Debug)]
enum CliError {
    Check(String),
    Invalid(String),
    Cap(String),
    Proof(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Proof(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Check(m) | CliError::Invalid(m) | CliError::Cap(m) | CliError::Proof(m) => m,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } => CliError::Cap(e.to_string()),
            OracleError::NotAClique(..) => CliError::Proof(e.to_string()),
            OracleError::InvalidK(_) => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::ProofViolation(_) => CliError::Proof(e.to_string()),
            EngineError::InvalidK(_) | EngineError::BudgetExceeded { .. } => CliError::Invalid(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "fracpow",
    version,
    about = "Fractional graph powers G^(m/n) and their colourings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in edge-list format.
    ///
    /// Families: complete N, cycle N, path N, hypercube D, star LEAVES,
    /// empty N, paley Q, random-regular N D, erdos-renyi N P.
    /// Random families require --seed.
    Gen {
        /// Family name.
        family: String,
        /// Family parameters.
        params: Vec<String>,
        /// Seed for random families.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build G^(m/n) from an edge-list file.
    Build {
        /// Base graph, edge-list format.
        input: PathBuf,
        /// Power exponent.
        #[arg(short)]
        m: usize,
        /// Subdivision length (each edge becomes a path of n edges).
        #[arg(short)]
        n: usize,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the role of every vertex (branch / inner / middle).
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Colour G^(k/k) and self-verify the result.
    Colour {
        /// Base graph G, edge-list format.
        input: PathBuf,
        /// Colour G^(k/k); k >= 2.
        #[arg(short, long)]
        k: usize,
        /// Random seed; identical seeds give identical output.
        #[arg(long)]
        seed: u64,
        /// JSON run configuration; explicit flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Lower bound on the initial list length.
        #[arg(long)]
        r_min: Option<usize>,
        /// Fixed initial list length.
        #[arg(long)]
        r_override: Option<usize>,
        /// Resampling rounds allowed per list length.
        #[arg(long)]
        max_rounds: Option<usize>,
        /// List-length doublings before the greedy fallback.
        #[arg(long)]
        max_escalations: Option<usize>,
        /// Merge colour classes after the pipeline.
        #[arg(long)]
        compact: bool,
        /// Colouring output, `vertex colour` lines (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Stats JSON output (stderr if omitted).
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Check a colouring against a graph; exits 1 listing violations if improper.
    Verify {
        /// Graph to check against, edge-list format.
        graph: PathBuf,
        /// Colouring, `vertex colour` lines.
        colouring: PathBuf,
    },
    /// Exact oracles for small instances.
    Exact {
        /// Graph (edge-list) or, for dst, digraph file.
        input: PathBuf,
        /// Which quantity to compute.
        #[arg(long, value_enum, default_value_t = ExactMode::Chromatic)]
        mode: ExactMode,
        /// Size cap: vertices for chromatic, inner vertices for incidence, arcs for dst.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Verified branch clique of G^(k/k) for a base graph, as JSON.
    Clique {
        /// Base graph, edge-list format.
        input: PathBuf,
        /// Power G^(k/k) to take the clique in.
        #[arg(short, long)]
        k: usize,
    },
    /// Monte-Carlo check of the random-list transversal failure bound.
    Mc {
        /// Number of sets.
        #[arg(short, long)]
        k: usize,
        /// Samples per set, drawn from 0..k+r.
        #[arg(short, long)]
        r: usize,
        /// Number of independent trials.
        #[arg(long)]
        trials: u64,
        /// Random seed.
        #[arg(long)]
        seed: u64,
        /// How the excluded pair of each set is chosen.
        #[arg(long, value_enum, default_value_t = Style::FixedPair)]
        style: Style,
        /// Smallest k at which the bound is asserted (exit 4 on failure).
        #[arg(long, default_value_t = 50)]
        assert_from: usize,
        /// TrialStats JSON output (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sweep corpus graphs and emit a CSV table.
    Bench {
        /// Which corpus graphs to sweep.
        #[arg(long, value_enum, default_value_t = BenchCorpus::Small)]
        corpus: BenchCorpus,
        /// Comma-separated k values.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        k: Vec<usize>,
        /// Base seed; entry i uses seed + i.
        #[arg(long)]
        seed: u64,
        /// Vertex cap for the exact chromatic number column.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        exact_cap: usize,
        /// Fill the wall_time column (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
        /// CSV output (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Split a digraph into directed star forests.
    Decompose {
        /// Digraph, `d n m` header then `tail head` lines.
        input: PathBuf,
        /// Decomposition output, `arc class` lines (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactMode {
    /// Chromatic number of the graph.
    Chromatic,
    /// Chromatic number of G^(3/3) restricted to its inner vertices.
    Incidence,
    /// Directed star arboricity of a digraph.
    Dst,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    /// The pair {0, 1} for every set.
    FixedPair,
    /// An independent random pair per set.
    RandomPerSet,
    /// The two most frequent elements, removed from every set.
    AdversarialShared,
}

impl From<Style> for ExclusionStyle {
    fn from(s: Style) -> Self {
        match s {
            Style::FixedPair => ExclusionStyle::FixedPair,
            Style::RandomPerSet => ExclusionStyle::RandomPerSet,
            Style::AdversarialShared => ExclusionStyle::AdversarialShared,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchCorpus {
    /// Corpus graphs with at most 12 vertices.
    Small,
    /// The full corpus.
    Standard,
}

/// Everything that determines a `colour` run; echoed next to the stats.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
struct RunConfig {
    seed: u64,
    #[serde(flatten)]
    colour: ColourConfig,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    format::parse_graph(&read(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> CliResult<T> {
    let raw = params
        .get(i)
        .ok_or_else(|| CliError::Invalid(format!("missing parameter {what}")))?;
    raw.parse()
        .map_err(|_| CliError::Invalid(format!("bad value {raw:?} for {what}")))
}

fn parse_family(name: &str, params: &[String], seed: Option<u64>) -> CliResult<Family> {
    let arity = match name {
        "random-regular" | "erdos-renyi" => 2,
        _ => 1,
    };
    if params.len() != arity {
        return Err(CliError::Invalid(format!(
            "{name} takes {arity} parameter(s), got {}",
            params.len()
        )));
    }
    let seeded = || seed.ok_or_else(|| CliError::Invalid(format!("{name} needs --seed")));
    Ok(match name {
        "complete" => Family::Complete(param(params, 0, "N")?),
        "cycle" => Family::Cycle(param(params, 0, "N")?),
        "path" => Family::Path(param(params, 0, "N")?),
        "hypercube" => Family::Hypercube(param(params, 0, "D")?),
        "star" => Family::Star(param(params, 0, "LEAVES")?),
        "empty" => Family::Empty(param(params, 0, "N")?),
        "paley" => Family::Paley(param(params, 0, "Q")?),
        "random-regular" => Family::RandomRegular {
            n: param(params, 0, "N")?,
            d: param(params, 1, "D")?,
            seed: seeded()?,
        },
        "erdos-renyi" => Family::ErdosRenyi {
            n: param(params, 0, "N")?,
            p: param(params, 1, "P")?,
            seed: seeded()?,
        },
        other => return Err(CliError::Invalid(format!("unknown family {other:?}"))),
    })
}

fn cmd_gen(family: &str, params: &[String], seed: Option<u64>, out: Option<&Path>) -> CliResult<()> {
    let family = parse_family(family, params, seed)?;
    let g = generate(&family).map_err(|e| CliError::Invalid(e.to_string()))?;
    emit(out, &format::emit_graph(&g))
}

fn cmd_build(input: &Path, m: usize, n: usize, out: Option<&Path>, roles: Option<&Path>) -> CliResult<()> {
    if m == 0 || n == 0 {
        return Err(CliError::Invalid("m and n must be positive".into()));
    }
    let fp = fractional_power(&read_graph(input)?, m, n);
    if let Some(path) = roles {
        emit(Some(path), &format::emit_roles(&fp.roles))?;
    }
    emit(out, &format::emit_graph(&fp.graph))
}

#[allow(clippy::too_many_arguments)]
fn cmd_colour(
    input: &Path,
    k: usize,
    seed: u64,
    config: Option<&Path>,
    overrides: (Option<usize>, Option<usize>, Option<usize>, Option<usize>, bool),
    out: Option<&Path>,
    stats_out: Option<&Path>,
) -> CliResult<()> {
    let mut run = match config {
        Some(p) => serde_json::from_str::<RunConfig>(&read(p)?)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?,
        None => RunConfig::default(),
    };
    run.seed = seed;
    let (r_min, r_override, max_rounds, max_escalations, compact) = overrides;
    let c = &mut run.colour;
    c.r_min = r_min.unwrap_or(c.r_min);
    c.r_override = r_override.or(c.r_override);
    c.max_rounds = max_rounds.unwrap_or(c.max_rounds);
    c.max_escalations = max_escalations.unwrap_or(c.max_escalations);
    c.compact |= compact;
    if c.r_min == 0 || c.r_override == Some(0) {
        return Err(CliError::Invalid("list lengths must be positive".into()));
    }

    let g = read_graph(input)?;
    let (assignment, stats) = colour_kk(&g, k, seed, &run.colour)?;
    let fp = fractional_power(&g, k, k);
    let violations = verify_colouring(&fp.graph, &assignment);
    if !violations.is_empty() {
        return Err(CliError::Proof(format!(
            "self-verification failed: {}",
            serde_json::to_string(&violations).expect("serialisable")
        )));
    }
    emit(out, &format::emit_colouring(&assignment))?;
    let text = json(&stats);
    match stats_out {
        Some(p) => emit(Some(p), &text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(graph: &Path, colouring: &Path) -> CliResult<()> {
    let g = read_graph(graph)?;
    let c = format::parse_colouring(&read(colouring)?, g.vertex_count())
        .map_err(|e| CliError::Invalid(format!("{}: {e}", colouring.display())))?;
    let violations = verify_colouring(&g, &c);
    print!("{}", json(&violations));
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("{} violation(s)", violations.len())))
    }
}

fn cmd_exact(input: &Path, mode: ExactMode, cap: Option<usize>) -> CliResult<()> {
    let value = match mode {
        ExactMode::Chromatic => exact_chromatic(&read_graph(input)?, cap.unwrap_or(DEFAULT_VERTEX_CAP))?,
        ExactMode::Incidence => exact_incidence_number(&read_graph(input)?, cap.unwrap_or(DEFAULT_VERTEX_CAP))?,
        ExactMode::Dst => {
            let d = format::parse_digraph(&read(input)?).map_err(|e| CliError::Invalid(e.to_string()))?;
            exact_dst(&d, cap.unwrap_or(DEFAULT_DST_CAP))?
        }
    };
    println!("{value}");
    Ok(())
}

#[derive(Serialize)]
struct CliqueReport {
    k: usize,
    delta: usize,
    size: usize,
    vertices: Vec<usize>,
}

fn cmd_clique(input: &Path, k: usize) -> CliResult<()> {
    let g = read_graph(input)?;
    let vertices = branch_clique(&fractional_power(&g, k.max(1), k.max(1)), k)?;
    let report = CliqueReport {
        k,
        delta: g.max_degree(),
        size: vertices.len(),
        vertices,
    };
    print!("{}", json(&report));
    Ok(())
}

fn cmd_mc(
    k: usize,
    r: usize,
    trials: u64,
    seed: u64,
    style: Style,
    assert_from: usize,
    out: Option<&Path>,
) -> CliResult<()> {
    if k == 0 || r == 0 || k + r < 2 {
        return Err(CliError::Invalid("need k, r >= 1 and k + r >= 2".into()));
    }
    let stats = mc_list_transversal(k, r, style.into(), trials, seed);
    emit(out, &json(&stats))?;
    if k >= assert_from && !stats.consistent_with_bound() {
        return Err(CliError::Proof(format!(
            "{} failures in {} trials exceed the bound {:e}",
            stats.failures, stats.trials, stats.bound
        )));
    }
    Ok(())
}

struct BenchRow {
    family: String,
    n: usize,
    delta: usize,
    k: usize,
    colours_used: usize,
    clique_lb: usize,
    exact_chi: Option<usize>,
    rounds: usize,
    wall_time: Option<f64>,
}

fn bench_row(family: &Family, k: usize, seed: u64, exact_cap: usize, timing: bool) -> CliResult<BenchRow> {
    let g = generate(family).map_err(|e| CliError::Invalid(e.to_string()))?;
    let start = Instant::now();
    let (assignment, stats) = colour_kk(&g, k, seed, &ColourConfig::default())?;
    let elapsed = start.elapsed().as_secs_f64();
    let fp = fractional_power(&g, k, k);
    if !verify_colouring(&fp.graph, &assignment).is_empty() {
        return Err(CliError::Proof(format!("{family} k={k}: improper colouring")));
    }
    let clique_lb = branch_clique(&fp, k)?.len();
    let exact_chi = match exact_chromatic(&fp.graph, exact_cap) {
        Ok(x) => Some(x),
        Err(OracleError::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let row = BenchRow {
        family: family.to_string(),
        n: g.vertex_count(),
        delta: g.max_degree(),
        k,
        colours_used: stats.colours_used,
        clique_lb,
        exact_chi,
        rounds: stats.rounds,
        wall_time: timing.then_some(elapsed),
    };
    let chi = row.exact_chi.unwrap_or(row.clique_lb);
    if !(row.clique_lb <= chi && chi <= row.colours_used) {
        return Err(CliError::Proof(format!(
            "{family} k={k}: clique_lb <= exact_chi <= colours_used fails"
        )));
    }
    Ok(row)
}

fn cmd_bench(
    corpus: BenchCorpus,
    ks: &[usize],
    seed: u64,
    exact_cap: usize,
    timing: bool,
    out: Option<&Path>,
) -> CliResult<()> {
    let families: Vec<Family> = corpus_families()
        .into_iter()
        .filter(|f| match corpus {
            BenchCorpus::Standard => true,
            BenchCorpus::Small => generate(f).is_ok_and(|g| g.vertex_count() <= 12),
        })
        .collect();
    let jobs: Vec<(usize, &Family, usize)> = families
        .iter()
        .enumerate()
        .flat_map(|(i, f)| ks.iter().map(move |&k| (i, f, k)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(i, f, k)| bench_row(f, k, seed.wrapping_add(i as u64), exact_cap, timing))
        .collect::<CliResult<Vec<_>>>()?;
    let mut text = format!("{BENCH_SCHEMA}\nfamily,n,delta,k,colours_used,clique_lb,exact_chi,rounds,wall_time\n");
    for r in rows {
        let chi = r.exact_chi.map(|x| x.to_string()).unwrap_or_default();
        let wall = r.wall_time.map(|t| format!("{t:.6}")).unwrap_or_default();
        writeln!(
            text,
            "{},{},{},{},{},{},{},{},{}",
            r.family, r.n, r.delta, r.k, r.colours_used, r.clique_lb, chi, r.rounds, wall
        )
        .unwrap();
    }
    emit(out, &text)
}

fn cmd_decompose(input: &Path, out: Option<&Path>) -> CliResult<()> {
    let d = format::parse_digraph(&read(input)?).map_err(|e| CliError::Invalid(e.to_string()))?;
    let dec = star_forest_decompose(&d);
    validate(&d, &dec).map_err(|f| CliError::Proof(format!("invalid decomposition: {f:?}")))?;
    if dec.class_count > 3 * d.max_indegree() {
        return Err(CliError::Proof(format!(
            "{} classes exceed three times the maximum indegree {}",
            dec.class_count,
            d.max_indegree()
        )));
    }
    emit(out, &format::emit_decomposition(&dec))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen {
            family,
            params,
            seed,
            out,
        } => cmd_gen(&family, &params, seed, out.as_deref()),
        Command::Build {
            input,
            m,
            n,
            out,
            roles,
        } => cmd_build(&input, m, n, out.as_deref(), roles.as_deref()),
        Command::Colour {
            input,
            k,
            seed,
            config,
            r_min,
            r_override,
            max_rounds,
            max_escalations,
            compact,
            out,
            stats,
        } => cmd_colour(
            &input,
            k,
            seed,
            config.as_deref(),
            (r_min, r_override, max_rounds, max_escalations, compact),
            out.as_deref(),
            stats.as_deref(),
        ),
        Command::Verify { graph, colouring } => cmd_verify(&graph, &colouring),
        Command::Exact { input, mode, cap } => cmd_exact(&input, mode, cap),
        Command::Clique { input, k } => cmd_clique(&input, k),
        Command::Mc {
            k,
            r,
            trials,
            seed,
            style,
            assert_from,
            out,
        } => cmd_mc(k, r, trials, seed, style, assert_from, out.as_deref()),
        Command::Bench {
            corpus,
            k,
            seed,
            exact_cap,
            timing,
            out,
        } => cmd_bench(corpus, &k, seed, exact_cap, timing, out.as_deref()),
        Command::Decompose { input, out } => cmd_decompose(&input, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracpow: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
