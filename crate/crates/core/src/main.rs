//! JSON-pipeline command-line front end.
//!
//! Thin dispatch over the library: every subcommand reads and writes single
//! JSON documents so that generators, verifiers, and searches compose with
//! ordinary shell pipes. Exit codes: 0 success or passing verdict, 1
//! predicate violation or bound-guard trip, 2 usage or format error.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use extremal::coloring::{self, CoverStrategy};
use extremal::constructions;
use extremal::error::Error;
use extremal::metric::{embed_l1_to_linf, Configuration, MetricKind, Point};
use extremal::poset::{certify_odd_bound, dilworth_decompose, longest_chain, ComparabilityRelation};
use extremal::scalar::Scalar;
use extremal::search::{self, CandidateGrid, SearchOptions};
use extremal::verify;

#[derive(Parser)]
#[command(name = "extremal", version, about = "Exact toolkit for extremal point configurations")]
struct Cli {
    /// Suppress standard output; communicate through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named construction as configuration JSON.
    Generate {
        #[arg(value_enum)]
        preset: Preset,
        /// Size parameter of the construction.
        #[arg(long)]
        n: usize,
        /// Modulus for grid-mod-k.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Check a predicate against a configuration; exit 1 with a witness on
    /// violation.
    Verify {
        #[arg(value_enum)]
        predicate: Predicate,
        /// Configuration JSON file; standard input when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Modulus for not-divisible.
        #[arg(long)]
        k: Option<u64>,
        /// Re-tag the configuration with this metric before checking.
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
    },
    /// Emit the dominance-order edges, longest chain, and Dilworth
    /// decomposition of a max-norm configuration.
    Poset {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Emit the recursive odd-distance bound certificate.
    Certify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Exhaustive searches over finite candidate grids.
    Search {
        #[command(subcommand)]
        mode: SearchMode,
    },
    /// Torus coverings and the odd-distance-free coloring.
    Color {
        #[command(subcommand)]
        action: ColorAction,
    },
    /// Isometrically embed an l1 configuration into max-norm space.
    Embed {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    HypercubeOdd,
    CrossPolytopeL1,
    RightEquidistantLinf,
    RightEquidistantL1,
    GridModK,
    EuclidSimplexCenter,
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    RightEquidistant,
    OddDistances,
    NotDivisible,
    Equilateral,
    Spectrum,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    L1,
    Linf,
    L2sq,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> MetricKind {
        match m {
            MetricArg::L1 => MetricKind::L1,
            MetricArg::Linf => MetricKind::LInfinity,
            MetricArg::L2sq => MetricKind::L2Squared,
        }
    }
}

#[derive(Subcommand)]
enum SearchMode {
    /// Maximum clique of pairwise odd-distance points.
    OddClique(SearchArgs),
    /// Longest right-equidistant sequence.
    RightEquidistant(SearchArgs),
    /// Exploratory hunt for seven odd-l1-distance points in dimension 3.
    OddL1Seven(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Grid dimension (for named grid presets).
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, value_enum)]
    metric: Option<MetricArg>,
    /// Candidate grid: `dyadic`, `half-integer`, inline JSON
    /// `{"dim":..,"values":[..]}`, or `@file`.
    #[arg(long)]
    grid: Option<String>,
    /// Use the points of a configuration JSON file (or `-` for stdin) as
    /// the explicit candidate set instead of a grid.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Worker threads for the size-finding phase (default: the
    /// EXTREMAL_THREADS environment variable, then 1).
    #[arg(long)]
    threads: Option<usize>,
    /// Force single-threaded execution for bit-reproducible node counts.
    #[arg(long)]
    deterministic: bool,
    /// Depth cap for sequence search; default is the proven bound plus one.
    #[arg(long)]
    hard_cap: Option<usize>,
    /// Where odd-l1-seven persists a 7-point witness if one is found.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ColorAction {
    /// Build a covering of the quotient torus.
    Build {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid resolution `1/q` at which coverage is certified.
        #[arg(long, default_value = "1/16")]
        resolution: String,
    },
    /// Sample random point pairs and check coloring soundness.
    Check {
        #[arg(long)]
        covering: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Color of a single point.
    Of {
        #[arg(long)]
        covering: PathBuf,
        /// Point as a JSON array of scalar strings, e.g. `["1/3", "5/7"]`.
        #[arg(long)]
        point: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Greedy,
    Random,
}

fn main() {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    match run(cli.command) {
        Ok(Output { json, code }) => {
            if !quiet {
                println!("{json}");
            }
            std::process::exit(code);
        }
        Err(failure) => {
            if !quiet {
                println!("{}", failure.json);
            }
            std::process::exit(failure.code);
        }
    }
}

struct Output {
    json: String,
    code: i32,
}

struct Failure {
    json: String,
    code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        // Guard trips and rejected certificates are findings, not usage
        // errors; everything else is a malformed request.
        let code = match e {
            Error::GuardTripped { .. }
            | Error::ChainTooLong { .. }
            | Error::CertificateInvalid { .. } => 1,
            _ => 2,
        };
        Failure {
            json: json!({"error": {"kind": error_kind(&e), "message": e.to_string()}})
                .to_string(),
            code,
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::TruncationUndefined { .. } => "truncation_undefined",
        Error::ComparisonDimension { .. } => "comparison_dimension",
        Error::DuplicatePoint { .. } => "duplicate_point",
        Error::IdenticalPoints => "identical_points",
        Error::EmptyConfiguration => "empty_configuration",
        Error::OutOfRange { .. } => "out_of_range",
        Error::GridCapExceeded { .. } => "grid_cap_exceeded",
        Error::ScalarParse { .. } => "scalar_parse",
        Error::MetricMismatch { .. } => "metric_mismatch",
        Error::PreconditionFailed { .. } => "precondition_failed",
        Error::ChainTooLong { .. } => "chain_too_long",
        Error::GuardTripped { .. } => "guard_tripped",
        Error::CoverageBudget { .. } => "coverage_budget",
        Error::CertificateInvalid { .. } => "certificate_invalid",
    }
}

fn format_failure(message: String) -> Failure {
    Failure {
        json: json!({"error": {"kind": "format", "message": message}}).to_string(),
        code: 2,
    }
}

fn read_text(input: Option<&PathBuf>) -> Result<String, Failure> {
    match input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| format_failure(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format_failure(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_config(input: Option<&PathBuf>) -> Result<Configuration, Failure> {
    let text = read_text(input)?;
    Configuration::from_json(&text)
        .map_err(|e| format_failure(format!("malformed configuration: {e}")))
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Generate { preset, n, k } => {
            let config = match preset {
                Preset::HypercubeOdd => constructions::hypercube_odd(n)?,
                Preset::CrossPolytopeL1 => constructions::cross_polytope_odd_l1(n)?,
                Preset::RightEquidistantLinf => constructions::right_equidistant_linf(n)?,
                Preset::RightEquidistantL1 => constructions::right_equidistant_l1(n)?,
                Preset::GridModK => {
                    let k = k.ok_or_else(|| format_failure("grid-mod-k requires --k".into()))?;
                    constructions::grid_mod_k(n, k)?
                }
                Preset::EuclidSimplexCenter => constructions::euclidean_right_equidistant(n)?,
            };
            Ok(Output {
                json: config.to_json(),
                code: 0,
            })
        }

        Command::Verify {
            predicate,
            input,
            k,
            metric,
        } => {
            let mut config = read_config(input.as_ref())?;
            if let Some(m) = metric {
                config = config.retagged(m.into());
            }
            let verdict = match predicate {
                Predicate::RightEquidistant => verify::check_right_equidistant(&config)?,
                Predicate::OddDistances => verify::check_odd_distances(&config)?,
                Predicate::NotDivisible => {
                    let k = k.ok_or_else(|| {
                        format_failure("not-divisible requires --k".into())
                    })?;
                    verify::check_not_divisible(&config, k)?
                }
                Predicate::Equilateral => verify::check_equilateral(&config)?,
                Predicate::Spectrum => {
                    let spectrum = verify::distance_spectrum(&config);
                    return Ok(Output {
                        json: json!({ "spectrum": spectrum }).to_string(),
                        code: 0,
                    });
                }
            };
            let code = if verdict.ok { 0 } else { 1 };
            Ok(Output {
                json: serde_json::to_string(&verdict).expect("verdict serializes"),
                code,
            })
        }

        Command::Poset { input } => {
            let config = read_config(input.as_ref())?;
            let rel = ComparabilityRelation::new(&config)?;
            let (length, witness) = longest_chain(&rel);
            let (cover, antichain) = dilworth_decompose(&rel);
            Ok(Output {
                json: json!({
                    "edges": rel.edges(),
                    "longest_chain": {"length": length, "witness": witness},
                    "dilworth": {"chains": cover.chains, "antichain": antichain},
                })
                .to_string(),
                code: 0,
            })
        }

        Command::Certify { input } => {
            let config = read_config(input.as_ref())?;
            let cert = certify_odd_bound(&config)?;
            Ok(Output {
                json: serde_json::to_string(&cert).expect("certificate serializes"),
                code: 0,
            })
        }

        Command::Search { mode } => run_search(mode),

        Command::Color { action } => run_color(action),

        Command::Embed { input } => {
            let config = read_config(input.as_ref())?;
            if config.metric() != MetricKind::L1 {
                return Err(Error::MetricMismatch {
                    expected: "l1",
                    found: config.metric().name(),
                }
                .into());
            }
            if config.dim() > 20 {
                return Err(Error::OutOfRange {
                    what: "embedding dimension",
                    value: config.dim() as u64,
                    min: 1,
                    max: 20,
                }
                .into());
            }
            let mut images = Vec::with_capacity(config.len());
            for p in config.points() {
                images.push(embed_l1_to_linf(p)?);
            }
            let dim = 1usize << (config.dim() - 1);
            let embedded = Configuration::new(MetricKind::LInfinity, dim, images)?;
            Ok(Output {
                json: embedded.to_json(),
                code: 0,
            })
        }
    }
}

fn search_options(args: &SearchArgs) -> SearchOptions {
    let env_threads = std::env::var("EXTREMAL_THREADS")
        .ok()
        .and_then(|v| v.parse().ok());
    let threads = if args.deterministic {
        1
    } else {
        args.threads.or(env_threads).unwrap_or(1).max(1)
    };
    SearchOptions {
        threads,
        hard_cap: args.hard_cap,
    }
}

/// Candidate source: a grid spec or an explicit configuration.
enum Candidates {
    Grid(CandidateGrid),
    Explicit(Vec<Point>, usize, MetricKind),
}

fn resolve_candidates(args: &SearchArgs, default_dim: usize) -> Result<Candidates, Failure> {
    if let Some(input) = &args.input {
        let config = read_config(Some(input))?;
        return Ok(Candidates::Explicit(
            config.points().to_vec(),
            config.dim(),
            config.metric(),
        ));
    }
    let dim = args.dim.unwrap_or(default_dim);
    let spec = args.grid.as_deref().unwrap_or("dyadic");
    let grid = match spec {
        "dyadic" => CandidateGrid::dyadic_default(dim)?,
        "half-integer" => CandidateGrid::half_integer(dim)?,
        text => {
            let json = match text.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| format_failure(format!("cannot read {path}: {e}")))?,
                None => text.to_string(),
            };
            serde_json::from_str::<CandidateGrid>(&json)
                .map_err(|e| format_failure(format!("malformed grid: {e}")))?
        }
    };
    Ok(Candidates::Grid(grid))
}

fn run_search(mode: SearchMode) -> Result<Output, Failure> {
    let start = Instant::now();
    let result = match &mode {
        SearchMode::OddClique(args) => {
            let opts = search_options(args);
            match resolve_candidates(args, 2)? {
                Candidates::Grid(grid) => {
                    let metric = args.metric.map(MetricKind::from).unwrap_or(MetricKind::LInfinity);
                    search::max_odd_distance_clique(&grid, metric, &opts)?
                }
                Candidates::Explicit(points, dim, config_metric) => {
                    let metric = args.metric.map(MetricKind::from).unwrap_or(config_metric);
                    search::max_odd_distance_clique_over(&points, dim, metric, &opts)?
                }
            }
        }
        SearchMode::RightEquidistant(args) => {
            let opts = search_options(args);
            match resolve_candidates(args, 2)? {
                Candidates::Grid(grid) => {
                    let metric = args.metric.map(MetricKind::from).unwrap_or(MetricKind::LInfinity);
                    search::max_right_equidistant(&grid, metric, &opts)?
                }
                Candidates::Explicit(points, dim, config_metric) => {
                    let metric = args.metric.map(MetricKind::from).unwrap_or(config_metric);
                    search::max_right_equidistant_over(&points, dim, metric, false, &opts)?
                }
            }
        }
        SearchMode::OddL1Seven(args) => {
            let opts = search_options(args);
            let grid = match resolve_candidates(args, 3)? {
                Candidates::Grid(grid) => Some(grid),
                Candidates::Explicit(..) => {
                    return Err(format_failure(
                        "odd-l1-seven searches a grid, not an explicit configuration".into(),
                    ))
                }
            };
            let default_out = PathBuf::from("odd-l1-seven-witness.json");
            let out = args.out.clone().unwrap_or(default_out);
            let grid_ref = if args.grid.is_none() && args.dim.is_none() {
                None
            } else {
                grid.as_ref()
            };
            search::search_odd_l1_seven(grid_ref, &opts, Some(&out))?
        }
    };
    let wall_ms = start.elapsed().as_millis() as u64;
    let mut doc = serde_json::to_value(&result).expect("search result serializes");
    doc.as_object_mut()
        .expect("object")
        .insert("wall_time_ms".into(), json!(wall_ms));
    Ok(Output {
        json: doc.to_string(),
        code: 0,
    })
}

/// Accepts both a bare covering document and the `color build` report that
/// wraps one under a `covering` key.
fn read_covering(path: &PathBuf) -> Result<coloring::Covering, Failure> {
    let text = read_text(Some(path))?;
    if let Ok(covering) = serde_json::from_str::<coloring::Covering>(&text) {
        return Ok(covering);
    }
    let wrapper: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| format_failure(format!("malformed covering: {e}")))?;
    serde_json::from_value(wrapper["covering"].clone())
        .map_err(|e| format_failure(format!("malformed covering: {e}")))
}

fn run_color(action: ColorAction) -> Result<Output, Failure> {
    match action {
        ColorAction::Build {
            dim,
            strategy,
            seed,
            resolution,
        } => {
            let resolution: Scalar = resolution
                .parse()
                .map_err(|e: Error| format_failure(e.to_string()))?;
            let strategy = match strategy {
                StrategyArg::Greedy => CoverStrategy::GreedyGrid,
                StrategyArg::Random => CoverStrategy::Randomized,
            };
            let covering = coloring::build_covering(dim, strategy, seed, &resolution)?;
            // n! * n * ln n growth is asymptotic; the float is context, not
            // an assertion.
            let density = covering.density_ratio();
            let context = 4.0 * (dim as f64) * (dim as f64).ln()
                * (1..=dim).product::<usize>() as f64;
            Ok(Output {
                json: json!({
                    "covering": covering,
                    "count": covering.count(),
                    "density_ratio": density,
                    "erdos_rogers_context_float": context,
                })
                .to_string(),
                code: 0,
            })
        }
        ColorAction::Check {
            covering,
            samples,
            seed,
        } => {
            let covering = read_covering(&covering)?;
            let verdict = coloring::verify_coloring(&covering, samples, seed)?;
            let code = if verdict.ok { 0 } else { 1 };
            Ok(Output {
                json: serde_json::to_string(&verdict).expect("verdict serializes"),
                code,
            })
        }
        ColorAction::Of { covering, point } => {
            let covering = read_covering(&covering)?;
            let coords: Vec<Scalar> = serde_json::from_str(&point)
                .map_err(|e| format_failure(format!("malformed point: {e}")))?;
            let color = coloring::color_of(&covering, &Point::new(coords))?;
            let json = match color.index() {
                Some(i) => json!({"color": i}).to_string(),
                None => json!({"color": null, "overflow": true}).to_string(),
            };
            Ok(Output { json, code: 0 })
        }
    }
}
