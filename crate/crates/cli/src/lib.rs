//! Command-line harness for `helly-core`: verification suites plus
//! `search`, `construct`, `analyze` and `list`.

pub mod commands;
pub mod defaults;
pub mod params;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use helly_core::search::DEFAULT_NODE_BUDGET;

pub use report::{Check, Status, SuiteResult};
pub use suites::{run_verify, RunContext};

pub const EXIT_USAGE: i32 = 64;
pub const BUDGET_ENV: &str = "HELLY_BUDGET_NODES";

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, values or input documents (exit 64).
    Usage(String),
    /// A computation reported an error (exit 1).
    Failure(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Parser)]
#[command(name = "helly", version, about = "Empty sets, Helly numbers and hollow polytopes in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite; suite parameters are given as --key value
    /// (see `list`), along with --workers, --budget-nodes, --format, --timings.
    Verify {
        suite: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 0..)]
        options: Vec<String>,
    },
    /// Largest empty subset of a lattice inside a window.
    Search {
        /// Lattice JSON, inline or @file.
        #[arg(long)]
        lattice: String,
        /// Box window, lo..hi per axis, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Exponent window for exponential lattices.
        #[arg(long, allow_hyphen_values = true)]
        expwindow: Option<String>,
        #[arg(long, default_value_t = helly_core::search::DEFAULT_SIZE_CAP)]
        cap: usize,
        #[arg(long)]
        target: Option<usize>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build a named polytope and print it as JSON.
    Construct {
        name: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        /// Run self-checks; exit 1 if any fails.
        #[arg(long)]
        verify: bool,
    },
    /// Emptiness, hollowness, reduction, width or segment queries.
    Analyze {
        op: String,
        /// Polytope JSON or a list of points, inline or @file.
        input: String,
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        radius: Option<u32>,
        /// Integer direction for dirwidth, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
    },
    /// Suites with their defaults, constructions and analyses.
    List {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Default node budget, overridable through the environment.
pub fn default_node_budget() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={s:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(o) => o,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("{e}\n"),
            code: if matches!(e, CliError::Usage(_)) { EXIT_USAGE } else { 1 },
        },
    }
}

fn dispatch(cmd: Cmd) -> Result<Outcome, CliError> {
    match cmd {
        Cmd::Verify { suite, options } => verify(&suite, &options),
        Cmd::Search { lattice, window, expwindow, cap, target, budget_nodes, workers, checkpoint, format } => {
            let node_budget = match budget_nodes {
                Some(b) => b,
                None => default_node_budget()?,
            };
            commands::search(&commands::SearchArgs {
                lattice,
                window,
                expwindow,
                cap,
                target,
                node_budget,
                workers,
                checkpoint,
                format,
            })
        }
        Cmd::Construct { name, alpha, d, k, n, verify } => {
            commands::construct(&commands::ConstructArgs { name, alpha, d, k, n, verify })
        }
        Cmd::Analyze { op, input, lattice, radius, direction } => {
            commands::analyze(&commands::AnalyzeArgs { op, input, lattice, radius, direction })
        }
        Cmd::List { format } => Ok(Outcome { stdout: list(format), stderr: String::new(), code: 0 }),
    }
}

fn verify(suite: &str, options: &[String]) -> Result<Outcome, CliError> {
    let mut overrides = params::parse_overrides(options)?;
    let take = |o: &mut std::collections::BTreeMap<String, String>, k: &str| o.remove(k);
    let format = match take(&mut overrides, "format").as_deref() {
        None | Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some(other) => return Err(CliError::Usage(format!("unknown format {other:?}"))),
    };
    let timings = match take(&mut overrides, "timings").as_deref() {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => return Err(CliError::Usage(format!("--timings takes no value, got {other:?}"))),
    };
    let workers = match take(&mut overrides, "workers") {
        Some(w) => w.parse().ok().filter(|&w: &usize| w >= 1).ok_or_else(|| CliError::Usage(format!("bad --workers {w:?}")))?,
        None => 1,
    };
    let node_budget = match take(&mut overrides, "budget-nodes") {
        Some(b) => b.parse().map_err(|_| CliError::Usage(format!("bad --budget-nodes {b:?}")))?,
        None => default_node_budget()?,
    };
    let ctx = RunContext { workers, node_budget };
    let result = run_verify(suite, &overrides, &ctx)?;
    let stdout = match format {
        Format::Json => result.to_json(timings) + "\n",
        Format::Csv => result.to_csv(),
    };
    let stderr = format!("{} {} in {:.3}s\n", result.suite_id, result.status.as_str(), result.wall_time.as_secs_f64());
    Ok(Outcome { stdout, stderr, code: result.status.exit_code() })
}

fn list(format: Format) -> String {
    match format {
        Format::Json => {
            let suites: Vec<_> = defaults::SUITES
                .iter()
                .map(|s| {
                    let params: Vec<_> = s
                        .params
                        .iter()
                        .map(|p| serde_json::json!({"key": p.key, "default": p.default, "doc": p.doc}))
                        .collect();
                    serde_json::json!({"suite": s.id, "about": s.about, "parameters": params})
                })
                .collect();
            let cons: Vec<_> = defaults::CONSTRUCTIONS.iter().map(|(n, a)| serde_json::json!({"name": n, "args": a})).collect();
            let an: Vec<_> = defaults::ANALYSES.iter().map(|(n, a)| serde_json::json!({"op": n, "args": a})).collect();
            let v = serde_json::json!({"suites": suites, "constructions": cons, "analyses": an,
                                       "default_node_budget": DEFAULT_NODE_BUDGET,
                                       "default_width_radius": defaults::DEFAULT_WIDTH_RADIUS});
            serde_json::to_string_pretty(&v).expect("json value") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("suite,parameter,default\n");
            for suite in defaults::SUITES {
                for p in suite.params {
                    s.push_str(&format!("{},{},\"{}\"\n", suite.id, p.key, p.default));
                }
            }
            s
        }
    }
}
