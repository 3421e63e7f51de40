//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 size guard exceeded, 3 failed
//! internal check.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;

use crate::io::{parse_decomposition, parse_problem, serialize_result, IoError};
use crate::solvers::{solve, DecompositionStrategy, Method, SolveConfig, SolveError};
use crate::valuation::{check_idm, ValuationError, IDM_CHECK_MAX_NODES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_TOO_LARGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum SeparatorChoice {
    Grid,
    Greedy,
}

/// Exact coalition structure generation over a graph.
#[derive(Debug, Parser)]
#[command(name = "gcsg", version)]
struct Args {
    /// Problem file (JSON).
    #[arg(long)]
    graph: String,

    /// exhaustive, treedp or oracle.
    #[arg(long, default_value = "treedp")]
    method: Method,

    /// Decomposition file, or "minfill" / "separator" to build one.
    #[arg(long, default_value = "minfill")]
    decomposition: String,

    /// Separator finder used with --decomposition separator.
    #[arg(long, value_enum, default_value = "greedy")]
    separator: SeparatorChoice,

    /// Split every block of the result into connected pieces.
    #[arg(long)]
    split_connected: bool,

    /// Check the IDM property of the valuation and exit.
    #[arg(long)]
    check_idm: bool,

    /// Output path (default: standard output).
    #[arg(long)]
    output: Option<String>,

    /// Include solver statistics in the result.
    #[arg(long)]
    stats: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::invalid(e)
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            SolveError::TooLarge { .. }
            | SolveError::Valuation(ValuationError::TooLarge { .. })
            | SolveError::Partition(crate::partition::PartitionError::TooLarge { .. }) => {
                EXIT_TOO_LARGE
            }
            SolveError::Internal(_)
            | SolveError::MissingChildEntry { .. }
            | SolveError::MissingWitness { .. } => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Runs the command line with `args` (program name first). Messages go to
/// standard error; the return value is the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&args) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|source| {
        IoError::Read {
            path: path.to_string(),
            source,
        }
        .into()
    })
}

fn run(args: &Args) -> Result<(), Failure> {
    let problem = parse_problem(&read(&args.graph)?)?;

    let body = if args.check_idm {
        let report = check_idm(&problem.graph, &problem.valuation, IDM_CHECK_MAX_NODES).map_err(|e| {
            Failure {
                code: if matches!(e, ValuationError::TooLarge { .. }) {
                    EXIT_TOO_LARGE
                } else {
                    EXIT_INVALID
                },
                message: e.to_string(),
            }
        })?;
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        let decomposition = match (args.decomposition.as_str(), args.separator) {
            ("minfill", _) => DecompositionStrategy::MinFill,
            ("separator", SeparatorChoice::Greedy) => DecompositionStrategy::GreedySeparator,
            ("separator", SeparatorChoice::Grid) => {
                let shape = problem.grid.ok_or_else(|| {
                    Failure::invalid("--separator grid needs grid metadata in the problem file")
                })?;
                DecompositionStrategy::GridSeparator {
                    rows: shape.rows,
                    cols: shape.cols,
                }
            }
            (path, _) => DecompositionStrategy::Given(parse_decomposition(&read(path)?)?),
        };
        let config = SolveConfig {
            method: args.method,
            decomposition,
            split_connected: args.split_connected,
            ..SolveConfig::default()
        };
        let result = solve(&problem.graph, &problem.valuation, &config)?;
        serialize_result(&result, args.stats)
    };

    match &args.output {
        Some(path) => fs::write(path, body + "\n")
            .map_err(|e| Failure::invalid(format!("cannot write {path}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{body}").map_err(|e| Failure::invalid(format!("cannot write output: {e}")))
        }
    }
}
