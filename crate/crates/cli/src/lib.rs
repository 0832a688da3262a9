//! Command line front end: problem files in, certificates out.
//!
//! Exit codes: 0 success, 1 resource or I/O failure, 2 precondition
//! violated, 3 insufficient series precision, 4 parse or schema error.
//! `verify` reports failing systems with exit 0.

pub mod commands;
pub mod emit;
pub mod error;
pub mod expr;
pub mod schema;
pub mod series_literal;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use serde_json::{json, Value};

use uniformizer_core::valuegroup::MAX_STEPS_ENV;

pub use commands::{execute, Command, Options, Outcome};
pub use error::{CliError, CliResult};
pub use expr::{parse_expression, ParseError};
pub use series_literal::parse_series;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "uniformizer",
    version,
    about = "Valuations and local uniformization certificates"
)]
struct Args {
    command: Command,
    /// Problem file; repeat for a batch.
    #[arg(long)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized self-tests.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Working precision for series problems.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    precision: Option<i64>,
    /// Worker threads for batches.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

/// The certificate for one successful run.
pub fn certificate(
    cmd: Command,
    problem: Option<&Value>,
    opts: &Options,
    outcome: &Outcome,
) -> Value {
    let mut out = json!({
        "tool": {"name": "uniformizer", "version": VERSION},
        "command": cmd.name(),
        "problem": problem,
        "result": outcome.result,
    });
    if let Some(p) = opts.precision {
        out["precision_override"] = json!(p);
    }
    if cmd == Command::Selftest {
        out["seed"] = json!(opts.seed);
    }
    out
}

fn read_input(path: &PathBuf) -> CliResult<Value> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&src).map_err(|e| {
        CliError::schema(
            "",
            format!(
                "invalid JSON at line {}, column {}: {e}",
                e.line(),
                e.column()
            ),
        )
    })
}

/// One input file through one command: the certificate or the error.
fn run_one(
    cmd: Command,
    path: Option<&PathBuf>,
    opts: &Options,
) -> CliResult<(Value, Vec<String>)> {
    let input = path.map(read_input).transpose()?;
    let outcome = execute(cmd, input.as_ref(), opts)?;
    Ok((
        certificate(cmd, input.as_ref(), opts, &outcome),
        outcome.text,
    ))
}

fn run_batch(
    cmd: Command,
    paths: &[PathBuf],
    opts: &Options,
    jobs: usize,
) -> Vec<CliResult<(Value, Vec<String>)>> {
    let jobs = jobs.min(paths.len()).max(1);
    let mut slots: Vec<Option<CliResult<(Value, Vec<String>)>>> =
        (0..paths.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    (w..paths.len())
                        .step_by(jobs)
                        .map(|i| (i, run_one(cmd, Some(&paths[i]), opts)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every input processed"))
        .collect()
}

fn emit_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    let s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    writeln!(out, "{s}")
}

/// Parse `argv` (program name first), run, and return the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    error::EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    error::EXIT_PARSE
                }
            };
        }
    };
    if let Ok(v) = std::env::var(MAX_STEPS_ENV) {
        if v.trim().parse::<usize>().is_err() {
            let _ = writeln!(
                err,
                "error: {MAX_STEPS_ENV} must be a non-negative integer, got '{v}'"
            );
            return error::EXIT_PARSE;
        }
    }
    let opts = Options {
        seed: args.seed,
        precision: args.precision,
    };
    let cmd = args.command;
    if cmd.needs_input() && args.input.is_empty() {
        let _ = writeln!(err, "error: {} needs --input <FILE>", cmd.name());
        return error::EXIT_PARSE;
    }
    if args.input.len() <= 1 {
        return match run_one(cmd, args.input.first(), &opts) {
            Ok((cert, text)) => {
                let written = match args.format {
                    Format::Json => emit_json(out, &cert),
                    Format::Text => text.iter().try_for_each(|l| writeln!(out, "{l}")),
                };
                match written {
                    Ok(()) => error::EXIT_OK,
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        error::EXIT_FAILURE
                    }
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        };
    }

    let results = run_batch(cmd, &args.input, &opts, args.jobs as usize);
    let mut code = error::EXIT_OK;
    let mut entries = Vec::new();
    for (path, r) in args.input.iter().zip(results) {
        let name = path.display().to_string();
        match r {
            Ok((cert, text)) => match args.format {
                Format::Json => {
                    entries.push(json!({"input": name, "exit_code": 0, "certificate": cert}))
                }
                Format::Text => {
                    let _ = writeln!(out, "== {name} ==");
                    for l in text {
                        let _ = writeln!(out, "{l}");
                    }
                }
            },
            Err(e) => {
                code = code.max(e.exit_code());
                match args.format {
                    Format::Json => entries.push(json!({
                        "input": name,
                        "exit_code": e.exit_code(),
                        "error": e.to_string(),
                    })),
                    Format::Text => {
                        let _ = writeln!(out, "== {name} ==");
                        let _ = writeln!(err, "error: {name}: {e}");
                    }
                }
            }
        }
    }
    if args.format == Format::Json && emit_json(out, &Value::Array(entries)).is_err() {
        return error::EXIT_FAILURE;
    }
    code
}
