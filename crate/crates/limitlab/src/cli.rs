//! `limitlab` command line.
//!
//! Experiment output goes to stdout (ndjson, or bare bit strings one per
//! line for `enum` and `filter`); diagnostics go to stderr. Exit code 0 on
//! success, 1 on a runtime error such as an exceeded cap, 2 on a usage error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use limitlab_core::ak;
use limitlab_core::bitstring::{self, Level};
use limitlab_core::caps::Caps;
use limitlab_core::complexity::{self, CompressibilityParams};
use limitlab_core::halting::arena::{self, ArenaConfig, DiagonalKind, Schedule};
use limitlab_core::halting::{self, asm};
use limitlab_core::realgen::{self, BitSource, SplitMix64};
use limitlab_core::BitString;
use serde_json::json;

use crate::entropy::OsEntropy;
use crate::{format, parallel};

#[derive(Debug, Parser)]
#[command(
    name = "limitlab",
    version,
    about = "Desk-scale experiments around limitative theorems"
)]
pub struct Cli {
    /// Largest level n for which all 2^n strings are materialized.
    #[arg(long, global = true, default_value_t = Caps::DEFAULT.max_level)]
    cap_level: u32,
    /// Largest description-program length (bits) that is exhausted.
    #[arg(long, global = true, default_value_t = Caps::DEFAULT.max_prog_len)]
    cap_prog_len: u32,
    /// Largest step budget accepted by the halting tools.
    #[arg(long, global = true, default_value_t = Caps::DEFAULT.max_budget)]
    cap_budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All strings of length N, ascending, one per line.
    Enum {
        #[arg(long)]
        len: u32,
    },
    /// The first N strings of length N and their flipped diagonal (ndjson).
    Square {
        #[arg(long)]
        n: u32,
    },
    /// Minimal description lengths up to L bits (ndjson).
    KTable {
        #[arg(long)]
        max_prog_len: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strings of length N that are m-non-compressible, one per line.
    Filter {
        #[arg(long)]
        len: u32,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Decide whether one string is m-non-compressible (ndjson).
    Decide {
        #[arg(long)]
        string: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Histogram of minimal description lengths over length N (ndjson).
    Census {
        #[arg(long)]
        len: u32,
        #[arg(long)]
        max_prog_len: u32,
    },
    /// One path through the tree of strings, optionally avoiding m-compressible prefixes (ndjson).
    Real(RealArgs),
    /// Step at which the enumeration reaches a target (ndjson).
    Find {
        #[arg(long)]
        target: String,
    },
    /// Counter machines and halting testers.
    #[command(subcommand)]
    Halt(HaltCommand),
    /// Three-valued sentence evaluation.
    #[command(subcommand)]
    Ak(AkCommand),
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    c: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Entropy {
    Os,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("randomness").required(true).args(["seed", "entropy"])))]
struct RealArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    entropy: Option<Entropy>,
    #[arg(long)]
    bits: usize,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, requires = "m")]
    c: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum HaltCommand {
    /// Run a program with cycle detection and heartbeats (ndjson).
    Run {
        program: PathBuf,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 1000)]
        heartbeat: u64,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Three-valued halting verdict (ndjson).
    Test {
        program: PathBuf,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 1000)]
        heartbeat: u64,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Stage a diagonal construction and print its tick trace (ndjson).
    Arena {
        #[arg(long, value_enum)]
        scenario: Scenario,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        /// Run T to completion before T' starts.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scenario {
    Classic,
    #[value(name = "paper_escape", alias = "paper-escape")]
    PaperEscape,
}

#[derive(Debug, Subcommand)]
enum AkCommand {
    /// Evaluate a sentence (ndjson).
    Eval {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "")]
        assign: String,
        #[arg(long, value_enum, default_value_t = Mode::Ak)]
        mode: Mode,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Kleene,
    Ak,
}

/// A failure after argument parsing.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn runtime(e: impl std::fmt::Display) -> RunError {
    RunError::Runtime(e.to_string())
}

fn bits_arg(name: &str, text: &str) -> Result<BitString, RunError> {
    text.parse()
        .map_err(|e| RunError::Usage(format!("--{name}: {e}")))
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut buffered = BufWriter::new(out);
    let result = execute(&cli, &mut buffered, err).and_then(|()| Ok(buffered.flush()?));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = buffered.flush();
            let _ = writeln!(err, "limitlab: {e}");
            match e {
                RunError::Usage(_) => 2,
                RunError::Runtime(_) | RunError::Io(_) => 1,
            }
        }
    }
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), RunError> {
    let caps = Caps {
        max_level: cli.cap_level,
        max_prog_len: cli.cap_prog_len,
        max_budget: cli.cap_budget,
        ..Caps::DEFAULT
    };
    match &cli.command {
        Command::Enum { len } => {
            let level = bitstring::enumerate_level(*len, &caps).map_err(runtime)?;
            for row in level.rows() {
                writeln!(out, "{row}")?;
            }
        }
        Command::Square { n } => {
            let m = bitstring::square_matrix(*n, &caps).map_err(runtime)?;
            for (i, row) in m.rows().iter().enumerate() {
                line(out, &json!({"i": i, "row": row.to_string()}))?;
            }
            let d = bitstring::antidiagonal_flip(&m);
            let level = Level::new(*n);
            line(
                out,
                &json!({
                    "antidiagonal": d.to_string(),
                    "in_square": m.contains(&d),
                    "in_level": level.contains(&d),
                }),
            )?;
        }
        Command::KTable {
            max_prog_len,
            out: path,
        } => {
            let table = parallel::min_description_table(*max_prog_len, &caps).map_err(runtime)?;
            match path {
                Some(path) => {
                    let mut f = BufWriter::new(File::create(path)?);
                    format::write_table(&mut f, &table)?;
                    f.flush()?;
                    writeln!(err, "wrote {} entries to {}", table.len(), path.display())?;
                }
                None => format::write_table(out, &table)?,
            }
        }
        Command::Filter { len, params } => {
            let params = CompressibilityParams::new(params.m, params.c);
            for s in complexity::filter_noncompressible(*len, params, &caps).map_err(runtime)? {
                writeln!(out, "{s}")?;
            }
        }
        Command::Decide { string, params } => {
            let a = bits_arg("string", string)?;
            let params = CompressibilityParams::new(params.m, params.c);
            let verdict = complexity::is_m_noncompressible(&a, params, &caps).map_err(runtime)?;
            line(out, &json!({"noncompressible": verdict}))?;
        }
        Command::Census { len, max_prog_len } => {
            let census =
                parallel::compression_census(*len, *max_prog_len, &caps).map_err(runtime)?;
            format::write_census(out, &census)?;
        }
        Command::Real(args) => real(args, &caps, out)?,
        Command::Find { target } => {
            let target = bits_arg("target", target)?;
            let step = realgen::find_target(&target);
            line(
                out,
                &json!({"target": target.to_string(), "step": step as u64}),
            )?;
        }
        Command::Halt(cmd) => halt(cmd, &caps, out, err)?,
        Command::Ak(AkCommand::Eval {
            formula,
            assign,
            mode,
        }) => {
            let sentence =
                ak::parse_sentence(formula).map_err(|e| RunError::Usage(e.to_string()))?;
            let assignment =
                ak::parse_assignment(assign).map_err(|e| RunError::Usage(e.to_string()))?;
            let value = match mode {
                Mode::Kleene => ak::evaluate_kleene(&sentence, &assignment)
                    .map_err(runtime)?
                    .as_str(),
                Mode::Ak => {
                    if ak::evaluate_ak(&sentence, &assignment).map_err(runtime)? {
                        "true"
                    } else {
                        "false"
                    }
                }
            };
            line(out, &json!({"value": value}))?;
        }
    }
    Ok(())
}

fn line(out: &mut dyn Write, value: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn real(args: &RealArgs, caps: &Caps, out: &mut dyn Write) -> Result<(), RunError> {
    let source: Box<dyn BitSource> = match (args.seed, args.entropy) {
        (Some(seed), None) => Box::new(SplitMix64::new(seed)),
        (None, Some(Entropy::Os)) => Box::new(OsEntropy::new()),
        _ => {
            return Err(RunError::Usage(
                "pass exactly one of --seed or --entropy".into(),
            ))
        }
    };
    match args.m {
        None => {
            let stream = realgen::random_real_stream(source, args.bits).map_err(runtime)?;
            for prefix in stream {
                let prefix = prefix.map_err(runtime)?;
                format::write_stream_event(
                    out,
                    &realgen::StreamEvent {
                        kind: realgen::EventKind::Emit,
                        prefix,
                    },
                )?;
            }
        }
        Some(m) => {
            let params = CompressibilityParams::new(m, args.c.unwrap_or(0));
            let stream = realgen::noncompressible_stream(source, params, args.bits, caps)
                .map_err(runtime)?;
            for ev in stream {
                format::write_stream_event(out, &ev.map_err(runtime)?)?;
            }
        }
    }
    Ok(())
}

fn load_program(path: &PathBuf) -> Result<halting::MinskyProgram, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Runtime(format!("{}: {e}", path.display())))?;
    asm::parse_program(&text).map_err(runtime)
}

fn halt(
    cmd: &HaltCommand,
    caps: &Caps,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), RunError> {
    match cmd {
        HaltCommand::Run {
            program,
            budget,
            heartbeat,
            input,
        }
        | HaltCommand::Test {
            program,
            budget,
            heartbeat,
            input,
        } => {
            caps.check_budget(*budget).map_err(runtime)?;
            let input = asm::parse_input(input).map_err(|e| RunError::Usage(e.to_string()))?;
            let program = load_program(program)?;
            let report = halting::run(&program, &input, *budget, *heartbeat).map_err(runtime)?;
            if let Some(w) = report.warning() {
                writeln!(err, "warning: {w}")?;
            }
            if matches!(cmd, HaltCommand::Run { .. }) {
                format::write_run_report(out, &report)?;
            } else {
                let verdict = halting::TesterVerdict::from_outcome(&report.outcome);
                line(
                    out,
                    &json!({"verdict": verdict.as_str(), "steps": report.steps_executed}),
                )?;
            }
        }
        HaltCommand::Arena {
            scenario,
            budget,
            sequential,
        } => {
            caps.check_budget(*budget).map_err(runtime)?;
            let kind = match scenario {
                Scenario::Classic => DiagonalKind::Classic,
                Scenario::PaperEscape => DiagonalKind::PaperEscape,
            };
            let config = ArenaConfig {
                budget: *budget,
                schedule: if *sequential {
                    Schedule::Sequential
                } else {
                    Schedule::Lockstep
                },
                ..ArenaConfig::default()
            };
            let trace = arena::diagonal_scenario(kind, &config).map_err(runtime)?;
            format::write_trace(out, &trace)?;
        }
    }
    Ok(())
}

/// Reads a table written by `k-table --out`.
pub fn load_table(
    path: &PathBuf,
) -> Result<limitlab_core::toyvm::ComplexityTable, format::FormatError> {
    format::read_table(BufReader::new(File::open(path)?))
}
