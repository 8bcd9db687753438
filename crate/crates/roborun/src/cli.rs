//! Command-line driver.
//!
//! Exit codes: 0 success (for `run` and `score`, the goal was reached),
//! 3 the program ran but did not reach the goal (or `check` found no path),
//! 2 invalid input, 1 I/O or internal failure.

use std::io::Write;
use std::net::{Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use roborun_core::interpreter::{render_pretty, DEFAULT_MAX_STEPS};
use roborun_core::levels::{check_solvable, level_from_json, LevelStore};
use roborun_core::scoring::ScoringConfig;
use roborun_core::{parse_program, Code, Diagnostic, ExecLimits, Level, Outcome, Program};

use crate::engine::{self, Diags};
use crate::service::{self, AppState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_REACHED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "roborun", version, about = "Run, score and export RoboRun programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TraceFormat {
    Json,
    Pretty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a program on a level and print its trace
    Run {
        #[arg(long)]
        level: PathBuf,
        #[arg(long)]
        program: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        trace: TraceFormat,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u32,
    },
    /// Run a program and print its score breakdown
    Score {
        #[arg(long)]
        level: PathBuf,
        #[arg(long)]
        program: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        time_seconds: f64,
        /// TOML file overriding the scoring weights
        #[arg(long)]
        scoring: Option<PathBuf>,
    },
    /// Print a program as pseudo-code or TouchDevelop script
    Export {
        #[arg(long)]
        program: PathBuf,
        /// pseudocode or touchdevelop
        #[arg(long)]
        target: String,
    },
    /// Validate a level and check that its goal can be reached
    Check {
        #[arg(long)]
        level: PathBuf,
    },
    /// Start the HTTP service
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "levels/custom")]
        levels_dir: PathBuf,
        /// Directory of static UI assets served at /
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
}

enum Failure {
    Io(String),
    Invalid(Diags),
}

impl From<Diags> for Failure {
    fn from(d: Diags) -> Self {
        Failure::Invalid(d)
    }
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Self {
        Failure::Invalid(vec![d])
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_level(path: &Path) -> Result<Level, Failure> {
    Ok(level_from_json(&read(path)?)?)
}

fn load_program(path: &Path) -> Result<Program, Failure> {
    Ok(parse_program(&read(path)?)?)
}

fn load_scoring(path: Option<&Path>) -> Result<ScoringConfig, Failure> {
    let Some(path) = path else {
        return Ok(ScoringConfig::default());
    };
    toml::from_str(&read(path)?).map_err(|e| {
        Failure::Invalid(vec![Diagnostic::new(
            Code::EJson,
            format!("bad scoring file {}: {}", path.display(), e.message()),
        )])
    })
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_INVALID
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "{}: {msg}", Code::EIo.as_str());
            EXIT_IO
        }
        Err(Failure::Invalid(diags)) => {
            for d in &diags {
                let _ = writeln!(err, "{}", engine::describe(d));
            }
            EXIT_INVALID
        }
    }
}

fn outcome_code(outcome: Outcome) -> i32 {
    if outcome == Outcome::Goal {
        EXIT_OK
    } else {
        EXIT_NOT_REACHED
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Io(e.to_string());
    match command {
        Command::Run {
            level,
            program,
            trace,
            max_steps,
        } => {
            let limits = ExecLimits::new(max_steps)?;
            let level = load_level(&level)?;
            let program = load_program(&program)?;
            let result = engine::run(&program, &level, &limits)?;
            let text = match trace {
                TraceFormat::Json => result.to_document(),
                TraceFormat::Pretty => render_pretty(&result),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(outcome_code(result.outcome))
        }
        Command::Score {
            level,
            program,
            time_seconds,
            scoring,
        } => {
            let config = load_scoring(scoring.as_deref())?;
            let level = load_level(&level)?;
            let program = load_program(&program)?;
            let (trace, score) =
                engine::run_and_score(&program, &level, &ExecLimits::default(), time_seconds, &config)?;
            out.write_all(engine::to_document(&score).as_bytes()).map_err(io)?;
            Ok(outcome_code(trace.outcome))
        }
        Command::Export { program, target } => {
            let program = load_program(&program)?;
            let text = engine::export(&program, &target)?;
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Check { level } => {
            let level = load_level(&level)?;
            let report = check_solvable(&level);
            let line = match report.shortest_cells {
                Some(n) => format!("reachable: shortest path is {n} moves\n"),
                None => "unreachable\n".to_string(),
            };
            out.write_all(line.as_bytes()).map_err(io)?;
            Ok(if report.reachable { EXIT_OK } else { EXIT_NOT_REACHED })
        }
        Command::Serve {
            port,
            levels_dir,
            ui_dir,
        } => {
            let store = LevelStore::open(&levels_dir).map_err(|e| Failure::Io(e.to_string()))?;
            let state = AppState {
                store: Arc::new(store),
                scoring: ScoringConfig::default(),
            };
            let addr = SocketAddr::from((Ipv4Addr::UNSPECIFIED, port));
            let runtime = tokio::runtime::Runtime::new().map_err(io)?;
            runtime.block_on(service::serve(addr, state, ui_dir)).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}
