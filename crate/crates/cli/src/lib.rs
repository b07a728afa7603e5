//! Command-line front end: one JSON problem file, one subcommand, one report.
//!
//! Exit codes: 0 success, 2 a violated invariant, 64 bad usage, 65 an
//! unreadable or malformed problem file.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::Value;

mod commands;
pub mod schema;
mod text;

use schema::ProblemFile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Malformed(String),
    #[error("problem file has no `{0}` section")]
    Missing(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] twistlat::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Malformed(_) => 65,
            CliError::Missing(_) | CliError::Invalid(_) | CliError::Core(_) => 2,
        }
    }

    /// Name of the violated invariant.
    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::Malformed(_) => "MalformedInput".into(),
            CliError::Missing(_) => "MissingSection".into(),
            CliError::Invalid(_) => "InvalidParameter".into(),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "twistlat",
    version,
    about = "Exact computations with hyperbolic lattices, reflection chambers and first group cohomology"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON problem file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads; 0 uses the default pool.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Target square d for enumeration.
    #[arg(long, global = true)]
    pub square: Option<BigInt>,
    /// N: walls of square in (-N, 0).
    #[arg(long, global = true)]
    pub wall_bound: Option<BigInt>,
    #[arg(long, global = true)]
    pub word_radius: Option<usize>,
    #[arg(long, global = true)]
    pub iteration_cap: Option<usize>,
    /// Half-width of bounded searches in almost abelian cohomology.
    #[arg(long, global = true)]
    pub search_bound: Option<i64>,
    #[arg(long, global = true)]
    pub dimension: Option<u32>,
    /// L^n, the top self-intersection of the polarization.
    #[arg(long, global = true)]
    pub self_intersection: Option<BigInt>,
    /// Lattice rank for the GL(F_3) torsion bound.
    #[arg(long, global = true)]
    pub rank: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Rank, signature and determinant of the lattice.
    Info,
    /// Walk each of `vectors` into the chamber cut out by `roots`.
    Walk,
    /// Vectors of square d in `cone`, or orbit representatives in the Dirichlet domain of `group`.
    Enumerate,
    /// Dirichlet domain of `group` around `reference`.
    Domain,
    /// Orbit representatives of vectors of square d, with the words relating each class.
    Orbits,
    /// Primitive roots of square in (-N, 0) whose walls meet `cone`.
    Walls,
    /// Orbits of `roots` under `action`, their Coxeter type and longest elements.
    Coxeter,
    /// First cohomology for the `cohomology` section.
    H1,
    /// Effective bounds for the given dimension and self-intersection.
    Bounds,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Info,
        Command::Walk,
        Command::Enumerate,
        Command::Domain,
        Command::Orbits,
        Command::Walls,
        Command::Coxeter,
        Command::H1,
        Command::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Walk => "walk",
            Command::Enumerate => "enumerate",
            Command::Domain => "domain",
            Command::Orbits => "orbits",
            Command::Walls => "walls",
            Command::Coxeter => "coxeter",
            Command::H1 => "h1",
            Command::Bounds => "bounds",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn load(path: &std::path::Path) -> Result<ProblemFile, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

/// Execute a parsed command and return its JSON report.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    let problem = match (&cli.input, cli.command) {
        (Some(p), _) => load(p)?,
        (None, Command::Bounds) => ProblemFile::default(),
        (None, _) => {
            return Err(CliError::Usage(format!(
                "`{}` needs --input <path>",
                cli.command.name()
            )))
        }
    };
    let go = || commands::dispatch(cli, &problem);
    if cli.threads > 0 {
        twistlat::par::with_threads(cli.threads, go)
    } else {
        go()
    }
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => text::json(value),
        Format::Text => text::render(value),
    }
}

/// Parse `args` (program name first), run, and collect the output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: msg,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: msg,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(v) => Outcome {
            code: 0,
            stdout: render(&v, cli.format),
            stderr: String::new(),
        },
        Err(e) => {
            let code = e.exit_code();
            if code == 64 {
                return Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                };
            }
            let report =
                serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            Outcome {
                code,
                stdout: render(&report, cli.format),
                stderr: format!("error: {}: {e}\n", e.kind()),
            }
        }
    }
}
