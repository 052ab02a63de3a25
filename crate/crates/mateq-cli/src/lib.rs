//! Library side of the `mateq` command-line tool: the matrix text format,
//! seeded instance generation, JSON report schema and the benchmark harness.
//! The binary in `main.rs` is a thin clap wrapper over these modules.

pub mod bench;
pub mod gen;
pub mod matfile;
pub mod report;

use std::fmt;
use std::path::PathBuf;

/// Errors surfaced by the CLI, each with a stable exit code:
/// 2 resonance, 3 defective (or decomposition failure), 4 divergence,
/// 5 I/O or parse, 1 anything else.
#[derive(Debug)]
pub enum CliError {
    Solver(mateq::Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Parse {
        path: PathBuf,
        source: matfile::ParseError,
    },
    /// Random draws kept collapsing to spectral radius zero.
    DegenerateDraw { attempts: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(mateq::Error::Resonance { .. }) => 2,
            CliError::Solver(mateq::Error::Defective { .. })
            | CliError::Solver(mateq::Error::NonConvergence { .. }) => 3,
            CliError::Solver(mateq::Error::Divergence { .. }) => 4,
            CliError::Io { .. } | CliError::Parse { .. } => 5,
            _ => 1,
        }
    }

    /// Machine-readable error tag for the JSON error object.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Solver(mateq::Error::Resonance { .. }) => "resonance",
            CliError::Solver(mateq::Error::Defective { .. }) => "defective",
            CliError::Solver(mateq::Error::NonConvergence { .. }) => "non-convergence",
            CliError::Solver(mateq::Error::Divergence { .. }) => "divergence",
            CliError::Solver(mateq::Error::MemoryCap { .. }) => "memory-cap",
            CliError::Solver(_) => "solver",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::DegenerateDraw { .. } => "degenerate-draw",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Solver(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::DegenerateDraw { attempts } => {
                write!(f, "random draw degenerate after {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<mateq::Error> for CliError {
    fn from(e: mateq::Error) -> Self {
        CliError::Solver(e)
    }
}
