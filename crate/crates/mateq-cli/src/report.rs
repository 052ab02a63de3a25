//! Versioned JSON report schema emitted by the solve commands.

use mateq::matrix::ComplexMatrix;
use mateq::solve::SolveReport;
use mateq::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Matrix payload: entries as `[re, im]` pairs in column-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, mateq::Error> {
        ComplexMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect(),
        )
    }
}

/// Successful solve: the solution plus its diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveJson {
    pub schema: u32,
    /// "dle" or "stein".
    pub kind: String,
    /// "closed", "series" or "kron".
    pub method: String,
    pub residual_rel: f64,
    pub spectral_radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_condition: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub solution: MatrixJson,
}

impl SolveJson {
    pub fn new(kind: &str, report: &SolveReport) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            kind: kind.to_string(),
            method: report.method.name().to_string(),
            residual_rel: report.residual_rel,
            spectral_radius: report.spectral_radius,
            s_condition: report.s_condition,
            terms_used: report.terms_used,
            warning: report.warning.clone(),
            solution: MatrixJson::from_matrix(&report.solution),
        }
    }
}

/// Failure object printed to stdout before a nonzero exit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorJson {
    pub schema: u32,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl ErrorJson {
    pub fn new(e: &CliError) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            error: ErrorBody {
                code: e.exit_code(),
                kind: e.kind().to_string(),
                message: e.to_string(),
            },
        }
    }
}
