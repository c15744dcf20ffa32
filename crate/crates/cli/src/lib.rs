//! Batch front-end for the instanton → Painlevé VI pipeline.
//!
//! Every command is a pure function of its [`RunConfig`]; outputs are
//! written atomically (temporary file, then rename) so a failed run leaves
//! no partial file behind.

mod commands;
mod output;
pub mod pipeline;

pub use commands::{cmd_profile, cmd_pvi_integrate, cmd_trace, cmd_verify, run};
pub use pipeline::{Thresholds, VerifyReport};

use std::path::PathBuf;

use instanton::InstantonError;
use isomonodromy::{Branch, IsoError};
use painleve::PainleveError;
use thiserror::Error;
use twistor::TwistorError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Profile,
    Trace,
    Verify,
    PviIntegrate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Which printed `δ` formula the PVI checks use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaPreference {
    /// The variant selected by the measured `δ`.
    Auto,
    Intro,
    Theorem,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: i32,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    /// Replaces every upper threshold of `verify` when set.
    pub tol: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub delta_variant: DeltaPreference,
    /// Eigenvalue branch for `pvi-integrate`.
    pub branch: Branch,
}

impl RunConfig {
    pub fn new(command: Command, n: i32) -> Self {
        Self {
            command,
            n,
            t_min: 0.05,
            t_max: 0.95,
            samples: 101,
            tol: None,
            output_path: None,
            format: Format::Csv,
            delta_variant: DeltaPreference::Auto,
            branch: Branch::Plus,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n < 1 || self.n % 2 == 0 {
            return bad(format!("--n must be a positive odd integer, got {}", self.n));
        }
        if !(self.t_min > 0.0 && self.t_min < self.t_max && self.t_max < 1.0) {
            return bad(format!("need 0 < t-min < t-max < 1, got {} and {}", self.t_min, self.t_max));
        }
        if self.samples < 5 {
            return bad(format!("--samples must be at least 5, got {}", self.samples));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return bad(format!("--tol must be positive, got {tol}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("boundary-value solver did not converge after {iters} iterations (defect {defect:e})")]
    NoConvergence { iters: usize, defect: f64 },
    #[error(transparent)]
    Instanton(InstantonError),
    #[error(transparent)]
    Twistor(#[from] TwistorError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Painleve(#[from] PainleveError),
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<InstantonError> for CliError {
    fn from(e: InstantonError) -> Self {
        match e {
            InstantonError::NoConvergence { iters, defect } => CliError::NoConvergence { iters, defect },
            e => CliError::Instanton(e),
        }
    }
}

impl CliError {
    /// 1 for rejected configurations and failed verification, 2 for
    /// numerical failures, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::VerificationFailed(_) => 1,
            CliError::Io { .. } => 3,
            _ => 2,
        }
    }

    /// One-line JSON diagnostic for stderr.
    pub fn diagnostic(&self) -> String {
        let kind = match self {
            CliError::Config(_) => "config",
            CliError::VerificationFailed(_) => "verification_failed",
            CliError::NoConvergence { .. } => "no_convergence",
            CliError::Io { .. } => "io",
            CliError::Json(_) => "serialization",
            _ => "numerical",
        };
        let mut v = serde_json::json!({ "error": kind, "message": self.to_string() });
        if let CliError::NoConvergence { iters, defect } = self {
            v["iters"] = (*iters).into();
            v["defect"] = (*defect).into();
        }
        v.to_string()
    }
}
