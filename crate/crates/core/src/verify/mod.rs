//! Generator-level verification of the intertwining property, the exact
//! Gaussian-Fourier engine and the suite driver behind the CLI.

mod checks;
mod gauss;
mod suite;

pub use checks::{
    check_hecke, check_hecke_points, check_inversion, check_rotation_invariance,
    check_structure_equivariance, check_translation_equivariance, InversionOutcome,
};
pub use gauss::{gaussian_fourier, GaussianIntegral};
pub use suite::{
    run_suite, AlgebraChoice, CoeffTable, ReportParams, Stages, SuiteConfig, VerificationReport,
};

use serde::{Deserialize, Serialize};

use crate::exactalg::ExactError;
use crate::jordan::JordanError;
use crate::jrep::RepError;
use crate::pluriharm::PluriError;
use crate::sbdo::SbdoError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("symbol is not pluri-harmonic: {0}")]
    NotPluriharmonic(String),
    #[error("N/(2r) = {0} is not an integer")]
    NonIntegralExponent(String),
    #[error("weight N/(2r) = {0} is not an integer")]
    NonIntegralWeight(String),
    #[error("point is not in the cone: {0}")]
    NotInCone(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Pluri(#[from] PluriError),
    #[error(transparent)]
    Sbdo(#[from] SbdoError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(id: &str) -> Self {
        CheckResult { id: id.into(), status: CheckStatus::Pass, witness: None, detail: None }
    }

    pub fn fail(id: &str, witness: impl Into<String>) -> Self {
        CheckResult { id: id.into(), status: CheckStatus::Fail, witness: Some(witness.into()), detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}
