use thiserror::Error;

use crate::transforms::RegressivityKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid time scale: {0}")]
    InvalidTimeScale(String),

    #[error("{t} is not a point of the time scale")]
    Domain { t: f64 },

    /// The point is the left-scattered maximum, where graininess and delta
    /// derivatives are undefined.
    #[error("{t} is the left-scattered maximum of the time scale")]
    Kappa { t: f64 },

    #[error("singular evaluation in {op}: {detail}")]
    Singular { op: &'static str, detail: String },

    #[error("coefficient is not {kind} at t = {t}")]
    Regressivity { kind: RegressivityKind, t: f64 },

    #[error("failed to reach tolerance {tol:e} on [{a}, {b}]")]
    Tolerance { tol: f64, a: f64, b: f64 },

    #[error("sample required at t = {t} is missing from the grid")]
    Grid { t: f64 },

    #[error("time scale does not have constant graininess")]
    ConstantGraininess,

    #[error("imaginary residue {residue:e} exceeds bound for a real-valued function")]
    NotReal { residue: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn singular(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Singular {
            op,
            detail: detail.into(),
        }
    }
}
