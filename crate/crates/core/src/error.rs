use thiserror::Error;

use crate::sheet::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid preset: {0}")]
    InvalidPreset(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    /// Array lengths or other call contracts do not line up.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("sheet failed validation: {}", summarize(.0))]
    Validation(Vec<Violation>),

    /// The right-hand side hit a degenerate sample (axis contact, zero speed, non-finite value).
    #[error("singularity at sample {index} (rho = {rho:.6}){}: {reason}", stage.map(|s| format!(" during RK stage {s}")).unwrap_or_default())]
    Singularity {
        index: usize,
        rho: f64,
        stage: Option<usize>,
        reason: String,
    },

    #[error("right-hand sides disagree by {distance:e} (sup norm) in RK stage {stage}")]
    RhsMismatch { stage: usize, distance: f64 },

    #[error(
        "period group is not discrete: P = {winding}, 2*pi*c = {theta_period} have no rational ratio within tolerance"
    )]
    NonDiscretePeriods { winding: f64, theta_period: f64 },

    #[error("Clairaut bound violated: min xi = {min_xi} must exceed |kappa| = {kappa}")]
    ClairautViolation { min_xi: f64, kappa: f64 },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("m_a is ill-defined: a*ell/(2*pi) = {ratio} is not a positive integer")]
    IllDefinedMap { ratio: f64 },

    #[error("vector field is not in the isotropy algebra: beta(v) varies by {relative_variation:e} (relative)")]
    NotInIsotropy { relative_variation: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn summarize(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}
