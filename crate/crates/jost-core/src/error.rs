use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JostError {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contraction bound violated: (2/δ)·∫_r^∞|q| = {bound:.4} exceeds margin {margin} (δ = {delta}, r = {r}, |k| = {k_abs})")]
    Contraction {
        bound: f64,
        margin: f64,
        delta: f64,
        r: f64,
        k_abs: f64,
    },

    #[error("Neumann series did not reach tolerance after {terms} terms (last term {last:.3e})")]
    NotConverged { terms: usize, last: f64 },

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("λ = {lambda} is at or next to an eigenvalue (|det| = {det_abs:.3e}); use the point-mass path")]
    EigenvalueProximity { lambda: f64, det_abs: f64 },

    #[error("numerical inconsistency: {0}")]
    Inconsistent(String),

    #[error("ill-conditioned collocation system (condition {0:.3e})")]
    IllConditioned(f64),

    #[error("singular linear system: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, JostError>;
