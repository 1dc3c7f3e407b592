use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} = {value} is outside the physical range [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("implied correlator G = {value} is outside [-1, 1/3]; check units and per-dimer normalization")]
    Inconsistent { value: f64 },

    #[error("exchange coupling must be nonzero")]
    ZeroCoupling,

    #[error("no g-factor set for these dimer parameters")]
    MissingGFactor,

    #[error("ferromagnetic dimer: no entanglement at any T")]
    NoEntanglement,

    #[error("ferromagnetic dimer: susceptibility is monotone and has no maximum")]
    NoSusceptibilityMaximum,

    #[error("correlator G = {value} is inconsistent with a {coupling} coupling")]
    CouplingMismatch { value: f64, coupling: &'static str },

    #[error("specific heat {value} exceeds the branch maximum {max}")]
    NoSolution { value: f64, max: f64 },

    #[error("specific heat {value} has two correlator solutions; choose the hot or cold branch")]
    AmbiguousBranch { value: f64 },

    #[error("no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("curves coincide on [{lo}, {hi}]; no isolated crossing")]
    DegenerateCrossing { lo: f64, hi: f64 },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("temperatures must be strictly increasing (row {row}: {t})")]
    Unsorted { row: usize, t: f64 },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("all temperatures are equal; data carry no temperature dependence")]
    DegenerateData,

    #[error("{name} is not finite")]
    NotFinite { name: &'static str },
}

/// An error tied to a row of a series.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("row {row}: {error}")]
pub struct RowError {
    pub row: usize,
    pub error: Error,
}
