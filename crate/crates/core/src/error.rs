use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the admissible domain: {0}")]
    Domain(String),
    #[error("series or iteration failed to converge: {0}")]
    NonConvergence(String),
    #[error("evaluation hit a pole: {0}")]
    Pole(String),
    #[error("period pair spans a degenerate lattice")]
    DegenerateLattice,
    #[error("transformation denominator vanishes (|den| = {den:e}, |num| = {num:e})")]
    DenominatorZero { den: f64, num: f64 },
    #[error("target parameter {target} is not reachable from {start}")]
    UnreachableTarget { start: String, target: String },
    #[error("solution value too close to a singular value: {0}")]
    NearSingular(String),
    #[error("monodromy formula has a vanishing denominator: {0}")]
    DegenerateDenominator(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
