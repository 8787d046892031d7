use thiserror::Error;

/// Errors raised by the solvers, the constant evaluators and the checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },

    #[error("{what} did not converge (last error estimate {estimate:e})")]
    NoConvergence { what: &'static str, estimate: f64 },

    #[error("invalid bracket: {0}")]
    InvalidBracket(String),

    #[error("bracket search failed: {0}")]
    BracketFailure(String),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    #[error("a1 and a2 are both zero; at least one must be positive")]
    ZeroCoefficients,

    #[error("monotonicity violated: {0}")]
    MonotonicityViolation(String),

    #[error("no positive solution: {0}")]
    NoSolution(String),

    #[error("trajectory overflow at x = {x}")]
    Overflow { x: f64 },

    #[error("check `{check}` does not apply: {reason}")]
    WrongRegime { check: &'static str, reason: String },

    #[error("neither E3 reading matches the computed curve (relative errors {paper:e} and {variant:e})")]
    AmbiguousReading { paper: f64, variant: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
