use thiserror::Error;

/// Every failure the library can report.
///
/// The variants split into configuration and i/o problems (exit code 2 at
/// the CLI) and numerical failures (exit code 3).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {re} + {im}i")]
    PoleOfGamma { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("root finding failure: {0}")]
    RootFindingFailure(String),

    #[error("degenerate pole: {0}")]
    DegeneratePole(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("imaginary leak of {im:e} at t = {t} ps")]
    ImaginaryLeak { t: f64, im: f64 },

    #[error("contour failure: {0}")]
    ContourFailure(String),

    #[error("step {h} ps exceeds the admissible {h_max} ps")]
    StepTooLarge { h: f64, h_max: f64 },

    #[error("predicate does not change over the range: {0}")]
    NoBracket(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("oracle mismatch: {what} differs by {diff:e} (limit {tol:e})")]
    OracleMismatch { what: String, diff: f64, tol: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            // Unreadable config or unwritable output is an invocation problem.
            Error::Config(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
