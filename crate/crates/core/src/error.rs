use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A bracketing solve was handed an interval without a sign change.
    #[error("no sign change on [{a}, {b}]: f(a) = {fa:e}, f(b) = {fb:e} ({context})")]
    Bracket { context: String, a: f64, b: f64, fa: f64, fb: f64 },

    #[error("near resonance at wavenumber {wavenumber}: |c - m_T(kappa k)| = {gap:e}")]
    NearResonance { wavenumber: i64, gap: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { what: String, iterations: usize, residual: f64 },

    #[error("fixed point for w diverged; update norms {history:?}")]
    Divergence { history: Vec<f64> },

    #[error("truncation order {truncation} too small, need at least {required}")]
    Truncation { truncation: usize, required: usize },

    #[error("degenerate direction: {0}")]
    Degenerate(String),

    /// The exact expansion would need more terms than the configured guard.
    #[error("expansion has N = {n} terms, above the guard of {limit}")]
    SizeGuard { n: String, limit: u64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Process exit code for the command-line surface: 2 for bad input, 3
    /// for numerical failure, 4 for the size guard and 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Truncation { .. } | Error::Degenerate(_) => 2,
            Error::Bracket { .. }
            | Error::NearResonance { .. }
            | Error::NotConverged { .. }
            | Error::Divergence { .. }
            | Error::NonFinite(_) => 3,
            Error::SizeGuard { .. } => 4,
            Error::Io { .. } => 1,
        }
    }

    /// Short machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Bracket { .. } => "bracket",
            Error::NearResonance { .. } => "near_resonance",
            Error::NotConverged { .. } => "not_converged",
            Error::Divergence { .. } => "divergence",
            Error::Truncation { .. } => "truncation",
            Error::Degenerate(_) => "degenerate",
            Error::SizeGuard { .. } => "size_guard",
            Error::NonFinite(_) => "non_finite",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: impl std::fmt::Display) -> Self {
        Error::Io { path: path.as_ref().display().to_string(), message: err.to_string() }
    }
}
