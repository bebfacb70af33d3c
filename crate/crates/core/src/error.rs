//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument violated a documented domain restriction.
    #[error("{func}: domain error: {msg}")]
    Domain { func: &'static str, msg: String },

    /// The integrand produced a non-finite value at a node where the
    /// weighted contribution could not be certified negligible.
    #[error("quadrature: non-finite integrand value at {abscissa:e} (level {level})")]
    NonFiniteIntegrand { abscissa: f64, level: u32 },

    /// Truncated power-series operation failed.
    #[error("series: {0}")]
    Series(String),

    /// The coefficient data gives no evidence that the series is summable
    /// at 1, so the series path is gated off for this case.
    #[error("series path inapplicable: {0}")]
    NotSummable(String),

    /// Rate-fit input was degenerate.
    #[error("rate fit: {0}")]
    RateFit(String),

    /// No catalog case with this name.
    #[error("catalog: unknown case '{0}'")]
    UnknownCase(String),

    /// Configuration file or parameter string could not be parsed.
    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            func,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
