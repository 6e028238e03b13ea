//! Error and warning types shared across the crate.

use thiserror::Error;

/// Errors produced by the numerical operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value exceeds the representable f64 range and no log form was requested.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An iterative sum or solver did not meet its tolerance within the iteration cap.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// The bosonic Padé form diverges at t/N = (sqrt(2)-1)/2; evaluation at or
    /// below the pole is refused.
    #[error("Padé pole: boson t/N = {t_over_n} is at or below the pole (sqrt(2)-1)/2")]
    Pole { t_over_n: f64 },

    /// Interpolation fitting found no root or minimum in the search window.
    #[error("fit error: {0}")]
    Fit(String),

    /// The eigenvalue scan window contains no sign change of the shooting function.
    #[error("bracket error: {0}")]
    Bracket(String),

    /// Adaptive step control failed during ODE integration.
    #[error("stiffness error: {0}")]
    Stiffness(String),
}

/// Soft diagnostic attached to results evaluated outside their nominal regime.
///
/// Regime boundaries are advisory: formulas are still evaluated and returned,
/// with the caveat carried alongside the value rather than raised as an error.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeWarning {
    pub message: String,
}

impl RegimeWarning {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
        }
    }
}

impl std::fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
