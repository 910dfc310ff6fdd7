use core::fmt;

use crate::Complex;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    Domain {
        /// Name of the offending parameter.
        parameter: &'static str,
        /// The rejected value.
        value: f64,
        /// Human-readable constraint, e.g. `"must be > 0"`.
        constraint: &'static str,
    },
    /// The geometry does not satisfy the support condition of a closed form.
    UnsupportedGeometry {
        /// Description of the violated condition.
        condition: &'static str,
    },
    /// The phase partition alone would need more segments than allowed.
    SegmentBudget {
        /// Segments needed by the initial partition.
        required: u64,
        /// Configured segment budget.
        budget: u64,
    },
    /// Adaptive refinement stopped before reaching the requested tolerance.
    NotConverged {
        /// Best value reached.
        value: Complex,
        /// Absolute error estimate of `value`.
        error_estimate: f64,
        /// Requested relative tolerance.
        tolerance: f64,
    },
}

/// Result alias for the core library.
pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(parameter: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::Domain {
            parameter,
            value,
            constraint,
        }
    }

    /// True for the two quadrature non-convergence variants.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::SegmentBudget { .. } | Error::NotConverged { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                parameter,
                value,
                constraint,
            } => write!(f, "{parameter} {constraint} (got {value:e})"),
            Error::UnsupportedGeometry { condition } => {
                write!(f, "unsupported geometry: {condition}")
            }
            Error::SegmentBudget { required, budget } => write!(
                f,
                "oscillatory integral needs {required} phase segments, budget is {budget}"
            ),
            Error::NotConverged {
                value,
                error_estimate,
                tolerance,
            } => write!(
                f,
                "quadrature did not reach relative tolerance {tolerance:e}: \
                 value {value}, error estimate {error_estimate:e}"
            ),
        }
    }
}

impl core::error::Error for Error {}

/// Rejects non-finite values and values `<= 0`.
pub(crate) fn require_positive(parameter: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(parameter, value, "must be finite and > 0"))
    }
}

/// Rejects non-finite values and values `< 0`.
pub(crate) fn require_non_negative(parameter: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(parameter, value, "must be finite and >= 0"))
    }
}
