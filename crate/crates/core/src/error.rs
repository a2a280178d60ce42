use core::fmt;

use crate::quad::QuadratureResult;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the numerical core.
///
/// Structural misuse (bad domains, violated parameter constraints) is reported
/// immediately. Numerical trouble carries the best estimate obtained so far.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the function, e.g. `x ≤ 0` for Bessel.
    Domain { what: &'static str, value: f64 },
    /// Gamma evaluated at a non-positive integer.
    GammaPole { re: f64 },
    /// A parameter constraint failed; `constraint` names it.
    Parameter { constraint: &'static str },
    /// An integrator did not meet its tolerance.
    NotConverged { what: &'static str, best: QuadratureResult },
    /// The integrand is not integrable (growth detected across refinements).
    Divergent { what: &'static str },
    /// A vertical-line integrand does not decay enough to truncate.
    Truncation { what: &'static str, tail: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::GammaPole { re } => write!(f, "gamma function pole at {re}"),
            Error::Parameter { constraint } => write!(f, "parameter constraint violated: {constraint}"),
            Error::NotConverged { what, best } => write!(
                f,
                "{what}: no convergence (best {} ± {:.3e} after {} evaluations)",
                best.value, best.error_estimate, best.evaluations
            ),
            Error::Divergent { what } => write!(f, "{what}: integral diverges"),
            Error::Truncation { what, tail } => {
                write!(f, "{what}: integrand does not decay along the line (tail {tail:.3e})")
            }
        }
    }
}
