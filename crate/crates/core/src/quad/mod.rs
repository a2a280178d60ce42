//! Quadrature engines. Every integrator returns a [`QuadratureResult`]
//! carrying an error estimate and the number of integrand evaluations.

mod de;
mod kronrod;
mod line;
mod oscillatory;

pub use de::{integrate_de, integrate_de_dist, integrate_half_line, integrate_real_line, integrate_real_line_atol, DePoint};
pub use kronrod::{gk21, integrate_adaptive};
pub use line::{integrate_vertical_line, integrate_vertical_line_atol, LineIntegral};
pub use oscillatory::{euler_average, integrate_oscillatory, truncated_oscillatory, Oscillation};

use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: C64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    pub(crate) fn combine(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }

    pub(crate) fn scale(self, factor: C64) -> QuadratureResult {
        QuadratureResult {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.norm(),
            evaluations: self.evaluations,
        }
    }
}

/// Truncation controls: oscillatory cutoff `N`, contour half-height `T` and
/// the relative tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub n_cut: f64,
    pub t_height: f64,
    pub tol: f64,
}

impl TruncationPolicy {
    pub fn new(n_cut: f64, t_height: f64, tol: f64) -> Result<Self> {
        if !(n_cut > 0.0 && n_cut.is_finite()) {
            return Err(Error::Parameter { constraint: "n_cut > 0" });
        }
        if !(t_height > 0.0 && t_height.is_finite()) {
            return Err(Error::Parameter { constraint: "t_height > 0" });
        }
        if !(1e-14..1.0).contains(&tol) {
            return Err(Error::Parameter { constraint: "1e-14 <= tol < 1" });
        }
        Ok(TruncationPolicy { n_cut, t_height, tol })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { n_cut: 1e4, t_height: 8.0, tol: 1e-10 }
    }
}

/// The contour `{Re s = mu}` with reference height `t_height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalLine {
    pub mu: f64,
    pub t_height: f64,
}

impl VerticalLine {
    pub fn new(mu: f64, t_height: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Parameter { constraint: "line abscissa is finite" });
        }
        if !(t_height > 0.0 && t_height.is_finite()) {
            return Err(Error::Parameter { constraint: "t_height > 0" });
        }
        Ok(VerticalLine { mu, t_height })
    }

    /// Line admissible for the inversion theorem: `-1 < mu < 0`.
    pub fn solver(mu: f64, t_height: f64) -> Result<Self> {
        if !(mu > -1.0 && mu < 0.0) {
            return Err(Error::Parameter { constraint: "-1 < Re s < 0" });
        }
        Self::new(mu, t_height)
    }

    #[inline]
    pub fn point(&self, tau: f64) -> C64 {
        C64::new(self.mu, tau)
    }
}

/// Convergence test shared by the integrators: relative tolerance with a
/// round-off floor proportional to `∫|f|`.
#[inline]
pub(crate) fn within(err: f64, value: C64, abs_mass: f64, tol: f64) -> bool {
    err <= tol * value.norm() || err <= 50.0 * f64::EPSILON * abs_mass
}
