//! Special functions on the real order range `0 ≤ ν ≤ 1/2`.

pub(crate) mod bessel;
mod gamma;
mod hyper;
mod legendre;

pub use bessel::{bessel_j, bessel_j_deriv, bessel_jy, bessel_y, bessel_y_deriv, BesselPair, SWITCHOVER};
pub use gamma::{gamma, gamma_real, ln_gamma, ln_gamma_ratio, recip_gamma};
pub use hyper::gauss_2f1;
pub use legendre::{
    euler_convergent, legendre_q, legendre_q_deriv, legendre_q_hypergeometric, legendre_q_near_one, legendre_q_reduced,
    legendre_q_reduced_deriv, legendre_q_zm1, ComplexDegree, NearOne,
};

use crate::error::{Error, Result};

/// Real Bessel/Legendre order `ν`, restricted to `[0, 1/2]`.
///
/// Solver paths additionally require `0 < ν < 1/2`; see [`Order::solver`].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && (0.0..=0.5).contains(&nu) {
            Ok(Order(nu))
        } else {
            Err(Error::Parameter { constraint: "0 <= nu <= 1/2" })
        }
    }

    /// Order admissible for the inversion theorem: `0 < ν < 1/2`.
    pub fn solver(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > 0.0 && nu < 0.5 {
            Ok(Order(nu))
        } else {
            Err(Error::Parameter { constraint: "0 < nu < 1/2" })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}
