//! The Weber cross-product kernel `C_ν(α, β) = J_ν(α)Y_ν(β) − Y_ν(α)J_ν(β)`
//! and the modulus `J_ν² + Y_ν²`.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::bessel::{hankel_pq, jy, SWITCHOVER};
use crate::specfun::{gamma, legendre_q_reduced, legendre_q_zm1, ln_gamma, ComplexDegree, Order};
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Relative distance below which the kernel switches to its Taylor
/// expansion about the diagonal.
pub const DIAGONAL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub alpha: f64,
    pub beta: f64,
}

impl KernelPoint {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for v in [alpha, beta] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain { what: "kernel argument > 0", value: v });
            }
        }
        Ok(KernelPoint { alpha, beta })
    }
}

/// `C_ν(α, β)`.
pub fn weber_kernel(nu: Order, p: KernelPoint) -> Result<f64> {
    let p = KernelPoint::new(p.alpha, p.beta)?;
    Ok(kernel(nu.value(), p.alpha, p.beta))
}

pub(crate) fn kernel(nu: f64, alpha: f64, beta: f64) -> f64 {
    let h = beta - alpha;
    if h.abs() < DIAGONAL * alpha.max(beta) {
        // C(α, α+h) from the Wronskian and Bessel's equation
        let d1 = 2.0 / (PI * alpha);
        let d2 = -d1 / alpha;
        let d3 = d1 * (2.0 / (alpha * alpha) - 1.0 + nu * nu / (alpha * alpha));
        return h * (d1 + h * (0.5 * d2 + h * d3 / 6.0));
    }
    if alpha.min(beta) >= SWITCHOVER {
        let (pa, qa) = hankel_pq(nu, alpha);
        let (pb, qb) = hankel_pq(nu, beta);
        let (s, c) = h.sin_cos();
        let amp = 2.0 / (PI * (alpha * beta).sqrt());
        return amp * ((pa * pb + qa * qb) * s + (pa * qb - qa * pb) * c);
    }
    let a = jy(nu, alpha);
    let b = jy(nu, beta);
    a.j * b.y - a.y * b.j
}

/// `J_ν²(x) + Y_ν²(x)`.
pub fn modulus_sq(nu: Order, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain { what: "modulus argument > 0", value: x });
    }
    Ok(modulus(nu.value(), x))
}

pub(crate) fn modulus(nu: f64, x: f64) -> f64 {
    if x >= SWITCHOVER {
        let (p, q) = hankel_pq(nu, x);
        return 2.0 / (PI * x) * (p * p + q * q);
    }
    let b = jy(nu, x);
    b.j * b.j + b.y * b.y
}

/// Leading large-`ξ` term of `C_ν(xξ, aξ)`: `−2 sin(ξ(x−a)) / (π ξ √(ax))`.
/// The remainder is `O(ξ⁻²)`.
pub fn kernel_tail_asymptote(nu: Order, x: f64, a: f64, xi: f64) -> Result<f64> {
    let _ = nu;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain { what: "a > 0", value: a });
    }
    if !(x > a && x.is_finite()) {
        return Err(Error::Domain { what: "x > a", value: x });
    }
    if !(xi >= 1.0 && xi.is_finite()) {
        return Err(Error::Domain { what: "xi >= 1", value: xi });
    }
    Ok(-2.0 * (xi * (x - a)).sin() / (PI * xi * (a * x).sqrt()))
}

/// Amplitude and phase of `C_ν(·, β)` in its first argument: for large `t`,
/// `C_ν(t, β) ≈ −R √(2/(πt)) sin(t − (ν/2 + 1/4)π − θ)` with
/// `J_ν(β) = R cos θ`, `Y_ν(β) = R sin θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedArgPhase {
    pub amplitude: f64,
    pub theta: f64,
}

pub fn fixed_argument_phase(nu: Order, beta: f64) -> Result<FixedArgPhase> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain { what: "kernel argument > 0", value: beta });
    }
    let b = jy(nu.value(), beta);
    Ok(FixedArgPhase { amplitude: (b.j * b.j + b.y * b.y).sqrt(), theta: b.y.atan2(b.j) })
}

impl FixedArgPhase {
    /// Phase `φ` such that the zeros of `C_ν(t, β)` approach those of `sin(t + φ)`.
    pub fn phase(&self, nu: Order) -> f64 {
        -(0.5 * nu.value() + 0.25) * PI - self.theta
    }
}

/// Mellin transform of the kernel in its scale variable,
/// `∫_0^∞ C_ν(xξ, aξ) ξ^{−s} dξ`, in closed form:
/// `−(2^{1−s}/π) e^{iνπ} (x²−a²)^{(s−1)/2} Γ((1−s)/2)/Γ((1−2ν+s)/2)
/// · Q^{-ν}_{(s−1)/2}((x²+a²)/(x²−a²))` for `x > a`, extended to `x < a` by
/// antisymmetry. Requires `−1 < Re s < 1`.
pub fn kernel_mellin(nu: Order, x: f64, a: f64, s: C64) -> Result<C64> {
    for v in [x, a] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain { what: "kernel argument > 0", value: v });
        }
    }
    if !(s.re > -1.0 && s.re < 1.0) {
        return Err(Error::Parameter { constraint: "-1 < Re s < 1" });
    }
    if x == a {
        return Ok(C64::new(0.0, 0.0));
    }
    if x < a {
        return Ok(-kernel_mellin(nu, a, x, s)?);
    }
    let n = nu.value();
    let (hi, lo) = ((1.0 - s) * 0.5, (s + 1.0 - 2.0 * n) * 0.5);
    let d = (x - a) * (x + a);
    let deg = ComplexDegree::from_s(s)?;
    let zm1 = 2.0 * a * a / d;
    // Q carries Γ(lo), which cancels the denominator; near the real axis use
    // the reduced function so that s = 2ν − 1 is not a pole. Far from it the
    // two Gamma factors are individually exponentially large/small.
    let gq = if lo.im.abs() > 1.0 {
        (ln_gamma(hi)? - ln_gamma(lo)?).exp() * legendre_q_zm1(nu, deg, zm1)?
    } else {
        gamma(hi)? * legendre_q_reduced(nu, deg, zm1)?
    };
    let ln_rest = (1.0 - s) * core::f64::consts::LN_2 + (s - 1.0) * 0.5 * d.ln();
    Ok(-gq * ln_rest.exp() * C64::from_polar(1.0 / PI, n * PI))
}
