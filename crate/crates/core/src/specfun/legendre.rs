//! Associated Legendre functions of the second kind `Q^{-ν}_λ(z)`, `z > 1`,
//! with complex degree `λ = (s−1)/2`, evaluated from the Euler integral
//!
//! ```text
//! Q^{-ν}_{(s-1)/2}(z) = K(s) (z²−1)^{-ν/2} ∫_0^1 u^α (1−u)^β (z²−u)^c du,
//! K(s) = 2^{-(s+1)/2} e^{-iνπ} √π Γ((s+1−2ν)/2) / [Γ((3+s−2ν)/4) Γ((1+s+2ν)/4)],
//! α = −(1−s+2ν)/4,  β = (s−3+2ν)/4,  c = (2ν−1−s)/4.
//! ```
//!
//! The integral converges for `Re s > 2ν−3` and `Re s > −1−2ν`. Functions
//! taking `zm1 = z − 1` avoid the cancellation in `z² − 1` near `z = 1`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::gamma::{gamma, ln_gamma, recip_gamma};
use super::hyper::gauss_2f1;
use super::Order;
use crate::error::{Error, Result};
use crate::quad::{integrate_de_dist, DePoint};
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

const QUAD_TOL: f64 = 1e-13;

/// Legendre degree `λ`; the Mellin variable is `s = 2λ + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDegree {
    mu_deg: C64,
}

impl ComplexDegree {
    pub fn new(mu_deg: C64) -> Result<Self> {
        if !(mu_deg.re.is_finite() && mu_deg.im.is_finite()) {
            return Err(Error::Parameter { constraint: "finite Legendre degree" });
        }
        Ok(ComplexDegree { mu_deg })
    }

    /// Degree `(s−1)/2`.
    pub fn from_s(s: C64) -> Result<Self> {
        Self::new((s - 1.0) * 0.5)
    }

    #[inline]
    pub fn mu_deg(&self) -> C64 {
        self.mu_deg
    }

    #[inline]
    pub fn s(&self) -> C64 {
        self.mu_deg * 2.0 + 1.0
    }
}

/// Whether the Euler integral converges at order `nu` and `s = 2λ+1`.
pub fn euler_convergent(nu: f64, s: C64) -> bool {
    s.re > 2.0 * nu - 3.0 && s.re > -1.0 - 2.0 * nu
}

struct Euler {
    alpha: C64,
    beta: C64,
    c: C64,
    zm1: f64,
    /// z² − 1
    d: f64,
}

impl Euler {
    fn new(nu: f64, s: C64, zm1: f64) -> Result<Self> {
        if !(zm1 >= f64::MIN_POSITIVE && zm1.is_finite()) {
            return Err(Error::Domain { what: "Legendre argument z - 1 normal and positive", value: zm1 });
        }
        if !euler_convergent(nu, s) {
            return Err(Error::Parameter { constraint: "Re s > 2nu - 3 and Re s > -1 - 2nu" });
        }
        Ok(Euler {
            alpha: (s - 1.0 - 2.0 * nu) * 0.25,
            beta: (s - 3.0 + 2.0 * nu) * 0.25,
            c: (-s - 1.0 + 2.0 * nu) * 0.25,
            zm1,
            d: zm1 * (2.0 + zm1),
        })
    }

    /// ln(z² − u) given u and 1 − u.
    #[inline]
    fn ln_base(&self, u: f64, v: f64) -> f64 {
        if self.zm1 > 1e6 {
            let z = 1.0 + self.zm1;
            2.0 * z.ln() + (-u / (z * z)).ln_1p()
        } else {
            (self.d + v).ln()
        }
    }

    /// ∫_0^1 u^α (1−u)^β (z²−u)^{c−shift} du.
    ///
    /// Near each endpoint the variable is `x = w^{1/p}` with `p = min(1, Re e + 1)`
    /// for the endpoint exponent `e`: this removes the algebraic singularity,
    /// which otherwise spans hundreds of decades when `Re e` is close to −1.
    fn integral(&self, shift: f64) -> Result<C64> {
        let c = self.c - shift;
        // logarithm of the integrand
        let term =
            |ln_u: f64, ln_v: f64, u: f64, v: f64| -> C64 { self.alpha * ln_u + self.beta * ln_v + c * self.ln_base(u, v) };
        // ∫_lo^hi e^{f(x)} dx with x = w^{1/p}; f receives (x, ln x)
        let piece = |p: f64, lo: f64, hi: f64, f: &dyn Fn(f64, f64) -> C64| -> Result<C64> {
            let (wlo, whi) = (lo.powf(p), hi.powf(p));
            let g = |q: DePoint| {
                let ln_w = if lo == 0.0 { q.from_lo.ln() } else { q.x.ln() };
                let ln_x = ln_w / p;
                (f(ln_x.exp(), ln_x) + (1.0 / p - 1.0) * ln_w).exp() / p
            };
            Ok(integrate_de_dist(g, wlo, whi, QUAD_TOL)?.value)
        };
        let pa = (self.alpha.re + 1.0).min(1.0);
        let pb = (self.beta.re + 1.0).min(1.0);
        let left = |u: f64, ln_u: f64| term(ln_u, (-u).ln_1p(), u, 1.0 - u);
        // right half in v = 1 − u, split where (z²−1) + v changes regime
        let right = |v: f64, ln_v: f64| term((-v).ln_1p(), ln_v, 1.0 - v, v);
        let mut total = piece(pa, 0.0, 0.5, &left)?;
        if self.d < 0.25 {
            total += piece(pb, 0.0, self.d, &right)?;
            total += piece(pb, self.d, 0.5, &right)?;
        } else {
            total += piece(pb, 0.0, 0.5, &right)?;
        }
        Ok(total)
    }

    fn ln_power(&self, nu: f64) -> f64 {
        // ln (z²−1)^{-ν/2}
        -0.5 * nu * (self.zm1.ln() + (2.0 + self.zm1).ln())
    }
}

/// `K(s)/Γ((s+1−2ν)/2)`, entire in `s`.
fn reduced_prefactor(nu: f64, s: C64) -> C64 {
    let two = C64::new(2.0f64, 0.0);
    two.powc(-(s + 1.0) * 0.5)
        * C64::from_polar(PI.sqrt(), -nu * PI)
        * recip_gamma((s + 3.0 - 2.0 * nu) * 0.25)
        * recip_gamma((s + 1.0 + 2.0 * nu) * 0.25)
}

fn pole_factor(nu: f64, s: C64) -> Result<C64> {
    gamma((s + 1.0 - 2.0 * nu) * 0.5)
}

/// `Q^{-ν}_λ(z)/Γ((s+1−2ν)/2)` with `s = 2λ+1`, given `zm1 = z − 1`.
/// Finite at the poles of the Gamma factor.
pub fn legendre_q_reduced(nu: Order, deg: ComplexDegree, zm1: f64) -> Result<C64> {
    let s = deg.s();
    let e = Euler::new(nu.value(), s, zm1)?;
    let i = e.integral(0.0)?;
    Ok(reduced_prefactor(nu.value(), s) * i * e.ln_power(nu.value()).exp())
}

/// `Q^{-ν}_λ(1 + zm1)`.
pub fn legendre_q_zm1(nu: Order, deg: ComplexDegree, zm1: f64) -> Result<C64> {
    let g = pole_factor(nu.value(), deg.s())?;
    Ok(g * legendre_q_reduced(nu, deg, zm1)?)
}

/// `Q^{-ν}_λ(z)` for `z > 1`.
pub fn legendre_q(nu: Order, deg: ComplexDegree, z: f64) -> Result<C64> {
    if !(z > 1.0) {
        return Err(Error::Domain { what: "Legendre argument z > 1", value: z });
    }
    legendre_q_zm1(nu, deg, z - 1.0)
}

/// `d/dz [Q^{-ν}_λ(z)]/Γ((s+1−2ν)/2)` at `z = 1 + zm1`.
pub fn legendre_q_reduced_deriv(nu: Order, deg: ComplexDegree, zm1: f64) -> Result<C64> {
    let s = deg.s();
    let n = nu.value();
    let e = Euler::new(n, s, zm1)?;
    let i0 = e.integral(0.0)?;
    let i1 = e.integral(1.0)?;
    let z = 1.0 + zm1;
    let bracket = i0 * (-n / e.d) + i1 * (e.c * 2.0);
    Ok(reduced_prefactor(n, s) * bracket * (z * e.ln_power(n).exp()))
}

/// `d/dz Q^{-ν}_λ(z)` for `z > 1`.
pub fn legendre_q_deriv(nu: Order, deg: ComplexDegree, z: f64) -> Result<C64> {
    if !(z > 1.0) {
        return Err(Error::Domain { what: "Legendre argument z > 1", value: z });
    }
    let g = pole_factor(nu.value(), deg.s())?;
    Ok(g * legendre_q_reduced_deriv(nu, deg, z - 1.0)?)
}

/// Expansion of `Q^{-ν}_λ(1 + r)` about `r = 0`:
/// `r^{−ν/2} Σ_k minus[k] r^k + r^{ν/2} Σ_k plus[k] r^k`, convergent for
/// `0 < r < 2`. From the connection formula
/// `Q^{-ν}_λ = e^{−iνπ} π/(2 sin νπ) [Γ(λ−ν+1)/Γ(λ+ν+1) P^ν_λ − P^{-ν}_λ]`
/// with `P^{±ν}_λ(1+r) = (r/(2+r))^{∓ν/2} F(−λ, λ+1; 1∓ν; −r/2)/Γ(1∓ν)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NearOne {
    pub nu: f64,
    pub minus: Vec<C64>,
    pub plus: Vec<C64>,
}

impl NearOne {
    pub fn eval(&self, r: f64) -> C64 {
        let horner = |c: &[C64]| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &k| acc * r + k);
        horner(&self.minus) * r.powf(-0.5 * self.nu) + horner(&self.plus) * r.powf(0.5 * self.nu)
    }
}

/// First `terms` coefficients of the expansion of `Q^{-ν}_λ` about `z = 1`
/// (see [`NearOne`]); requires `ν > 0` (at `ν = 0` the two branches merge
/// into a logarithm).
pub fn legendre_q_near_one(nu: Order, deg: ComplexDegree, terms: usize) -> Result<NearOne> {
    let n = nu.value();
    if !(n > 0.0) {
        return Err(Error::Parameter { constraint: "0 < nu" });
    }
    let lam = deg.mu_deg();
    let one = C64::new(1.0, 0.0);
    let c = C64::from_polar(PI / (2.0 * (PI * n).sin()), -n * PI);
    let ratio = gamma(lam - n + 1.0)? * recip_gamma(lam + n + 1.0);
    // (1 + r/2)^p and F(−λ, λ+1; c; −r/2) as power series in r
    let binom = |p: f64| {
        let mut v = Vec::with_capacity(terms);
        let mut t = one;
        for k in 0..terms {
            v.push(t);
            t *= (p - k as f64) / (2.0 * (k + 1) as f64);
        }
        v
    };
    let hyper = |cc: f64| {
        let mut v = Vec::with_capacity(terms);
        let mut t = one;
        for k in 0..terms {
            v.push(t);
            let kf = k as f64;
            t *= (-lam + kf) * (lam + 1.0 + kf) / ((cc + kf) * (kf + 1.0)) * -0.5;
        }
        v
    };
    let conv = |a: &[C64], b: &[C64], scale: C64| -> Vec<C64> {
        (0..terms).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum::<C64>() * scale).collect()
    };
    let minus_scale = c * ratio * (2f64.powf(0.5 * n) / gamma_real_pos(1.0 - n)?);
    let plus_scale = -c * (2f64.powf(-0.5 * n) / gamma_real_pos(1.0 + n)?);
    Ok(NearOne {
        nu: n,
        minus: conv(&binom(0.5 * n), &hyper(1.0 - n), minus_scale),
        plus: conv(&binom(-0.5 * n), &hyper(1.0 + n), plus_scale),
    })
}

fn gamma_real_pos(x: f64) -> Result<f64> {
    Ok(gamma(C64::new(x, 0.0))?.re)
}

/// Independent evaluation through the hypergeometric series in `1/z²`:
/// `Q^μ_λ(z) = e^{iμπ} √π Γ(λ+μ+1) (z²−1)^{μ/2} / (2^{λ+1} Γ(λ+3/2))
/// · z^{−λ−μ−1} ₂F₁((λ+μ+2)/2, (λ+μ+1)/2; λ+3/2; 1/z²)` with `μ = −ν`.
pub fn legendre_q_hypergeometric(nu: Order, deg: ComplexDegree, z: f64) -> Result<C64> {
    if !(z > 1.0) {
        return Err(Error::Domain { what: "Legendre argument z > 1", value: z });
    }
    let mu = -nu.value();
    let lam = deg.mu_deg();
    let lm = lam + mu;
    let f = gauss_2f1((lm + 2.0) * 0.5, (lm + 1.0) * 0.5, lam + 1.5, 1.0 / (z * z))?;
    let ln_pref = ln_gamma(lm + 1.0)? - ln_gamma(lam + 1.5)? + 0.5 * mu * (z * z - 1.0).ln()
        - (lam + 1.0) * core::f64::consts::LN_2
        - (lm + 1.0) * z.ln();
    Ok(ln_pref.exp() * C64::from_polar(PI.sqrt(), mu * PI) * f)
}
