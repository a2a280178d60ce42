//! Numerical certification of the closed forms behind the inversion: the
//! Mellin transform of the kernel, the integral of a product of two Legendre
//! functions, the Barnes integral it comes from (with an independent residue
//! sum), the Barnes representation of `J_ν² + Y_ν²`, and the decay of the
//! truncated Legendre-product integral `I_N`.
//!
//! Every check computes both sides with different machinery and returns an
//! [`IdentityReport`]; nothing here asserts.

use alloc::vec::Vec;
use core::cell::Cell;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::{kernel, kernel_mellin, modulus};
use crate::quad::{
    integrate_de, integrate_half_line, integrate_oscillatory, integrate_vertical_line, DePoint, Oscillation, QuadratureResult,
    TruncationPolicy, VerticalLine,
};
use crate::specfun::{legendre_q_near_one, legendre_q_zm1, ln_gamma, ln_gamma_ratio, ComplexDegree, Order};
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Parameters of one identity check. Each operation reads the fields it
/// needs and checks its own constraint set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCase {
    pub nu: Order,
    pub a: f64,
    pub x: f64,
    pub s: C64,
    pub w: C64,
    /// Abscissa of the Barnes contour.
    pub gamma_abscissa: f64,
    pub n_cut: f64,
}

impl IdentityCase {
    /// A case with `a = 1`, `x = 2`, `s = w = 0`, `γ = 1/2` and `N = 10`; set
    /// the relevant fields afterwards.
    pub fn with_order(nu: Order) -> Self {
        IdentityCase { nu, a: 1.0, x: 2.0, s: C64::new(0.0, 0.0), w: C64::new(0.0, 0.0), gamma_abscissa: 0.5, n_cut: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub lhs: C64,
    pub rhs: C64,
    pub abs_diff: f64,
    /// `|lhs − rhs| / max(|lhs|, |rhs|, ε)`.
    pub rel_diff: f64,
    /// Quadrature error estimate of the numerical side, relative to `|lhs|`.
    pub lhs_error_estimate: f64,
    /// Relative imaginary part of a quantity that should be real; zero when
    /// not applicable.
    pub imaginary_residue: f64,
}

impl IdentityReport {
    pub fn new(lhs: QuadratureResult, rhs: C64, imaginary_residue: f64) -> Self {
        let abs_diff = (lhs.value - rhs).norm();
        let scale = lhs.value.norm().max(rhs.norm()).max(f64::EPSILON);
        IdentityReport {
            lhs: lhs.value,
            rhs,
            abs_diff,
            rel_diff: abs_diff / scale,
            lhs_error_estimate: lhs.error_estimate / lhs.value.norm().max(f64::MIN_POSITIVE),
            imaginary_residue,
        }
    }

    /// `rel_diff ≤ max(tol, 10·lhs_error_estimate)`.
    pub fn passes(&self, tol: f64) -> bool {
        self.rel_diff <= tol.max(10.0 * self.lhs_error_estimate)
    }
}

/// Collects the first error raised inside an integrand closure.
struct Trap(Cell<Option<Error>>);

impl Trap {
    fn new() -> Self {
        Trap(Cell::new(None))
    }

    fn value(&self, r: Result<C64>) -> C64 {
        r.unwrap_or_else(|e| {
            let first = self.0.take().unwrap_or(e);
            self.0.set(Some(first));
            C64::new(f64::NAN, f64::NAN)
        })
    }

    fn finish<T>(&self, r: Result<T>) -> Result<T> {
        match self.0.take() {
            Some(e) => Err(e),
            None => r,
        }
    }
}

fn param(ok: bool, constraint: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter { constraint })
    }
}

/// Constraints of the kernel's Mellin transform: `x > a > 0`, `−1 < Re s < 0`.
pub fn check_eq12(case: &IdentityCase) -> Result<()> {
    param(case.a > 0.0 && case.a.is_finite(), "a > 0")?;
    param(case.x > case.a && case.x.is_finite(), "x > a")?;
    param(case.s.re > -1.0 && case.s.re < 0.0, "-1 < Re s < 0")
}

/// `∫_0^∞ C_ν(xξ, aξ) ξ^{−s} dξ` by oscillatory quadrature against the
/// closed form [`kernel_mellin`].
pub fn verify_eq12(case: &IdentityCase, tol: f64) -> Result<IdentityReport> {
    check_eq12(case)?;
    let (nu, a, x, s) = (case.nu.value(), case.a, case.x, case.s);
    let h = |xi: f64| {
        if xi <= 0.0 {
            C64::new(0.0, 0.0)
        } else {
            (-s * xi.ln()).exp() * kernel(nu, x * xi, a * xi)
        }
    };
    let scale = -2.0 / (PI * (a * x).sqrt());
    let envelope = |xi: f64| (-(s + 1.0) * xi.ln()).exp() * scale;
    let policy = TruncationPolicy::new(1e7, 8.0, tol)?;
    let lhs = integrate_oscillatory(h, Oscillation { freq: x - a, phase: 0.0 }, 0.0, &policy, Some(envelope))?;
    let rhs = kernel_mellin(case.nu, x, a, s)?;
    // for real s both sides are real; the closed form carries complex phases
    let residue = if s.im == 0.0 { rhs.im.abs() / rhs.norm().max(f64::MIN_POSITIVE) } else { 0.0 };
    Ok(IdentityReport::new(lhs, rhs, residue))
}

/// Constraints of the Legendre-product integral:
/// `ν < Re(w−s)/2 < 1/2`, `−1/2 > Re w > max(2ν + Re s, −1)`, and
/// `Re s > −1 − 2ν` so that both Legendre functions have convergent Euler
/// integrals.
pub fn check_eq18(case: &IdentityCase) -> Result<()> {
    let nu = case.nu.value();
    let d = 0.5 * (case.w.re - case.s.re);
    param(nu > 0.0, "0 < nu")?;
    param(d > nu && d < 0.5, "nu < Re(w-s)/2 < 1/2")?;
    param(case.w.re < -0.5 && case.w.re > (2.0 * nu + case.s.re).max(-1.0), "-1/2 > Re w > max(2nu + Re s, -1)")?;
    param(case.s.re > -1.0 - 2.0 * nu, "Re s > -1 - 2nu")
}

fn eq18_rhs(nu: f64, s: C64, w: C64) -> Result<C64> {
    let h = (w - s) * 0.5;
    let one = C64::new(1.0, 0.0);
    let num = ln_gamma((one + s - w) * 0.5)?
        + ln_gamma(h)?
        + ln_gamma(h - nu)?
        + ln_gamma(h + nu)?
        + ln_gamma((one + s) * 0.5 - nu)?
        + ln_gamma((one - w) * 0.5 - nu)?;
    let den = ln_gamma((one - s) * 0.5)? + ln_gamma((one + w) * 0.5)?;
    let two = C64::new(2.0, 0.0);
    Ok((num - den).exp() * two.powc((s - w) * 0.5 - 1.0) * C64::from_polar((PI * nu).cos() / PI.sqrt(), -2.0 * nu * PI))
}

/// `r^{(w−s)/2} Q^{-ν}_{−(w+1)/2}(1+r) Q^{-ν}_{(s−1)/2}(1+r)` at `r = e^y`:
/// the Legendre-product integrand in the variable `y = ln(t−1)`.
fn log_product(nu: Order, s: C64, w: C64, y: f64) -> Result<C64> {
    let r = y.exp();
    if !r.is_finite() {
        return Ok(C64::new(0.0, 0.0));
    }
    let q1 = legendre_q_zm1(nu, ComplexDegree::new(-(w + 1.0) * 0.5)?, r)?;
    let q2 = legendre_q_zm1(nu, ComplexDegree::from_s(s)?, r)?;
    Ok(((w - s) * (0.5 * y)).exp() * q1 * q2)
}

/// Below `t − 1 = NEAR_ONE` the Legendre-product integrals are summed
/// termwise from the expansion of both functions about `t = 1`. The
/// integrand behaves like `r^{Re(w−s)/2−ν−1}` there, which is too weak a
/// singularity for quadrature when `Re(w−s)/2` is close to `ν`.
const NEAR_ONE: f64 = 0.25;
const NEAR_ONE_TERMS: usize = 40;

/// `∫_0^R r^{(w−s)/2−1} Q^{-ν}_{−(w+1)/2}(1+r) Q^{-ν}_{(s−1)/2}(1+r) dr` for
/// `R ≤ NEAR_ONE`. The products of the two expansions give powers
/// `r^{h+e+k−1}` with `e ∈ {−ν, 0, ν}`, each integrated exactly.
fn near_one_integral(nu: Order, s: C64, w: C64, upper: f64) -> Result<QuadratureResult> {
    let q1 = legendre_q_near_one(nu, ComplexDegree::new(-(w + 1.0) * 0.5)?, NEAR_ONE_TERMS)?;
    let q2 = legendre_q_near_one(nu, ComplexDegree::from_s(s)?, NEAR_ONE_TERMS)?;
    let (h, n, ln_r) = ((w - s) * 0.5, nu.value(), upper.ln());
    let (mut sum, mut mass) = (C64::new(0.0, 0.0), 0.0);
    for (e, a, b) in [(-n, &q1.minus, &q2.minus), (0.0, &q1.minus, &q2.plus), (0.0, &q1.plus, &q2.minus), (n, &q1.plus, &q2.plus)]
    {
        for k in 0..NEAR_ONE_TERMS {
            let c: C64 = (0..=k).map(|j| a[j] * b[k - j]).sum();
            let p = h + e + k as f64;
            let term = c * (p * ln_r).exp() / p;
            sum += term;
            mass += term.norm();
        }
    }
    Ok(QuadratureResult { value: sum, error_estimate: 10.0 * f64::EPSILON * mass, evaluations: 0 })
}

/// `∫_1^∞ (t−1)^{(w−s)/2−1} Q^{-ν}_{−(w+1)/2}(t) Q^{-ν}_{(s−1)/2}(t) dt`
/// against its Gamma-product closed form. The part `t − 1 > NEAR_ONE` is
/// integrated in `y = ln(t−1)`, where the algebraic decay at infinity
/// becomes exponential.
pub fn verify_eq18(case: &IdentityCase, tol: f64) -> Result<IdentityReport> {
    check_eq18(case)?;
    let (nu, s, w) = (case.nu, case.s, case.w);
    let trap = Trap::new();
    let y0 = NEAR_ONE.ln();
    let far = trap.finish(integrate_half_line(|p: DePoint| trap.value(log_product(nu, s, w, y0 + p.x)), 0.0, 1.0, 0.1 * tol))?;
    let lhs = near_one_integral(nu, s, w, NEAR_ONE)?.combine(far);
    Ok(IdentityReport::new(lhs, eq18_rhs(nu.value(), s, w)?, 0.0))
}

/// Strip of the Barnes contour: `(1 + Re(s+ν))/2 < γ < (1 + Re(w−ν))/2`.
pub fn check_slater(case: &IdentityCase) -> Result<()> {
    let nu = case.nu.value();
    param(nu > 0.0, "0 < nu")?;
    let (lo, hi) = slater_strip(case);
    param(lo < hi, "Re(w - s) > 2nu (non-empty contour strip)")?;
    param(case.gamma_abscissa > lo && case.gamma_abscissa < hi, "(1 + Re(s+nu))/2 < gamma < (1 + Re(w-nu))/2")?;
    // decay of the integrand along the line is |τ|^{Re(w−s)−2}
    param(case.w.re - case.s.re < 1.0, "Re(w - s) < 1")
}

/// Bounds of the admissible contour abscissae.
pub fn slater_strip(case: &IdentityCase) -> (f64, f64) {
    let nu = case.nu.value();
    (0.5 * (1.0 + case.s.re + nu), 0.5 * (1.0 + case.w.re - nu))
}

struct Barnes {
    a1: C64,
    a2: C64,
    b1: C64,
    b2: C64,
    c1: f64,
    c2: f64,
    d1: f64,
    d2: f64,
}

impl Barnes {
    fn new(nu: f64, s: C64, w: C64) -> Self {
        Barnes {
            a1: (w + 1.0 + nu) * 0.5,
            a2: (w + 1.0 - nu) * 0.5,
            b1: (-s - 1.0 + nu) * 0.5,
            b2: -(s + 1.0 + nu) * 0.5,
            c1: 1.0 + 0.5 * nu,
            c2: 1.0 - 0.5 * nu,
            d1: 0.5 * nu,
            d2: -0.5 * nu,
        }
    }

    fn integrand(&self, t: C64) -> Result<C64> {
        // paired so that the large parts of the logarithms cancel analytically
        let c = |x: f64| C64::new(x, 0.0);
        let l = ln_gamma_ratio(-t, self.a1, c(self.c1))?
            + ln_gamma_ratio(-t, self.a2, c(self.c2))?
            + ln_gamma_ratio(t, self.b1, c(self.d1))?
            + ln_gamma_ratio(t, self.b2, c(self.d2))?;
        Ok(l.exp())
    }

    /// Residue at the `k`-th pole `τ = −b − k` of `Γ(b + τ)`, continued to
    /// complex `k`; `other` is the second left-pole parameter.
    fn residue(&self, b: C64, other: C64, k: C64) -> Result<C64> {
        let pref = PI / (PI * (other - b)).sin() * (PI * (self.d1 - b)).sin() * (PI * (self.d2 - b)).sin() / (PI * PI);
        let (one, z) = (C64::new(1.0, 0.0), b + k);
        let l = ln_gamma_ratio(z, self.a1, C64::new(self.c1, 0.0))?
            + ln_gamma_ratio(z, self.a2, C64::new(self.c2, 0.0))?
            + ln_gamma_ratio(z, one - self.d1, one - other)?
            + ln_gamma_ratio(z, one - self.d2, one - b)?;
        Ok(pref * l.exp())
    }

    /// `Σ_k residue(k)`: the first `K` terms directly, the rest by the
    /// Abel–Plana formula (the terms decay only algebraically).
    fn pole_series(&self, b: C64, other: C64, tol: f64) -> Result<QuadratureResult> {
        const K: usize = 24;
        let kk = K as f64;
        let mut sum = C64::new(0.0, 0.0);
        for k in 0..K {
            sum += self.residue(b, other, C64::new(k as f64, 0.0))?;
        }
        let trap = Trap::new();
        let at_k = self.residue(b, other, C64::new(kk, 0.0))?;
        let integral = trap.finish(integrate_half_line(
            |p: DePoint| trap.value(self.residue(b, other, C64::new(p.x, 0.0))),
            kk,
            kk,
            0.1 * tol,
        ))?;
        let plana = trap.finish(integrate_half_line(
            |p: DePoint| {
                let y = p.x;
                let up = trap.value(self.residue(b, other, C64::new(kk, y)));
                let down = trap.value(self.residue(b, other, C64::new(kk, -y)));
                (up - down) * C64::new(0.0, 1.0) / (2.0 * PI * y).exp_m1()
            },
            0.0,
            1.0,
            0.1 * tol,
        ))?;
        Ok(QuadratureResult {
            value: sum + at_k * 0.5 + integral.value + plana.value,
            error_estimate: integral.error_estimate + plana.error_estimate,
            evaluations: K + integral.evaluations + plana.evaluations,
        })
    }
}

fn slater_rhs(nu: f64, s: C64, w: C64) -> Result<C64> {
    let h = (w - s) * 0.5;
    let one = C64::new(1.0, 0.0);
    let num = ln_gamma((one + s - w) * 0.5)? + ln_gamma(h)? + ln_gamma(h - nu)? + ln_gamma(h + nu)?;
    let den = ln_gamma((one + s) * 0.5)? + ln_gamma((one - s) * 0.5)? + ln_gamma((one + w) * 0.5)? + ln_gamma((one - w) * 0.5)?;
    Ok((num - den).exp() * C64::new(2.0, 0.0).powc(s - w + 1.0) * ((PI * nu).cos() / PI.sqrt()))
}

/// `(1/2πi) ∫_{γ−i∞}^{γ+i∞}` of the Gamma ratio behind the Legendre-product
/// integral, against its closed form.
pub fn verify_slater(case: &IdentityCase, tol: f64) -> Result<IdentityReport> {
    check_slater(case)?;
    let lhs = slater_contour(case, tol)?;
    Ok(IdentityReport::new(lhs, slater_rhs(case.nu.value(), case.s, case.w)?, 0.0))
}

/// The contour side of [`verify_slater`].
pub fn slater_contour(case: &IdentityCase, tol: f64) -> Result<QuadratureResult> {
    check_slater(case)?;
    let barnes = Barnes::new(case.nu.value(), case.s, case.w);
    let trap = Trap::new();
    let line = VerticalLine::new(case.gamma_abscissa, 8.0)?;
    let r = trap.finish(integrate_vertical_line(|t| trap.value(barnes.integrand(t)), &line, tol))?;
    Ok(r.result)
}

/// The same Barnes integral as a sum of residues over the two left pole
/// sequences `τ = −b₁ − k` and `τ = −b₂ − k`.
pub fn slater_residue_sum(case: &IdentityCase, tol: f64) -> Result<QuadratureResult> {
    check_slater(case)?;
    let barnes = Barnes::new(case.nu.value(), case.s, case.w);
    let first = barnes.pole_series(barnes.b1, barnes.b2, tol)?;
    let second = barnes.pole_series(barnes.b2, barnes.b1, tol)?;
    Ok(QuadratureResult {
        value: first.value + second.value,
        error_estimate: first.error_estimate + second.error_estimate,
        evaluations: first.evaluations + second.evaluations,
    })
}

/// Strip of the kernel's Barnes representation: `2ν < γ < 1`.
pub fn check_mb_kernel(case: &IdentityCase) -> Result<()> {
    let nu = case.nu.value();
    param(case.a > 0.0 && case.x > 0.0, "a > 0 and x > 0")?;
    param(case.gamma_abscissa > 2.0 * nu && case.gamma_abscissa < 1.0, "2nu < gamma < 1")
}

/// `J_ν²(ax) + Y_ν²(ax) = cos(πν)/(2π³√π) ∫ Γ((1−s)/2)Γ(s/2)Γ(s/2−ν)Γ(s/2+ν)
/// (ax)^{−s} dτ` along `Re s = γ`.
pub fn verify_mb_kernel(case: &IdentityCase, tol: f64) -> Result<IdentityReport> {
    check_mb_kernel(case)?;
    let nu = case.nu.value();
    let ln_ax = (case.a * case.x).ln();
    let f = |s: C64| -> Result<C64> {
        let half = s * 0.5;
        let lg = ln_gamma((1.0 - s) * 0.5)? + ln_gamma(half)? + ln_gamma(half - nu)? + ln_gamma(half + nu)?;
        Ok((lg - s * ln_ax).exp())
    };
    let trap = Trap::new();
    let line = VerticalLine::new(case.gamma_abscissa, 8.0)?;
    let r = trap.finish(integrate_vertical_line(|s| trap.value(f(s)), &line, tol))?;
    // the line integrator returns (1/2π)∫ dτ
    let lhs = r.result.scale(C64::new((PI * nu).cos() / (PI * PI * PI.sqrt()), 0.0));
    let residue = lhs.value.im.abs() / lhs.value.norm().max(f64::MIN_POSITIVE);
    Ok(IdentityReport::new(lhs, C64::new(modulus(nu, case.a * case.x), 0.0), residue))
}

/// Constraint of the truncated Legendre-product integral: `Re w > 2ν + Re s`,
/// plus the Legendre preconditions and `N > a`.
pub fn check_in(case: &IdentityCase) -> Result<()> {
    let nu = case.nu.value();
    param(case.a > 0.0 && case.a.is_finite(), "a > 0")?;
    param(case.n_cut > case.a && case.n_cut.is_finite(), "N > a")?;
    param(case.w.re > 2.0 * nu + case.s.re, "Re w > 2nu + Re s")?;
    param(case.s.re > -1.0 - 2.0 * nu, "Re s > -1 - 2nu")?;
    param(-case.w.re > -1.0 - 2.0 * nu, "Re w < 1 + 2nu")?;
    // Q^{-ν}_{(s−1)/2} carries Γ((s+1−2ν)/2); given Re s > −1 − 2ν its only pole is s = 2ν − 1
    param((case.s - (2.0 * nu - 1.0)).norm() > 1e-12, "s != 2nu - 1")
}

/// `I_N(s, w) = 2^{s−w−1} a^{s−w} ∫_1^{(N²+a²)/(N²−a²)} (t−1)^{(w−s)/2−1}
/// Q^{-ν}_{−(w+1)/2}(t) Q^{-ν}_{(s−1)/2}(t) dt`.
pub fn tail_integral_in(case: &IdentityCase, tol: f64) -> Result<QuadratureResult> {
    check_in(case)?;
    let (a, n) = (case.a, case.n_cut);
    let (nu, s, w) = (case.nu, case.s, case.w);
    let upper = 2.0 * a * a / ((n - a) * (n + a));
    let r = if upper <= NEAR_ONE {
        near_one_integral(nu, s, w, upper)?
    } else {
        let trap = Trap::new();
        let mid = trap.finish(integrate_de(|y| trap.value(log_product(nu, s, w, y)), NEAR_ONE.ln(), upper.ln(), tol))?;
        near_one_integral(nu, s, w, NEAR_ONE)?.combine(mid)
    };
    let pref = C64::new(2.0, 0.0).powc(s - w - 1.0) * (C64::new(a.ln(), 0.0) * (s - w)).exp();
    Ok(r.scale(pref))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Measured decay of `|I_N|` over the cuts `ns`, with the predicted exponent
/// `Re(s + 2ν − w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub cuts: Vec<f64>,
    pub magnitudes: Vec<f64>,
    pub slope: f64,
    pub predicted: f64,
}

pub fn in_decay(case: &IdentityCase, ns: &[f64], tol: f64) -> Result<DecayFit> {
    let mut magnitudes = Vec::with_capacity(ns.len());
    for &n in ns {
        let c = IdentityCase { n_cut: n, ..*case };
        magnitudes.push(tail_integral_in(&c, tol)?.value.norm());
    }
    Ok(DecayFit {
        cuts: ns.to_vec(),
        slope: log_log_slope(ns, &magnitudes),
        magnitudes,
        predicted: (case.s + 2.0 * case.nu.value() - case.w).re,
    })
}

/// Supremum of `|Q^{-ν}_{(s−1)/2}(t)| |s|^ν (t²−1)^{ν/2}` over `s` on the
/// line with `|Im s| ∈ [1, 100]` and `t` in the grid, on a base and a doubled
/// `s`-grid, plus the fitted exponent of the Gamma ratio in the Euler
/// prefactor over `|Im s| ∈ [10, 1000]` (Stirling predicts `−ν`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBoundsReport {
    pub sup_ratio: f64,
    pub sup_ratio_refined: f64,
    pub stirling_slope: f64,
    pub stirling_predicted: f64,
}

pub fn check_q_bounds(nu: Order, line: &VerticalLine, t_grid: &[f64]) -> Result<()> {
    param(line.mu > 2.0 * nu.value() - 1.0, "Re s > 2nu - 1 on the line")?;
    param(!t_grid.is_empty() && t_grid.iter().all(|&t| t > 1.0 && t.is_finite()), "t > 1")
}

pub fn verify_q_bounds(nu: Order, line: &VerticalLine, t_grid: &[f64]) -> Result<QBoundsReport> {
    check_q_bounds(nu, line, t_grid)?;
    let n = nu.value();
    let sup = |points: usize| -> Result<f64> {
        let mut best = 0.0f64;
        for k in 0..points {
            let tau = 100f64.powf(k as f64 / (points - 1) as f64);
            for sign in [1.0, -1.0] {
                let s = line.point(sign * tau);
                for &t in t_grid {
                    let q = legendre_q_zm1(nu, ComplexDegree::from_s(s)?, t - 1.0)?;
                    best = best.max(q.norm() * s.norm().powf(n) * ((t - 1.0) * (t + 1.0)).powf(0.5 * n));
                }
            }
        }
        Ok(best)
    };
    let sup_ratio = sup(9)?;
    let sup_ratio_refined = sup(17)?;
    let taus = [10.0, 31.6, 100.0, 316.0, 1000.0];
    let mut mags = Vec::with_capacity(taus.len());
    for &tau in &taus {
        let s = line.point(tau);
        let l =
            ln_gamma((s + 1.0 - 2.0 * n) * 0.5)? - ln_gamma((s + 3.0 - 2.0 * n) * 0.25)? - ln_gamma((s + 1.0 + 2.0 * n) * 0.25)?;
        let r = l.exp();
        mags.push(r.norm());
    }
    let abs_s: Vec<f64> = taus.iter().map(|&t| line.point(t).norm()).collect();
    Ok(QBoundsReport { sup_ratio, sup_ratio_refined, stirling_slope: log_log_slope(&abs_s, &mags), stirling_predicted: -n })
}
