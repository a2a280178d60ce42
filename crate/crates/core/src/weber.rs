//! The Weber integral equation `f(x) = ∫_0^∞ C_ν(xξ, aξ) g(ξ) dξ`, its
//! inversion
//!
//! `g(x) = x/(J_ν²(ax) + Y_ν²(ax)) · ∫_a^∞ C_ν(xt, xa) t f(t) dt`,
//!
//! the two Weber–Orr round trips built from the same pair of integrals, and
//! the truncated expansion `G_N` in which the forward map is evaluated
//! through the Mellin transform of `g`.
//!
//! Nested transforms are expensive when the inner one is recomputed at every
//! outer node, so the round trips tabulate the inner transform once on a
//! log-spaced grid (see [`tabulate`]) and integrate against the spline.

use alloc::vec::Vec;
use core::cell::Cell;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::{fixed_argument_phase, kernel, kernel_mellin, modulus};
use crate::mellin::{membership_m01, DecayHint, MellinImage, Membership, RadialFunction, Tail};
use crate::quad::{
    integrate_adaptive, integrate_de, integrate_oscillatory, integrate_vertical_line, truncated_oscillatory, Oscillation,
    QuadratureResult, TruncationPolicy, VerticalLine,
};
use crate::specfun::Order;
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// `e^{−EXP_CUTOFF}` is treated as zero for functions with an exponential
/// decay hint: their integrals stop at `lower + EXP_CUTOFF/rate`.
const EXP_CUTOFF: f64 = 45.0;

const ZERO: QuadratureResult = QuadratureResult { value: C64 { re: 0.0, im: 0.0 }, error_estimate: 0.0, evaluations: 0 };

/// Parameters shared by every transform: the radius `a`, the order `ν`, the
/// truncation policy and the Mellin contour used by `G_N` and the
/// admissibility test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformConfig {
    pub a: f64,
    pub nu: Order,
    pub policy: TruncationPolicy,
    pub line: VerticalLine,
}

impl TransformConfig {
    /// `ν` may sit on the boundary values 0 and 1/2 (useful as oracles);
    /// [`TransformConfig::require_theorem`] checks the strict hypotheses.
    pub fn new(a: f64, nu: Order, policy: TruncationPolicy, line: VerticalLine) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Parameter { constraint: "a > 0" });
        }
        let line = VerticalLine::solver(line.mu, line.t_height)?;
        Ok(TransformConfig { a, nu, policy, line })
    }

    pub fn require_theorem(&self) -> Result<()> {
        Order::solver(self.nu.value()).map(|_| ())
    }
}

/// Strict-mode admissibility check for the solver: `0 < ν < 1/2` and `g*`
/// in `M^{-1}_{0,1}` on the configured line.
pub fn theorem_gate(image: &MellinImage, cfg: &TransformConfig) -> Result<Membership> {
    cfg.require_theorem()?;
    let m = membership_m01(image, &cfg.line, cfg.policy.tol)?;
    if !m.member {
        return Err(Error::Parameter { constraint: "g* integrable with weight |s| on the line" });
    }
    Ok(m)
}

fn check_point(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what: "transform point x > 0", value: x })
    }
}

/// Where an exponentially decaying function becomes negligible.
fn support_end(f: &RadialFunction) -> Option<f64> {
    match f.decay().at_infinity {
        Tail::Exponential { rate } if rate > 0.0 => Some(f.lower() + EXP_CUTOFF / rate),
        _ => None,
    }
}

/// `∫_lo^∞ h` for `h ≈ A sin(osc)`; stops at `end` when the integrand is
/// known to vanish beyond it.
fn oscillating<F, E>(
    h: F,
    osc: Oscillation,
    lo: f64,
    end: Option<f64>,
    policy: &TruncationPolicy,
    envelope: E,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> C64,
    E: Fn(f64) -> C64,
{
    match end {
        Some(end) if end <= lo => Ok(ZERO),
        Some(end) => match truncated_oscillatory(&h, osc, lo, end, policy.tol, None::<fn(f64) -> C64>) {
            Err(Error::Parameter { .. }) => integrate_de(&h, lo, end, 0.1 * policy.tol),
            r => r,
        },
        None => integrate_oscillatory(&h, osc, lo, policy, Some(envelope)),
    }
}

/// The forward map `f(x) = ∫_0^∞ C_ν(xξ, aξ) g(ξ) dξ`.
///
/// For large `ξ` the kernel behaves like `−2 sin(ξ(x−a))/(πξ√(ax))`, which
/// fixes the panel zeros and the tail term. At `x = a` the kernel vanishes
/// identically and the result is exactly zero.
pub fn weber_apply(g: &RadialFunction, cfg: &TransformConfig, x: f64) -> Result<QuadratureResult> {
    check_point(x)?;
    if g.lower() != 0.0 {
        return Err(Error::Parameter { constraint: "g defined on (0, inf)" });
    }
    let (nu, a) = (cfg.nu.value(), cfg.a);
    if x == a {
        return Ok(ZERO);
    }
    let h = |xi: f64| {
        if xi <= 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::new(kernel(nu, x * xi, a * xi) * g.at(xi), 0.0)
        }
    };
    let scale = -2.0 / (PI * (a * x).sqrt());
    let envelope = |xi: f64| C64::new(scale * g.at(xi) / xi, 0.0);
    let osc = Oscillation { freq: x - a, phase: 0.0 };
    oscillating(h, osc, 0.0, support_end(g), &cfg.policy, envelope)
}

/// `∫_a^∞ C_ν(xt, xa) t f(t) dt`, the integral inside the inversion formula.
///
/// The kernel oscillates like `sin(xt + φ)` with `φ` fixed by `J_ν(xa)` and
/// `Y_ν(xa)`; the amplitude factor is folded into the tail envelope.
pub fn orr_integral(f: &RadialFunction, nu: Order, a: f64, x: f64, policy: &TruncationPolicy) -> Result<QuadratureResult> {
    check_point(x)?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Parameter { constraint: "a > 0" });
    }
    if f.lower() > a {
        return Err(Error::Parameter { constraint: "f defined on (a, inf)" });
    }
    let n = nu.value();
    let fixed = fixed_argument_phase(nu, x * a)?;
    let h = |t: f64| {
        if t <= a {
            C64::new(0.0, 0.0)
        } else {
            C64::new(kernel(n, x * t, x * a) * t * f.at(t), 0.0)
        }
    };
    let envelope = |t: f64| C64::new(-fixed.amplitude * (2.0 * t / (PI * x)).sqrt() * f.at(t), 0.0);
    let osc = Oscillation { freq: x, phase: fixed.phase(nu) };
    let end = support_end(f).map(|e| e.max(a));
    oscillating(h, osc, a, end, policy, envelope)
}

/// Solution of the Weber equation at `x` from values of `f` on `(a, ∞)`.
pub fn weber_solve(f: &RadialFunction, cfg: &TransformConfig, x: f64) -> Result<QuadratureResult> {
    let r = orr_integral(f, cfg.nu, cfg.a, x, &cfg.policy)?;
    Ok(r.scale(C64::new(x / modulus(cfg.nu.value(), cfg.a * x), 0.0)))
}

/// Log-spaced offsets `h` from the lower end of a function's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    pub h_min: f64,
    pub h_max: f64,
    pub points: usize,
}

impl SampleGrid {
    pub fn new(h_min: f64, h_max: f64, points: usize) -> Result<Self> {
        if !(h_min > 0.0 && h_max > h_min && h_max.is_finite()) || points < 8 {
            return Err(Error::Parameter { constraint: "0 < h_min < h_max, at least 8 points" });
        }
        Ok(SampleGrid { h_min, h_max, points })
    }

    pub fn offsets(&self) -> Vec<f64> {
        let (l0, l1) = (self.h_min.ln(), self.h_max.ln());
        let step = (l1 - l0) / (self.points - 1) as f64;
        (0..self.points).map(|k| (l0 + step * k as f64).exp()).collect()
    }
}

/// A tabulated transform and the largest quadrature error among its samples.
#[derive(Debug, Clone)]
pub struct Tabulated {
    pub function: RadialFunction,
    pub max_error: f64,
    pub evaluations: usize,
}

impl Tabulated {
    /// Assemble from samples computed elsewhere (e.g. in parallel).
    pub fn from_samples(lower: f64, offsets: Vec<f64>, samples: &[QuadratureResult]) -> Result<Self> {
        let ys: Vec<f64> = samples.iter().map(|r| r.value.re).collect();
        let max_error = samples.iter().map(|r| r.error_estimate).fold(0.0, f64::max);
        let evaluations = samples.iter().map(|r| r.evaluations).sum();
        let function = RadialFunction::from_log_samples(lower, offsets, ys)?;
        Ok(Tabulated { function, max_error, evaluations })
    }
}

/// Tabulate `t ↦ fun(t)` at `t = lower + h` over `grid`.
pub fn tabulate<F: Fn(f64) -> Result<QuadratureResult>>(lower: f64, grid: &SampleGrid, fun: F) -> Result<Tabulated> {
    let hs = grid.offsets();
    let samples = hs.iter().map(|h| fun(lower + h)).collect::<Result<Vec<_>>>()?;
    Tabulated::from_samples(lower, hs, &samples)
}

/// Default grid for forward transforms sampled on `(a, ∞)`.
pub fn default_grid(a: f64) -> SampleGrid {
    SampleGrid { h_min: 1e-4 * a, h_max: 400.0 * a.max(1.0), points: 200 }
}

/// `f = weber_apply(g)` tabulated on `(a, ∞)`.
pub fn forward_table(g: &RadialFunction, cfg: &TransformConfig, grid: &SampleGrid) -> Result<Tabulated> {
    tabulate(cfg.a, grid, |t| weber_apply(g, cfg, t))
}

/// `t ↦ t F(t)/(J_ν²(at)+Y_ν²(at))` with `F(t) = ∫_a^∞ C_ν(ξt, at) ξ f(ξ) dξ`:
/// the weight that the outer integral of the first Weber–Orr pair
/// integrates against `C_ν(xt, at)`.
pub fn orr3_weight_table(f: &RadialFunction, cfg: &TransformConfig, grid: &SampleGrid) -> Result<Tabulated> {
    let (nu, a) = (cfg.nu, cfg.a);
    tabulate(0.0, grid, |t| {
        let r = orr_integral(f, nu, a, t, &cfg.policy)?;
        Ok(r.scale(C64::new(t / modulus(nu.value(), a * t), 0.0)))
    })
}

/// First Weber–Orr pair: transform `f` on `(a, ∞)` and reconstruct it at `x`.
pub fn weber_orr_roundtrip_3(f: &RadialFunction, cfg: &TransformConfig, x: f64) -> Result<QuadratureResult> {
    check_point(x)?;
    let w = orr3_weight_table(f, cfg, &SampleGrid { h_min: 1e-4, h_max: 400.0 / cfg.a, points: 200 })?;
    weber_apply(&w.function, cfg, x)
}

/// `ξ ↦ ξ f(ξ)/(J_ν²(aξ)+Y_ν²(aξ))`, the function whose forward transform is
/// the inner integral of the second Weber–Orr pair.
pub fn modulus_weighted(f: &RadialFunction, cfg: &TransformConfig) -> RadialFunction {
    let (nu, a) = (cfg.nu.value(), cfg.a);
    let g = f.clone();
    let d = f.decay();
    let decay = DecayHint { at_zero: d.at_zero + 1.0 + 2.0 * nu, at_infinity: d.at_infinity };
    RadialFunction::new(move |xi| if xi <= 0.0 { 0.0 } else { xi * g.at(xi) / modulus(nu, a * xi) }, decay)
}

/// Second Weber–Orr pair: transform `f` on `(0, ∞)` and reconstruct it at `x`.
pub fn weber_orr_roundtrip_4(f: &RadialFunction, cfg: &TransformConfig, x: f64) -> Result<QuadratureResult> {
    check_point(x)?;
    let inner = forward_table(&modulus_weighted(f, cfg), cfg, &default_grid(cfg.a))?;
    orr_integral(&inner.function, cfg.nu, cfg.a, x, &cfg.policy)
}

/// The forward map evaluated through the Mellin image of `g`:
/// `f(t) = (1/2πi) ∫ g*(s) K(s; t) ds` with `K` the kernel's Mellin
/// transform (see [`kernel_mellin`]).
pub fn forward_via_mellin(image: &MellinImage, cfg: &TransformConfig, t: f64) -> Result<QuadratureResult> {
    check_point(t)?;
    let failure: Cell<Option<Error>> = Cell::new(None);
    // the kernel image grows at most polynomially along the line; where g*
    // is negligible it is not evaluated (its Euler integral gets expensive
    // and eventually fails at large |Im s|)
    let reference = [0.0, 1.0, -1.0, 4.0, -4.0].iter().map(|&tau| image.eval(cfg.line.point(tau)).norm()).fold(0.0, f64::max);
    let integrand = |s: C64| {
        let gs = image.eval(s);
        if gs.norm() <= 1e-20 * reference {
            return C64::new(0.0, 0.0);
        }
        match kernel_mellin(cfg.nu, t, cfg.a, s) {
            Ok(k) => gs * k,
            Err(e) => {
                failure.set(Some(e));
                C64::new(f64::NAN, 0.0)
            }
        }
    };
    let r = integrate_vertical_line(integrand, &cfg.line, cfg.policy.tol);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(r?.result)
}

/// The sequence `G_N(x) = ∫_a^N C_ν(xt, xa) t f(t) dt` where the forward
/// values `f(t)` come from the contour representation. `f` is sampled once
/// on `(a, n_max]` and shared by every `N ≤ n_max` and every `x`.
#[derive(Debug, Clone)]
pub struct ExpansionSequence {
    cfg: TransformConfig,
    re: RadialFunction,
    im: RadialFunction,
    n_max: f64,
    /// Largest sample error of the contour integrals.
    pub max_error: f64,
    /// Largest `|Im f(t)|` over the samples; zero in exact arithmetic.
    pub imaginary_residue: f64,
}

impl ExpansionSequence {
    pub fn new(image: &MellinImage, cfg: &TransformConfig, n_max: f64, points: usize) -> Result<Self> {
        let a = cfg.a;
        if !(n_max > a && n_max.is_finite()) {
            return Err(Error::Parameter { constraint: "n_cut > a" });
        }
        let grid = SampleGrid::new(1e-4 * a, n_max - a, points)?;
        let hs = grid.offsets();
        let samples = hs.iter().map(|h| forward_via_mellin(image, cfg, a + h)).collect::<Result<Vec<_>>>()?;
        let max_error = samples.iter().map(|r| r.error_estimate).fold(0.0, f64::max);
        let imaginary_residue = samples.iter().map(|r| r.value.im.abs()).fold(0.0, f64::max);
        let re = RadialFunction::from_log_samples(a, hs.clone(), samples.iter().map(|r| r.value.re).collect())?;
        let im = RadialFunction::from_log_samples(a, hs, samples.iter().map(|r| r.value.im).collect())?;
        Ok(ExpansionSequence { cfg: *cfg, re, im, n_max, max_error, imaginary_residue })
    }

    /// `G_N(x)`.
    pub fn gn(&self, n_cut: f64, x: f64) -> Result<QuadratureResult> {
        check_point(x)?;
        let a = self.cfg.a;
        if !(n_cut > a && n_cut <= self.n_max) {
            return Err(Error::Parameter { constraint: "a < n_cut <= tabulated range" });
        }
        let nu = self.cfg.nu.value();
        let h = |t: f64| {
            let k = kernel(nu, x * t, x * a) * t;
            C64::new(k * self.re.at(t), k * self.im.at(t))
        };
        integrate_adaptive(h, a, n_cut, self.cfg.policy.tol.max(1e-9))
    }
}

/// `G_N(x)` for a single cut; the Mellin image of `g` is tabulated along the
/// configured line first.
pub fn partial_expansion_gn(g: &RadialFunction, cfg: &TransformConfig, n_cut: f64, x: f64) -> Result<QuadratureResult> {
    let image = MellinImage::tabulated(g, cfg.line, 60.0, 1e-10)?;
    ExpansionSequence::new(&image, cfg, n_cut, 96)?.gn(n_cut, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(a: f64, nu: f64) -> TransformConfig {
        TransformConfig::new(
            a,
            Order::new(nu).unwrap(),
            TruncationPolicy::new(1e5, 8.0, 1e-10).unwrap(),
            VerticalLine::new(-0.25, 8.0).unwrap(),
        )
        .unwrap()
    }

    fn g0() -> RadialFunction {
        RadialFunction::new(|x| x.sqrt() * (-x).exp(), DecayHint::exponential(0.5, 1.0))
    }

    /// Forward transform of `√ξ e^{−ξ}` at `ν = 1/2`, where the kernel is
    /// `2 sin(ξ(a−x))/(πξ√(ax))`: a sine transform in closed form.
    fn half_order_forward(a: f64, x: f64) -> f64 {
        let w = a - x;
        let z = C64::new(1.0, -w).powf(-0.5);
        2.0 / (PI * (x * a).sqrt()) * PI.sqrt() * z.im
    }

    #[test]
    fn zero_in_zero_out() {
        let c = cfg(1.0, 0.25);
        let z = RadialFunction::zero();
        assert_eq!(weber_apply(&z, &c, 2.0).unwrap().value, C64::new(0.0, 0.0));
        let zf = RadialFunction::zero().on_interval_from(1.0).unwrap();
        assert_eq!(weber_solve(&zf, &c, 2.0).unwrap().value, C64::new(0.0, 0.0));
        assert_eq!(weber_apply(&g0(), &c, 1.0).unwrap().value, C64::new(0.0, 0.0));
    }

    #[test]
    fn half_order_forward_matches_sine_transform() {
        let c = cfg(1.0, 0.5);
        for x in [0.3, 0.9, 1.5, 2.0, 6.0] {
            let got = weber_apply(&g0(), &c, x).unwrap().value.re;
            let want = half_order_forward(1.0, x);
            assert!((got - want).abs() < 1e-9 * want.abs().max(1e-3), "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn forward_matches_plain_adaptive_quadrature() {
        let c = cfg(1.0, 0.25);
        let g = g0();
        let got = weber_apply(&g, &c, 2.0).unwrap();
        let brute = integrate_adaptive(|xi: f64| C64::new(kernel(0.25, 2.0 * xi, xi) * g.at(xi), 0.0), 0.0, 60.0, 1e-12).unwrap();
        assert!((got.value - brute.value).norm() < 1e-9, "{got:?} vs {brute:?}");
    }

    #[test]
    fn forward_is_linear() {
        let c = cfg(1.0, 0.25);
        let g1 = g0();
        let g2 = RadialFunction::new(|x| x * (-2.0 * x).exp(), DecayHint::exponential(1.0, 2.0));
        let (p, q) = (1.5, -0.7);
        let (h1, h2) = (g1.clone(), g2.clone());
        let mix = RadialFunction::new(move |x| p * h1.at(x) + q * h2.at(x), DecayHint::exponential(0.5, 1.0));
        for x in [0.5, 3.0] {
            let lhs = weber_apply(&mix, &c, x).unwrap().value;
            let rhs = weber_apply(&g1, &c, x).unwrap().value * p + weber_apply(&g2, &c, x).unwrap().value * q;
            assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn forward_scaling_covariance() {
        // ∫C(xξ,aξ) g(λξ) dξ = (1/λ) ∫C((x/λ)η,(a/λ)η) g(η) dη
        let x = 2.5;
        for lam in [0.5, 2.0] {
            let scaled = RadialFunction::new(move |xi| (lam * xi).sqrt() * (-lam * xi).exp(), DecayHint::exponential(0.5, lam));
            let lhs = weber_apply(&scaled, &cfg(1.0, 0.25), x).unwrap().value.re;
            let rhs = weber_apply(&g0(), &cfg(1.0 / lam, 0.25), x / lam).unwrap().value.re / lam;
            assert!((lhs - rhs).abs() < 1e-9 * rhs.abs(), "λ={lam}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn half_order_solve_inverts_closed_form() {
        let c = cfg(1.0, 0.5);
        let f =
            RadialFunction::new(|t| half_order_forward(1.0, t), DecayHint::algebraic(0.0, -1.0)).on_interval_from(1.0).unwrap();
        for x in [0.5, 1.0, 2.0, 4.0] {
            let got = weber_solve(&f, &c, x).unwrap().value.re;
            let want = x.sqrt() * (-x).exp();
            assert!((got - want).abs() < 1e-6, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn config_rejects_bad_parameters() {
        let p = TruncationPolicy::default();
        let nu = Order::new(0.25).unwrap();
        assert!(TransformConfig::new(0.0, nu, p, VerticalLine::new(-0.25, 8.0).unwrap()).is_err());
        assert_eq!(
            TransformConfig::new(1.0, nu, p, VerticalLine::new(0.5, 8.0).unwrap()),
            Err(Error::Parameter { constraint: "-1 < Re s < 0" })
        );
        assert!(cfg(1.0, 0.5).require_theorem().is_err());
        assert!(cfg(1.0, 0.25).require_theorem().is_ok());
    }
}
