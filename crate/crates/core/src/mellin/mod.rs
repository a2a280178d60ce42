//! Mellin transform `f*(s) = ∫_0^∞ f(x) x^{s−1} dx`, its inversion along
//! vertical lines, the Parseval pairing and the weighted line norms
//! `(1/2π) ∫ e^{πc₁|s|} |s^{c₂} f*(s)| |ds|` that define the admissible class
//! of the Weber solver.

mod catalog;
mod radial;

pub use catalog::{catalog, CatalogEntry};
pub use radial::{DecayHint, RadialFunction, Tail};

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{
    integrate_de, integrate_half_line, integrate_oscillatory, integrate_vertical_line, integrate_vertical_line_atol, DePoint,
    Oscillation, QuadratureResult, TruncationPolicy, VerticalLine,
};
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

type ImageFn = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

/// A Mellin image `s ↦ f*(s)`, either in closed form or tabulated along its
/// native line.
#[derive(Clone)]
pub struct MellinImage {
    body: ImageFn,
    native_line: Option<VerticalLine>,
    /// Bound on `(1/2π)∫|error| dτ` along the native line; zero for closed forms.
    table_error: f64,
}

impl core::fmt::Debug for MellinImage {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MellinImage")
            .field("native_line", &self.native_line)
            .field("table_error", &self.table_error)
            .finish_non_exhaustive()
    }
}

impl MellinImage {
    /// Closed-form image; `body` should return NaN outside its strip.
    pub fn closed_form<F: Fn(C64) -> C64 + Send + Sync + 'static>(body: F) -> Self {
        MellinImage { body: Arc::new(body), native_line: None, table_error: 0.0 }
    }

    /// `f*` sampled on `line` at `τ = k·h`, `|τ| ≤ tau_max`, by numerical
    /// forward transforms and interpolated (6-point Lagrange). The step `h`
    /// starts from the distance between the line and the strip edges and is
    /// halved until midpoint checks against direct transforms agree to 1e-8
    /// relative to the peak. Off the line the image evaluates to NaN; beyond
    /// `tau_max` to zero. The largest midpoint discrepancy is kept as the
    /// table's accuracy and bounds what inverse transforms can resolve.
    pub fn tabulated(f: &RadialFunction, line: VerticalLine, tau_max: f64, tol: f64) -> Result<Self> {
        if !(tau_max > 0.0 && tau_max.is_finite()) {
            return Err(Error::Parameter { constraint: "tau_max > 0" });
        }
        let (lo, hi) = strip(f);
        let gap = (line.mu - lo).min(hi - line.mu);
        if !(gap > 0.0) {
            return Err(Error::Divergent { what: "Mellin transform outside its strip" });
        }
        let mut step = (0.05 * gap).min(0.05);
        for _ in 0..6 {
            let n = (tau_max / step).ceil() as usize;
            let mut values = Vec::with_capacity(2 * n + 1);
            for k in -(n as i64)..=(n as i64) {
                values.push(mellin_forward(f, line.point(k as f64 * step), tol)?.value);
            }
            let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let mut worst: f64 = 0.0;
            for k in [0.5, 1.5, 3.5, 7.5, 20.5] {
                let tau = k * step;
                if tau > tau_max - 3.0 * step {
                    continue;
                }
                let direct = mellin_forward(f, line.point(tau), tol)?.value;
                worst = worst.max((lagrange6(&values, n, step, tau) - direct).norm());
            }
            if worst <= 1e-8 * peak {
                let mu = line.mu;
                let table = Arc::new(values);
                let body = move |s: C64| -> C64 {
                    if (s.re - mu).abs() > 1e-12 {
                        return C64::new(f64::NAN, f64::NAN);
                    }
                    lagrange6(&table, n, step, s.im)
                };
                let noise = (2.0 * worst).max(f64::EPSILON * peak);
                let table_error = noise * tau_max / PI;
                return Ok(MellinImage { body: Arc::new(body), native_line: Some(line), table_error });
            }
            step *= 0.5;
        }
        Err(Error::Parameter { constraint: "line far enough from the strip edge to tabulate" })
    }

    #[inline]
    pub fn eval(&self, s: C64) -> C64 {
        (self.body)(s)
    }

    pub fn native_line(&self) -> Option<VerticalLine> {
        self.native_line
    }

    /// Bound on `(1/2π)∫|F − F_exact| dτ` along the native line: zero for
    /// closed forms, the interpolation error for tabulated images.
    pub fn table_error(&self) -> f64 {
        self.table_error
    }

    fn check_line(&self, line: &VerticalLine) -> Result<()> {
        match self.native_line {
            Some(n) if (n.mu - line.mu).abs() > 1e-12 => {
                Err(Error::Parameter { constraint: "tabulated image used on its native line" })
            }
            _ => Ok(()),
        }
    }
}

/// 6-point Lagrange interpolation on the uniform grid `τ_k = (k − n)·step`.
fn lagrange6(table: &[C64], n: usize, step: f64, tau: f64) -> C64 {
    let u = tau / step + n as f64;
    let last = table.len() - 1;
    if u < 0.0 || u > last as f64 {
        return C64::new(0.0, 0.0);
    }
    let base = (u.floor() as i64 - 2).clamp(0, last as i64 - 5) as usize;
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..6 {
        let mut w = 1.0;
        for j in 0..6 {
            if i != j {
                w *= (u - (base + j) as f64) / (i as f64 - j as f64);
            }
        }
        acc += table[base + i] * w;
    }
    acc
}

/// Convergence strip `(lo, hi)` of `f*` implied by the decay hint.
pub fn strip(f: &RadialFunction) -> (f64, f64) {
    let d = f.decay();
    let lo = -d.at_zero;
    let hi = match d.at_infinity {
        Tail::Exponential { .. } => f64::INFINITY,
        Tail::Algebraic { exponent } => -exponent,
    };
    (lo, hi)
}

/// Above this `|Im s|` the forward transform switches to oscillatory panels
/// in the logarithmic variable.
const OSCILLATORY_IM: f64 = 4.0;

/// `f*(s)`. The integral is split at `x = 1` and each half is mapped to
/// `y ∈ [0, ∞)` by `x = e^{∓y}`.
pub fn mellin_forward(f: &RadialFunction, s: C64, tol: f64) -> Result<QuadratureResult> {
    let (lo, hi) = strip(f);
    if !(s.re > lo && s.re < hi) {
        return Err(Error::Divergent { what: "Mellin transform outside its strip" });
    }
    if f.lower() > 0.0 {
        return Err(Error::Parameter { constraint: "Mellin transform of a function on (0, inf)" });
    }
    let lower = |y: f64| weighted(f.at((-y).exp()), -s * y);
    let upper = |y: f64| weighted(f.at(y.exp()), s * y);
    let a = half(&lower, s.im, s.re - lo, tol)?;
    let b = half(&upper, s.im, hi - s.re, tol)?;
    Ok(a.combine(b))
}

/// `v·e^{z}` without forming `0·∞` when `v` has underflowed.
#[inline]
fn weighted(v: f64, z: C64) -> C64 {
    if v == 0.0 {
        return C64::new(0.0, 0.0);
    }
    if !v.is_finite() {
        return C64::new(v, v);
    }
    let e = (z + v.abs().ln()).exp();
    if v < 0.0 {
        -e
    } else {
        e
    }
}

/// `∫_0^∞ h(y) dy` where `h ~ e^{-rate·y} e^{±i im·y}`.
fn half<H: Fn(f64) -> C64>(h: &H, im: f64, rate: f64, tol: f64) -> Result<QuadratureResult> {
    if im.abs() <= OSCILLATORY_IM {
        let scale = if rate.is_finite() { (1.0 / rate).clamp(0.5, 8.0) } else { 1.0 };
        return integrate_half_line(|p: DePoint| h(p.x), 0.0, scale, tol);
    }
    // h(y + π/|im|) ≈ −h(y): panels between those points alternate
    let policy = TruncationPolicy { n_cut: 1e6, t_height: 1.0, tol };
    let none: Option<fn(f64) -> C64> = None;
    integrate_oscillatory(h, Oscillation { freq: im.abs(), phase: 0.0 }, 0.0, &policy, none)
}

/// `f(x) = (1/2πi) ∫ F(s) x^{-s} ds` along `line`.
pub fn mellin_inverse(image: &MellinImage, line: &VerticalLine, x: f64, tol: f64) -> Result<QuadratureResult> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain { what: "x > 0", value: x });
    }
    image.check_line(line)?;
    let lx = x.ln();
    // |x^{-s}| = x^{-μ} on the line
    let floor = image.table_error * (-line.mu * lx).exp();
    let r = integrate_vertical_line_atol(|s| image.eval(s) * (-s * lx).exp(), line, tol, floor)?;
    Ok(QuadratureResult { error_estimate: r.result.error_estimate + floor, ..r.result })
}

/// Both sides of the Parseval equality
/// `∫_0^∞ f g dx = (1/2πi) ∫ f*(s) g*(1−s) ds` along `line`.
pub fn parseval_pair(f: &RadialFunction, g: &RadialFunction, line: &VerticalLine, tol: f64) -> Result<(C64, C64)> {
    let (flo, fhi) = strip(f);
    let (glo, ghi) = strip(g);
    let mu = line.mu;
    if !(mu > flo && mu < fhi) || !(1.0 - mu > glo && 1.0 - mu < ghi) {
        return Err(Error::Parameter { constraint: "f on the mu-strip and g on the (1 - mu)-strip" });
    }
    let prod = |p: DePoint| C64::new(f.at(p.x) * g.at(p.x), 0.0);
    let lhs = integrate_de_dist_split(prod, tol)?;
    let inner = tol * 0.1;
    let rhs = integrate_vertical_line(
        |s| {
            let a = mellin_forward(f, s, inner).map(|r| r.value);
            let b = mellin_forward(g, C64::new(1.0, 0.0) - s, inner).map(|r| r.value);
            match (a, b) {
                (Ok(a), Ok(b)) => a * b,
                _ => C64::new(f64::NAN, f64::NAN),
            }
        },
        line,
        tol,
    )?;
    Ok((lhs.value, rhs.result.value))
}

/// `∫_0^∞` split at 1: tanh–sinh on `[0, 1]`, exp–sinh beyond.
fn integrate_de_dist_split<F: Fn(DePoint) -> C64>(f: F, tol: f64) -> Result<QuadratureResult> {
    let a = integrate_de(|x| f(DePoint { x, from_lo: x, to_hi: 1.0 - x }), 0.0, 1.0, tol)?;
    let b = integrate_half_line(|p: DePoint| f(p), 1.0, 1.0, tol)?;
    Ok(a.combine(b))
}

/// Parameters `(c₁, c₂)` of the weighted line norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    pub c1: f64,
    pub c2: f64,
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl SpaceParams {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1.is_finite() && c2.is_finite()) || 2.0 * sign(c1) + sign(c2) < 0.0 {
            return Err(Error::Parameter { constraint: "2 sign(c1) + sign(c2) >= 0" });
        }
        Ok(SpaceParams { c1, c2 })
    }

    /// Whether the space with parameters `self` is contained in the one
    /// with parameters `other`: `2 sign(d₁−c₁) + sign(d₂−c₂) ≥ 0`.
    pub fn included_in(&self, other: &SpaceParams) -> bool {
        2.0 * sign(self.c1 - other.c1) + sign(self.c2 - other.c2) >= 0.0
    }
}

/// Result of a weighted line norm. `value` is `INFINITY` when the weighted
/// image was judged non-integrable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceNorm {
    pub value: f64,
    pub error_estimate: f64,
    pub tail_bound: f64,
    /// Height at which the tail estimate fell below the tolerance.
    pub height: f64,
}

impl SpaceNorm {
    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

/// `(1/2π) ∫ e^{πc₁|s|} |s|^{c₂} |F(s)| dτ` along `line`.
///
/// Integrability is decided from samples: the weighted integrand must decay
/// faster than `1/|τ|` at the probed heights `T·2^k`. This is a heuristic;
/// the reported `tail_bound` quantifies it.
pub fn space_norm(image: &MellinImage, line: &VerticalLine, p: SpaceParams, tol: f64) -> Result<SpaceNorm> {
    let p = SpaceParams::new(p.c1, p.c2)?;
    image.check_line(line)?;
    let weight = |s: C64| C64::new((PI * p.c1 * s.norm()).exp() * s.norm().powf(p.c2) * image.eval(s).norm(), 0.0);
    match integrate_vertical_line(weight, line, tol) {
        Ok(r) => Ok(SpaceNorm {
            value: r.result.value.re,
            error_estimate: r.result.error_estimate,
            tail_bound: r.tail_bound,
            height: r.height,
        }),
        Err(Error::Truncation { tail, .. }) => {
            Ok(SpaceNorm { value: f64::INFINITY, error_estimate: f64::INFINITY, tail_bound: tail, height: f64::INFINITY })
        }
        Err(Error::Divergent { .. }) => Ok(SpaceNorm {
            value: f64::INFINITY,
            error_estimate: f64::INFINITY,
            tail_bound: f64::INFINITY,
            height: f64::INFINITY,
        }),
        Err(e) => Err(e),
    }
}

/// Membership verdict for the solver's admissible class: finite `(0, 1)`
/// norm on a line with `−1 < μ < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub norm: SpaceNorm,
    pub member: bool,
}

pub fn membership_m01(image: &MellinImage, line: &VerticalLine, tol: f64) -> Result<Membership> {
    VerticalLine::solver(line.mu, line.t_height)?;
    let norm = space_norm(image, line, SpaceParams { c1: 0.0, c2: 1.0 }, tol)?;
    Ok(Membership { norm, member: norm.is_finite() })
}

/// Diagnostic `‖f‖_{μ,p} = (∫_0^∞ |f|^p x^{μp−1} dx)^{1/p}`.
pub fn lp_norm(f: &RadialFunction, mu: f64, p: f64, tol: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Parameter { constraint: "p >= 1" });
    }
    let r = integrate_de_dist_split(|q: DePoint| C64::new(f.at(q.x).abs().powf(p) * q.x.powf(mu * p - 1.0), 0.0), tol)?;
    Ok(r.value.re.powf(1.0 / p))
}
