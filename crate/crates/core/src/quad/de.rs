//! Double-exponential rules. Nodes are produced by a level-doubling
//! trapezoid in the transformed variable; the integrand sees the node
//! together with its distances to the interval ends so that endpoint
//! singularities can be evaluated without cancellation.

use core::f64::consts::FRAC_PI_2;

use super::{within, QuadratureResult};
use crate::error::{Error, Result};
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// A quadrature node: abscissa and its distances to the lower and upper
/// endpoints (`INFINITY` for an infinite end).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DePoint {
    pub x: f64,
    pub from_lo: f64,
    pub to_hi: f64,
}

trait Mapping {
    /// Node and Jacobian at transformed abscissa `t`, or `None` once the
    /// node leaves the representable range.
    fn node(&self, t: f64) -> Option<(DePoint, f64)>;
}

struct TanhSinh {
    lo: f64,
    hi: f64,
}

impl Mapping for TanhSinh {
    fn node(&self, t: f64) -> Option<(DePoint, f64)> {
        let len = self.hi - self.lo;
        let s = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * s.abs()).exp();
        let near = len * e / (1.0 + e);
        let far = len / (1.0 + e);
        let w = len * core::f64::consts::PI * t.cosh() * e / ((1.0 + e) * (1.0 + e));
        if near <= 0.0 || w <= 0.0 || !w.is_finite() {
            return None;
        }
        let p = if t < 0.0 {
            DePoint { x: self.lo + near, from_lo: near, to_hi: far }
        } else {
            DePoint { x: self.hi - near, from_lo: far, to_hi: near }
        };
        Some((p, w))
    }
}

struct ExpSinh {
    lo: f64,
    scale: f64,
}

impl Mapping for ExpSinh {
    fn node(&self, t: f64) -> Option<(DePoint, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        if s.abs() > 700.0 {
            return None;
        }
        let d = self.scale * s.exp();
        let w = d * FRAC_PI_2 * t.cosh();
        if d <= 0.0 || !w.is_finite() || !(self.lo + d).is_finite() {
            return None;
        }
        Some((DePoint { x: self.lo + d, from_lo: d, to_hi: f64::INFINITY }, w))
    }
}

struct SinhSinh {
    center: f64,
    scale: f64,
}

impl Mapping for SinhSinh {
    fn node(&self, t: f64) -> Option<(DePoint, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        if s.abs() > 700.0 {
            return None;
        }
        let x = self.center + self.scale * s.sinh();
        let w = self.scale * s.cosh() * FRAC_PI_2 * t.cosh();
        if !x.is_finite() || !w.is_finite() {
            return None;
        }
        let p = DePoint { x, from_lo: f64::INFINITY, to_hi: f64::INFINITY };
        Some((p, w))
    }
}

const MIN_LEVEL: usize = 3;
const MAX_LEVEL: usize = 12;
const T_MAX: f64 = 7.0;
const DEEP_TAIL: f64 = 3.0;

struct Sweep {
    sum: C64,
    abs: f64,
    evals: usize,
    /// Largest |w f| met where the node range ran out before the terms died.
    edge: f64,
}

/// Sum `w f` over the nodes `t = start + k·step` (k ≥ 0) walking outward
/// in direction `dir`.
fn sweep<M: Mapping, F: Fn(DePoint) -> C64>(map: &M, f: &F, start: f64, step: f64, dir: f64, peak: &mut f64) -> Sweep {
    let mut out = Sweep { sum: C64::new(0.0, 0.0), abs: 0.0, evals: 0, edge: 0.0 };
    let mut quiet = 0;
    let mut k = 0usize;
    let mut last = f64::INFINITY;
    loop {
        let t = dir * (start + k as f64 * step);
        if t.abs() > T_MAX {
            break;
        }
        let Some((p, w)) = map.node(t) else {
            break;
        };
        let v = f(p);
        out.evals += 1;
        let term = if v == C64::new(0.0, 0.0) { v } else { v * w };
        let m = term.norm();
        if !m.is_finite() {
            // overflow deep in the tails ends the representable range
            if t.abs() >= DEEP_TAIL || (k > 0 && last <= 1e-12 * *peak) {
                break;
            }
            out.sum = C64::new(f64::NAN, f64::NAN);
            return out;
        }
        out.sum += term;
        out.abs += m;
        *peak = peak.max(m);
        if m <= 1e-18 * *peak {
            quiet += 1;
            if quiet >= 3 {
                return out;
            }
        } else {
            quiet = 0;
        }
        out.edge = m;
        last = m;
        k += 1;
    }
    out
}

/// `atol` is an absolute floor on the level-to-level change, for integrands
/// only known to a fixed absolute accuracy.
fn run<M: Mapping, F: Fn(DePoint) -> C64>(map: M, f: F, tol: f64, atol: f64, what: &'static str) -> Result<QuadratureResult> {
    if !(tol > 0.0 && atol >= 0.0) {
        return Err(Error::Parameter { constraint: "tol > 0 and atol >= 0" });
    }
    let mut raw = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    let mut evals = 0usize;
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    let mut prev: Option<C64> = None;
    let mut h = 1.0;
    for level in 0..=MAX_LEVEL {
        let (start, step) = if level == 0 { (0.0, 1.0) } else { (h, 2.0 * h) };
        let right = sweep(&map, &f, start, step, 1.0, &mut peak);
        // t = 0 belongs to the right sweep at level 0
        let left_start = if level == 0 { 1.0 } else { h };
        let left = sweep(&map, &f, left_start, step, -1.0, &mut peak);
        raw += right.sum + left.sum;
        abs += right.abs + left.abs;
        evals += right.evals + left.evals;
        edge = edge.max(right.edge.max(left.edge) * h);
        let value = raw * h;
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Divergent { what });
        }
        // terms still sizeable where the representable range ends
        let stuck = edge > 1e-3 * value.norm().max(f64::MIN_POSITIVE) && edge > 1e-250;
        if level >= MIN_LEVEL && stuck {
            return Err(Error::Divergent { what });
        }
        if let Some(p) = prev {
            let diff = (value - p).norm();
            if level >= MIN_LEVEL && (within(diff, value, abs * h, tol) || diff <= atol) {
                if edge > 1e-6 * value.norm().max(f64::MIN_POSITIVE) && edge > 1e-250 {
                    return Err(Error::Divergent { what });
                }
                return Ok(QuadratureResult { value, error_estimate: diff + edge, evaluations: evals });
            }
        }
        prev = Some(value);
        edge = 0.0;
        h *= 0.5;
    }
    let value = raw * h * 2.0;
    Err(Error::NotConverged { what, best: QuadratureResult { value, error_estimate: f64::INFINITY, evaluations: evals } })
}

/// Tanh–sinh on `[lo, hi]`; `f` receives endpoint distances.
pub fn integrate_de_dist<F: Fn(DePoint) -> C64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Parameter { constraint: "finite interval with lo < hi" });
    }
    run(TanhSinh { lo, hi }, f, tol, 0.0, "tanh-sinh")
}

/// Tanh–sinh on `[lo, hi]`.
pub fn integrate_de<F: Fn(f64) -> C64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_de_dist(|p: DePoint| f(p.x), lo, hi, tol)
}

/// Exp–sinh on `[lo, ∞)`; `scale` sets where the bulk of the nodes sit.
pub fn integrate_half_line<F: Fn(DePoint) -> C64>(f: F, lo: f64, scale: f64, tol: f64) -> Result<QuadratureResult> {
    if !(lo.is_finite() && scale > 0.0 && scale.is_finite()) {
        return Err(Error::Parameter { constraint: "finite lower end and positive scale" });
    }
    run(ExpSinh { lo, scale }, f, tol, 0.0, "exp-sinh")
}

/// Sinh–sinh on the real line.
pub fn integrate_real_line<F: Fn(f64) -> C64>(f: F, center: f64, scale: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_real_line_atol(f, center, scale, tol, 0.0)
}

/// Sinh–sinh on the real line, also accepting a change of at most `atol`.
pub fn integrate_real_line_atol<F: Fn(f64) -> C64>(
    f: F,
    center: f64,
    scale: f64,
    tol: f64,
    atol: f64,
) -> Result<QuadratureResult> {
    if !(center.is_finite() && scale > 0.0 && scale.is_finite()) {
        return Err(Error::Parameter { constraint: "finite center and positive scale" });
    }
    run(SinhSinh { center, scale }, |p: DePoint| f(p.x), tol, atol, "sinh-sinh")
}
