//! `(1/2π) ∫ F(μ + iτ) dτ` over a full vertical line.
//!
//! The line is integrated to infinity with a sinh–sinh rule. Before that, the
//! decay of `|F|` is probed at `τ = ±T·2^k`; a local power law `|F| ~ |τ|^{-p}`
//! with `p ≤ 1` means the integral does not exist and is reported as a
//! truncation failure rather than returning a cutoff-dependent number.

use core::f64::consts::PI;

use super::{de::integrate_real_line_atol, QuadratureResult, VerticalLine};
use crate::error::{Error, Result};
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegral {
    pub result: QuadratureResult,
    /// Smallest probed height `T` whose tail estimate is below `tol/10`.
    pub height: f64,
    /// Estimated `(1/2π)∫_{|τ|>T} |F|` at that height.
    pub tail_bound: f64,
}

const PROBES: usize = 18;

pub fn integrate_vertical_line<F: Fn(C64) -> C64>(f: F, line: &VerticalLine, tol: f64) -> Result<LineIntegral> {
    integrate_vertical_line_atol(f, line, tol, 0.0)
}

/// As [`integrate_vertical_line`], additionally accepting a result whose
/// estimated error is at most `atol` (for integrands known only to that
/// absolute accuracy, such as interpolated tables).
pub fn integrate_vertical_line_atol<F: Fn(C64) -> C64>(f: F, line: &VerticalLine, tol: f64, atol: f64) -> Result<LineIntegral> {
    let mut weighted = [0.0f64; PROBES];
    let mut tau = line.t_height;
    for w in weighted.iter_mut() {
        let a = f(line.point(tau)).norm();
        let b = f(line.point(-tau)).norm();
        let m = a.max(b) * tau;
        if m.is_nan() {
            return Err(Error::Divergent { what: "vertical-line integrand" });
        }
        *w = m;
        tau *= 2.0;
    }
    let exponent = |k: usize| -> f64 {
        // local decay exponent p from |F|τ at heights k and k+1
        if weighted[k + 1] == 0.0 {
            f64::INFINITY
        } else if weighted[k] == 0.0 {
            1.0
        } else {
            1.0 + (weighted[k] / weighted[k + 1]).log2()
        }
    };
    let peak = weighted.iter().cloned().fold(0.0, f64::max);
    let last = weighted[PROBES - 1];
    let p_far = exponent(PROBES - 3).min(exponent(PROBES - 2));
    if p_far <= 1.02 && last > 1e-14 * peak.max(f64::MIN_POSITIVE) && last > 0.0 {
        return Err(Error::Truncation { what: "integrand decays no faster than 1/|Im s|", tail: last });
    }

    let r = integrate_real_line_atol(|t| f(line.point(t)), 0.0, 1.0, tol, 2.0 * PI * atol)?;
    let result = r.scale(C64::new(1.0 / (2.0 * PI), 0.0));

    let target = 0.1 * tol * result.value.norm().max(f64::MIN_POSITIVE);
    let mut height = line.t_height * (1u64 << (PROBES - 1)) as f64;
    let mut tail_bound = 2.0 * last / (2.0 * PI);
    for (k, &w) in weighted.iter().enumerate().take(PROBES - 1) {
        let p = exponent(k);
        let tail = if p > 1.0 { 2.0 * w / (p - 1.0) / (2.0 * PI) } else { f64::INFINITY };
        if tail <= target {
            height = line.t_height * (1u64 << k) as f64;
            tail_bound = tail;
            break;
        }
    }
    Ok(LineIntegral { result, height, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn inverse_mellin_of_gamma() {
        // (1/2πi)∫ Γ(s) x^{-s} ds = e^{-x}; here with ds = i dτ
        let line = VerticalLine::new(0.7, 8.0).unwrap();
        for x in [0.5f64, 1.0, 3.0] {
            let r = integrate_vertical_line(|s| gamma(s).unwrap() * (-s * x.ln()).exp(), &line, 1e-12).unwrap();
            assert!((r.result.value.re - (-x).exp()).abs() < 1e-11, "x={x}: {:?}", r);
            assert!(r.result.value.im.abs() < 1e-12);
        }
    }

    #[test]
    fn algebraic_decay() {
        // (1/2π)∫ dτ/(1+τ²) = 1/2 on Re s = 0 with F(s) = 1/(1 - s²)
        let line = VerticalLine::new(0.0, 4.0).unwrap();
        let r = integrate_vertical_line(|s| (C64::new(1.0, 0.0) - s * s).inv(), &line, 1e-10).unwrap();
        assert!((r.result.value.re - 0.5).abs() < 1e-10);
    }

    #[test]
    fn non_integrable_line_rejected() {
        let line = VerticalLine::new(-0.5, 4.0).unwrap();
        let r = integrate_vertical_line(|s| s.inv(), &line, 1e-10);
        assert!(matches!(r, Err(Error::Truncation { .. })), "{:?}", r);
    }
}
