//! Semi-infinite oscillatory integrals `∫_lo^∞ f(ξ) dξ` where `f` changes
//! sign at the zeros of `sin(ω ξ + φ)`. The range is cut at those zeros, the
//! panel partial sums receive an optional asymptotic tail term and the
//! resulting sequence is accelerated by iterated Euler averaging.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{de::integrate_de, gk21, integrate_adaptive, within, QuadratureResult, TruncationPolicy};
use crate::error::{Error, Result};
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Phase model `sin(freq·ξ + phase)` of the integrand's sign changes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillation {
    pub freq: f64,
    pub phase: f64,
}

impl Oscillation {
    fn normalized(self) -> Result<(Oscillation, f64)> {
        if !(self.freq.is_finite() && self.phase.is_finite()) || self.freq == 0.0 {
            return Err(Error::Parameter { constraint: "nonzero finite oscillation frequency" });
        }
        if self.freq > 0.0 {
            Ok((self, 1.0))
        } else {
            Ok((Oscillation { freq: -self.freq, phase: -self.phase }, -1.0))
        }
    }

    /// Smallest zero strictly greater than `lo` (and at least `min_gap` past it).
    fn first_zero_after(&self, lo: f64, min_gap: f64) -> (i64, f64) {
        let mut k = ((self.freq * lo + self.phase) / PI).floor() as i64 + 1;
        loop {
            let z = self.zero(k);
            if z > lo + min_gap {
                return (k, z);
            }
            k += 1;
        }
    }

    #[inline]
    fn zero(&self, k: i64) -> f64 {
        (k as f64 * PI - self.phase) / self.freq
    }

    /// `∫_ξ^∞ A sin(ωξ+φ)` to leading order when `A` varies slowly.
    #[inline]
    fn tail(&self, amplitude: C64, xi: f64, sign: f64) -> C64 {
        amplitude * (sign * (self.freq * xi + self.phase).cos() / self.freq)
    }
}

/// Iterated Euler averaging of a partial-sum sequence: `depth` rounds of
/// neighbour means, then the last entry.
pub fn euler_average(seq: &[C64], depth: usize) -> C64 {
    let mut work: Vec<C64> = seq.to_vec();
    let rounds = depth.min(work.len().saturating_sub(1));
    for _ in 0..rounds {
        for i in 0..work.len() - 1 {
            work[i] = (work[i] + work[i + 1]) * 0.5;
        }
        work.pop();
    }
    *work.last().unwrap_or(&C64::new(0.0, 0.0))
}

const MIN_PANELS: usize = 8;
const WINDOW: usize = 24;
const MAX_PANELS: usize = 20_000;

struct Panels<'a, F> {
    f: &'a F,
    tol: f64,
    evals: usize,
    abs: f64,
    err: f64,
}

impl<'a, F: Fn(f64) -> C64> Panels<'a, F> {
    fn panel(&mut self, a: f64, b: f64) -> Result<C64> {
        let (v, e, m) = gk21(self.f, a, b);
        self.evals += 21;
        if within(e, v, m, 0.1 * self.tol) || e <= 1e-3 * self.tol * self.abs {
            self.abs += m;
            self.err += e;
            return Ok(v);
        }
        let r = integrate_adaptive(self.f, a, b, 0.1 * self.tol)?;
        self.evals += r.evaluations;
        self.abs += m;
        self.err += r.error_estimate;
        Ok(r.value)
    }
}

fn first_segment<F: Fn(f64) -> C64>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_de(f, lo, hi, 0.1 * tol)
}

/// `∫_lo^∞ f`. `envelope`, when given, is the slowly varying amplitude `A`
/// with `f(ξ) ≈ A(ξ) sin(ωξ + φ)` for large `ξ`, used for the tail term.
pub fn integrate_oscillatory<F, E>(
    f: F,
    osc: Oscillation,
    lo: f64,
    policy: &TruncationPolicy,
    envelope: Option<E>,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> C64,
    E: Fn(f64) -> C64,
{
    let (osc, sign) = osc.normalized()?;
    if !lo.is_finite() {
        return Err(Error::Parameter { constraint: "finite lower limit" });
    }
    let tol = policy.tol;
    let (mut k, mut z) = osc.first_zero_after(lo, 1e-3 / osc.freq);
    let head = first_segment(&f, lo, z, tol)?;
    let mut run = Panels { f: &f, tol, evals: head.evaluations, abs: head.value.norm(), err: head.error_estimate };
    let mut acc = head.value;
    let mut seq: Vec<C64> = Vec::new();
    let tail_at = |xi: f64| envelope.as_ref().map(|a| osc.tail(a(xi), xi, sign)).unwrap_or(C64::new(0.0, 0.0));
    seq.push(acc + tail_at(z));
    let mut last: Option<C64> = None;
    let mut hits = 0;
    for n in 0..MAX_PANELS {
        let z_next = osc.zero(k + 1);
        if z_next > policy.n_cut.max(lo) && n >= MIN_PANELS {
            let best = last.unwrap_or(acc);
            return Err(Error::NotConverged {
                what: "oscillatory tail beyond cutoff",
                best: QuadratureResult { value: best, error_estimate: f64::INFINITY, evaluations: run.evals },
            });
        }
        acc += run.panel(z, z_next)?;
        k += 1;
        z = z_next;
        seq.push(acc + tail_at(z));
        if seq.len() > WINDOW + 1 {
            seq.remove(0);
        }
        if n + 1 < MIN_PANELS {
            continue;
        }
        let est = euler_average(&seq, seq.len() - 1);
        if let Some(prev) = last {
            let diff = (est - prev).norm();
            if within(diff, est, run.abs, tol) {
                hits += 1;
                if hits >= 2 {
                    return Ok(QuadratureResult { value: est, error_estimate: diff + run.err, evaluations: run.evals });
                }
            } else {
                hits = 0;
            }
        }
        last = Some(est);
    }
    Err(Error::NotConverged {
        what: "oscillatory panel budget",
        best: QuadratureResult { value: last.unwrap_or(acc), error_estimate: f64::INFINITY, evaluations: run.evals },
    })
}

/// Plain truncated integral `∫_lo^{N'} f` with `N'` the last zero not past
/// `n_cut`, plus the tail term when an envelope is supplied.
pub fn truncated_oscillatory<F, E>(
    f: F,
    osc: Oscillation,
    lo: f64,
    n_cut: f64,
    tol: f64,
    envelope: Option<E>,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> C64,
    E: Fn(f64) -> C64,
{
    let (osc, sign) = osc.normalized()?;
    let (mut k, mut z) = osc.first_zero_after(lo, 1e-3 / osc.freq);
    if z > n_cut {
        return Err(Error::Parameter { constraint: "cutoff beyond the first zero" });
    }
    let head = first_segment(&f, lo, z, tol)?;
    let mut run = Panels { f: &f, tol, evals: head.evaluations, abs: head.value.norm(), err: head.error_estimate };
    let mut acc = head.value;
    loop {
        let z_next = osc.zero(k + 1);
        if z_next > n_cut {
            break;
        }
        acc += run.panel(z, z_next)?;
        k += 1;
        z = z_next;
    }
    if let Some(a) = envelope {
        acc += osc.tail(a(z), z, sign);
    }
    Ok(QuadratureResult { value: acc, error_estimate: run.err, evaluations: run.evals })
}
