//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `0 ≤ z ≤ 1`.

use super::gamma::{gamma, recip_gamma};
use crate::error::{Error, Result};
use crate::quad::QuadratureResult;
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

const MAX_TERMS: usize = 200_000;
/// Minimum distance of `c − a − b` from an integer for the `z → 1 − z` map.
const CONNECTION_GAP: f64 = 1e-2;

fn is_nonpositive_int(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn series(a: C64, b: C64, c: C64, z: f64) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NotConverged {
        what: "2F1 series",
        best: QuadratureResult { value: sum, error_estimate: term.norm(), evaluations: MAX_TERMS },
    })
}

/// `₂F₁(a, b; c; z)`.
///
/// Direct series for `z ≤ 1/2`; above that the linear transformation to
/// `1 − z`, unless `c − a − b` is within 1e-2 of an integer, where the
/// (slower) direct series is summed instead. `z = 1` uses Gauss's sum and
/// needs `Re(c − a − b) > 0`.
pub fn gauss_2f1(a: C64, b: C64, c: C64, z: f64) -> Result<C64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::Domain { what: "2F1 argument must lie in [0, 1]", value: z });
    }
    if is_nonpositive_int(c) {
        return Err(Error::Parameter { constraint: "c is not a non-positive integer" });
    }
    if z == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let excess = c - a - b;
    if z == 1.0 {
        if excess.re <= 0.0 {
            return Err(Error::Parameter { constraint: "Re(c - a - b) > 0 at z = 1" });
        }
        return Ok(gamma(c)? * gamma(excess)? * recip_gamma(c - a) * recip_gamma(c - b));
    }
    if z <= 0.5 || is_nonpositive_int(a) || is_nonpositive_int(b) {
        return series(a, b, c, z);
    }
    let near_int = (excess.re - excess.re.round()).abs() < CONNECTION_GAP && excess.im.abs() < CONNECTION_GAP;
    if near_int {
        return series(a, b, c, z);
    }
    let w = 1.0 - z;
    let gc = gamma(c)?;
    let first = gc * gamma(excess)? * recip_gamma(c - a) * recip_gamma(c - b);
    let second = gc * gamma(-excess)? * recip_gamma(a) * recip_gamma(b);
    let mut out = C64::new(0.0, 0.0);
    if first != C64::new(0.0, 0.0) {
        out += first * series(a, b, a + b - c + 1.0, w)?;
    }
    if second != C64::new(0.0, 0.0) {
        out += second * C64::new(w, 0.0).powc(excess) * series(c - a, c - b, excess + 1.0, w)?;
    }
    Ok(out)
}
