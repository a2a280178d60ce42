//! Bessel functions `J_ν`, `Y_ν` of real order and positive argument.
//!
//! Three regimes: the ascending series below [`STEED_FROM`], Steed's
//! continued-fraction method up to [`SWITCHOVER`], Hankel's asymptotic
//! expansion above. In the series regime `Y_ν` for non-integer order comes
//! from `Y_ν = (J_ν cos νπ − J_{−ν}) / sin νπ`; orders 0 and 1 use the
//! limiting logarithmic series. Internally orders up to 3/2 are supported so
//! that derivatives follow from `J'_ν = (ν/x) J_ν − J_{ν+1}`.

use core::f64::consts::{FRAC_2_PI, PI};

use super::gamma::gamma_real;
use super::Order;
use crate::error::{Error, Result};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Argument from which the asymptotic expansion is used; its smallest term
/// is below e^{-2x} ≈ 4e-18 here.
pub const SWITCHOVER: f64 = 20.0;
/// Below this the ascending series loses under a digit to cancellation.
pub const STEED_FROM: f64 = 2.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Below this distance from an integer order, `Y` is linearised in the order.
const NEAR_INTEGER: f64 = 5e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselPair {
    pub j: f64,
    pub y: f64,
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what: "Bessel argument must be positive", value: x })
    }
}

pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.j)
}

pub fn bessel_y(nu: Order, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.y)
}

pub fn bessel_jy(nu: Order, x: f64) -> Result<BesselPair> {
    check_x(x)?;
    Ok(jy(nu.value(), x))
}

/// `J'_ν(x)` via the recurrence with `J_{ν+1}`.
pub fn bessel_j_deriv(nu: Order, x: f64) -> Result<f64> {
    check_x(x)?;
    let v = nu.value();
    Ok(v / x * jy(v, x).j - jy(v + 1.0, x).j)
}

/// `Y'_ν(x)` via the recurrence with `Y_{ν+1}`.
pub fn bessel_y_deriv(nu: Order, x: f64) -> Result<f64> {
    check_x(x)?;
    let v = nu.value();
    Ok(v / x * jy(v, x).y - jy(v + 1.0, x).y)
}

/// `J` and `Y` for `0 ≤ order ≤ 3/2`, `x > 0`.
pub(crate) fn jy(order: f64, x: f64) -> BesselPair {
    debug_assert!((0.0..=1.5).contains(&order) && x > 0.0);
    if x >= SWITCHOVER {
        let (p, q) = hankel_pq(order, x);
        let chi = x - (0.5 * order + 0.25) * PI;
        let (s, c) = chi.sin_cos();
        let amp = (FRAC_2_PI / x).sqrt();
        return BesselPair { j: amp * (p * c - q * s), y: amp * (p * s + q * c) };
    }
    if x >= STEED_FROM {
        return steed(order, x);
    }
    let j = series_j(order, x);
    let near = order.round();
    let frac = order - near;
    let y = if frac == 0.0 {
        if near == 0.0 {
            series_y0(x)
        } else {
            series_y1(x)
        }
    } else if frac.abs() < NEAR_INTEGER && near <= 1.0 {
        // ∂Y_ν/∂ν at ν = 0 is −(π/2) J_0, at ν = 1 it is −(π/2) J_1 + Y_0/x
        if near == 0.0 {
            series_y0(x) - frac * 0.5 * PI * series_j(0.0, x)
        } else {
            series_y1(x) + frac * (-0.5 * PI * series_j(1.0, x) + series_y0(x) / x)
        }
    } else {
        let (s, c) = (order * PI).sin_cos();
        (j * c - series_j(-order, x)) / s
    };
    BesselPair { j, y }
}

const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;

/// Steed's method: `J'_ν/J_ν` from a continued fraction, recurred down to
/// `μ = ν − round(ν)`; `(J'_μ + iY'_μ)/(J_μ + iY_μ)` from a complex continued
/// fraction; the Wronskian fixes the scale. Converges in O(x) steps.
fn steed(order: f64, x: f64) -> BesselPair {
    let nl = (order + 0.5).floor();
    let mu = order - nl;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1 by modified Lentz; the sign of J_ν is tracked through `isign`
    let mut isign = 1.0;
    let mut h = (order * xi).max(CF_TINY);
    let mut b = xi2 * order;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..10_000 {
        b += xi2;
        d = b - d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = b - 1.0 / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < CF_EPS {
            break;
        }
    }
    // downward recurrence to μ with unnormalised J_ν = ±tiny
    let mut rjl = isign * CF_TINY;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = order * xi;
    for _ in 0..nl as usize {
        let t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
    }
    if rjl == 0.0 {
        rjl = CF_EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let t = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = t;
    for i in 2..10_000 {
        a += (2 * (i - 1)) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < CF_TINY {
            dr = CF_TINY;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < CF_TINY {
            cr = CF_TINY;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        let t = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = t;
        if (dlr - 1.0).abs() + dli.abs() < CF_EPS {
            break;
        }
    }

    let gam = (p - f) / q;
    let w = xi2 / PI;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = mu * xi * rymu - rymup;
    for i in 1..=nl as usize {
        let t = (mu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    BesselPair { j: rjl1 * (rjmu / rjl), y: rymu }
}

/// Hankel's asymptotic series `P(ν, x)`, `Q(ν, x)`; truncated at the smallest term.
pub(crate) fn hankel_pq(order: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * order * order;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= last || next == 0.0 {
            break;
        }
        term = next;
        last = next.abs();
        // a_k/x^k enters P (even k) or Q (odd k) with sign (−1)^{⌊k/2⌋}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if last < 1e-17 {
            break;
        }
    }
    (p, q)
}

/// Ascending series for `J_order(x)`; `order` may be negative and non-integer.
fn series_j(order: f64, x: f64) -> f64 {
    let h = 0.5 * x;
    let g = gamma_real(order + 1.0).expect("order + 1 is not a pole");
    let mut term = h.powf(order) / g;
    let mut sum = term;
    let h2 = h * h;
    for k in 1..200 {
        let kf = k as f64;
        term *= -h2 / (kf * (kf + order));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > 2 {
            break;
        }
    }
    sum
}

fn series_y0(x: f64) -> f64 {
    let h = 0.5 * x;
    let h2 = h * h;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut acc = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -h2 / (kf * kf);
        harmonic += 1.0 / kf;
        let t = term * harmonic;
        acc -= t;
        if t.abs() <= 1e-17 * acc.abs() && k > 2 {
            break;
        }
    }
    FRAC_2_PI * ((h.ln() + EULER_GAMMA) * series_j(0.0, x) + acc)
}

fn series_y1(x: f64) -> f64 {
    // Y_1 = (2/π) ln(x/2) J_1 − 2/(πx)
    //       − (1/π) Σ (−1)^k (ψ(k+1) + ψ(k+2)) (x/2)^{2k+1} / (k! (k+1)!)
    let h = 0.5 * x;
    let h2 = h * h;
    let mut term = h; // (x/2)^{2k+1}/(k!(k+1)!) with sign (−1)^k
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    let mut psi_k2 = 1.0 - EULER_GAMMA; // ψ(k+2)
    let mut acc = term * (psi_k1 + psi_k2);
    for k in 1..200 {
        let kf = k as f64;
        term *= -h2 / (kf * (kf + 1.0));
        psi_k1 += 1.0 / kf;
        psi_k2 += 1.0 / (kf + 1.0);
        let t = term * (psi_k1 + psi_k2);
        acc += t;
        if t.abs() <= 1e-17 * acc.abs() && k > 2 {
            break;
        }
    }
    FRAC_2_PI * h.ln() * series_j(1.0, x) - FRAC_2_PI / x - acc / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(v: f64) -> Order {
        Order::new(v).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn half_integer_closed_forms() {
        let nu = order(0.5);
        for &x in &[1e-3, 0.3, 1.0, 1.99, 2.01, 7.0, 11.66, 12.4, 12.6, 19.9, 20.1, 40.0, 900.0] {
            let amp = (2.0 / (PI * x)).sqrt();
            let j = bessel_j(nu, x).unwrap();
            let y = bessel_y(nu, x).unwrap();
            // the phase x − π/2 is itself rounded to ~ulp(x)
            let tol = (1e-14 + 2.0 * f64::EPSILON * x) * amp;
            assert!((j - amp * x.sin()).abs() <= tol, "J at {x}");
            assert!((y + amp * x.cos()).abs() <= tol, "Y at {x}");
        }
    }

    #[test]
    fn small_argument_laws() {
        let v = 0.3;
        let x = 1e-6;
        let j = bessel_j(order(v), x).unwrap();
        let lead = (0.5 * x).powf(v) / gamma_real(v + 1.0).unwrap();
        assert!(close(j, lead, 1e-10));
        let y = bessel_y(order(v), x).unwrap();
        let lead_y = -gamma_real(v).unwrap() / PI * (2.0 / x).powf(v);
        assert!(close(y, lead_y, 1e-3));
    }

    #[test]
    fn extended_precision_values() {
        let cases = [
            (0.25, 10.0, -0.206_393_786_855_172_809_76, f64::NAN),
            (0.4, 25.0, f64::NAN, -0.159_530_648_609_825_705_94),
            (0.25, 1.0, 0.752_231_333_340_790_056_98, -0.194_421_753_677_164_394_9),
            (0.1, 0.001, 0.491_537_014_994_501_998_77, -4.963_008_389_852_222_319_2),
            (0.0, 3.0, -0.260_051_954_901_933_437_62, 0.376_850_010_012_790_381_97),
            (0.4, 500.0, -0.021_416_811_755_333_381_653, 0.028_540_488_604_613_892_604),
            (0.3, 12.5, 0.053_938_933_483_013_422_757, -0.219_076_149_583_278_559_44),
        ];
        for (v, x, j, y) in cases {
            let p = bessel_jy(order(v), x).unwrap();
            if !j.is_nan() {
                assert!(close(p.j, j, 1e-10), "J_{v}({x}) = {} want {j}", p.j);
            }
            if !y.is_nan() {
                assert!(close(p.y, y, 1e-10), "Y_{v}({x}) = {} want {y}", p.y);
            }
        }
    }

    #[test]
    fn regimes_agree_at_the_boundaries() {
        for &v in &[0.0, 0.1, 0.25, 0.4, 0.5, 1.0, 1.1, 1.25, 1.4, 1.5] {
            for &x in &[STEED_FROM, SWITCHOVER] {
                let st = steed(v, x);
                let (p, q) = hankel_pq(v, x);
                let chi = x - (0.5 * v + 0.25) * PI;
                let amp = (2.0 / (PI * x)).sqrt();
                let (ja, ya) = (amp * (p * chi.cos() - q * chi.sin()), amp * (p * chi.sin() + q * chi.cos()));
                let js = series_j(v, x);
                let (jo, yo) = if x == SWITCHOVER { (ja, ya) } else { (js, jy(v, 1.999_999_999).y) };
                assert!((st.j - jo).abs() < 2e-15, "order {v} x {x}: J {} vs {jo}", st.j);
                assert!((st.y - yo).abs() < 1e-9 * (1.0 + yo.abs()), "order {v} x {x}: Y {} vs {yo}", st.y);
            }
        }
    }

    #[test]
    fn near_zero_order_is_continuous() {
        for &x in &[0.5, 3.0, 11.0] {
            let y0 = bessel_y(order(0.0), x).unwrap();
            let ya = bessel_y(order(1e-7), x).unwrap();
            let yb = bessel_y(order(2e-5), x).unwrap();
            let slope = -0.5 * PI * bessel_j(order(0.0), x).unwrap();
            assert!((ya - y0 - 1e-7 * slope).abs() < 1e-12);
            assert!((yb - y0 - 2e-5 * slope).abs() < 1e-8);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j(order(0.2), 0.0).is_err());
        assert!(bessel_y(order(0.2), -1.0).is_err());
        assert!(Order::new(0.7).is_err());
    }
}
