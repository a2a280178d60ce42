//! Complex Gamma function (Lanczos approximation with reflection).

use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Γ(z)` for `Re z ≥ 1/2`.
fn ln_gamma_lanczos(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + x.ln()
}

/// `ln sin(πz)`, stable for large `|Im z|`. Imaginary part is defined mod 2π.
fn ln_sin_pi(z: C64) -> C64 {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(π(z + 2)) = sin(πz): reduce the real part exactly.
    let xr = z.re - 2.0 * (z.re / 2.0).round();
    let y = z.im;
    if y < 1.0 {
        let (s, c) = (PI * xr).sin_cos();
        C64::new(s * (PI * y).cosh(), c * (PI * y).sinh()).ln()
    } else {
        // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz})
        let zr = C64::new(xr, y);
        let e2 = (C64::new(0.0, 2.0 * PI) * zr).exp();
        C64::new(-(2.0).ln(), PI / 2.0) - C64::new(0.0, PI) * zr + (C64::new(1.0, 0.0) - e2).ln()
    }
}

/// A logarithm of `Γ(z)`. The imaginary part is only defined modulo `2π`
/// (exponentiating gives `Γ(z)` exactly); it is not the continuous branch.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if is_pole(z) {
        return Err(Error::GammaPole { re: z.re });
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_lanczos(z))
    } else {
        let ln_pi = PI.ln();
        Ok(ln_pi - ln_sin_pi(z) - ln_gamma_lanczos(1.0 - z))
    }
}

/// `|z|` above which [`ln_gamma_ratio`] switches to its asymptotic series.
const RATIO_ASYMPTOTIC: f64 = 1e3;

/// `ln Γ(z + a) − ln Γ(z + b)` (modulo `2πi`), without the cancellation of
/// two large logarithms when `|z|` is large. Away from the negative real
/// axis it uses `(a − b) ln z + Σ_k (−1)^{k+1} (B_{k+1}(a) − B_{k+1}(b)) / (k(k+1) z^k)`
/// with Bernoulli polynomials `B_n`.
pub fn ln_gamma_ratio(z: C64, a: C64, b: C64) -> Result<C64> {
    let big = z.norm() >= RATIO_ASYMPTOTIC * (1.0 + a.norm().max(b.norm()));
    if !big || (z.re < 0.0 && z.im.abs() < -z.re) {
        return Ok(ln_gamma(z + a)? - ln_gamma(z + b)?);
    }
    let bern = |x: C64| -> [C64; 5] {
        let x2 = x * x;
        let x3 = x2 * x;
        let x4 = x3 * x;
        [
            x2 - x + 1.0 / 6.0,
            x3 - x2 * 1.5 + x * 0.5,
            x4 - x3 * 2.0 + x2 - 1.0 / 30.0,
            x4 * x - x4 * 2.5 + x3 * (5.0 / 3.0) - x / 6.0,
            x4 * x2 - x4 * x * 3.0 + x4 * 2.5 - x2 * 0.5 + 1.0 / 42.0,
        ]
    };
    let (ba, bb) = (bern(a), bern(b));
    let inv = 1.0 / z;
    let mut pow = inv;
    let mut sum = (a - b) * z.ln();
    for k in 1..=5 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += (ba[k - 1] - bb[k - 1]) * pow * (sign / (k * (k + 1)) as f64);
        pow *= inv;
    }
    Ok(sum)
}

/// `Γ(z)` for complex `z`; poles at non-positive integers are errors.
pub fn gamma(z: C64) -> Result<C64> {
    if is_pole(z) {
        return Err(Error::GammaPole { re: z.re });
    }
    if z.re < 0.5 && z.im.abs() < 30.0 {
        // direct reflection keeps full precision near the real axis
        let s = (z * PI).sin();
        return Ok(PI / (s * ln_gamma_lanczos(1.0 - z).exp()));
    }
    Ok(ln_gamma(z)?.exp())
}

/// `1/Γ(z)`, entire: zero at the poles of `Γ`.
pub fn recip_gamma(z: C64) -> C64 {
    if is_pole(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re < 0.5 && z.im.abs() < 30.0 {
        let s = (z * PI).sin();
        return s * ln_gamma_lanczos(1.0 - z).exp() / PI;
    }
    // cannot fail: poles handled above
    (-ln_gamma_lanczos_or_reflect(z)).exp()
}

fn ln_gamma_lanczos_or_reflect(z: C64) -> C64 {
    if z.re >= 0.5 {
        ln_gamma_lanczos(z)
    } else {
        PI.ln() - ln_sin_pi(z) - ln_gamma_lanczos(1.0 - z)
    }
}

/// Real `Γ(x)`.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(C64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn trivial_values() {
        assert!((gamma_real(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn extended_precision_values() {
        // reference values computed at 30 digits
        let cases = [
            (C64::new(0.5, 1.0), C64::new(0.300_694_617_260_655_816_22, -0.424_967_879_433_123_812_61)),
            (C64::new(-3.7, 2.2), C64::new(-0.000_611_908_720_383_720_446_67, 0.000_346_636_306_490_024_127_82)),
            (C64::new(30.0, 150.0), C64::new(-1.154_324_988_818_291_792_3e-38, -1.901_244_496_504_919_219_9e-38)),
            (C64::new(-40.3, 100.0), C64::new(9.853_530_038_782_175_339_8e-151, -8.367_999_059_199_357_952_2e-151)),
        ];
        for (z, want) in cases {
            let got = gamma(z).unwrap();
            // the phase of Γ grows like |z| ln|z|; its rounding sets the floor
            let bound = 1e-13f64.max(4.0 * f64::EPSILON * ln_gamma(z).unwrap().norm());
            assert!(rel(got, want) < bound, "Γ({z}) = {got}, want {want}, rel {}", rel(got, want));
        }
    }

    #[test]
    fn poles_are_errors() {
        assert!(matches!(gamma(C64::new(0.0, 0.0)), Err(Error::GammaPole { .. })));
        assert!(matches!(gamma(C64::new(-3.0, 0.0)), Err(Error::GammaPole { .. })));
        assert_eq!(recip_gamma(C64::new(-2.0, 0.0)), C64::new(0.0, 0.0));
        assert!(gamma(C64::new(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn recip_matches_gamma() {
        for z in [C64::new(0.3, 4.0), C64::new(-2.5, 0.1), C64::new(12.0, -60.0)] {
            let p = recip_gamma(z) * gamma(z).unwrap();
            assert!((p - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn ratio_recurrence_and_continuity() {
        // Γ(z+a+1)/Γ(z+a) = z+a, exactly, far beyond where the plain difference is usable
        for z in [C64::new(0.3, 1e12), C64::new(-5.0, -3e7), C64::new(4e5, 2e5)] {
            let a = C64::new(0.15, -0.4);
            let r = ln_gamma_ratio(z, a + 1.0, a).unwrap().exp();
            assert!(rel(r, z + a) < 1e-14, "{z}: {r}");
        }
        // both branches agree across the switch
        let (a, b) = (C64::new(0.35, 0.0), C64::new(1.05, 0.2));
        for tau in [900.0, 1100.0, 5000.0] {
            let z = C64::new(0.1, tau);
            let series = ln_gamma_ratio(z, a, b).unwrap();
            let direct = ln_gamma(z + a).unwrap() - ln_gamma(z + b).unwrap();
            assert!(rel(series.exp(), direct.exp()) < 1e-11, "{tau}");
        }
    }
}
