use weber_orr_core::kernels::modulus_sq;
use weber_orr_core::mellin::{DecayHint, MellinImage, RadialFunction};
use weber_orr_core::quad::{integrate_adaptive, TruncationPolicy, VerticalLine};
use weber_orr_core::specfun::{gamma, Order};
use weber_orr_core::weber::*;
use weber_orr_core::{Error, C64};

fn cfg(nu: f64) -> TransformConfig {
    TransformConfig::new(
        1.0,
        Order::new(nu).unwrap(),
        TruncationPolicy::new(1e5, 8.0, 1e-10).unwrap(),
        VerticalLine::new(-0.25, 8.0).unwrap(),
    )
    .unwrap()
}

fn g0() -> RadialFunction {
    RadialFunction::new(|x| x.sqrt() * (-x).exp(), DecayHint::exponential(0.5, 1.0))
}

fn g0_image() -> MellinImage {
    MellinImage::closed_form(|s: C64| gamma(s + 0.5).unwrap())
}

#[test]
fn solve_inverts_apply() {
    let c = cfg(0.25);
    let f = forward_table(&g0(), &c, &default_grid(1.0)).unwrap();
    for x in [0.5f64, 1.0, 2.0, 4.0, 0.2, 7.0] {
        let g = x.sqrt() * (-x).exp();
        let got = weber_solve(&f.function, &c, x).unwrap();
        // observed ≈ 1e-7; the theorem-level target is 1e-3
        assert!((got.value.re - g).abs() / (1.0 + g) < 1e-5, "x={x}: {} vs {g}", got.value.re);
    }
}

#[test]
fn first_pair_reconstructs() {
    let c = cfg(0.25);
    let f = RadialFunction::new(|x| (x - 1.0) * (1.0 - x).exp(), DecayHint::exponential(0.0, 1.0)).on_interval_from(1.0).unwrap();
    let w = orr3_weight_table(&f, &c, &SampleGrid::new(1e-4, 400.0, 200).unwrap()).unwrap();
    for x in [1.2f64, 2.0, 3.5, 5.0] {
        let got = weber_apply(&w.function, &c, x).unwrap().value.re;
        let want = (x - 1.0) * (1.0 - x).exp();
        assert!((got - want).abs() < 1e-5, "x={x}: {got} vs {want}");
    }
    let direct = weber_orr_roundtrip_3(&f, &c, 2.0).unwrap().value.re;
    assert!((direct - (-1.0f64).exp()).abs() < 1e-5);
}

#[test]
fn second_pair_reconstructs() {
    let c = cfg(0.25);
    for x in [1.2f64, 2.0, 5.0] {
        let got = weber_orr_roundtrip_4(&g0(), &c, x).unwrap().value.re;
        let want = x.sqrt() * (-x).exp();
        assert!((got - want).abs() < 1e-5, "x={x}: {got} vs {want}");
    }
}

#[test]
fn pairs_map_zero_to_zero() {
    let c = cfg(0.25);
    let z = RadialFunction::zero().on_interval_from(1.0).unwrap();
    assert_eq!(weber_orr_roundtrip_3(&z, &c, 2.0).unwrap().value, C64::new(0.0, 0.0));
    assert_eq!(weber_orr_roundtrip_4(&RadialFunction::zero(), &c, 2.0).unwrap().value, C64::new(0.0, 0.0));
}

#[test]
fn contour_route_matches_direct_forward_map() {
    let c = cfg(0.25);
    let img = g0_image();
    for t in [1.01, 1.5, 3.0, 10.0, 30.0] {
        let direct = weber_apply(&g0(), &c, t).unwrap().value;
        let contour = forward_via_mellin(&img, &c, t).unwrap().value;
        assert!((direct - contour).norm() < 1e-10 * direct.norm().max(1e-3), "t={t}: {direct} vs {contour}");
    }
}

#[test]
fn expansion_sequence() {
    let c = cfg(0.25);
    let seq = ExpansionSequence::new(&g0_image(), &c, 40.0, 80).unwrap();
    assert!(seq.imaginary_residue < 1e-12);

    // G_N agrees with the truncated inversion integral fed by the direct forward map
    let f = forward_table(&g0(), &c, &default_grid(1.0)).unwrap();
    for x in [0.5f64, 2.0] {
        let direct = integrate_adaptive(
            |t: f64| {
                C64::new(
                    weber_orr_core::kernels::weber_kernel(c.nu, kp(x * t, x)).unwrap() * t * f.function.eval(t).unwrap(),
                    0.0,
                )
            },
            1.0,
            20.0,
            1e-10,
        )
        .unwrap();
        let gn = seq.gn(20.0, x).unwrap();
        assert!((gn.value - direct.value).norm() < 1e-6, "x={x}: {} vs {}", gn.value, direct.value);
    }

    // x·G_N → g·(J² + Y²) in the mean-square sense over a log-spaced x-grid
    let xs: Vec<f64> = (0..33).map(|k| 0.125 * 64f64.powf(k as f64 / 32.0)).collect();
    let rms = |n: f64| {
        let ss: f64 = xs
            .iter()
            .map(|&x| {
                let target = x.sqrt() * (-x).exp() * modulus_sq(c.nu, x).unwrap();
                (seq.gn(n, x).unwrap().value.re * x - target).powi(2)
            })
            .sum();
        (ss / xs.len() as f64).sqrt()
    };
    let r: Vec<f64> = [5.0, 10.0, 20.0, 40.0].iter().map(|&n| rms(n)).collect();
    assert!(r.windows(2).all(|w| w[1] < w[0]), "{r:?}");
    assert!(seq.gn(50.0, 1.0).is_err());
}

fn kp(a: f64, b: f64) -> weber_orr_core::kernels::KernelPoint {
    weber_orr_core::kernels::KernelPoint::new(a, b).unwrap()
}

#[test]
fn expansion_of_zero_is_zero() {
    let c = cfg(0.25);
    let seq = ExpansionSequence::new(&MellinImage::closed_form(|_| C64::new(0.0, 0.0)), &c, 10.0, 16).unwrap();
    assert_eq!(seq.gn(10.0, 2.0).unwrap().value, C64::new(0.0, 0.0));
}

#[test]
fn theorem_gate() {
    let c = cfg(0.25);
    let m = weber_orr_core::weber::theorem_gate(&g0_image(), &c).unwrap();
    assert!(m.member && m.norm.value.is_finite());
    // |s|·|g*| ~ 1/|s| is not integrable along the line
    let slow = MellinImage::closed_form(|s: C64| 1.0 / ((s - 2.0) * (s - 2.0)));
    assert!(matches!(weber_orr_core::weber::theorem_gate(&slow, &c), Err(Error::Parameter { .. })));
    assert!(weber_orr_core::weber::theorem_gate(&g0_image(), &cfg(0.5)).is_err());
}
