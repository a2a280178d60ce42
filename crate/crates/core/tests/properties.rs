use std::f64::consts::PI;

use proptest::prelude::*;
use weber_orr_core::funcdsl::{eval_expr, parse_expr};
use weber_orr_core::kernels::{weber_kernel, KernelPoint};
use weber_orr_core::quad::{integrate_vertical_line, VerticalLine};
use weber_orr_core::specfun::{bessel_j, bessel_j_deriv, bessel_y, bessel_y_deriv, gamma, Order};
use weber_orr_core::C64;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_reflection(re in -8.0f64..8.0, im in -20.0f64..20.0) {
        let z = C64::new(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / (z * PI).sin();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn gamma_recurrence(re in -8.0f64..30.0, im in -30.0f64..30.0) {
        let z = C64::new(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn bessel_wronskian(nu in 0.0f64..=0.5, lx in -2.0f64..2.0) {
        let (o, x) = (Order::new(nu).unwrap(), 10f64.powf(lx));
        let w = bessel_j(o, x).unwrap() * bessel_y_deriv(o, x).unwrap()
            - bessel_j_deriv(o, x).unwrap() * bessel_y(o, x).unwrap();
        let want = 2.0 / (PI * x);
        prop_assert!(((w - want) / want).abs() < 1e-9, "ν={nu} x={x}: {w} vs {want}");
    }

    #[test]
    fn kernel_antisymmetry(nu in 0.0f64..=0.5, a in 0.01f64..50.0, b in 0.01f64..50.0) {
        let o = Order::new(nu).unwrap();
        let c1 = weber_kernel(o, KernelPoint::new(a, b).unwrap()).unwrap();
        let c2 = weber_kernel(o, KernelPoint::new(b, a).unwrap()).unwrap();
        prop_assert!((c1 + c2).abs() <= 1e-14 * (1.0 + c1.abs()));
    }

    #[test]
    fn line_integral_is_linear(p in -3.0f64..3.0, q in -3.0f64..3.0, mu in 0.2f64..2.0) {
        let line = VerticalLine::new(mu, 8.0).unwrap();
        let f = |s: C64| gamma(s).unwrap();
        let g = |s: C64| gamma(s * 0.5).unwrap() * 0.5;
        let tol = 1e-12;
        let mix = integrate_vertical_line(|s| f(s) * p + g(s) * q, &line, tol).unwrap().result.value;
        let sep = integrate_vertical_line(f, &line, tol).unwrap().result.value * p
            + integrate_vertical_line(g, &line, tol).unwrap().result.value * q;
        prop_assert!((mix - sep).norm() < 1e-10 * (1.0 + sep.norm()));
    }

    #[test]
    fn expression_roundtrip(src in expression(4)) {
        let e = parse_expr(&src).unwrap();
        let printed = e.to_string();
        let again = parse_expr(&printed).unwrap();
        prop_assert_eq!(&again, &e, "{} -> {}", src, printed);
        prop_assert_eq!(again.to_string(), printed);
        // evaluation agrees bit for bit (or fails identically)
        let (u, v) = (eval_expr(&e, 0.7), eval_expr(&again, 0.7));
        prop_assert_eq!(u.is_ok(), v.is_ok());
        if let (Ok(u), Ok(v)) = (u, v) {
            prop_assert!(u == v || (u.is_nan() && v.is_nan()));
        }
    }
}

/// Random source text in the expression language, with redundant
/// parentheses and mixed spacing.
fn expression(depth: u32) -> BoxedStrategy<String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("pi".to_string()),
        Just("e".to_string()),
        (0u32..1000, 0u32..4).prop_map(|(m, k)| format!("{}", m as f64 / 10f64.powi(k as i32))),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop_oneof![Just("+"), Just("-"), Just("*"), Just("/"), Just("^")], inner.clone())
                .prop_map(|(a, op, b)| format!("{a}{op}{b}")),
            (inner.clone(), prop_oneof![Just(" + "), Just(" - "), Just(" * "), Just(" / ")], inner.clone())
                .prop_map(|(a, op, b)| format!("({a}){op}({b})")),
            inner.clone().prop_map(|a| format!("-{a}")),
            inner.clone().prop_map(|a| format!("({a})")),
            (prop_oneof![Just("exp"), Just("log"), Just("sin"), Just("cos"), Just("sqrt")], inner.clone())
                .prop_map(|(f, a)| format!("{f}({a})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("pow({a}, {b})")),
        ]
    })
    .boxed()
}
