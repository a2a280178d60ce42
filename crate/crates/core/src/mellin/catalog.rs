//! Test functions with closed-form Mellin images.

use alloc::vec::Vec;

use super::{DecayHint, MellinImage, RadialFunction};
use crate::specfun::gamma;
use crate::C64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// The same function in the expression language.
    pub expr: &'static str,
    pub function: RadialFunction,
    pub image: MellinImage,
    /// Left edge of the convergence strip.
    pub strip_lo: f64,
}

fn image(shift: f64, scale: f64, factor: f64, strip_lo: f64) -> MellinImage {
    // factor · Γ(scale·s + shift)
    MellinImage::closed_form(move |s: C64| {
        if s.re <= strip_lo {
            return C64::new(f64::NAN, f64::NAN);
        }
        gamma(s * scale + shift).map(|g| g * factor).unwrap_or(C64::new(f64::NAN, f64::NAN))
    })
}

pub fn catalog() -> Vec<CatalogEntry> {
    alloc::vec![
        CatalogEntry {
            name: "exp",
            expr: "exp(-x)",
            function: RadialFunction::new(|x| (-x).exp(), DecayHint::exponential(0.0, 1.0)),
            image: image(0.0, 1.0, 1.0, 0.0),
            strip_lo: 0.0,
        },
        CatalogEntry {
            name: "sqrt-exp",
            expr: "x^0.5*exp(-x)",
            function: RadialFunction::new(|x| x.sqrt() * (-x).exp(), DecayHint::exponential(0.5, 1.0)),
            image: image(0.5, 1.0, 1.0, -0.5),
            strip_lo: -0.5,
        },
        CatalogEntry {
            name: "x-exp",
            expr: "x*exp(-x)",
            function: RadialFunction::new(|x| x * (-x).exp(), DecayHint::exponential(1.0, 1.0)),
            image: image(1.0, 1.0, 1.0, -1.0),
            strip_lo: -1.0,
        },
        CatalogEntry {
            name: "gauss",
            expr: "exp(-x^2)",
            function: RadialFunction::new(|x| (-x * x).exp(), DecayHint::exponential(0.0, 4.0)),
            image: image(0.0, 0.5, 0.5, 0.0),
            strip_lo: 0.0,
        },
        CatalogEntry {
            name: "bump",
            expr: "x*exp(-x^2)",
            function: RadialFunction::new(|x| x * (-x * x).exp(), DecayHint::exponential(1.0, 4.0)),
            image: image(0.5, 0.5, 0.5, -1.0),
            strip_lo: -1.0,
        },
    ]
}
