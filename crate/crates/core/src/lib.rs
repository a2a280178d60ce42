//! Numerical core for the Weber integral equation and the Weber–Orr transforms.
//!
//! Everything in this crate is a pure function of its arguments and builds
//! without `std` (an allocator is required). The layers, bottom-up:
//!
//! - [`specfun`]: complex Gamma, Bessel `J_ν`/`Y_ν` for `0 ≤ ν ≤ 1/2` (plus
//!   order `ν + 1` for derivatives), Gauss `₂F₁`, and the associated Legendre
//!   function of the second kind `Q^{-ν}_λ(z)` for complex degree.
//! - [`kernels`]: the cross-product kernel `C_ν(α, β)` and `J_ν² + Y_ν²`.
//! - [`quad`]: Gauss–Kronrod, double-exponential, oscillatory and
//!   vertical-line integrators, all returning a [`quad::QuadratureResult`].
//! - [`mellin`]: forward/inverse Mellin transforms, Parseval pairing and the
//!   weighted line norms used as the admissibility test for the solver.
//! - [`weber`]: the forward Weber map, its inversion, the two Weber–Orr
//!   round trips and the truncated expansion `G_N`.
//! - [`identities`]: numerical certification of the closed-form integrals the
//!   inversion rests on.
//! - [`funcdsl`]: a small expression language for test functions.
#![no_std]

extern crate alloc;

pub mod error;
pub mod funcdsl;
pub mod identities;
pub mod kernels;
pub mod mellin;
pub mod quad;
pub mod specfun;
pub mod weber;

pub use error::{Error, Result};

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use num_complex::Complex64 as C64;
