use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Behaviour at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// `|f(x)| ≲ e^{−rate·x}`.
    Exponential { rate: f64 },
    /// `|f(x)| ≲ x^{exponent}`.
    Algebraic { exponent: f64 },
}

/// Claimed decay: `|f(x)| ≲ x^{at_zero}` as `x → 0+`, and `at_infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayHint {
    pub at_zero: f64,
    pub at_infinity: Tail,
}

impl DecayHint {
    pub fn exponential(at_zero: f64, rate: f64) -> Self {
        DecayHint { at_zero, at_infinity: Tail::Exponential { rate } }
    }

    pub fn algebraic(at_zero: f64, exponent: f64) -> Self {
        DecayHint { at_zero, at_infinity: Tail::Algebraic { exponent } }
    }
}

/// A real function on `(lower, ∞)` with a decay hint. `lower` is 0 for
/// functions on the half line and `a` for Weber–Orr data on `(a, ∞)`.
#[derive(Clone)]
pub struct RadialFunction {
    body: RealFn,
    decay: DecayHint,
    lower: f64,
}

impl core::fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RadialFunction").field("decay", &self.decay).field("lower", &self.lower).finish_non_exhaustive()
    }
}

impl RadialFunction {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(body: F, decay: DecayHint) -> Self {
        RadialFunction { body: Arc::new(body), decay, lower: 0.0 }
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0, DecayHint::exponential(0.0, f64::INFINITY))
    }

    /// Restrict to `(a, ∞)`; evaluation at `x ≤ a` becomes an error.
    pub fn on_interval_from(mut self, a: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::Domain { what: "lower end a >= 0", value: a });
        }
        self.lower = a;
        Ok(self)
    }

    /// Natural cubic spline through `(xs, ys)`; zero outside `[x₀, x_n]`.
    /// The table must extend to where the function is negligible.
    pub fn from_table(xs: Vec<f64>, ys: Vec<f64>, decay: DecayHint) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 3 {
            return Err(Error::Parameter { constraint: "table with at least 3 matching x and value entries" });
        }
        if xs[0] < 0.0 || xs.windows(2).any(|w| !(w[1] > w[0])) || ys.iter().any(|y| !y.is_finite()) {
            return Err(Error::Parameter { constraint: "table abscissae nonnegative and strictly increasing" });
        }
        let m = spline_second_derivatives(&xs, &ys);
        let body = move |x: f64| -> f64 {
            let n = xs.len();
            if x < xs[0] || x > xs[n - 1] {
                return 0.0;
            }
            let i = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
                Ok(i) => return ys[i],
                Err(i) => i - 1,
            };
            let h = xs[i + 1] - xs[i];
            let a = (xs[i + 1] - x) / h;
            let b = 1.0 - a;
            a * ys[i] + b * ys[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0
        };
        Ok(Self::new(body, decay))
    }

    /// Samples `y_k = f(lower + h_k)` on increasing offsets `h_k > 0`,
    /// interpolated by a cubic spline in `ln h` and continued beyond both
    /// ends by the power law through the two outermost samples (zero when
    /// those differ in sign). Suited to functions that behave like powers
    /// of `x − lower` at both ends.
    pub fn from_log_samples(lower: f64, hs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if hs.len() != ys.len() || hs.len() < 3 {
            return Err(Error::Parameter { constraint: "table with at least 3 matching x and value entries" });
        }
        if hs[0] <= 0.0 || hs.windows(2).any(|w| !(w[1] > w[0])) || ys.iter().any(|y| !y.is_finite()) {
            return Err(Error::Parameter { constraint: "sample offsets positive and strictly increasing" });
        }
        if !(lower >= 0.0 && lower.is_finite()) {
            return Err(Error::Domain { what: "lower end a >= 0", value: lower });
        }
        let us: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
        let m = spline_second_derivatives(&us, &ys);
        let n = us.len();
        let slope = |i: usize, j: usize| -> Option<f64> {
            let (yi, yj) = (ys[i], ys[j]);
            (yi * yj > 0.0).then(|| (yj / yi).ln() / (us[j] - us[i]))
        };
        let p_lo = slope(0, 1);
        let p_hi = slope(n - 2, n - 1);
        let decay = DecayHint::algebraic(p_lo.unwrap_or(0.0), p_hi.unwrap_or(-1.0));
        let body = move |x: f64| -> f64 {
            let h = x - lower;
            if h <= 0.0 {
                return 0.0;
            }
            let u = h.ln();
            if u < us[0] {
                return p_lo.map_or(0.0, |p| ys[0] * ((u - us[0]) * p).exp());
            }
            if u > us[n - 1] {
                return p_hi.map_or(0.0, |p| ys[n - 1] * ((u - us[n - 1]) * p).exp());
            }
            let i = match us.binary_search_by(|v| v.partial_cmp(&u).unwrap()) {
                Ok(i) => return ys[i],
                Err(i) => i - 1,
            };
            let d = us[i + 1] - us[i];
            let a = (us[i + 1] - u) / d;
            let b = 1.0 - a;
            a * ys[i] + b * ys[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * d * d / 6.0
        };
        let mut f = Self::new(body, decay);
        f.lower = lower;
        Ok(f)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > self.lower) {
            return Err(Error::Domain { what: "function evaluated outside its domain", value: x });
        }
        Ok((self.body)(x))
    }

    /// Unchecked evaluation for integrands whose range is known to be valid.
    #[inline]
    pub(crate) fn at(&self, x: f64) -> f64 {
        (self.body)(x)
    }

    pub fn decay(&self) -> DecayHint {
        self.decay
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    /// Spot-check the decay hint against samples: the function must be at
    /// least as small as claimed near `lower` and at infinity.
    pub fn check_decay(&self) -> Result<()> {
        let d = self.decay;
        let scale = (1..=40).map(|k| self.at(self.lower + 0.25 * k as f64).abs()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Ok(());
        }
        if self.lower == 0.0 {
            let (x1, x2) = (1e-3, 1e-6);
            let (f1, f2) = (self.at(x1).abs(), self.at(x2).abs());
            // |f(x2)| ≤ 10·|f(x1)|·(x2/x1)^{at_zero}, with slack for sign changes
            if f2 > 10.0 * (f1.max(1e-3 * scale)) * (x2 / x1).powf(d.at_zero) {
                return Err(Error::Parameter { constraint: "decay hint at 0 consistent with samples" });
            }
        }
        let far = match d.at_infinity {
            Tail::Exponential { rate } if rate.is_infinite() => return Ok(()),
            Tail::Exponential { rate } => self.lower + 30.0 / rate,
            Tail::Algebraic { .. } => self.lower + 1e6,
        };
        let bound = match d.at_infinity {
            Tail::Exponential { .. } => 1e-9 * scale,
            Tail::Algebraic { exponent } => 10.0 * scale * far.powf(exponent).max((self.lower + 10.0).powf(exponent) * 1e-12),
        };
        if self.at(far).abs() > bound.max(1e-300) {
            return Err(Error::Parameter { constraint: "decay hint at infinity consistent with samples" });
        }
        Ok(())
    }
}

fn spline_second_derivatives(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut m = alloc::vec![0.0; n];
    let mut u = alloc::vec![0.0; n];
    for i in 1..n - 1 {
        let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
        let p = sig * m[i - 1] + 2.0;
        m[i] = (sig - 1.0) / p;
        let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        u[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
    }
    m[n - 1] = 0.0;
    for k in (0..n - 1).rev() {
        m[k] = m[k] * m[k + 1] + u[k];
    }
    m
}
