//! Run configuration. Every run reads exactly one JSON document; the
//! building blocks here are shared by the subcommands.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use weber_orr_core::funcdsl::{parse_expr, ExprError};
use weber_orr_core::mellin::{DecayHint, RadialFunction};
use weber_orr_core::quad::{TruncationPolicy, VerticalLine};
use weber_orr_core::specfun::Order;
use weber_orr_core::weber::TransformConfig;
use weber_orr_core::C64;

use crate::error::{invalid, CliError};

/// Read and parse a config file. Relative paths inside it (sample tables)
/// resolve against the file's directory, returned alongside.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<(T, PathBuf), CliError> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(format!("reading {}", path.display())))?;
    let cfg = serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((cfg, base))
}

fn one() -> f64 {
    1.0
}

fn default_mu() -> f64 {
    -0.25
}

fn default_tol() -> f64 {
    1e-10
}

fn default_n_cut() -> f64 {
    1e5
}

fn default_t_height() -> f64 {
    8.0
}

/// Parameters shared by the transform and solver runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default = "one")]
    pub a: f64,
    pub nu: f64,
    /// Abscissa of the Mellin line.
    #[serde(default = "default_mu")]
    pub mu: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_n_cut")]
    pub n_cut: f64,
    #[serde(default = "default_t_height")]
    pub t_height: f64,
}

impl Params {
    pub fn transform_config(&self) -> Result<TransformConfig, CliError> {
        let ctx = "params";
        let nu = Order::new(self.nu).map_err(invalid(ctx))?;
        let policy = TruncationPolicy::new(self.n_cut, self.t_height, self.tol).map_err(invalid(ctx))?;
        let line = VerticalLine::new(self.mu, self.t_height).map_err(invalid(ctx))?;
        TransformConfig::new(self.a, nu, policy, line).map_err(invalid(ctx))
    }
}

/// Claimed decay of a function: `x^{at_zero}` at the origin and exactly
/// one of `exponential` (rate) or `algebraic` (exponent) at infinity.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecaySpec {
    pub at_zero: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponential: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebraic: Option<f64>,
}

impl DecaySpec {
    fn hint(&self, ctx: &str) -> Result<DecayHint, CliError> {
        match (self.exponential, self.algebraic) {
            (Some(rate), None) if rate > 0.0 => Ok(DecayHint::exponential(self.at_zero, rate)),
            (None, Some(exponent)) if exponent.is_finite() => Ok(DecayHint::algebraic(self.at_zero, exponent)),
            (Some(_), None) => Err(CliError::Config(format!("{ctx}.decay: exponential rate must be > 0"))),
            _ => Err(CliError::Config(format!("{ctx}.decay: give exactly one of `exponential` or `algebraic`"))),
        }
    }
}

/// A function of one variable: an expression in `x` or a CSV sample table
/// (header `x,value`), with its decay hint.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
    pub decay: DecaySpec,
}

impl FunctionSpec {
    pub fn build(&self, base: &Path, ctx: &str) -> Result<RadialFunction, CliError> {
        let decay = self.decay.hint(ctx)?;
        match (&self.expr, &self.table) {
            (Some(src), None) => {
                let e = parse_expr(src).map_err(|e| CliError::Config(expr_message(&format!("{ctx}.expr"), src, &e)))?;
                Ok(e.to_radial(decay))
            }
            (None, Some(path)) => {
                let path = base.join(path);
                let (xs, ys) = read_table(&path)?;
                RadialFunction::from_table(xs, ys, decay).map_err(invalid(&path.display().to_string()))
            }
            _ => Err(CliError::Config(format!("{ctx}: give exactly one of `expr` or `table`"))),
        }
    }
}

/// Error text with the offending source line and a caret under the offset.
fn expr_message(ctx: &str, src: &str, e: &ExprError) -> String {
    let offset = match e {
        ExprError::Syntax { offset, .. } | ExprError::UnknownIdentifier { offset, .. } | ExprError::Arity { offset, .. } => {
            *offset
        }
        ExprError::Domain { span, .. } => span.start,
    };
    format!("{ctx}: {e}\n    {src}\n    {}^", " ".repeat(offset))
}

/// Two-column sample table `x,value` with a header row.
pub fn read_table(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let ctx = path.display().to_string();
    let mut rdr = csv::Reader::from_path(path).map_err(|e| CliError::Config(format!("{ctx}: {e}")))?;
    let headers = rdr.headers().map_err(|e| CliError::Config(format!("{ctx}: {e}")))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| CliError::Config(format!("{ctx}: missing column `{name}` in header")))
    };
    let (cx, cv) = (col("x")?, col("value")?);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Config(format!("{ctx}: {e}")))?;
        let field = |c: usize| -> Result<f64, CliError> {
            let raw = rec.get(c).unwrap_or("").trim();
            raw.parse().map_err(|_| CliError::Config(format!("{ctx}: row {}: `{raw}` is not a number", i + 2)))
        };
        xs.push(field(cx)?);
        ys.push(field(cv)?);
    }
    Ok((xs, ys))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

/// Either explicit `points` or `from`/`to`/`count` with a spacing.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn points(&self, ctx: &str) -> Result<Vec<f64>, CliError> {
        let bad = |msg: &str| CliError::Config(format!("{ctx}: {msg}"));
        let pts = match (&self.points, self.from, self.to, self.count) {
            (Some(p), None, None, None) => p.clone(),
            (None, Some(from), Some(to), Some(count)) => {
                if count == 0 || !(from.is_finite() && to.is_finite()) {
                    return Err(bad("need finite `from`, `to` and count >= 1"));
                }
                if count == 1 {
                    vec![from]
                } else {
                    let frac = |k: usize| k as f64 / (count - 1) as f64;
                    match self.spacing {
                        Spacing::Linear => (0..count).map(|k| from + (to - from) * frac(k)).collect(),
                        Spacing::Log => {
                            if !(from > 0.0 && to > 0.0) {
                                return Err(bad("log spacing needs from, to > 0"));
                            }
                            (0..count).map(|k| from * (to / from).powf(frac(k))).collect()
                        }
                    }
                }
            }
            _ => return Err(bad("give either `points` or all of `from`, `to`, `count`")),
        };
        if pts.iter().any(|p| !p.is_finite()) {
            return Err(bad("grid points must be finite"));
        }
        Ok(pts)
    }

    /// Points required to be positive (transform arguments).
    pub fn positive_points(&self, ctx: &str) -> Result<Vec<f64>, CliError> {
        let pts = self.points(ctx)?;
        if pts.iter().any(|&p| p <= 0.0) {
            return Err(CliError::Config(format!("{ctx}: grid points must be > 0")));
        }
        Ok(pts)
    }
}

/// 33 log-spaced points over `[a/8, 8a]`, minus those within `1e-3·a` of `a`
/// where the forward kernel degenerates.
pub fn default_x_grid(a: f64) -> Vec<f64> {
    (0..33).map(|k| a / 8.0 * 64f64.powf(k as f64 / 32.0)).filter(|x| (x - a).abs() > 1e-3 * a).collect()
}

/// A complex number written as a bare real or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Complex {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Complex> for C64 {
    fn from(c: Complex) -> C64 {
        match c {
            Complex::Real(re) => C64::new(re, 0.0),
            Complex::Pair([re, im]) => C64::new(re, im),
        }
    }
}
