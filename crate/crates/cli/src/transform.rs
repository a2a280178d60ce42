//! `transform` and `solve-weber`.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use weber_orr_core::kernels::modulus_sq;
use weber_orr_core::mellin::{membership_m01, MellinImage, RadialFunction};
use weber_orr_core::quad::QuadratureResult;
use weber_orr_core::weber::{
    default_grid, modulus_weighted, orr_integral, weber_apply, weber_solve, SampleGrid, Tabulated, TransformConfig,
};

use crate::config::{default_x_grid, FunctionSpec, GridSpec, Params};
use crate::error::{invalid, CliError};
use crate::output::{ensure_dir, write_manifest, write_rows, Row};
use crate::Outcome;

fn default_max_residual() -> f64 {
    1e-3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformKind {
    /// `f(x) = ∫_0^∞ C_ν(xξ, aξ) g(ξ) dξ`.
    Forward,
    /// Forward map followed by the inversion formula; reproduces `g`.
    Roundtrip,
    /// Weber–Orr pair for data on `(a, ∞)`; reproduces `f` for `x > a`.
    OrrExterior,
    /// Weber–Orr pair for data on `(0, ∞)`; reproduces `f`.
    OrrHalfLine,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformRun {
    pub transform: TransformKind,
    pub params: Params,
    pub function: FunctionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    /// Largest acceptable `|result − input|/(1 + |input|)` for the
    /// reconstructing transforms.
    #[serde(default = "default_max_residual")]
    pub max_residual: f64,
}

/// Solve the Weber equation for `g`. Either `f` is given on `(a, ∞)`, or `g`
/// is given and `f` is computed from it first (validation mode: the result
/// is compared with `g` and the admissibility of `g` is reported).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveRun {
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default = "default_max_residual")]
    pub max_residual: f64,
    /// Reject `g` unless its Mellin image passes the admissibility test.
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowSummary {
    pub points: usize,
    pub failed: usize,
    pub max_residual: Option<f64>,
    pub max_error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<MembershipVerdict>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipVerdict {
    pub member: Option<bool>,
    pub norm: Option<f64>,
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn x_grid(grid: &Option<GridSpec>, a: f64) -> Result<Vec<f64>, CliError> {
    match grid {
        Some(g) => g.positive_points("grid"),
        None => Ok(default_x_grid(a)),
    }
}

fn tabulate_par<F>(lower: f64, grid: &SampleGrid, what: &str, fun: F) -> Result<Tabulated, CliError>
where
    F: Fn(f64) -> weber_orr_core::Result<QuadratureResult> + Sync,
{
    let hs = grid.offsets();
    let samples = hs
        .par_iter()
        .map(|h| fun(lower + h))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Numeric(format!("{what}: {e}")))?;
    Tabulated::from_samples(lower, hs, &samples).map_err(|e| CliError::Numeric(format!("{what}: {e}")))
}

/// Evaluate `eval` over `xs` in parallel; rows keep input order. Where
/// `reference` is defined the row carries `|value − reference|/(1 + |reference|)`.
fn rows<E>(xs: &[f64], reference: Option<&RadialFunction>, eval: E) -> Vec<Row>
where
    E: Fn(f64) -> weber_orr_core::Result<QuadratureResult> + Sync,
{
    xs.par_iter()
        .map(|&x| match eval(x) {
            Ok(r) => {
                let value = r.value.re;
                let residual = reference.and_then(|f| f.eval(x).ok()).map(|want| (value - want).abs() / (1.0 + want.abs()));
                Row::ok(x, value, r.error_estimate, residual)
            }
            Err(e) => Row::failed(x, e),
        })
        .collect()
}

fn summarize(rows: &[Row], max_residual: f64, membership: Option<MembershipVerdict>) -> RowSummary {
    let failed = rows.iter().filter(|r| !r.is_ok()).count();
    let worst = rows.iter().filter_map(|r| r.residual).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    let max_error_estimate = rows.iter().filter(|r| r.is_ok()).map(|r| r.error_estimate).fold(0.0, f64::max);
    let pass = failed == 0 && worst.is_none_or(|w| w <= max_residual);
    RowSummary { points: rows.len(), failed, max_residual: worst, max_error_estimate, membership, pass }
}

fn finish(out: &Path, command: &str, config: &impl Serialize, rows: &[Row], summary: &RowSummary) -> Result<Outcome, CliError> {
    ensure_dir(out)?;
    write_rows(&out.join("values.csv"), rows)?;
    write_manifest(out, command, config, summary)?;
    let mut text = format!("{} points, {} failed", summary.points, summary.failed);
    if let Some(r) = summary.max_residual {
        text.push_str(&format!(", max residual {r:.3e}"));
    }
    Ok(Outcome { pass: summary.pass, summary: text })
}

pub fn run_transform(run: &TransformRun, base: &Path, out: &Path) -> Result<Outcome, CliError> {
    let cfg = run.params.transform_config()?;
    let xs = x_grid(&run.grid, cfg.a)?;
    let rows = match run.transform {
        TransformKind::Forward => {
            let g = run.function.build(base, "function")?;
            rows(&xs, None, |x| weber_apply(&g, &cfg, x))
        }
        TransformKind::Roundtrip => {
            let g = run.function.build(base, "function")?;
            let f = tabulate_par(cfg.a, &default_grid(cfg.a), "forward transform", |t| weber_apply(&g, &cfg, t))?;
            rows(&xs, Some(&g), |x| weber_solve(&f.function, &cfg, x))
        }
        TransformKind::OrrExterior => {
            let f = run.function.build(base, "function")?.on_interval_from(cfg.a).map_err(invalid("function"))?;
            let w = orr_exterior_weight(&f, &cfg)?;
            rows(&xs, Some(&f), |x| weber_apply(&w.function, &cfg, x))
        }
        TransformKind::OrrHalfLine => {
            let f = run.function.build(base, "function")?;
            let weighted = modulus_weighted(&f, &cfg);
            let inner = tabulate_par(cfg.a, &default_grid(cfg.a), "inner transform", |t| weber_apply(&weighted, &cfg, t))?;
            rows(&xs, Some(&f), |x| orr_integral(&inner.function, cfg.nu, cfg.a, x, &cfg.policy))
        }
    };
    let summary = summarize(&rows, run.max_residual, None);
    finish(out, "transform", run, &rows, &summary)
}

/// `t ↦ t F(t)/(J_ν²(at)+Y_ν²(at))` with `F` the transform of `f`, tabulated
/// on the half line; its forward map reconstructs `f`.
fn orr_exterior_weight(f: &RadialFunction, cfg: &TransformConfig) -> Result<Tabulated, CliError> {
    let grid = SampleGrid { h_min: 1e-4, h_max: 400.0 / cfg.a, points: 200 };
    tabulate_par(0.0, &grid, "exterior transform", |t| {
        let r = orr_integral(f, cfg.nu, cfg.a, t, &cfg.policy)?;
        let m = modulus_sq(cfg.nu, cfg.a * t)?;
        Ok(QuadratureResult { value: r.value * (t / m), error_estimate: r.error_estimate * t / m, evaluations: r.evaluations })
    })
}

fn membership(g: &RadialFunction, cfg: &TransformConfig) -> MembershipVerdict {
    let verdict =
        MellinImage::tabulated(g, cfg.line, 60.0, 1e-10).and_then(|img| membership_m01(&img, &cfg.line, cfg.policy.tol));
    match verdict {
        Ok(m) => MembershipVerdict {
            member: Some(m.member),
            norm: Some(m.norm.value),
            tail_bound: Some(m.norm.tail_bound),
            error: None,
        },
        Err(e) => MembershipVerdict { member: None, norm: None, tail_bound: None, error: Some(e.to_string()) },
    }
}

pub fn run_solve(run: &SolveRun, base: &Path, out: &Path) -> Result<Outcome, CliError> {
    let cfg = run.params.transform_config()?;
    cfg.require_theorem().map_err(invalid("params"))?;
    let xs = x_grid(&run.grid, cfg.a)?;
    let (rows, verdict) = match (&run.f, &run.g) {
        (Some(f), None) => {
            let f = f.build(base, "f")?.on_interval_from(cfg.a).map_err(invalid("f"))?;
            (rows(&xs, None, |x| weber_solve(&f, &cfg, x)), None)
        }
        (None, Some(g)) => {
            let g = g.build(base, "g")?;
            let verdict = membership(&g, &cfg);
            if run.strict && verdict.member != Some(true) {
                let why = verdict.error.clone().unwrap_or_else(|| "g* integrable with weight |s| on the line".into());
                return Err(CliError::Config(format!("g: theorem hypothesis not met: {why}")));
            }
            let f = tabulate_par(cfg.a, &default_grid(cfg.a), "forward transform", |t| weber_apply(&g, &cfg, t))?;
            (rows(&xs, Some(&g), |x| weber_solve(&f.function, &cfg, x)), Some(verdict))
        }
        _ => return Err(CliError::Config("give exactly one of `f` or `g`".into())),
    };
    let summary = summarize(&rows, run.max_residual, verdict);
    finish(out, "solve-weber", run, &rows, &summary)
}
