//! `mellin`: the Mellin image of a function along a vertical line, and
//! optionally its inversion back to `x`-space.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use weber_orr_core::mellin::{mellin_forward, mellin_inverse, MellinImage};
use weber_orr_core::quad::VerticalLine;

use crate::config::{FunctionSpec, GridSpec, Spacing};
use crate::error::{invalid, CliError};
use crate::output::{ensure_dir, num, write_csv, write_manifest, write_rows, Row};
use crate::Outcome;

fn default_tol() -> f64 {
    1e-10
}

fn default_tau_max() -> f64 {
    60.0
}

fn default_max_residual() -> f64 {
    1e-6
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MellinRun {
    pub function: FunctionSpec,
    /// Abscissa of the line; must lie inside the convergence strip.
    pub mu: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Points `τ` on the line `s = mu + iτ`; default 41 points over `[−20, 20]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<GridSpec>,
    /// When present, the image is tabulated up to `tau_max` and inverted at
    /// these points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<GridSpec>,
    #[serde(default = "default_tau_max")]
    pub tau_max: f64,
    #[serde(default = "default_max_residual")]
    pub max_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MellinSummary {
    pub points: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_max_residual: Option<f64>,
    pub pass: bool,
}

pub fn run_mellin(run: &MellinRun, base: &Path, out: &Path) -> Result<Outcome, CliError> {
    let f = run.function.build(base, "function")?;
    let line = VerticalLine::new(run.mu, 8.0).map_err(invalid("mu"))?;
    let default_tau = GridSpec { points: None, from: Some(-20.0), to: Some(20.0), count: Some(41), spacing: Spacing::Linear };
    let taus = run.tau.as_ref().unwrap_or(&default_tau).points("tau")?;
    let inverse_xs = run.inverse.as_ref().map(|g| g.positive_points("inverse")).transpose()?;

    let forward: Vec<Result<_, _>> = taus.par_iter().map(|&tau| mellin_forward(&f, line.point(tau), run.tol)).collect();
    let mut failed = forward.iter().filter(|r| r.is_err()).count();
    let records = taus.iter().zip(&forward).map(|(tau, r)| match r {
        Ok(q) => vec![num(*tau), num(q.value.re), num(q.value.im), num(q.error_estimate), "ok".into()],
        Err(e) => vec![num(*tau), "NaN".into(), "NaN".into(), "NaN".into(), e.to_string()],
    });
    ensure_dir(out)?;
    write_csv(&out.join("mellin.csv"), &["tau", "value_re", "value_im", "error_estimate", "status"], records)?;

    let mut worst = None;
    if let Some(xs) = inverse_xs {
        let image = MellinImage::tabulated(&f, line, run.tau_max, run.tol)
            .map_err(|e| CliError::Numeric(format!("tabulating the image: {e}")))?;
        let rows: Vec<Row> = xs
            .par_iter()
            .map(|&x| match mellin_inverse(&image, &line, x, run.tol) {
                Ok(r) => {
                    let want = f.eval(x).unwrap_or(f64::NAN);
                    Row::ok(x, r.value.re, r.error_estimate, Some((r.value.re - want).abs() / (1.0 + want.abs())))
                }
                Err(e) => Row::failed(x, e),
            })
            .collect();
        failed += rows.iter().filter(|r| !r.is_ok()).count();
        worst = rows.iter().filter_map(|r| r.residual).reduce(f64::max);
        write_rows(&out.join("inverse.csv"), &rows)?;
    }
    let pass = failed == 0 && worst.is_none_or(|w| w <= run.max_residual);
    let summary = MellinSummary { points: taus.len(), failed, inverse_max_residual: worst, pass };
    write_manifest(out, "mellin", run, &summary)?;
    let mut text = format!("{} line points, {failed} failed", taus.len());
    if let Some(w) = worst {
        text.push_str(&format!(", inverse max residual {w:.3e}"));
    }
    Ok(Outcome { pass, summary: text })
}
