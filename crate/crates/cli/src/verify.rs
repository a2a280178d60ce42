//! `verify`: run an identity suite over a case grid.
//!
//! Every case is validated against its suite's constraints before anything
//! is computed; one bad case rejects the whole config. Cases then run in
//! parallel and reports come back in input order.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use weber_orr_core::identities::{
    check_eq12, check_eq18, check_in, check_mb_kernel, check_q_bounds, check_slater, in_decay, slater_residue_sum, slater_strip,
    verify_eq12, verify_eq18, verify_mb_kernel, verify_q_bounds, verify_slater, IdentityCase, IdentityReport,
};
use weber_orr_core::quad::VerticalLine;
use weber_orr_core::specfun::Order;
use weber_orr_core::C64;

use crate::config::Complex;
use crate::error::{invalid, CliError};
use crate::output::{ensure_dir, num, write_csv, write_json, write_manifest};
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Eq12,
    Eq18,
    Slater,
    MbKernel,
    InDecay,
    QBounds,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Eq12, Suite::Eq18, Suite::Slater, Suite::MbKernel, Suite::InDecay, Suite::QBounds];

    /// The case grid shipped with the tool.
    pub fn shipped(self) -> &'static str {
        match self {
            Suite::Eq12 => include_str!("../fixtures/verify_eq12.json"),
            Suite::Eq18 => include_str!("../fixtures/verify_eq18.json"),
            Suite::Slater => include_str!("../fixtures/verify_slater.json"),
            Suite::MbKernel => include_str!("../fixtures/verify_mb_kernel.json"),
            Suite::InDecay => include_str!("../fixtures/verify_in_decay.json"),
            Suite::QBounds => include_str!("../fixtures/verify_q_bounds.json"),
            Suite::All => include_str!("../fixtures/verify_all.json"),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Eq12 => "eq12",
            Suite::Eq18 => "eq18",
            Suite::Slater => "slater",
            Suite::MbKernel => "mb-kernel",
            Suite::InDecay => "in-decay",
            Suite::QBounds => "q-bounds",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

fn default_tol() -> f64 {
    1e-6
}

fn default_quad_tol() -> f64 {
    1e-10
}

fn default_slope_tol() -> f64 {
    0.1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyRun {
    pub suite: Suite,
    /// Identity tolerance on `rel_diff`.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Tolerance handed to the integrators.
    #[serde(default = "default_quad_tol")]
    pub quad_tol: f64,
    /// Allowed deviation of a fitted decay exponent.
    #[serde(default = "default_slope_tol")]
    pub slope_tol: f64,
    /// Omitted: the shipped grid. Not allowed with suite `all`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cases: Option<Vec<CaseSpec>>,
}

impl VerifyRun {
    pub fn shipped(suite: Suite) -> VerifyRun {
        serde_json::from_str(suite.shipped()).expect("shipped case grids parse")
    }
}

/// One case. Fields a suite does not use must be absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub nu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Complex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Complex>,
    /// Contour abscissa; defaults to the middle of the admissible strip.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// Truncation points `N` for the decay fit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cuts: Option<Vec<f64>>,
    /// Line abscissa and `t` samples for the Legendre bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<Vec<f64>>,
}

/// A validated case ready to run.
#[derive(Debug, Clone)]
enum Prepared {
    Identity(IdentityCase),
    Decay(IdentityCase, Vec<f64>),
    Bounds(Order, VerticalLine, Vec<f64>),
}

fn prepare(suite: Suite, index: usize, c: &CaseSpec) -> Result<Prepared, CliError> {
    let ctx = format!("{suite} case {index}");
    let bad = |msg: &str| CliError::Config(format!("{ctx}: {msg}"));
    let allowed: &[&str] = match suite {
        Suite::Eq12 => &["a", "x", "s"],
        Suite::Eq18 => &["s", "w"],
        Suite::Slater => &["s", "w", "gamma"],
        Suite::MbKernel => &["a", "x", "gamma"],
        Suite::InDecay => &["a", "s", "w", "cuts"],
        Suite::QBounds => &["mu", "t_grid"],
        Suite::All => unreachable!("expanded before preparation"),
    };
    let present = [
        ("a", c.a.is_some()),
        ("x", c.x.is_some()),
        ("s", c.s.is_some()),
        ("w", c.w.is_some()),
        ("gamma", c.gamma.is_some()),
        ("cuts", c.cuts.is_some()),
        ("mu", c.mu.is_some()),
        ("t_grid", c.t_grid.is_some()),
    ];
    if let Some((name, _)) = present.iter().find(|(name, set)| *set && !allowed.contains(name)) {
        return Err(bad(&format!("field `{name}` is not used by this suite")));
    }
    let need = |v: Option<Complex>, name: &str| v.map(C64::from).ok_or_else(|| bad(&format!("missing `{name}`")));

    let nu = Order::new(c.nu).map_err(invalid(&ctx))?;
    let mut case = IdentityCase::with_order(nu);
    if let Some(a) = c.a {
        case.a = a;
    }
    if let Some(x) = c.x {
        case.x = x;
    }
    let prepared = match suite {
        Suite::Eq12 => {
            case.s = need(c.s, "s")?;
            check_eq12(&case).map(|_| Prepared::Identity(case))
        }
        Suite::Eq18 => {
            case.s = need(c.s, "s")?;
            case.w = need(c.w, "w")?;
            check_eq18(&case).map(|_| Prepared::Identity(case))
        }
        Suite::Slater => {
            case.s = need(c.s, "s")?;
            case.w = need(c.w, "w")?;
            let (lo, hi) = slater_strip(&case);
            case.gamma_abscissa = c.gamma.unwrap_or(0.5 * (lo + hi));
            check_slater(&case).map(|_| Prepared::Identity(case))
        }
        Suite::MbKernel => {
            let n = nu.value();
            case.gamma_abscissa = c.gamma.unwrap_or(n + 0.5);
            check_mb_kernel(&case).map(|_| Prepared::Identity(case))
        }
        Suite::InDecay => {
            case.s = need(c.s, "s")?;
            case.w = need(c.w, "w")?;
            let cuts = c.cuts.clone().unwrap_or_else(|| vec![10.0, 20.0, 40.0, 80.0]);
            if cuts.len() < 2 || cuts.iter().any(|&n| !(n > case.a && n.is_finite())) {
                return Err(bad("need at least two cuts N > a"));
            }
            check_in(&case).map(|_| Prepared::Decay(case, cuts))
        }
        Suite::QBounds => {
            let mu = c.mu.unwrap_or(2.0 * nu.value() - 0.5);
            let t_grid = c.t_grid.clone().unwrap_or_else(|| vec![1.01, 1.5, 3.0, 10.0]);
            let line = VerticalLine::new(mu, 8.0).map_err(invalid(&ctx))?;
            check_q_bounds(nu, &line, &t_grid).map(|_| Prepared::Bounds(nu, line, t_grid))
        }
        Suite::All => unreachable!(),
    };
    prepared.map_err(invalid(&ctx))
}

/// Identity sides as `[re, im]` pairs.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityJson {
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub lhs_error_estimate: f64,
    pub imaginary_residue: f64,
}

impl From<IdentityReport> for IdentityJson {
    fn from(r: IdentityReport) -> Self {
        IdentityJson {
            lhs: [r.lhs.re, r.lhs.im],
            rhs: [r.rhs.re, r.rhs.im],
            abs_diff: r.abs_diff,
            rel_diff: r.rel_diff,
            lhs_error_estimate: r.lhs_error_estimate,
            imaginary_residue: r.imaginary_residue,
        }
    }
}

/// Residue-sum evaluation of the Barnes integral.
#[derive(Debug, Clone, Serialize)]
pub struct OracleJson {
    pub value: [f64; 2],
    pub rel_diff_to_lhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayJson {
    pub cuts: Vec<f64>,
    pub magnitudes: Vec<f64>,
    pub slope: f64,
    pub predicted: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsJson {
    pub sup_ratio: f64,
    pub sup_ratio_refined: f64,
    pub stirling_slope: f64,
    pub stirling_predicted: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub suite: Suite,
    pub index: usize,
    pub case: CaseSpec,
    pub pass: bool,
    /// The number compared against `threshold` to decide `pass`.
    pub metric: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentityJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay: Option<DecayJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Residue sum and contour must agree to this, independent of `tol`.
const ORACLE_TOL: f64 = 1e-8;
/// Relative change of the Legendre supremum under grid doubling.
const REFINE_TOL: f64 = 0.1;
/// Deviation of the fitted Stirling exponent.
const STIRLING_TOL: f64 = 0.01;

fn run_case(run: &VerifyRun, suite: Suite, index: usize, spec: &CaseSpec, p: &Prepared) -> CaseReport {
    let mut r = CaseReport {
        suite,
        index,
        case: spec.clone(),
        pass: false,
        metric: f64::NAN,
        threshold: run.tol,
        identity: None,
        oracle: None,
        decay: None,
        bounds: None,
        error: None,
    };
    let outcome = (|| -> weber_orr_core::Result<()> {
        match p {
            Prepared::Identity(case) => {
                let rep = match suite {
                    Suite::Eq12 => verify_eq12(case, run.quad_tol)?,
                    Suite::Eq18 => verify_eq18(case, run.quad_tol)?,
                    Suite::Slater => verify_slater(case, run.quad_tol)?,
                    Suite::MbKernel => verify_mb_kernel(case, run.quad_tol)?,
                    _ => unreachable!(),
                };
                r.metric = rep.rel_diff;
                r.threshold = run.tol.max(10.0 * rep.lhs_error_estimate);
                r.pass = rep.passes(run.tol);
                if suite == Suite::Slater {
                    let sum = slater_residue_sum(case, run.quad_tol)?.value;
                    let d = (sum - rep.lhs).norm() / rep.lhs.norm();
                    r.pass &= d <= ORACLE_TOL;
                    r.oracle = Some(OracleJson { value: [sum.re, sum.im], rel_diff_to_lhs: d });
                }
                r.identity = Some(rep.into());
            }
            Prepared::Decay(case, cuts) => {
                let fit = in_decay(case, cuts, run.quad_tol)?;
                r.metric = (fit.slope - fit.predicted).abs();
                r.threshold = run.slope_tol;
                r.pass = r.metric <= run.slope_tol;
                r.decay =
                    Some(DecayJson { cuts: fit.cuts, magnitudes: fit.magnitudes, slope: fit.slope, predicted: fit.predicted });
            }
            Prepared::Bounds(nu, line, t_grid) => {
                let b = verify_q_bounds(*nu, line, t_grid)?;
                let refine = (b.sup_ratio_refined - b.sup_ratio).abs() / b.sup_ratio;
                r.metric = (b.stirling_slope - b.stirling_predicted).abs();
                r.threshold = STIRLING_TOL;
                r.pass = b.sup_ratio.is_finite() && refine <= REFINE_TOL && r.metric <= STIRLING_TOL;
                r.bounds = Some(BoundsJson {
                    sup_ratio: b.sup_ratio,
                    sup_ratio_refined: b.sup_ratio_refined,
                    stirling_slope: b.stirling_slope,
                    stirling_predicted: b.stirling_predicted,
                });
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        r.pass = false;
        r.error = Some(e.to_string());
    }
    r
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub suite: Suite,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

/// Validate every case, then evaluate. Returns the reports in input order.
pub fn evaluate(run: &VerifyRun) -> Result<Vec<CaseReport>, CliError> {
    let groups: Vec<(Suite, VerifyRun)> = match run.suite {
        Suite::All => {
            if run.cases.is_some() {
                return Err(CliError::Config("suite `all` runs the shipped grids; remove `cases`".into()));
            }
            Suite::EACH.iter().map(|&s| (s, VerifyRun { suite: s, cases: VerifyRun::shipped(s).cases, ..run.clone() })).collect()
        }
        s => {
            let cases = run.cases.clone().or_else(|| VerifyRun::shipped(s).cases);
            vec![(s, VerifyRun { cases, ..run.clone() })]
        }
    };
    let mut jobs = Vec::new();
    for (suite, sub) in &groups {
        for (i, spec) in sub.cases.iter().flatten().enumerate() {
            jobs.push((sub, *suite, i, spec, prepare(*suite, i, spec)?));
        }
    }
    Ok(jobs.par_iter().map(|(sub, suite, i, spec, p)| run_case(sub, *suite, *i, spec, p)).collect())
}

pub fn run_verify(run: &VerifyRun, out: &Path) -> Result<Outcome, CliError> {
    let reports = evaluate(run)?;
    let passed = reports.iter().filter(|r| r.pass).count();
    let summary = VerifySummary {
        suite: run.suite,
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
        pass: passed == reports.len(),
    };
    ensure_dir(out)?;
    write_json(&out.join("reports.json"), &reports)?;
    let rows = reports.iter().map(|r| {
        let err = r.identity.as_ref().map(|i| num(i.lhs_error_estimate)).unwrap_or_default();
        vec![r.suite.to_string(), r.index.to_string(), r.pass.to_string(), num(r.metric), num(r.threshold), err]
    });
    write_csv(&out.join("summary.csv"), &["suite", "index", "pass", "metric", "threshold", "error_estimate"], rows)?;
    write_manifest(out, "verify", run, &summary)?;
    let failures: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| format!("{} #{}", r.suite, r.index)).collect();
    let mut text = format!("{}: {passed}/{} cases pass", run.suite, reports.len());
    if !failures.is_empty() {
        text.push_str(&format!(" (failing: {})", failures.join(", ")));
    }
    Ok(Outcome { pass: summary.pass, summary: text })
}
