//! Run configuration, the four run modes and their JSON, CSV and Markdown reports.

mod classical_run;
mod config;
mod emit;
mod sweep;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classical::OmegaProfile;
use crate::error::{Error, Result};
use crate::fock::Interior;
use crate::suite::{
    builtin_catalog, convergence_study, find_case, run_catalog, sweep_points, ConvergenceTable, IdentityCase,
    IdentityReport, StatusCounts, Verdict,
};

pub use classical_run::{
    default_spec, run_classical, ClassicalCheck, ClassicalReport, CONSTANT_PHASE_TOL, EMP_RESIDUAL_TOL,
    ROUTE_DISCREPANCY_TOL, WRONSKIAN_DRIFT_TOL,
};
pub use config::{Format, Mode, RunConfig, MAX_CUTOFF, MIN_CUTOFF};
pub use emit::render;
pub use sweep::{k_sweep, unitarity_deficits, SweepRow};

/// Exit status for a completed run with no failures.
pub const EXIT_PASS: i32 = 0;
/// Usage, configuration or IO problem.
pub const EXIT_ERROR: i32 = 1;
/// At least one check failed.
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KindMaximum {
    pub kind: String,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub tool: String,
    pub version: String,
    pub mode: Mode,
    pub counts: StatusCounts,
    pub max_residual: Vec<KindMaximum>,
    /// Present only when timing was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportBody {
    Verify { cases: Vec<IdentityReport> },
    Sweep { rows: Vec<SweepRow> },
    Converge { table: ConvergenceTable },
    Classical { classical: Box<ClassicalReport> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub summary: RunSummary,
    #[serde(flatten)]
    pub body: ReportBody,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.counts.fail > 0 {
            EXIT_FAILURE
        } else {
            EXIT_PASS
        }
    }
}

fn kind_maxima<'a>(items: impl Iterator<Item = (String, Option<f64>)> + 'a) -> Vec<KindMaximum> {
    let mut out: Vec<KindMaximum> = Vec::new();
    for (kind, value) in items {
        let Some(v) = value.filter(|v| v.is_finite()) else { continue };
        match out.iter_mut().find(|k| k.kind == kind) {
            Some(k) => k.max_residual = k.max_residual.max(v),
            None => out.push(KindMaximum {
                kind,
                max_residual: v,
            }),
        }
    }
    out.sort_by(|x, y| x.kind.cmp(&y.kind));
    out
}

fn kind_name<T: Serialize>(kind: &T) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn selected_cases(ids: &[String]) -> Result<Vec<IdentityCase>> {
    if ids.is_empty() {
        return Ok(builtin_catalog());
    }
    ids.iter().map(|id| find_case(id)).collect()
}

fn verify(cfg: &RunConfig) -> Result<(ReportBody, StatusCounts, Vec<KindMaximum>)> {
    let cases = selected_cases(&cfg.cases)?;
    let basis = cfg.basis()?;
    let tol = cfg.tolerances();
    let points = if cfg.points == 0 {
        vec![cfg.params()?]
    } else {
        sweep_points(cfg.seed, cfg.points)
    };
    let mut reports = Vec::new();
    for p in &points {
        reports.extend(run_catalog(&cases, p, basis, &tol, cfg.margin)?);
    }
    let counts = StatusCounts::tally(&reports);
    let maxima = kind_maxima(reports.iter().map(|r| (kind_name(&r.kind), r.residual)));
    Ok((ReportBody::Verify { cases: reports }, counts, maxima))
}

fn sweep(cfg: &RunConfig) -> Result<(ReportBody, StatusCounts, Vec<KindMaximum>)> {
    let rows = k_sweep(&cfg.k_grid, cfg.alpha, cfg.beta, cfg.basis()?, &cfg.tolerances())?;
    let mut counts = StatusCounts::default();
    for row in &rows {
        if row.failed() {
            counts.fail += 1;
        } else {
            counts.report_only += 1;
        }
    }
    let maxima = kind_maxima(rows.iter().flat_map(|r| {
        [
            ("deficit_SSdag".to_owned(), r.deficit_ss_dag),
            ("deficit_SdagS".to_owned(), r.deficit_s_dag_s),
            ("sn_residual".to_owned(), r.sn_residual),
        ]
    }));
    Ok((ReportBody::Sweep { rows }, counts, maxima))
}

fn converge(cfg: &RunConfig) -> Result<(ReportBody, StatusCounts, Vec<KindMaximum>)> {
    let cases = selected_cases(&cfg.cases)?;
    let table = convergence_study(&cases, &cfg.params()?, &cfg.dims, &cfg.tolerances(), cfg.margin)?;
    let mut counts = StatusCounts::default();
    for c in &table.cases {
        match c.verdict {
            Verdict::Exact | Verdict::Decreasing => counts.pass += 1,
            Verdict::NonMonotone | Verdict::Failed => counts.fail += 1,
            Verdict::Skipped => counts.skip += 1,
        }
    }
    let kinds: Vec<String> = table
        .cases
        .iter()
        .map(|c| {
            cases
                .iter()
                .find(|k| k.id == c.case)
                .map(|k| kind_name(&k.kind))
                .unwrap_or_default()
        })
        .collect();
    let maxima = kind_maxima(
        table
            .cases
            .iter()
            .zip(kinds)
            .map(|(c, k)| (k, c.residuals.last().copied().flatten())),
    );
    Ok((ReportBody::Converge { table }, counts, maxima))
}

fn classical(cfg: &RunConfig) -> Result<(ReportBody, StatusCounts, Vec<KindMaximum>)> {
    let profile = match (&cfg.profile, &cfg.profile_csv) {
        (_, Some(path)) => OmegaProfile::from_csv_path(path)?,
        (Some(p), None) => p.clone(),
        (None, None) => OmegaProfile::constant_frequency(cfg.omega),
    };
    let report = run_classical(&default_spec(profile, cfg.t0, cfg.t1, cfg.step))?;
    let mut counts = StatusCounts::default();
    for c in &report.checks {
        match c.status {
            crate::suite::Status::Pass => counts.pass += 1,
            crate::suite::Status::Fail => counts.fail += 1,
            crate::suite::Status::Skip => counts.skip += 1,
            crate::suite::Status::ReportOnly => counts.report_only += 1,
        }
    }
    let maxima = kind_maxima(report.checks.iter().map(|c| (c.name.clone(), c.value)));
    Ok((
        ReportBody::Classical {
            classical: Box::new(report),
        },
        counts,
        maxima,
    ))
}

/// Runs `mode` with `config`. Errors are configuration, input or IO problems;
/// check failures are reported through the counts.
pub fn run(mode: Mode, config: RunConfig) -> Result<Report> {
    let cfg = config.resolve(mode)?;
    let start = Instant::now();
    let (body, counts, max_residual) = match mode {
        Mode::Verify => verify(&cfg)?,
        Mode::Sweep => sweep(&cfg)?,
        Mode::Converge => converge(&cfg)?,
        Mode::Classical => classical(&cfg)?,
    };
    let wall_time_seconds = cfg.timing.then(|| start.elapsed().as_secs_f64());
    Ok(Report {
        summary: RunSummary {
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            mode,
            counts,
            max_residual,
            wall_time_seconds,
            config: cfg,
        },
        body,
    })
}

/// Renders the report and writes it to `config.out`, or returns it for stdout.
pub fn write_report(report: &Report, format: Format, out: Option<&std::path::Path>) -> Result<Option<String>> {
    let text = render(report, format)?;
    match out {
        Some(path) => {
            std::fs::write(path, text.as_bytes()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn interior_label(interior: &Interior) -> String {
    match interior {
        Interior::Full => "full".to_owned(),
        Interior::Margin(m) => format!("margin {m}"),
        Interior::TotalPhotons(n) => format!("p+q<={n}"),
    }
}
