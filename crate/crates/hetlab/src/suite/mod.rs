//! Declarative catalog of operator identities, its runner, the coverage
//! registry and the truncation-convergence study.

mod catalog;
mod context;
mod convergence;
mod coverage;
mod sample;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{projected_residual, Interior, OperatorMatrix, Space, SubspaceProjector, ToleranceConfig, TwoModeBasis};
use crate::heterodyne::HeterodyneParams;

pub use catalog::{builtin_catalog, NOTE_AMPLITUDE_PHASE, NOTE_LADDER, NOTE_PRINTED_ORDERING, NOTE_TRIG_QUOTIENT};
pub use context::{SForm, SuiteContext};
pub use convergence::{convergence_study, CaseConvergence, ConvergenceRow, ConvergenceTable, Verdict, LAST_STEP_SLACK};
pub use coverage::{in_scope_labels, operation_refs, referenced_labels, ALL_LABELS, OUT_OF_SCOPE};
pub use sample::sweep_points;

/// Tolerance for cases that must hold on the whole truncated space.
pub const EXACT_TOL: f64 = 1e-12;

/// Matrix-function residuals are measured on states with `p + q` at most this.
pub const FIXED_INTERIOR_PHOTONS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    Polynomial,
    MatrixFunction,
    ExactFullSpace,
    ReportOnly,
}

impl CaseKind {
    pub fn tolerance(self, tol: &ToleranceConfig) -> Option<f64> {
        match self {
            CaseKind::Polynomial => Some(tol.poly_tol),
            CaseKind::MatrixFunction => Some(tol.fn_tol),
            CaseKind::ExactFullSpace => Some(EXACT_TOL),
            CaseKind::ReportOnly => None,
        }
    }
}

/// Parameter regime a case is meaningful in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Any,
    /// `A = B`.
    ShapiroWagner,
    /// `A ≠ B`.
    Caves,
}

impl Regime {
    /// Machine-readable skip reason, if the parameters fall outside the regime.
    pub fn skip_reason(self, params: &HeterodyneParams) -> Option<&'static str> {
        match (self, params.is_shapiro_wagner()) {
            (Regime::ShapiroWagner, false) => Some("requires A=B"),
            (Regime::Caves, true) => Some("requires A≠B"),
            _ => None,
        }
    }
}

/// What a case evaluates to before the interior projection is applied.
#[derive(Debug, Clone)]
pub enum Outcome {
    /// Left/right pairs; the residual is the largest projected residual.
    Pairs(Vec<(OperatorMatrix, OperatorMatrix)>),
    /// A residual computed by the case itself.
    Residual(f64),
}

impl Outcome {
    pub fn pair(lhs: OperatorMatrix, rhs: OperatorMatrix) -> Self {
        Outcome::Pairs(vec![(lhs, rhs)])
    }
}

pub type Evaluator = fn(&SuiteContext) -> Result<Outcome>;

/// One identity as an executable check.
#[derive(Clone)]
pub struct IdentityCase {
    pub id: &'static str,
    pub kind: CaseKind,
    pub regime: Regime,
    /// Smallest margin at which a polynomial case can hold.
    pub required_margin: usize,
    /// Equation labels this case verifies.
    pub covers: &'static [&'static str],
    pub description: &'static str,
    /// Reading adopted where the printed form is ambiguous or inconsistent.
    pub deviation: Option<&'static str>,
    pub evaluate: Evaluator,
}

impl std::fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("regime", &self.regime)
            .finish_non_exhaustive()
    }
}

impl IdentityCase {
    pub fn paper_ref(&self) -> String {
        format!("{}: {}", self.covers.join(", "), self.description)
    }

    /// Interior on which the residual is measured for a run margin.
    pub fn interior(&self, run_margin: usize) -> Interior {
        match self.kind {
            CaseKind::ExactFullSpace => Interior::Full,
            CaseKind::Polynomial => match run_margin.max(self.required_margin) {
                0 => Interior::Full,
                m => Interior::Margin(m),
            },
            CaseKind::MatrixFunction | CaseKind::ReportOnly => {
                Interior::TotalPhotons(FIXED_INTERIOR_PHOTONS)
            }
        }
    }

    fn residual(&self, ctx: &SuiteContext, interior: Interior) -> Result<f64> {
        match (self.evaluate)(ctx)? {
            Outcome::Residual(r) => Ok(r),
            Outcome::Pairs(pairs) => {
                let projector = SubspaceProjector::new(Space::TwoMode(ctx.basis), interior)?;
                let mut worst: f64 = 0.0;
                for (lhs, rhs) in &pairs {
                    let r = projected_residual(lhs, rhs, &projector)?;
                    worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
                }
                Ok(worst)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    ReportOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub d_a: usize,
    pub d_b: usize,
    pub margin: usize,
    pub interior: Interior,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub kind: CaseKind,
    pub paper_ref: String,
    pub params: ReportParams,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
    pub note: Option<String>,
}

fn join_notes(parts: &[Option<String>]) -> Option<String> {
    let kept: Vec<&str> = parts.iter().flatten().map(String::as_str).collect();
    (!kept.is_empty()).then(|| kept.join("; "))
}

/// Runs one case against a prepared context. Errors become failed reports.
pub fn run_case(case: &IdentityCase, ctx: &SuiteContext, run_margin: usize) -> IdentityReport {
    run_case_detailed(case, ctx, run_margin).0
}

/// Like [`run_case`], also returning the error message when evaluation failed.
pub(crate) fn run_case_detailed(
    case: &IdentityCase,
    ctx: &SuiteContext,
    run_margin: usize,
) -> (IdentityReport, Option<String>) {
    let interior = case.interior(run_margin);
    let margin = match interior {
        Interior::Margin(m) => m,
        _ => 0,
    };
    let params = ReportParams {
        a: ctx.params.a(),
        b: ctx.params.b(),
        alpha: ctx.params.alpha(),
        beta: ctx.params.beta(),
        d_a: ctx.basis.d_a(),
        d_b: ctx.basis.d_b(),
        margin,
        interior,
    };
    let tolerance = case.kind.tolerance(&ctx.tol);
    let deviation = case.deviation.map(str::to_owned);
    let mut report = IdentityReport {
        id: case.id.to_owned(),
        kind: case.kind,
        paper_ref: case.paper_ref(),
        params,
        residual: None,
        tolerance,
        status: Status::Skip,
        note: None,
    };
    if let Some(reason) = case.regime.skip_reason(&ctx.params) {
        report.note = join_notes(&[Some(reason.to_owned()), deviation]);
        return (report, None);
    }
    match case.residual(ctx, interior) {
        Ok(r) => {
            report.residual = Some(r);
            report.status = match tolerance {
                None => Status::ReportOnly,
                Some(t) if r <= t => Status::Pass,
                Some(_) => Status::Fail,
            };
            report.note = deviation;
        }
        Err(e) => {
            report.status = if case.kind == CaseKind::ReportOnly {
                Status::ReportOnly
            } else {
                Status::Fail
            };
            report.note = join_notes(&[Some(format!("error: {e}")), deviation]);
            return (report, Some(e.to_string()));
        }
    }
    (report, None)
}

/// Runs `cases` in id order on one shared context.
pub fn run_catalog(
    cases: &[IdentityCase],
    params: &HeterodyneParams,
    basis: TwoModeBasis,
    tol: &ToleranceConfig,
    margin: usize,
) -> Result<Vec<IdentityReport>> {
    let ctx = SuiteContext::new(*params, basis, *tol)?;
    Ok(run_catalog_in(cases, &ctx, margin))
}

pub fn run_catalog_in(cases: &[IdentityCase], ctx: &SuiteContext, margin: usize) -> Vec<IdentityReport> {
    let mut ordered: Vec<&IdentityCase> = cases.iter().collect();
    ordered.sort_by(|x, y| x.id.cmp(y.id));
    ordered.into_iter().map(|c| run_case(c, ctx, margin)).collect()
}

/// Looks a case up by id.
pub fn find_case(id: &str) -> Result<IdentityCase> {
    builtin_catalog()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Config(format!("unknown identity case `{id}`")))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub report_only: usize,
}

impl StatusCounts {
    pub fn tally(reports: &[IdentityReport]) -> Self {
        let mut c = Self::default();
        for r in reports {
            match r.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Skip => c.skip += 1,
                Status::ReportOnly => c.report_only += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skip + self.report_only
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn polynomial_or_exact(c: &IdentityCase) -> bool {
        matches!(c.kind, CaseKind::Polynomial | CaseKind::ExactFullSpace)
    }

    #[test]
    fn catalog_shape() {
        let cat = builtin_catalog();
        assert!(cat.len() >= 24);
        let ids: HashSet<_> = cat.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), cat.len());
        assert_eq!(find_case("GG7").unwrap().kind, CaseKind::ExactFullSpace);
        assert_eq!(find_case("C25").unwrap().kind, CaseKind::ReportOnly);
        assert_eq!(find_case("HH8").unwrap().kind, CaseKind::ReportOnly);
    }

    #[test]
    fn balanced_weights_pass_every_polynomial_and_exact_case() {
        let params = HeterodyneParams::shapiro_wagner(1.0).unwrap();
        let cases: Vec<_> = builtin_catalog().into_iter().filter(polynomial_or_exact).collect();
        let basis = TwoModeBasis::square(12).unwrap();
        let reports = run_catalog(&cases, &params, basis, &ToleranceConfig::default(), 2).unwrap();
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }

    #[test]
    fn unbalanced_weights_skip_balanced_only_cases() {
        let params = HeterodyneParams::new(1.0, 0.9, 0.0, 0.0).unwrap();
        assert!((params.k() - 0.1).abs() < 1e-12);
        let cases: Vec<_> = builtin_catalog()
            .into_iter()
            .filter(|c| c.regime == Regime::ShapiroWagner && c.kind == CaseKind::Polynomial)
            .collect();
        assert!(!cases.is_empty());
        let basis = TwoModeBasis::square(12).unwrap();
        for r in run_catalog(&cases, &params, basis, &ToleranceConfig::default(), 2).unwrap() {
            assert_eq!(r.status, Status::Skip);
            assert!(r.note.as_deref().unwrap().starts_with("requires A=B"));
            assert!(r.residual.is_none());
        }
    }

    #[test]
    fn reports_are_ordered_and_repeatable() {
        let params = HeterodyneParams::new(1.3, 0.7, 0.4, -1.1).unwrap();
        let mut cases: Vec<_> = builtin_catalog().into_iter().filter(polynomial_or_exact).collect();
        cases.reverse();
        let basis = TwoModeBasis::square(6).unwrap();
        let tol = ToleranceConfig::default();
        let first = run_catalog(&cases, &params, basis, &tol, 1).unwrap();
        let ids: Vec<_> = first.iter().map(|r| r.id.clone()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        let second = run_catalog(&cases, &params, basis, &tol, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&second).unwrap()
        );
    }

    #[test]
    fn errors_become_failed_reports() {
        let params = HeterodyneParams::shapiro_wagner(1.0).unwrap();
        let ctx = SuiteContext::new(params, TwoModeBasis::square(6).unwrap(), ToleranceConfig::default()).unwrap();
        let report = run_case(&find_case("M9").unwrap(), &ctx, 2);
        assert_eq!(report.status, Status::Fail);
        assert!(report.note.unwrap().starts_with("error: "));
    }

    #[test]
    fn exact_case_converges_as_exact() {
        let params = HeterodyneParams::shapiro_wagner(1.0).unwrap();
        let cases = vec![find_case("GG7").unwrap(), find_case("M15").unwrap()];
        let table = convergence_study(&cases, &params, &[4, 6, 8], &ToleranceConfig::default(), 2).unwrap();
        assert_eq!(table.rows.len(), 6);
        assert_eq!(table.case("GG7").unwrap().verdict, Verdict::Exact);
        assert_eq!(table.case("M15").unwrap().verdict, Verdict::Decreasing);
        assert!(convergence_study(&cases, &params, &[4, 6], &ToleranceConfig::default(), 2).is_err());
        assert!(convergence_study(&cases, &params, &[4, 8, 6], &ToleranceConfig::default(), 2).is_err());
    }
}
