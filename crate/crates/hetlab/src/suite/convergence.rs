use serde::{Deserialize, Serialize};

use super::{run_case_detailed, IdentityCase, Status, SuiteContext, EXACT_TOL};
use crate::error::{Error, Result};
use crate::fock::{ToleranceConfig, TwoModeBasis};
use crate::heterodyne::HeterodyneParams;

/// Allowed relative growth over the last dimension step.
pub const LAST_STEP_SLACK: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every residual at round-off level.
    Exact,
    /// Non-increasing, with the slack on the last step.
    Decreasing,
    NonMonotone,
    /// At least one dimension raised an error.
    Failed,
    /// The parameters fall outside the case's regime.
    Skipped,
}

impl Verdict {
    pub fn from_residuals(residuals: &[Option<f64>]) -> Self {
        let Some(values) = residuals.iter().copied().collect::<Option<Vec<f64>>>() else {
            return Verdict::Failed;
        };
        if values.iter().all(|&r| r <= EXACT_TOL) {
            return Verdict::Exact;
        }
        let n = values.len();
        let body_ok = values[..n - 1].windows(2).all(|w| w[1] <= w[0]);
        let last_ok = n < 2 || values[n - 1] <= values[n - 2] * (1.0 + LAST_STEP_SLACK);
        if body_ok && last_ok {
            Verdict::Decreasing
        } else {
            Verdict::NonMonotone
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub case: String,
    pub d: usize,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseConvergence {
    pub case: String,
    pub residuals: Vec<Option<f64>>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub dims: Vec<usize>,
    pub rows: Vec<ConvergenceRow>,
    pub cases: Vec<CaseConvergence>,
}

impl ConvergenceTable {
    pub fn case(&self, id: &str) -> Option<&CaseConvergence> {
        self.cases.iter().find(|c| c.case == id)
    }
}

/// Residual of each case on square bases `d × d`, one shared context per `d`.
pub fn convergence_study(
    cases: &[IdentityCase],
    params: &HeterodyneParams,
    dims: &[usize],
    tol: &ToleranceConfig,
    margin: usize,
) -> Result<ConvergenceTable> {
    if dims.len() < 3 {
        return Err(Error::Config(format!(
            "convergence needs at least three dimensions, got {}",
            dims.len()
        )));
    }
    if dims.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("dimensions must be strictly increasing".into()));
    }
    let mut ordered: Vec<&IdentityCase> = cases.iter().collect();
    ordered.sort_by(|x, y| x.id.cmp(y.id));

    let mut per_dim = Vec::with_capacity(dims.len());
    for &d in dims {
        let ctx = SuiteContext::new(*params, TwoModeBasis::square(d)?, *tol)?;
        per_dim.push(ordered.iter().map(|c| run_case_detailed(c, &ctx, margin)).collect::<Vec<_>>());
    }

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for (i, case) in ordered.iter().enumerate() {
        let reports: Vec<_> = per_dim.iter().map(|r| &r[i]).collect();
        let residuals: Vec<Option<f64>> = reports.iter().map(|(r, _)| r.residual).collect();
        for ((report, error), &d) in reports.iter().zip(dims) {
            rows.push(ConvergenceRow {
                case: case.id.to_owned(),
                d,
                residual: report.residual,
                error: error.clone(),
            });
        }
        let verdict = if reports.iter().all(|(r, _)| r.status == Status::Skip) {
            Verdict::Skipped
        } else {
            Verdict::from_residuals(&residuals)
        };
        summaries.push(CaseConvergence {
            case: case.id.to_owned(),
            residuals,
            verdict,
        });
    }
    Ok(ConvergenceTable {
        dims: dims.to_vec(),
        rows,
        cases: summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rules() {
        assert_eq!(Verdict::from_residuals(&[Some(1e-15), Some(2e-15), Some(0.0)]), Verdict::Exact);
        assert_eq!(Verdict::from_residuals(&[Some(0.3), Some(0.2), Some(0.1)]), Verdict::Decreasing);
        assert_eq!(Verdict::from_residuals(&[Some(0.3), Some(0.2), Some(0.21)]), Verdict::Decreasing);
        assert_eq!(Verdict::from_residuals(&[Some(0.3), Some(0.2), Some(0.25)]), Verdict::NonMonotone);
        assert_eq!(Verdict::from_residuals(&[Some(0.3), Some(0.4), Some(0.1)]), Verdict::NonMonotone);
        assert_eq!(Verdict::from_residuals(&[Some(0.3), None, Some(0.1)]), Verdict::Failed);
    }
}
