use serde::{Deserialize, Serialize};

use crate::caves::{k_expansion, sn_commutator};
use crate::error::Result;
use crate::fock::{projected_residual, Interior, OperatorMatrix, Space, SubspaceProjector, ToleranceConfig, TwoModeBasis};
use crate::heterodyne::HeterodyneParams;
use crate::suite::{SForm, SuiteContext, FIXED_INTERIOR_PHOTONS};

/// One frequency-ratio point of the small-`k` sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: f64,
    pub k_exact: f64,
    pub k_first_order: f64,
    #[serde(rename = "deficit_SSdag")]
    pub deficit_ss_dag: Option<f64>,
    #[serde(rename = "deficit_SdagS")]
    pub deficit_s_dag_s: Option<f64>,
    pub sn_residual: Option<f64>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

/// `‖SS† − I‖`, `‖S†S − I‖` and `‖[S, N̂] − S‖` on the fixed low-photon interior.
pub fn unitarity_deficits(ctx: &SuiteContext, form: SForm) -> Result<(f64, f64, f64)> {
    let pair = ctx.s_pair(form)?;
    let projector = SubspaceProjector::new(
        Space::TwoMode(ctx.basis),
        Interior::TotalPhotons(FIXED_INTERIOR_PHOTONS),
    )?;
    let id = OperatorMatrix::identity(Space::TwoMode(ctx.basis));
    let (ss_dag, s_dag_s) = pair.products();
    let sn = sn_commutator(&pair.s, &ctx.n_hat)?;
    Ok((
        projected_residual(&ss_dag, &id, &projector)?,
        projected_residual(&s_dag_s, &id, &projector)?,
        projected_residual(&sn, &pair.s, &projector)?,
    ))
}

/// One row per ratio in `grid`, ordered by `r` descending.
///
/// Each point uses `A = 1 + r`, `B = 1 − r`. Failures at a point land in its
/// `error` column and the sweep continues.
pub fn k_sweep(
    grid: &[f64],
    alpha: f64,
    beta: f64,
    basis: TwoModeBasis,
    tol: &ToleranceConfig,
) -> Result<Vec<SweepRow>> {
    let mut ratios = grid.to_vec();
    ratios.sort_by(|x, y| y.total_cmp(x));
    ratios.dedup();
    let mut rows = Vec::with_capacity(ratios.len());
    for r in ratios {
        let k = k_expansion(r)?;
        let mut row = SweepRow {
            r,
            k_exact: k.k_exact,
            k_first_order: k.k_first_order,
            deficit_ss_dag: None,
            deficit_s_dag_s: None,
            sn_residual: None,
            error: None,
        };
        let measured = HeterodyneParams::caves_frequency(r, alpha, beta)
            .and_then(|p| SuiteContext::new(p, basis, *tol))
            .and_then(|ctx| unitarity_deficits(&ctx, SForm::Symmetrized));
        match measured {
            Ok((a, b, c)) => {
                row.deficit_ss_dag = Some(a);
                row.deficit_s_dag_s = Some(b);
                row.sn_residual = Some(c);
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_descend_and_carry_the_expansion() {
        let basis = TwoModeBasis::square(6).unwrap();
        let rows = k_sweep(&[0.01, 0.1, 0.05], 0.0, 0.0, basis, &ToleranceConfig::default()).unwrap();
        let rs: Vec<f64> = rows.iter().map(|r| r.r).collect();
        assert_eq!(rs, vec![0.1, 0.05, 0.01]);
        assert!((rows[2].k_exact - 0.02 / 1.01).abs() < 1e-15);
        assert!((rows[2].k_exact - 0.019802).abs() < 1e-6);
        for row in &rows {
            assert_eq!(row.failed(), row.deficit_ss_dag.is_none());
        }
    }

    #[test]
    fn out_of_range_ratio_is_an_error() {
        let basis = TwoModeBasis::square(4).unwrap();
        assert!(k_sweep(&[1.5], 0.0, 0.0, basis, &ToleranceConfig::default()).is_err());
    }
}
