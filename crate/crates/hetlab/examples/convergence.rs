//! Residuals of a few matrix-function cases as the cutoff grows.

use hetlab::fock::ToleranceConfig;
use hetlab::heterodyne::HeterodyneParams;
use hetlab::suite::{convergence_study, find_case};

fn main() -> hetlab::Result<()> {
    let cases = ["GG7", "N4", "M14", "M15", "Z14", "M9"]
        .iter()
        .map(|id| find_case(id))
        .collect::<hetlab::Result<Vec<_>>>()?;
    let params = HeterodyneParams::shapiro_wagner(1.0)?;
    let table = convergence_study(&cases, &params, &[6, 8, 10, 12], &ToleranceConfig::default(), 2)?;
    for c in &table.cases {
        let cells: Vec<String> = c
            .residuals
            .iter()
            .map(|r| r.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "error".into()))
            .collect();
        println!("{:<5} {:?} {}", c.case, c.verdict, cells.join("  "));
    }
    Ok(())
}
