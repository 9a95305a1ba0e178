//! Runs the identity catalog at one parameter point and tallies statuses.

use hetlab::fock::{ToleranceConfig, TwoModeBasis};
use hetlab::heterodyne::HeterodyneParams;
use hetlab::suite::{builtin_catalog, run_catalog, StatusCounts};

fn main() -> hetlab::Result<()> {
    let params = HeterodyneParams::new(1.2, 0.8, 0.5, -0.4)?;
    let reports = run_catalog(&builtin_catalog(), &params, TwoModeBasis::square(10)?, &ToleranceConfig::default(), 2)?;
    for r in &reports {
        let residual = r.residual.map(|v| format!("{v:.2e}")).unwrap_or_else(|| "-".into());
        println!("{:<12} {:<18} {:>10}  {}", r.id, format!("{:?}", r.status), residual, r.note.as_deref().unwrap_or(""));
    }
    let c = StatusCounts::tally(&reports);
    println!("pass {}, fail {}, skip {}, report-only {}", c.pass, c.fail, c.skip, c.report_only);
    Ok(())
}
