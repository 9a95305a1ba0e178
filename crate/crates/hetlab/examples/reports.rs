//! Builds reports in each format without going through the binary.

use hetlab::report::{render, run, Format, Mode, RunConfig};

fn main() -> hetlab::Result<()> {
    let verify = RunConfig {
        da: 6,
        db: 6,
        cases: vec!["GG7".into(), "L4".into(), "C25".into()],
        ..Default::default()
    };
    let report = run(Mode::Verify, verify)?;
    print!("{}", render(&report, Format::Markdown)?);
    println!("exit code would be {}", report.exit_code());

    let sweep = RunConfig {
        da: 5,
        db: 5,
        k_grid: vec![0.1, 0.05],
        ..Default::default()
    };
    print!("{}", render(&run(Mode::Sweep, sweep)?, Format::Csv)?);
    Ok(())
}
