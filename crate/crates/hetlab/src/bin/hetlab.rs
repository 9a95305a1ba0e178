use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use hetlab::classical::OmegaProfile;
use hetlab::report::{run, write_report, Format, Mode, RunConfig, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "hetlab", version, about = "Heterodyne operator-algebra workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity catalog.
    Verify(Flags),
    /// Unitarity deficits over a grid of frequency ratios.
    Sweep(Flags),
    /// Residuals of catalog cases across truncation sizes.
    Converge(Flags),
    /// Classical oscillator, amplitude and phase checks.
    Classical(Flags),
}

/// Every flag overrides the field of the same name in `--config`.
#[derive(Args, Debug)]
struct Flags {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    da: Option<usize>,
    #[arg(long)]
    db: Option<usize>,
    #[arg(long = "A")]
    a: Option<f64>,
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    margin: Option<usize>,
    #[arg(long)]
    poly_tol: Option<f64>,
    #[arg(long)]
    fn_tol: Option<f64>,
    #[arg(long)]
    pinv_rel_tol: Option<f64>,
    #[arg(long)]
    branch_eps: Option<f64>,
    /// Comma-separated case ids.
    #[arg(long, value_delimiter = ',')]
    cases: Option<Vec<String>>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated frequency ratios.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k_grid: Option<Vec<f64>>,
    /// Comma-separated cutoffs.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// Two-column CSV with header `t,omega_squared`.
    #[arg(long)]
    profile_csv: Option<PathBuf>,
    /// `Ω²(t) = intercept + slope·t`, given as `intercept,slope`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    linear: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t1: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["json", "csv", "markdown"])]
    format: Option<String>,
    /// Record wall time in the summary.
    #[arg(long)]
    timing: bool,
}

macro_rules! apply {
    ($cfg:ident, $flags:ident, $($field:ident),*) => {
        $(if let Some(v) = $flags.$field { $cfg.$field = v; })*
    };
}

fn build_config(flags: Flags) -> hetlab::Result<RunConfig> {
    let mut cfg = match &flags.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    apply!(cfg, flags, da, db, a, b, alpha, beta, margin, poly_tol, fn_tol, pinv_rel_tol, branch_eps);
    apply!(cfg, flags, cases, points, seed, k_grid, dims, omega, t0, t1, step);
    if let Some(path) = flags.profile_csv {
        cfg.profile = None;
        cfg.profile_csv = Some(path);
    }
    if let Some(coef) = flags.linear {
        if coef.len() != 2 {
            return Err(hetlab::Error::Config(format!(
                "--linear takes `intercept,slope`, got {} values",
                coef.len()
            )));
        }
        cfg.profile_csv = None;
        cfg.profile = Some(OmegaProfile::Linear {
            intercept: coef[0],
            slope: coef[1],
        });
    }
    if flags.out.is_some() {
        cfg.out = flags.out;
    }
    if let Some(f) = flags.format.as_deref() {
        cfg.format = match f {
            "csv" => Format::Csv,
            "markdown" => Format::Markdown,
            _ => Format::Json,
        };
    }
    cfg.timing |= flags.timing;
    Ok(cfg)
}

fn execute(mode: Mode, flags: Flags) -> hetlab::Result<i32> {
    let cfg = build_config(flags)?;
    let (format, out) = (cfg.format, cfg.out.clone());
    let report = run(mode, cfg)?;
    if let Some(text) = write_report(&report, format, out.as_deref())? {
        std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| hetlab::Error::Io(format!("stdout: {e}")))?;
    }
    let c = report.summary.counts;
    eprintln!(
        "{}: pass {}, fail {}, skip {}, report-only {}",
        mode.name(),
        c.pass,
        c.fail,
        c.skip,
        c.report_only
    );
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_ERROR as u8),
            };
        }
    };
    let (mode, flags) = match cli.command {
        Command::Verify(f) => (Mode::Verify, f),
        Command::Sweep(f) => (Mode::Sweep, f),
        Command::Converge(f) => (Mode::Converge, f),
        Command::Classical(f) => (Mode::Classical, f),
    };
    match execute(mode, flags) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hetlab: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
