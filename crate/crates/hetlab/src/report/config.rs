use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::caves::DEFAULT_K_GRID;
use crate::classical::OmegaProfile;
use crate::error::{Error, Result};
use crate::fock::{ToleranceConfig, TwoModeBasis};
use crate::heterodyne::HeterodyneParams;

/// Smallest and largest cutoff accepted per mode.
pub const MIN_CUTOFF: usize = 2;
pub const MAX_CUTOFF: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Verify,
    Sweep,
    Converge,
    Classical,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Verify => "verify",
            Mode::Sweep => "sweep",
            Mode::Converge => "converge",
            Mode::Classical => "classical",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

/// Everything a run needs. Field names double as CLI flag names.
///
/// `out` and `timing` shape where and how a report is written and are left
/// out of the echoed configuration so identical runs produce identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub da: usize,
    pub db: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub margin: usize,
    pub poly_tol: f64,
    pub fn_tol: f64,
    pub pinv_rel_tol: f64,
    pub branch_eps: f64,
    /// Case ids to run; empty means the whole catalog.
    pub cases: Vec<String>,
    /// Randomized parameter points for `verify`; 0 runs the single point above.
    pub points: usize,
    pub seed: u64,
    pub k_grid: Vec<f64>,
    pub dims: Vec<usize>,
    pub omega: f64,
    pub profile: Option<OmegaProfile>,
    pub profile_csv: Option<PathBuf>,
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    pub format: Format,
    #[serde(skip_serializing)]
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let tol = ToleranceConfig::default();
        Self {
            mode: None,
            da: 12,
            db: 12,
            a: 1.0,
            b: 1.0,
            alpha: 0.0,
            beta: 0.0,
            margin: 2,
            poly_tol: tol.poly_tol,
            fn_tol: tol.fn_tol,
            pinv_rel_tol: tol.pinv_rel_tol,
            branch_eps: tol.branch_eps,
            cases: Vec::new(),
            points: 0,
            seed: 0,
            k_grid: DEFAULT_K_GRID.to_vec(),
            dims: vec![8, 12, 16, 20],
            omega: 2.0,
            profile: None,
            profile_csv: None,
            t0: 0.0,
            t1: 1.0,
            step: 1e-3,
            out: None,
            format: Format::Json,
            timing: false,
        }
    }
}

fn check_cutoff(name: &str, d: usize) -> Result<()> {
    if !(MIN_CUTOFF..=MAX_CUTOFF).contains(&d) {
        return Err(Error::Config(format!(
            "{name} must lie in {MIN_CUTOFF}..={MAX_CUTOFF}, got {d}"
        )));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn tolerances(&self) -> ToleranceConfig {
        ToleranceConfig {
            poly_tol: self.poly_tol,
            fn_tol: self.fn_tol,
            pinv_rel_tol: self.pinv_rel_tol,
            branch_eps: self.branch_eps,
        }
    }

    pub fn params(&self) -> Result<HeterodyneParams> {
        HeterodyneParams::new(self.a, self.b, self.alpha, self.beta)
    }

    pub fn basis(&self) -> Result<TwoModeBasis> {
        TwoModeBasis::new(self.da, self.db)
    }

    /// Fixes the mode and checks the fields that mode reads.
    pub fn resolve(mut self, mode: Mode) -> Result<Self> {
        if let Some(stated) = self.mode {
            if stated != mode {
                return Err(Error::Config(format!(
                    "config is for `{}` but `{}` was requested",
                    stated.name(),
                    mode.name()
                )));
            }
        }
        self.mode = Some(mode);
        self.tolerances().validate()?;
        match mode {
            Mode::Verify | Mode::Sweep => {
                check_cutoff("da", self.da)?;
                check_cutoff("db", self.db)?;
                self.params()?;
            }
            Mode::Converge => {
                self.params()?;
                if self.dims.len() < 3 {
                    return Err(Error::Config(format!(
                        "converge needs at least three dims, got {}",
                        self.dims.len()
                    )));
                }
                for &d in &self.dims {
                    check_cutoff("dims entry", d)?;
                }
            }
            Mode::Classical => {}
        }
        if mode == Mode::Sweep {
            if self.k_grid.is_empty() {
                return Err(Error::Config("k_grid is empty".into()));
            }
            if let Some(r) = self.k_grid.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
                return Err(Error::Config(format!("k_grid entries must lie in (0, 1), got {r}")));
            }
        }
        if self.profile.is_some() && self.profile_csv.is_some() {
            return Err(Error::Config("give either profile or profile_csv, not both".into()));
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(RunConfig::from_json_str(r#"{"da": 8, "colour": 1}"#).is_err());
        let cfg = RunConfig::from_json_str(r#"{"da": 8, "A": 2.0, "k_grid": [0.1]}"#).unwrap();
        assert_eq!((cfg.da, cfg.db, cfg.a, cfg.k_grid.clone()), (8, 12, 2.0, vec![0.1]));
    }

    #[test]
    fn resolve_checks_mode_fields() {
        let base = RunConfig::default();
        assert!(base.clone().resolve(Mode::Verify).is_ok());
        let small = RunConfig {
            dims: vec![8],
            ..base.clone()
        };
        assert!(small.resolve(Mode::Converge).is_err());
        let empty = RunConfig {
            k_grid: vec![],
            ..base.clone()
        };
        assert!(empty.resolve(Mode::Sweep).is_err());
        let huge = RunConfig { da: 65, ..base.clone() };
        assert!(huge.resolve(Mode::Verify).is_err());
        let clash = RunConfig {
            mode: Some(Mode::Sweep),
            ..base
        };
        assert!(clash.resolve(Mode::Verify).is_err());
    }
}
