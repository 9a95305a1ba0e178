use serde::{Deserialize, Serialize};

use crate::classical::{
    amplitude_phase_fit, classical_phase, emp_amplitude, integrate_oscillator, Combination, InitialCondition,
    OmegaProfile, OscillatorSpec,
};
use crate::error::Result;
use crate::suite::Status;

pub const WRONSKIAN_DRIFT_TOL: f64 = 1e-8;
pub const EMP_RESIDUAL_TOL: f64 = 1e-6;
pub const ROUTE_DISCREPANCY_TOL: f64 = 1e-6;
pub const CONSTANT_PHASE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalCheck {
    pub name: String,
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    pub status: Status,
    pub note: Option<String>,
}

impl ClassicalCheck {
    fn measured(name: &str, value: f64, threshold: Option<f64>) -> Self {
        let status = match threshold {
            None => Status::ReportOnly,
            Some(t) if value <= t => Status::Pass,
            Some(_) => Status::Fail,
        };
        Self {
            name: name.to_owned(),
            value: Some(value),
            threshold,
            status,
            note: None,
        }
    }

    fn errored(name: &str, threshold: Option<f64>, message: String) -> Self {
        Self {
            name: name.to_owned(),
            value: None,
            threshold,
            status: if threshold.is_some() { Status::Fail } else { Status::ReportOnly },
            note: Some(format!("error: {message}")),
        }
    }

    fn skipped(name: &str, threshold: f64, reason: &str) -> Self {
        Self {
            name: name.to_owned(),
            value: None,
            threshold: Some(threshold),
            status: Status::Skip,
            note: Some(reason.to_owned()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalReport {
    pub spec: OscillatorSpec,
    pub combination: Combination,
    pub samples: usize,
    /// `θ` at the final time, quadrature route.
    pub theta_end: Option<f64>,
    pub checks: Vec<ClassicalCheck>,
}

/// `y₁ = (1, 0)`, `y₂ = (0, ω_ref)` with `ω_ref = √Ω²(t₀)`, or 1 when `Ω²(t₀) ≤ 0`.
pub fn default_spec(profile: OmegaProfile, t0: f64, t1: f64, step: f64) -> OscillatorSpec {
    let w2 = profile.eval(t0);
    let omega_ref = if w2 > 0.0 { w2.sqrt() } else { 1.0 };
    OscillatorSpec {
        profile,
        t0,
        t1,
        step,
        y1: InitialCondition {
            value: 1.0,
            derivative: 0.0,
        },
        y2: InitialCondition {
            value: 0.0,
            derivative: omega_ref,
        },
    }
}

/// Integrates, builds the amplitude and both phase routes, and checks them.
///
/// Invalid specifications and rejected steps are errors; later stages that
/// fail are recorded as failed checks.
pub fn run_classical(spec: &OscillatorSpec) -> Result<ClassicalReport> {
    let traj = integrate_oscillator(spec)?;
    let combination = Combination::canonical(traj.wronskian);
    let mut checks = vec![
        ClassicalCheck::measured("wronskian_drift", traj.wronskian_drift, Some(WRONSKIAN_DRIFT_TOL)),
        ClassicalCheck::measured("step_halving_change", traj.halving_change, None),
    ];
    let mut theta_end = None;

    let amplitude = combination
        .constants(traj.wronskian)
        .and_then(|c| emp_amplitude(&traj, &c));
    match amplitude {
        Err(e) => {
            for (name, t) in [
                ("emp_residual", Some(EMP_RESIDUAL_TOL)),
                ("route_discrepancy", Some(ROUTE_DISCREPANCY_TOL)),
                ("constant_omega_phase", Some(CONSTANT_PHASE_TOL)),
                ("amplitude_phase_fit", None),
            ] {
                checks.push(ClassicalCheck::errored(name, t, e.to_string()));
            }
        }
        Ok(amp) => {
            checks.push(ClassicalCheck::measured("emp_residual", amp.residual, Some(EMP_RESIDUAL_TOL)));
            match classical_phase(&traj, &amp, &combination) {
                Err(e) => {
                    checks.push(ClassicalCheck::errored(
                        "route_discrepancy",
                        Some(ROUTE_DISCREPANCY_TOL),
                        e.to_string(),
                    ));
                    checks.push(ClassicalCheck::errored(
                        "constant_omega_phase",
                        Some(CONSTANT_PHASE_TOL),
                        e.to_string(),
                    ));
                    checks.push(ClassicalCheck::errored("amplitude_phase_fit", None, e.to_string()));
                }
                Ok(phase) => {
                    theta_end = phase.quadrature.last().copied();
                    checks.push(ClassicalCheck::measured(
                        "route_discrepancy",
                        phase.discrepancy,
                        Some(ROUTE_DISCREPANCY_TOL),
                    ));
                    checks.push(match spec.profile {
                        OmegaProfile::Constant { omega_squared } if omega_squared > 0.0 => {
                            let omega = omega_squared.sqrt();
                            let worst = traj
                                .times
                                .iter()
                                .zip(&phase.quadrature)
                                .map(|(t, th)| (th - omega * (t - spec.t0)).abs())
                                .fold(0.0, f64::max);
                            ClassicalCheck::measured("constant_omega_phase", worst, Some(CONSTANT_PHASE_TOL))
                        }
                        _ => ClassicalCheck::skipped(
                            "constant_omega_phase",
                            CONSTANT_PHASE_TOL,
                            "requires a constant positive profile",
                        ),
                    });
                    let mut fit = ClassicalCheck::measured(
                        "amplitude_phase_fit",
                        amplitude_phase_fit(&traj, &amp, &phase.quadrature),
                        None,
                    );
                    fit.note = Some(crate::suite::NOTE_AMPLITUDE_PHASE.to_owned());
                    checks.push(fit);
                }
            }
        }
    }
    Ok(ClassicalReport {
        spec: spec.clone(),
        combination,
        samples: traj.times.len(),
        theta_end,
        checks,
    })
}
