//! Classical generalized oscillator: two independent solutions, the
//! Ermakov–Milne–Pinney amplitude, the phase by quadrature and by the
//! logarithm of the complex combination, and the coherent-state dictionary
//! between the quantum modes and the classical solutions.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{annihilator, coherent_state, C64};

/// Endpoint change tolerated when the step is halved.
pub const STEP_HALVING_TOL: f64 = 1e-6;

/// Tolerance on `Ae·Be − Ce² = 1/W0²`.
pub const CONSTRAINT_TOL: f64 = 1e-10;

/// Largest per-sample phase jump accepted by the unwrapper.
pub const UNWRAP_LIMIT: f64 = std::f64::consts::FRAC_PI_2;

/// `Ω²(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OmegaProfile {
    Constant { omega_squared: f64 },
    /// `intercept + slope·t`.
    Linear { intercept: f64, slope: f64 },
    /// Piecewise-linear interpolation through strictly increasing times.
    Tabulated { times: Vec<f64>, values: Vec<f64> },
}

#[derive(Debug, Deserialize)]
struct ProfileRow {
    t: f64,
    omega_squared: f64,
}

impl OmegaProfile {
    pub fn constant_frequency(omega: f64) -> Self {
        OmegaProfile::Constant {
            omega_squared: omega * omega,
        }
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let profile = OmegaProfile::Tabulated { times, values };
        profile.validate()?;
        Ok(profile)
    }

    /// Two-column CSV with header `t,omega_squared`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Profile(e.to_string()))?
            .clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "omega_squared" {
            return Err(Error::Profile(format!(
                "expected header `t,omega_squared`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let (mut times, mut values) = (Vec::new(), Vec::new());
        for (line, row) in rdr.deserialize::<ProfileRow>().enumerate() {
            let row = row.map_err(|e| Error::Profile(format!("row {}: {e}", line + 1)))?;
            times.push(row.t);
            values.push(row.omega_squared);
        }
        Self::tabulated(times, values)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Profile(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            OmegaProfile::Constant { omega_squared } if !omega_squared.is_finite() => {
                Err(Error::Profile("Ω² must be finite".into()))
            }
            OmegaProfile::Linear { intercept, slope }
                if !intercept.is_finite() || !slope.is_finite() =>
            {
                Err(Error::Profile("linear Ω² coefficients must be finite".into()))
            }
            OmegaProfile::Tabulated { times, values } => {
                if times.len() != values.len() {
                    return Err(Error::Profile("times and values differ in length".into()));
                }
                if times.len() < 2 {
                    return Err(Error::Profile("a tabulated profile needs at least two rows".into()));
                }
                if times.iter().chain(values).any(|x| !x.is_finite()) {
                    return Err(Error::Profile("non-finite entry in profile".into()));
                }
                if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
                    return Err(Error::Profile(format!(
                        "times must be strictly increasing ({} then {})",
                        w[0], w[1]
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Closed interval on which the profile is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            OmegaProfile::Tabulated { times, .. } => (times[0], times[times.len() - 1]),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            OmegaProfile::Constant { omega_squared } => *omega_squared,
            OmegaProfile::Linear { intercept, slope } => intercept + slope * t,
            OmegaProfile::Tabulated { times, values } => {
                let last = times.len() - 1;
                if t <= times[0] {
                    return values[0];
                }
                if t >= times[last] {
                    return values[last];
                }
                let j = times.partition_point(|&x| x <= t);
                let (t0, t1) = (times[j - 1], times[j]);
                let w = (t - t0) / (t1 - t0);
                values[j - 1] * (1.0 - w) + values[j] * w
            }
        }
    }
}

/// Value and first derivative at the initial time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialCondition {
    pub value: f64,
    pub derivative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub profile: OmegaProfile,
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    pub y1: InitialCondition,
    pub y2: InitialCondition,
}

impl OscillatorSpec {
    /// `y₁ = cos ω(t−t₀)`, `y₂ = sin ω(t−t₀)` under constant `Ω = ω`.
    pub fn harmonic(omega: f64, t0: f64, t1: f64, step: f64) -> Self {
        Self {
            profile: OmegaProfile::constant_frequency(omega),
            t0,
            t1,
            step,
            y1: InitialCondition {
                value: 1.0,
                derivative: 0.0,
            },
            y2: InitialCondition {
                value: 0.0,
                derivative: omega,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.profile.validate()?;
        if !(self.t1 > self.t0) || !self.t0.is_finite() || !self.t1.is_finite() {
            return Err(Error::InvalidParams(format!(
                "need t1 > t0, got [{}, {}]",
                self.t0, self.t1
            )));
        }
        if !(self.step > 0.0) || self.step > (self.t1 - self.t0) / 10.0 {
            return Err(Error::InvalidParams(format!(
                "step must lie in (0, (t1 − t0)/10], got {}",
                self.step
            )));
        }
        let (lo, hi) = self.profile.domain();
        if self.t0 < lo || self.t1 > hi {
            return Err(Error::Profile(format!(
                "integration window [{}, {}] leaves the tabulated range [{lo}, {hi}]",
                self.t0, self.t1
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalTrajectory {
    pub spec: OscillatorSpec,
    pub times: Vec<f64>,
    pub y1: Vec<f64>,
    pub y1_dot: Vec<f64>,
    pub y2: Vec<f64>,
    pub y2_dot: Vec<f64>,
    /// `y₁ẏ₂ − ẏ₁y₂` at the initial time.
    pub wronskian: f64,
    /// Largest relative departure of the Wronskian from its initial value.
    pub wronskian_drift: f64,
    /// Largest endpoint change when the step is halved.
    pub halving_change: f64,
}

impl ClassicalTrajectory {
    pub fn step(&self) -> f64 {
        self.times[1] - self.times[0]
    }
}

type State = [f64; 4];

fn rk4_step(profile: &OmegaProfile, t: f64, h: f64, s: State) -> State {
    let f = |t: f64, s: State| -> State {
        let w = profile.eval(t);
        [s[1], -w * s[0], s[3], -w * s[2]]
    };
    let add = |s: State, k: State, c: f64| -> State {
        [s[0] + c * k[0], s[1] + c * k[1], s[2] + c * k[2], s[3] + c * k[3]]
    };
    let k1 = f(t, s);
    let k2 = f(t + h / 2.0, add(s, k1, h / 2.0));
    let k3 = f(t + h / 2.0, add(s, k2, h / 2.0));
    let k4 = f(t + h, add(s, k3, h));
    let mut out = s;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn integrate(spec: &OscillatorSpec, steps: usize) -> Vec<State> {
    let h = (spec.t1 - spec.t0) / steps as f64;
    let mut s = [spec.y1.value, spec.y1.derivative, spec.y2.value, spec.y2.derivative];
    let mut out = Vec::with_capacity(steps + 1);
    out.push(s);
    for i in 0..steps {
        s = rk4_step(&spec.profile, spec.t0 + i as f64 * h, h, s);
        out.push(s);
    }
    out
}

/// Fourth-order Runge–Kutta for both solutions, checked against a run at
/// half the step.
pub fn integrate_oscillator(spec: &OscillatorSpec) -> Result<ClassicalTrajectory> {
    spec.validate()?;
    let steps = ((spec.t1 - spec.t0) / spec.step).ceil() as usize;
    let coarse = integrate(spec, steps);
    let fine = integrate(spec, 2 * steps);
    let (end_c, end_f) = (coarse[steps], fine[2 * steps]);
    let halving_change = (0..4).map(|i| (end_c[i] - end_f[i]).abs()).fold(0.0, f64::max);
    if halving_change > STEP_HALVING_TOL {
        return Err(Error::StepRejected {
            change: halving_change,
        });
    }
    let h = (spec.t1 - spec.t0) / steps as f64;
    let times: Vec<f64> = (0..=steps).map(|i| spec.t0 + i as f64 * h).collect();
    let wr = |s: &State| s[0] * s[3] - s[1] * s[2];
    let w0 = wr(&coarse[0]);
    if w0 == 0.0 {
        return Err(Error::InvalidParams("initial conditions are linearly dependent".into()));
    }
    let wronskian_drift = coarse
        .iter()
        .map(|s| ((wr(s) - w0) / w0).abs())
        .fold(0.0, f64::max);
    Ok(ClassicalTrajectory {
        spec: spec.clone(),
        times,
        y1: coarse.iter().map(|s| s[0]).collect(),
        y1_dot: coarse.iter().map(|s| s[1]).collect(),
        y2: coarse.iter().map(|s| s[2]).collect(),
        y2_dot: coarse.iter().map(|s| s[3]).collect(),
        wronskian: w0,
        wronskian_drift,
        halving_change,
    })
}

/// Coefficients of `σ² = Ae·y₁² + Be·y₂² + 2Ce·y₁y₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpConstants {
    pub ae: f64,
    pub be: f64,
    pub ce: f64,
    pub w0: f64,
}

impl EmpConstants {
    pub fn new(ae: f64, be: f64, ce: f64, w0: f64) -> Result<Self> {
        if w0 == 0.0 || !w0.is_finite() {
            return Err(Error::ConstraintViolation(format!("Wronskian must be nonzero, got {w0}")));
        }
        let gap = ae * be - ce * ce - 1.0 / (w0 * w0);
        if !(gap.abs() <= CONSTRAINT_TOL) {
            return Err(Error::ConstraintViolation(format!(
                "Ae·Be − Ce² − 1/W0² = {gap:e}"
            )));
        }
        Ok(Self { ae, be, ce, w0 })
    }

    /// Constants for which `σ = |ψ|` with `ψ = √A e^{iα}y₁ − √B e^{iβ}y₂`.
    pub fn from_combination(a: f64, b: f64, alpha: f64, beta: f64, w0: f64) -> Result<Self> {
        Self::new(a, b, -(a * b).sqrt() * (alpha - beta).cos(), w0)
    }
}

/// Weights and angles of the complex combination `ψ(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Combination {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Combination {
    /// `A = B = 1/|W0|`, `α − β = ±π/2`: the choice with `dθ/dt = 1/σ² > 0`.
    pub fn canonical(w0: f64) -> Self {
        Self {
            a: 1.0 / w0.abs(),
            b: 1.0 / w0.abs(),
            alpha: std::f64::consts::FRAC_PI_2 * w0.signum(),
            beta: 0.0,
        }
    }

    pub fn value(&self, y1: f64, y2: f64) -> C64 {
        C64::from_polar(self.a.sqrt(), self.alpha) * y1 - C64::from_polar(self.b.sqrt(), self.beta) * y2
    }

    pub fn constants(&self, w0: f64) -> Result<EmpConstants> {
        EmpConstants::from_combination(self.a, self.b, self.alpha, self.beta, w0)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmpAmplitude {
    pub sigma: Vec<f64>,
    /// Max of `|σ̈ + Ω²σ − σ⁻³|` over interior grid points, `σ̈` by centered differences.
    pub residual: f64,
}

pub fn emp_amplitude(traj: &ClassicalTrajectory, consts: &EmpConstants) -> Result<EmpAmplitude> {
    EmpConstants::new(consts.ae, consts.be, consts.ce, consts.w0)?;
    let mut sigma = Vec::with_capacity(traj.times.len());
    for (i, &t) in traj.times.iter().enumerate() {
        let (y1, y2) = (traj.y1[i], traj.y2[i]);
        let q = consts.ae * y1 * y1 + consts.be * y2 * y2 + 2.0 * consts.ce * y1 * y2;
        if !(q > 0.0) {
            return Err(Error::NonPositiveSigma { t });
        }
        sigma.push(q.sqrt());
    }
    let h = traj.step();
    let profile = &traj.spec.profile;
    let residual = (1..sigma.len() - 1)
        .map(|i| {
            let dd = (sigma[i + 1] - 2.0 * sigma[i] + sigma[i - 1]) / (h * h);
            (dd + profile.eval(traj.times[i]) * sigma[i] - sigma[i].powi(-3)).abs()
        })
        .fold(0.0, f64::max);
    Ok(EmpAmplitude { sigma, residual })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalPhase {
    /// `∫ dt/σ²` by the trapezoid rule.
    pub quadrature: Vec<f64>,
    /// `F(t) − F(t₀)` with `F = (ln ψ − ln ψ*)/(2i)`, unwrapped.
    pub logarithmic: Vec<f64>,
    pub discrepancy: f64,
}

pub fn classical_phase(
    traj: &ClassicalTrajectory,
    amplitude: &EmpAmplitude,
    combination: &Combination,
) -> Result<ClassicalPhase> {
    let n = traj.times.len();
    let mut quadrature = Vec::with_capacity(n);
    quadrature.push(0.0);
    for i in 1..n {
        let dt = traj.times[i] - traj.times[i - 1];
        let f0 = amplitude.sigma[i - 1].powi(-2);
        let f1 = amplitude.sigma[i].powi(-2);
        quadrature.push(quadrature[i - 1] + 0.5 * dt * (f0 + f1));
    }

    let mut logarithmic = Vec::with_capacity(n);
    let mut previous = combination.value(traj.y1[0], traj.y2[0]).arg();
    let start = previous;
    let mut unwrapped = previous;
    logarithmic.push(0.0);
    for i in 1..n {
        let psi = combination.value(traj.y1[i], traj.y2[i]);
        let f = (psi.ln() - psi.conj().ln()).im / 2.0;
        let mut jump = f - previous;
        jump -= std::f64::consts::TAU * (jump / std::f64::consts::TAU).round();
        if jump.abs() > UNWRAP_LIMIT {
            return Err(Error::UnwrapFailure {
                t: traj.times[i],
                jump,
            });
        }
        unwrapped += jump;
        previous = f;
        logarithmic.push(unwrapped - start);
    }
    let discrepancy = quadrature
        .iter()
        .zip(&logarithmic)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(ClassicalPhase {
        quadrature,
        logarithmic,
        discrepancy,
    })
}

/// Fits `y₁ ≈ σ(u cos θ + v sin θ)` by least squares and returns the largest
/// residual relative to `max |y₁|`, reading the amplitude–phase form of a
/// solution as `y = c·σ·cos(θ + δ)`.
pub fn amplitude_phase_fit(traj: &ClassicalTrajectory, amplitude: &EmpAmplitude, theta: &[f64]) -> f64 {
    let (mut scc, mut scs, mut sss, mut syc, mut sys) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for ((sigma, th), y) in amplitude.sigma.iter().zip(theta).zip(&traj.y1) {
        let (c, s) = (sigma * th.cos(), sigma * th.sin());
        scc += c * c;
        scs += c * s;
        sss += s * s;
        syc += y * c;
        sys += y * s;
    }
    let det = scc * sss - scs * scs;
    let u = (syc * sss - sys * scs) / det;
    let v = (sys * scc - syc * scs) / det;
    let scale = traj.y1.iter().fold(0.0_f64, |m, y| m.max(y.abs())).max(f64::MIN_POSITIVE);
    (0..theta.len())
        .map(|i| {
            let fit = amplitude.sigma[i] * (u * theta[i].cos() + v * theta[i].sin());
            (traj.y1[i] - fit).abs()
        })
        .fold(0.0, f64::max)
        / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentExpectations {
    /// `⟨â(t)⟩`.
    pub signal: C64,
    /// `⟨b̂†(t)⟩`.
    pub image_creation: C64,
    pub product: C64,
    pub tail_ok: bool,
}

/// Expectations of the phase-dressed modes `(γ*/γ)e^{iω₀t}â₀` and
/// `(γ/γ*)e^{−iω₀t}b̂₀†` in the product coherent state `|γ⟩|γ⟩`, truncated to `d` levels.
pub fn coherent_expectations(gamma: C64, omega0: f64, t: f64, d: usize) -> Result<CoherentExpectations> {
    let state = coherent_state(gamma, d)?;
    let ratio = if gamma.norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        gamma.conj() / gamma
    };
    let a = annihilator(d);
    let a_t = a.scale(ratio * C64::from_polar(1.0, omega0 * t));
    let b_dag_t = a.adjoint().scale(ratio.inv() * C64::from_polar(1.0, -omega0 * t));
    let signal = a_t.expectation(&state.amplitudes)?;
    let image_creation = b_dag_t.expectation(&state.amplitudes)?;
    Ok(CoherentExpectations {
        signal,
        image_creation,
        product: signal * image_creation,
        tail_ok: state.tail_ok(),
    })
}
