//! Relative-number states, the RNS shift `D`, the polar phase `ψ(ψ†ψ)^{-1/2}`,
//! the `R`/`θ` construction and the derived trigonometric and amplitude
//! operators.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{
    hermitian_power, principal_matrix_function, MatrixFunction, OperatorMatrix, Space,
    ToleranceConfig, TwoModeBasis, C64, I,
};

/// `|n, m⟩⟩`: relative number `n = p − q` and floor occupation `m = min(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RnsIndex {
    pub n: i64,
    pub m: usize,
}

/// Bijection between Fock pairs of a rectangle and relative-number labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RnsMap {
    basis: TwoModeBasis,
}

impl RnsMap {
    pub fn basis(&self) -> TwoModeBasis {
        self.basis
    }

    pub fn to_rns(&self, p: usize, q: usize) -> Result<RnsIndex> {
        if !self.basis.contains(p, q) {
            return Err(Error::OutOfRange(format!(
                "Fock state ({p}, {q}) outside {}",
                self.basis
            )));
        }
        Ok(RnsIndex {
            n: p as i64 - q as i64,
            m: p.min(q),
        })
    }

    /// Inverse map; `None`-like targets outside the rectangle are errors.
    pub fn to_fock(&self, idx: RnsIndex) -> Result<(usize, usize)> {
        let (p, q) = fock_pair(idx);
        if !self.basis.contains(p, q) {
            return Err(Error::OutOfRange(format!(
                "RNS state (n={}, m={}) maps to ({p}, {q}) outside {}",
                idx.n, idx.m, self.basis
            )));
        }
        Ok((p, q))
    }

    pub fn flat_index(&self, idx: RnsIndex) -> Result<usize> {
        let (p, q) = self.to_fock(idx)?;
        self.basis.index_of(p, q)
    }

    /// Labels of all states in flat-index order.
    pub fn labels(&self) -> Vec<RnsIndex> {
        self.basis
            .states()
            .map(|(p, q)| RnsIndex {
                n: p as i64 - q as i64,
                m: p.min(q),
            })
            .collect()
    }
}

fn fock_pair(idx: RnsIndex) -> (usize, usize) {
    if idx.n >= 0 {
        (idx.m + idx.n as usize, idx.m)
    } else {
        (idx.m, idx.m + idx.n.unsigned_abs() as usize)
    }
}

pub fn rns_map(basis: TwoModeBasis) -> RnsMap {
    RnsMap { basis }
}

/// Diagonal `N̂` with entry `p − q` on `|p, q⟩`.
pub fn number_diff(basis: TwoModeBasis) -> OperatorMatrix {
    let diag: Vec<C64> = basis
        .states()
        .map(|(p, q)| C64::new(p as f64 - q as f64, 0.0))
        .collect();
    OperatorMatrix::from_diagonal(Space::TwoMode(basis), &diag)
        .expect("diagonal length equals basis dimension")
}

/// `D = Σ |n−1, m⟩⟩⟨⟨n, m|`, with columns whose target leaves the rectangle set to zero.
pub fn rns_phase_operator(basis: TwoModeBasis) -> OperatorMatrix {
    let map = rns_map(basis);
    let mut data = DMatrix::zeros(basis.dim(), basis.dim());
    for (col, label) in map.labels().into_iter().enumerate() {
        let target = RnsIndex {
            n: label.n - 1,
            m: label.m,
        };
        if let Ok(row) = map.flat_index(target) {
            data[(row, col)] = C64::new(1.0, 0.0);
        }
    }
    OperatorMatrix::new(Space::TwoMode(basis), data).expect("square of basis dimension")
}

/// `ψ(ψ†ψ)^{-1/2}` with the pseudo-inverse floor of `tol`.
///
/// Meaningful for commuting `ψ, ψ†`; other inputs are accepted so the
/// construction can be compared across regimes.
pub fn sw_phase_operator(psi: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
    let gram = &psi.adjoint() * psi;
    let inv_sqrt = hermitian_power(&gram, -0.5, tol.pinv_rel_tol)?;
    Ok(psi * &inv_sqrt.value)
}

/// `R` in its canonical polar form and in the literal `ψ^{1/2}(ψ†)^{-1/2}` form.
#[derive(Debug, Clone)]
pub struct ROperator {
    pub canonical: OperatorMatrix,
    pub literal: Result<OperatorMatrix>,
}

pub fn r_operator(psi: &OperatorMatrix, tol: &ToleranceConfig) -> Result<ROperator> {
    let canonical = sw_phase_operator(psi, tol)?;
    Ok(ROperator {
        canonical,
        literal: literal_r(psi, tol),
    })
}

/// `ψ^{1/2} · ((ψ†)^{1/2})^{-1}`.
pub fn literal_r(psi: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
    let root = principal_matrix_function(psi, MatrixFunction::Sqrt, tol.branch_eps)?.value;
    let root_dag = principal_matrix_function(&psi.adjoint(), MatrixFunction::Sqrt, tol.branch_eps)?;
    let inv = principal_matrix_function(&root_dag.value, MatrixFunction::Inverse, tol.branch_eps)?;
    Ok(&root * &inv.value)
}

/// `θ = (ln ψ − ln ψ†)/(2i)`.
pub fn theta_operator(psi: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
    let log_psi = principal_matrix_function(psi, MatrixFunction::Log, tol.branch_eps)?.value;
    let log_dag =
        principal_matrix_function(&psi.adjoint(), MatrixFunction::Log, tol.branch_eps)?.value;
    Ok((&log_psi - &log_dag).scale(C64::new(0.0, -0.5)))
}

/// `−i ln R`.
pub fn theta_from_r(r: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
    let log_r = principal_matrix_function(r, MatrixFunction::Log, tol.branch_eps)?.value;
    Ok(log_r.scale(-I))
}

/// `e^{iθ}`.
pub fn exp_i(theta: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
    Ok(principal_matrix_function(&theta.scale(I), MatrixFunction::Exp, tol.branch_eps)?.value)
}

/// `cos θ = (R + R†)/2`, `sin θ = (R − R†)/(2i)`.
pub fn trig_operators(r: &OperatorMatrix) -> (OperatorMatrix, OperatorMatrix) {
    let dag = r.adjoint();
    let cos = (r + &dag).scale_real(0.5);
    let sin = (r - &dag).scale(C64::new(0.0, -0.5));
    (cos, sin)
}

/// `Λ² = ψψ†`.
pub fn amplitude_operator(psi: &OperatorMatrix) -> OperatorMatrix {
    psi * &psi.adjoint()
}

#[derive(Debug, Clone)]
pub struct PhaseOperators {
    pub d: OperatorMatrix,
    pub d_sw: OperatorMatrix,
    pub r: ROperator,
    pub theta: Result<OperatorMatrix>,
    pub cos_theta: OperatorMatrix,
    pub sin_theta: OperatorMatrix,
    pub lambda2: OperatorMatrix,
}

/// Everything the phase section needs from one `ψ`.
pub fn phase_operators(psi: &OperatorMatrix, tol: &ToleranceConfig) -> Result<PhaseOperators> {
    let basis = psi
        .two_mode_basis()
        .ok_or_else(|| Error::InvalidBasis("phase operators need a two-mode space".into()))?;
    let r = r_operator(psi, tol)?;
    let (cos_theta, sin_theta) = trig_operators(&r.canonical);
    Ok(PhaseOperators {
        d: rns_phase_operator(basis),
        d_sw: r.canonical.clone(),
        theta: theta_operator(psi, tol),
        r,
        cos_theta,
        sin_theta,
        lambda2: amplitude_operator(psi),
    })
}
