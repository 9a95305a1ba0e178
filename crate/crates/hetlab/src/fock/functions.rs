//! Spectral matrix functions.
//!
//! Hermitian arguments go through a unitary eigen-decomposition. General
//! arguments are reduced to complex Schur form, eigenvectors are recovered by
//! back-substitution on the triangular factor, and `V f(Λ) V⁻¹` is assembled
//! only after the eigenvector condition number and the branch guards pass.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::operator::{spectral_norm, OperatorMatrix, C64};
use crate::error::{Error, Result};

/// Eigenvector bases with a larger condition number are rejected.
pub const MAX_EIGENVECTOR_CONDITION: f64 = 1e10;

/// Relative tolerance under which an argument is treated as Hermitian.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    pub poly_tol: f64,
    pub fn_tol: f64,
    pub pinv_rel_tol: f64,
    pub branch_eps: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            poly_tol: 1e-10,
            fn_tol: 1e-3,
            pinv_rel_tol: 1e-10,
            branch_eps: 1e-6,
        }
    }
}

impl ToleranceConfig {
    /// Thresholds may be zero; the floors must be strictly positive.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("poly_tol", self.poly_tol), ("fn_tol", self.fn_tol)] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::Config(format!("{name} must be nonnegative, got {value}")));
            }
        }
        for (name, value) in [("pinv_rel_tol", self.pinv_rel_tol), ("branch_eps", self.branch_eps)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Config(format!("{name} must be strictly positive, got {value}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct HermitianPower {
    pub value: OperatorMatrix,
    /// Eigenvalues below `pinv_rel_tol · λ_max` that were treated as zero.
    pub floored: usize,
}

/// `H^exponent` through the eigen-decomposition of a Hermitian `H`.
///
/// Eigenvalues below `pinv_rel_tol · λ_max` are set to zero; for negative
/// exponents those directions are dropped (pseudo-inverse convention).
/// Remaining negative eigenvalues only admit integer exponents.
pub fn hermitian_power(
    h: &OperatorMatrix,
    exponent: f64,
    pinv_rel_tol: f64,
) -> Result<HermitianPower> {
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_REL_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let (values, vectors) = hermitian_eigen(h.matrix())?;
    let lambda_max = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let floor = pinv_rel_tol * lambda_max;
    let mut floored = 0;
    let integer_exponent = exponent.fract() == 0.0;
    let mut mapped = Vec::with_capacity(values.len());
    for &v in values.iter() {
        if v.abs() <= floor {
            floored += 1;
            mapped.push(0.0);
        } else if v < 0.0 && !integer_exponent {
            return Err(Error::BranchCut {
                eigenvalue: C64::new(v, 0.0),
                phase: std::f64::consts::PI,
            });
        } else {
            mapped.push(v.powf(exponent));
        }
    }
    if floored == values.len() {
        return Err(Error::AllEigenvaluesFloored);
    }
    let data = reassemble_unitary(&vectors, mapped.iter().map(|&x| C64::new(x, 0.0)));
    Ok(HermitianPower {
        value: OperatorMatrix::from_parts(h.space(), data),
        floored,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixFunction {
    Log,
    Sqrt,
    Inverse,
    /// Principal `M^{-1/2}`.
    InverseSqrt,
    Exp,
}

impl MatrixFunction {
    fn apply(self, z: C64) -> C64 {
        match self {
            MatrixFunction::Log => z.ln(),
            MatrixFunction::Sqrt => z.sqrt(),
            MatrixFunction::Inverse => z.inv(),
            MatrixFunction::InverseSqrt => z.sqrt().inv(),
            MatrixFunction::Exp => z.exp(),
        }
    }

    /// Rejects eigenvalues the principal branch cannot handle.
    fn guard(self, z: C64, branch_eps: f64) -> Result<()> {
        let modulus = z.norm();
        match self {
            MatrixFunction::Exp => Ok(()),
            MatrixFunction::Inverse | MatrixFunction::InverseSqrt | MatrixFunction::Log
                if modulus <= branch_eps =>
            {
                Err(Error::Singular { modulus })
            }
            MatrixFunction::Inverse => Ok(()),
            MatrixFunction::Log | MatrixFunction::Sqrt | MatrixFunction::InverseSqrt => {
                let distance = if z.re <= 0.0 { z.im.abs() } else { modulus };
                if distance <= branch_eps {
                    Err(Error::BranchCut {
                        eigenvalue: z,
                        phase: z.arg(),
                    })
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct FunctionOutput {
    pub value: OperatorMatrix,
    /// Relative round-trip residual: `exp(X) − M` for log, `X² − M` for sqrt,
    /// `XM − 1` for inverse, `X²M − 1` for inverse sqrt, and the gap to a Padé exponential for exp.
    pub roundtrip_residual: f64,
    /// Condition number of the eigenvector basis (1 for Hermitian input).
    pub condition: f64,
}

/// Principal-branch `f(M)` for diagonalizable `M`.
pub fn principal_matrix_function(
    m: &OperatorMatrix,
    f: MatrixFunction,
    branch_eps: f64,
) -> Result<FunctionOutput> {
    Spectrum::new(m)?.apply(f, branch_eps)
}

/// Eigen-decomposition of one operand, reusable across several functions.
#[derive(Debug, Clone)]
pub struct Spectrum {
    source: OperatorMatrix,
    kind: SpectrumKind,
}

#[derive(Debug, Clone)]
enum SpectrumKind {
    Hermitian {
        values: DVector<f64>,
        vectors: DMatrix<C64>,
    },
    General {
        values: Vec<C64>,
        vectors: DMatrix<C64>,
        inverse: Option<DMatrix<C64>>,
        condition: f64,
    },
}

impl Spectrum {
    pub fn new(m: &OperatorMatrix) -> Result<Self> {
        let kind = if m.hermitian_deviation() <= HERMITIAN_REL_TOL {
            let (values, vectors) = hermitian_eigen(m.matrix())?;
            SpectrumKind::Hermitian { values, vectors }
        } else {
            let eig = general_eigen(m.matrix())?;
            SpectrumKind::General {
                values: eig.values,
                vectors: eig.vectors,
                inverse: eig.inverse,
                condition: eig.condition,
            }
        };
        Ok(Self {
            source: m.clone(),
            kind,
        })
    }

    /// Spectrum of `c·M`: same eigenvectors, eigenvalues times `c`.
    pub fn scaled(&self, c: C64) -> Self {
        let source = self.source.scale(c);
        let kind = match &self.kind {
            SpectrumKind::Hermitian { values, vectors } if c.im == 0.0 && c.re >= 0.0 => {
                SpectrumKind::Hermitian {
                    values: values * c.re,
                    vectors: vectors.clone(),
                }
            }
            SpectrumKind::Hermitian { values, vectors } => SpectrumKind::General {
                values: values.iter().map(|&v| c * v).collect(),
                inverse: Some(vectors.adjoint()),
                vectors: vectors.clone(),
                condition: 1.0,
            },
            SpectrumKind::General {
                values,
                vectors,
                inverse,
                condition,
            } => SpectrumKind::General {
                values: values.iter().map(|&v| c * v).collect(),
                vectors: vectors.clone(),
                inverse: inverse.clone(),
                condition: *condition,
            },
        };
        Self { source, kind }
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        match &self.kind {
            SpectrumKind::Hermitian { values, .. } => {
                values.iter().map(|&v| C64::new(v, 0.0)).collect()
            }
            SpectrumKind::General { values, .. } => values.clone(),
        }
    }

    /// Condition number of the eigenvector basis (1 for Hermitian input).
    pub fn condition(&self) -> f64 {
        match &self.kind {
            SpectrumKind::Hermitian { .. } => 1.0,
            SpectrumKind::General { condition, .. } => *condition,
        }
    }

    pub fn apply(&self, f: MatrixFunction, branch_eps: f64) -> Result<FunctionOutput> {
        for z in self.eigenvalues() {
            f.guard(z, branch_eps)?;
        }
        let data = match &self.kind {
            SpectrumKind::Hermitian { values, vectors } => reassemble_unitary(
                vectors,
                values.iter().map(|&v| f.apply(C64::new(v, 0.0))),
            ),
            SpectrumKind::General {
                values,
                vectors,
                inverse,
                condition,
            } => {
                if *condition > MAX_EIGENVECTOR_CONDITION {
                    return Err(Error::IllConditioned {
                        condition: *condition,
                    });
                }
                let inverse = inverse.as_ref().ok_or(Error::IllConditioned {
                    condition: f64::INFINITY,
                })?;
                let mut scaled = vectors.clone();
                for (j, &z) in values.iter().enumerate() {
                    let fz = f.apply(z);
                    for entry in scaled.column_mut(j).iter_mut() {
                        *entry *= fz;
                    }
                }
                scaled * inverse
            }
        };
        let value = OperatorMatrix::from_parts(self.source.space(), data);
        let roundtrip_residual = roundtrip(self.source.matrix(), value.matrix(), f);
        Ok(FunctionOutput {
            value,
            roundtrip_residual,
            condition: self.condition(),
        })
    }
}

fn roundtrip(m: &DMatrix<C64>, x: &DMatrix<C64>, f: MatrixFunction) -> f64 {
    let n = m.nrows();
    let scale = spectral_norm(m).max(1.0);
    let gap = match f {
        MatrixFunction::Log => x.clone().exp() - m,
        MatrixFunction::Sqrt => x * x - m,
        MatrixFunction::Inverse => x * m - DMatrix::<C64>::identity(n, n),
        MatrixFunction::InverseSqrt => x * x * m - DMatrix::<C64>::identity(n, n),
        MatrixFunction::Exp => m.clone().exp() - x,
    };
    spectral_norm(&gap) / scale
}

/// Eigenpairs of the Hermitian part of `m`, ascending eigenvalues.
pub(crate) fn hermitian_eigen(m: &DMatrix<C64>) -> Result<(DVector<f64>, DMatrix<C64>)> {
    if !all_finite(m) {
        return Err(Error::NoConvergence);
    }
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let limit = ITERATIONS_PER_ROW * m.nrows().max(1);
    let eig = SymmetricEigen::try_new(herm, f64::EPSILON, limit).ok_or(Error::NoConvergence)?;
    Ok((eig.eigenvalues, eig.eigenvectors))
}

/// Iteration budget per matrix row for the iterative decompositions.
const ITERATIONS_PER_ROW: usize = 30;

pub(crate) fn all_finite(m: &DMatrix<C64>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn reassemble_unitary(vectors: &DMatrix<C64>, mapped: impl Iterator<Item = C64>) -> DMatrix<C64> {
    let mut scaled = vectors.clone();
    for (j, fz) in mapped.enumerate() {
        for i in 0..scaled.nrows() {
            scaled[(i, j)] *= fz;
        }
    }
    scaled * vectors.adjoint()
}

pub(crate) struct GeneralEigen {
    pub values: Vec<C64>,
    /// Unit-norm eigenvectors as columns.
    pub vectors: DMatrix<C64>,
    pub inverse: Option<DMatrix<C64>>,
    pub condition: f64,
}

pub(crate) fn general_eigen(m: &DMatrix<C64>) -> Result<GeneralEigen> {
    let n = m.nrows();
    if !all_finite(m) {
        return Err(Error::NoConvergence);
    }
    let limit = ITERATIONS_PER_ROW * n.max(1);
    let schur = Schur::try_new(m.clone(), f64::EPSILON, limit).ok_or(Error::NoConvergence)?;
    let (q, t) = schur.unpack();
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();

    let tnorm = t.iter().fold(0.0_f64, |acc, z| acc.max(z.norm())).max(f64::MIN_POSITIVE);
    let mut x = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        let lambda = values[k];
        let smin = (f64::EPSILON * lambda.norm()).max(f64::EPSILON * tnorm);
        x[(k, k)] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut s = C64::new(0.0, 0.0);
            for l in (j + 1)..=k {
                s += t[(j, l)] * x[(l, k)];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < smin {
                denom = C64::new(smin, 0.0);
            }
            x[(j, k)] = -s / denom;
        }
    }
    let mut vectors = q * x;
    for mut col in vectors.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col.unscale_mut(norm);
        }
    }
    // Frobenius-norm condition, an upper bound on the spectral one.
    let inverse = if all_finite(&vectors) {
        vectors.clone().try_inverse().filter(all_finite)
    } else {
        None
    };
    let condition = match &inverse {
        Some(inv) => vectors.norm() * inv.norm(),
        None => f64::INFINITY,
    };
    Ok(GeneralEigen {
        values,
        vectors,
        inverse,
        condition,
    })
}
