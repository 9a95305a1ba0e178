use std::cell::OnceCell;

use crate::caves::{CavesOperators, SPair};
use crate::error::Result;
use crate::fock::{
    hermitian_power, MatrixFunction, OperatorMatrix, Spectrum, ToleranceConfig, TwoModeBasis, C64,
};
use crate::heterodyne::{psi_from_modes, rotated_modes, GeneratorSet, HeterodyneParams, Psi, RotatedModes};
use crate::rns::{number_diff, rns_phase_operator, sw_phase_operator, trig_operators};

/// One construction of `S` and its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SForm {
    /// Through `T`, `Z⁻¹` and their reversed product.
    Symmetrized,
    /// The same expression written with `ψ_C`.
    ViaPsi,
    /// Reordered with the `(A−B)` correction term.
    Reordered,
}

fn cached<T>(cell: &OnceCell<Result<T>>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(init).as_ref().map_err(Clone::clone)
}

/// Every operator a catalog case may ask for, built once per `(params, basis)`.
///
/// Polynomial pieces are built eagerly. Decompositions and matrix functions
/// are built on first use, and failures are cached alongside successes.
#[derive(Debug)]
pub struct SuiteContext {
    pub params: HeterodyneParams,
    pub basis: TwoModeBasis,
    pub tol: ToleranceConfig,
    pub modes: RotatedModes,
    pub psi: Psi,
    pub generators: GeneratorSet,
    pub n_hat: OperatorMatrix,
    pub rns_shift: OperatorMatrix,
    psi_spectrum: OnceCell<Result<Spectrum>>,
    psi_dag_spectrum: OnceCell<Result<Spectrum>>,
    d_sw: OnceCell<Result<OperatorMatrix>>,
    literal_r: OnceCell<Result<OperatorMatrix>>,
    theta: OnceCell<Result<OperatorMatrix>>,
    trig: OnceCell<Result<(OperatorMatrix, OperatorMatrix)>>,
    amplitude_root: OnceCell<Result<OperatorMatrix>>,
    amplitude_inv_root: OnceCell<Result<OperatorMatrix>>,
    caves: OnceCell<Result<CavesOperators>>,
    s_forms: [OnceCell<Result<SPair>>; 3],
}

impl SuiteContext {
    pub fn new(params: HeterodyneParams, basis: TwoModeBasis, tol: ToleranceConfig) -> Result<Self> {
        tol.validate()?;
        let modes = rotated_modes(&params, basis)?;
        let psi = psi_from_modes(&params, &modes);
        let generators = GeneratorSet::from_modes(&modes);
        Ok(Self {
            n_hat: number_diff(basis),
            rns_shift: rns_phase_operator(basis),
            params,
            basis,
            tol,
            modes,
            psi,
            generators,
            psi_spectrum: OnceCell::new(),
            psi_dag_spectrum: OnceCell::new(),
            d_sw: OnceCell::new(),
            literal_r: OnceCell::new(),
            theta: OnceCell::new(),
            trig: OnceCell::new(),
            amplitude_root: OnceCell::new(),
            amplitude_inv_root: OnceCell::new(),
            caves: OnceCell::new(),
            s_forms: Default::default(),
        })
    }

    pub fn psi_spectrum(&self) -> Result<&Spectrum> {
        cached(&self.psi_spectrum, || Spectrum::new(&self.psi.psi))
    }

    pub fn psi_dag_spectrum(&self) -> Result<&Spectrum> {
        cached(&self.psi_dag_spectrum, || Spectrum::new(&self.psi.psi_dag))
    }

    /// `ψ(ψ†ψ)^{-1/2}`, the canonical `R`.
    pub fn d_sw(&self) -> Result<&OperatorMatrix> {
        cached(&self.d_sw, || sw_phase_operator(&self.psi.psi, &self.tol))
    }

    /// `ψ^{1/2}(ψ†)^{-1/2}`.
    pub fn literal_r(&self) -> Result<&OperatorMatrix> {
        cached(&self.literal_r, || {
            let eps = self.tol.branch_eps;
            let root = self.psi_spectrum()?.apply(MatrixFunction::Sqrt, eps)?.value;
            let inv_root = self.psi_dag_spectrum()?.apply(MatrixFunction::InverseSqrt, eps)?.value;
            Ok(&root * &inv_root)
        })
    }

    /// `(ln ψ − ln ψ†)/(2i)`.
    pub fn theta(&self) -> Result<&OperatorMatrix> {
        cached(&self.theta, || {
            let eps = self.tol.branch_eps;
            let log_psi = self.psi_spectrum()?.apply(MatrixFunction::Log, eps)?.value;
            let log_dag = self.psi_dag_spectrum()?.apply(MatrixFunction::Log, eps)?.value;
            Ok((&log_psi - &log_dag).scale(C64::new(0.0, -0.5)))
        })
    }

    /// `(cos θ, sin θ)` from the canonical `R`.
    pub fn trig(&self) -> Result<&(OperatorMatrix, OperatorMatrix)> {
        cached(&self.trig, || Ok(trig_operators(self.d_sw()?)))
    }

    /// `(ψψ†)^{1/2}`.
    pub fn amplitude_root(&self) -> Result<&OperatorMatrix> {
        cached(&self.amplitude_root, || {
            let gram = &self.psi.psi * &self.psi.psi_dag;
            Ok(hermitian_power(&gram, 0.5, self.tol.pinv_rel_tol)?.value)
        })
    }

    /// `(ψψ†)^{-1/2}` with the pseudo-inverse floor.
    pub fn amplitude_inv_root(&self) -> Result<&OperatorMatrix> {
        cached(&self.amplitude_inv_root, || {
            let gram = &self.psi.psi * &self.psi.psi_dag;
            Ok(hermitian_power(&gram, -0.5, self.tol.pinv_rel_tol)?.value)
        })
    }

    /// `T`, `Z` with spectra borrowed from `ψ = √A·T` and `ψ† = √A·Z`.
    pub fn caves(&self) -> Result<&CavesOperators> {
        cached(&self.caves, || {
            let ops = CavesOperators::new(&self.params, self.basis)?;
            let inv = C64::new(1.0 / self.params.a().sqrt(), 0.0);
            let t = self.psi_spectrum().map(|s| s.scaled(inv));
            let z = self.psi_dag_spectrum().map(|s| s.scaled(inv));
            Ok(ops.with_spectra(t, z))
        })
    }

    pub fn s_pair(&self, form: SForm) -> Result<&SPair> {
        let slot = match form {
            SForm::Symmetrized => 0,
            SForm::ViaPsi => 1,
            SForm::Reordered => 2,
        };
        cached(&self.s_forms[slot], || {
            let ops = self.caves()?;
            match form {
                SForm::Symmetrized => ops.s_symmetrized(&self.tol),
                SForm::ViaPsi => ops.s_via_psi(&self.tol),
                SForm::Reordered => ops.s_reordered(&self.tol),
            }
        })
    }
}
