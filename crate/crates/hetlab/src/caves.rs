//! The noncommuting extension: `T`, `Z`, the operator `S` in its three
//! printed forms, unitarity products, `C₀`/`S₀`, `[S, N̂]` and the small-`k`
//! expansion.

use std::cell::OnceCell;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{
    commutator, hermitian_power, MatrixFunction, OperatorMatrix, Spectrum, ToleranceConfig,
    TwoModeBasis, C64,
};
use crate::heterodyne::{rotated_modes, HeterodyneParams};

/// `T = ã + μb̃†`, `Z = ã† + μb̃` and the pieces derived from them.
///
/// Spectra of `T` and `Z` are computed on first use and shared by every
/// inverse and every `ψ_C`-based form.
#[derive(Debug, Clone)]
pub struct CavesOperators {
    a: f64,
    b: f64,
    pub t: OperatorMatrix,
    pub z: OperatorMatrix,
    t_spectrum: OnceCell<Result<Spectrum>>,
    z_spectrum: OnceCell<Result<Spectrum>>,
}

pub fn build_tz(params: &HeterodyneParams, basis: TwoModeBasis) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let modes = rotated_modes(params, basis)?;
    let t = &modes.a + &modes.b_dag.scale_real(params.mu());
    let z = &modes.a_dag + &modes.b.scale_real(params.mu());
    Ok((t, z))
}

impl CavesOperators {
    pub fn new(params: &HeterodyneParams, basis: TwoModeBasis) -> Result<Self> {
        let (t, z) = build_tz(params, basis)?;
        Ok(Self::from_t(t, z, params.a(), params.b()))
    }

    /// Arbitrary `T`, `Z` with weights `(A, B)`; used for synthetic checks.
    pub fn from_t(t: OperatorMatrix, z: OperatorMatrix, a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            t,
            z,
            t_spectrum: OnceCell::new(),
            z_spectrum: OnceCell::new(),
        }
    }

    /// Seeds the cached spectra of `T` and `Z`.
    pub fn with_spectra(self, t: Result<Spectrum>, z: Result<Spectrum>) -> Self {
        let _ = self.t_spectrum.set(t);
        let _ = self.z_spectrum.set(z);
        self
    }

    pub fn k(&self) -> f64 {
        (self.a - self.b) / self.a
    }

    pub fn mu(&self) -> f64 {
        (self.b / self.a).sqrt()
    }

    pub fn weight_difference(&self) -> f64 {
        self.a - self.b
    }

    /// `ψ_C = √A·T`.
    pub fn psi_c(&self) -> OperatorMatrix {
        self.t.scale_real(self.a.sqrt())
    }

    /// `ψ_C† = √A·Z`.
    pub fn psi_c_dag(&self) -> OperatorMatrix {
        self.z.scale_real(self.a.sqrt())
    }

    fn t_spectrum(&self) -> Result<&Spectrum> {
        self.t_spectrum
            .get_or_init(|| Spectrum::new(&self.t))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn z_spectrum(&self) -> Result<&Spectrum> {
        self.z_spectrum
            .get_or_init(|| Spectrum::new(&self.z))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn t_inverse(&self, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
        Ok(self.t_spectrum()?.apply(MatrixFunction::Inverse, tol.branch_eps)?.value)
    }

    pub fn z_inverse(&self, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
        Ok(self.z_spectrum()?.apply(MatrixFunction::Inverse, tol.branch_eps)?.value)
    }

    pub fn psi_c_inverse(&self, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
        let spec = self.t_spectrum()?.scaled(C64::new(self.a.sqrt(), 0.0));
        Ok(spec.apply(MatrixFunction::Inverse, tol.branch_eps)?.value)
    }

    pub fn psi_c_dag_inverse(&self, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
        let spec = self.z_spectrum()?.scaled(C64::new(self.a.sqrt(), 0.0));
        Ok(spec.apply(MatrixFunction::Inverse, tol.branch_eps)?.value)
    }

    /// `S = (1/√2)√(TZ⁻¹ + Z⁻¹T)`, `S† = (1/√2)√(T⁻¹Z + ZT⁻¹)`.
    pub fn s_symmetrized(&self, tol: &ToleranceConfig) -> Result<SPair> {
        let zi = self.z_inverse(tol)?;
        let ti = self.t_inverse(tol)?;
        Ok(SPair {
            s: half_root(&(&(&self.t * &zi) + &(&zi * &self.t)), tol)?,
            s_dag: half_root(&(&(&ti * &self.z) + &(&self.z * &ti)), tol)?,
        })
    }

    /// The same pair written through `ψ_C` and `ψ_C†`.
    pub fn s_via_psi(&self, tol: &ToleranceConfig) -> Result<SPair> {
        let (psi, psi_dag) = (self.psi_c(), self.psi_c_dag());
        let pi = self.psi_c_inverse(tol)?;
        let pdi = self.psi_c_dag_inverse(tol)?;
        Ok(SPair {
            s: half_root(&(&(&psi * &pdi) + &(&pdi * &psi)), tol)?,
            s_dag: half_root(&(&(&pi * &psi_dag) + &(&psi_dag * &pi)), tol)?,
        })
    }

    /// `S = (1/√2)√([2ψ_C + (A−B)ψ_C†⁻¹]ψ_C†⁻¹)` and its mirror.
    pub fn s_reordered(&self, tol: &ToleranceConfig) -> Result<SPair> {
        let (psi, psi_dag) = (self.psi_c(), self.psi_c_dag());
        let pi = self.psi_c_inverse(tol)?;
        let pdi = self.psi_c_dag_inverse(tol)?;
        let w = self.weight_difference();
        let left = &psi.scale_real(2.0) + &pdi.scale_real(w);
        let right = &psi_dag.scale_real(2.0) + &pi.scale_real(w);
        Ok(SPair {
            s: half_root(&(&left * &pdi), tol)?,
            s_dag: half_root(&(&pi * &right), tol)?,
        })
    }

    /// `½√(4 − k(TZ)⁻¹ + k(TZ ∓ k)⁻¹)` for `SS†` (upper sign) and `S†S`.
    ///
    /// `TZ` is Hermitian, so the inverses use the floored pseudo-inverse.
    pub fn closed_form_products(&self, tol: &ToleranceConfig) -> Result<(OperatorMatrix, OperatorMatrix)> {
        let k = self.k();
        let tz = &self.t * &self.z;
        let tz_inv = hermitian_power(&tz, -1.0, tol.pinv_rel_tol)?.value;
        let minus = hermitian_power(&tz.shift(C64::new(-k, 0.0)), -1.0, tol.pinv_rel_tol)?.value;
        let plus = hermitian_power(&tz.shift(C64::new(k, 0.0)), -1.0, tol.pinv_rel_tol)?.value;
        let base = tz_inv.scale_real(-k).shift(C64::new(4.0, 0.0));
        let ss_dag = &base + &minus.scale_real(k);
        let s_dag_s = &base + &plus.scale_real(k);
        Ok((
            hermitian_power(&ss_dag, 0.5, tol.pinv_rel_tol)?.value.scale_real(0.5),
            hermitian_power(&s_dag_s, 0.5, tol.pinv_rel_tol)?.value.scale_real(0.5),
        ))
    }

    /// `(C₂₃, C₂₄)`: the printed right-hand sides for `[C₀, S₀]` and `C₀² + S₀²`.
    pub fn trig_closed_forms(&self, tol: &ToleranceConfig) -> Result<(OperatorMatrix, OperatorMatrix)> {
        let pi = self.psi_c_inverse(tol)?;
        let pdi = self.psi_c_dag_inverse(tol)?;
        let pi2 = &pi * &pi;
        let pdi2 = &pdi * &pdi;
        let c = self.weight_difference().powi(2) / 4.0;
        let one = C64::new(1.0, 0.0);
        let first = principal_root(&(&pdi2 * &pi2).scale_real(c).shift(one), tol)?;
        let second = principal_root(&(&pi2 * &pdi2).scale_real(c).shift(one), tol)?;
        Ok((
            (&first - &second).scale(C64::new(0.0, 0.5)),
            (&first + &second).scale_real(0.5),
        ))
    }

    /// Printed right-hand side of `[S, N̂]`, composed left to right:
    /// `(1−μ²)/4 · S⁻³ Z⁻⁴ + Z⁻¹(S⁻¹Z⁻¹T + TS⁻¹Z⁻¹)`.
    pub fn sn_printed_rhs(&self, s: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
        let zi = self.z_inverse(tol)?;
        let si = Spectrum::new(s)?.apply(MatrixFunction::Inverse, tol.branch_eps)?.value;
        let first = (&si.pow(3) * &zi.pow(4)).scale_real((1.0 - self.mu().powi(2)) / 4.0);
        let inner = &(&(&si * &zi) * &self.t) + &(&(&self.t * &si) * &zi);
        Ok(&first + &(&zi * &inner))
    }
}

/// `S` together with its separately constructed adjoint partner.
#[derive(Debug, Clone)]
pub struct SPair {
    pub s: OperatorMatrix,
    pub s_dag: OperatorMatrix,
}

impl SPair {
    pub fn products(&self) -> (OperatorMatrix, OperatorMatrix) {
        (&self.s * &self.s_dag, &self.s_dag * &self.s)
    }
}

fn principal_root(m: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
    Ok(Spectrum::new(m)?.apply(MatrixFunction::Sqrt, tol.branch_eps)?.value)
}

fn half_root(m: &OperatorMatrix, tol: &ToleranceConfig) -> Result<OperatorMatrix> {
    Ok(principal_root(m, tol)?.scale_real(std::f64::consts::FRAC_1_SQRT_2))
}

/// `C₀ = (S + S†)/2`, `S₀ = (S − S†)/(2i)`.
pub fn c0_s0(pair: &SPair) -> (OperatorMatrix, OperatorMatrix) {
    let c0 = (&pair.s + &pair.s_dag).scale_real(0.5);
    let s0 = (&pair.s - &pair.s_dag).scale(C64::new(0.0, -0.5));
    (c0, s0)
}

/// Direct `[S, N̂]`.
pub fn sn_commutator(s: &OperatorMatrix, n_hat: &OperatorMatrix) -> Result<OperatorMatrix> {
    commutator(s, n_hat)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KExpansion {
    pub r: f64,
    /// `2r/(1 + r)`.
    pub k_exact: f64,
    /// `2r(1 − r)`.
    pub k_first_order: f64,
}

impl KExpansion {
    pub fn remainder(&self) -> f64 {
        (self.k_exact - self.k_first_order).abs()
    }

    /// `2r³`.
    pub fn bound(&self) -> f64 {
        2.0 * self.r.powi(3)
    }
}

pub fn k_expansion(r: f64) -> Result<KExpansion> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParams(format!("frequency ratio must lie in (0, 1), got {r}")));
    }
    Ok(KExpansion {
        r,
        k_exact: 2.0 * r / (1.0 + r),
        k_first_order: 2.0 * r * (1.0 - r),
    })
}

/// `{0.2, 0.1, 0.05, 0.02, 0.01, 0.005}`.
pub const DEFAULT_K_GRID: [f64; 6] = [0.2, 0.1, 0.05, 0.02, 0.01, 0.005];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{projected_residual, safe_projector, Space};
    use crate::heterodyne::build_psi;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `U diag(λ) U†` with `U` unitary and eigenvalues in the right half-plane.
    fn random_normal(n: usize, seed: u64) -> OperatorMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let u = g.qr().q();
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |_, _| {
            C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(-1.2..1.2))
        }));
        OperatorMatrix::new(Space::Single(n), &u * lambda * u.adjoint()).unwrap()
    }

    #[test]
    fn tz_commutator_is_k() {
        let b = TwoModeBasis::square(8).unwrap();
        let p = safe_projector(b, 2).unwrap();
        let params = HeterodyneParams::new(1.2, 0.8, 0.4, -0.3).unwrap();
        assert!((params.k() - 1.0 / 3.0).abs() < 1e-15);
        let ops = CavesOperators::new(&params, b).unwrap();
        let id = OperatorMatrix::identity(Space::TwoMode(b));
        let comm = commutator(&ops.t, &ops.z).unwrap();
        assert!(projected_residual(&comm, &id.scale_real(1.0 / 3.0), &p).unwrap() < 1e-12);
        assert!((&ops.z - &ops.t.adjoint()).max_abs() < 1e-12);
    }

    #[test]
    fn sw_limit_tz_commute() {
        let b = TwoModeBasis::square(6).unwrap();
        let ops = CavesOperators::new(&HeterodyneParams::shapiro_wagner(1.0).unwrap(), b).unwrap();
        let p = safe_projector(b, 2).unwrap();
        let comm = commutator(&ops.t, &ops.z).unwrap();
        let zero = OperatorMatrix::zeros(Space::TwoMode(b));
        assert!(projected_residual(&comm, &zero, &p).unwrap() < 1e-12);
    }

    #[test]
    fn psi_c_reproduces_unified_operator() {
        let b = TwoModeBasis::square(5).unwrap();
        let params = HeterodyneParams::caves_frequency(0.1, 0.7, 1.9).unwrap();
        let ops = CavesOperators::new(&params, b).unwrap();
        let psi = build_psi(&params, b).unwrap();
        assert!((&ops.psi_c() - &psi.psi).max_abs() < 1e-14);
        assert!((&ops.psi_c_dag() - &psi.psi_dag).max_abs() < 1e-14);
    }

    #[test]
    fn three_forms_agree_for_a_normal_argument() {
        let t = random_normal(6, 3);
        let ops = CavesOperators::from_t(t.clone(), t.adjoint(), 1.3, 1.3);
        let tol = ToleranceConfig::default();
        let a = ops.s_symmetrized(&tol).unwrap();
        let b = ops.s_via_psi(&tol).unwrap();
        let c = ops.s_reordered(&tol).unwrap();
        assert!((&a.s - &b.s).max_abs() < 1e-10);
        assert!((&a.s - &c.s).max_abs() < 1e-10);
        assert!((&a.s_dag - &c.s_dag).max_abs() < 1e-10);
        assert!((&a.s.adjoint() - &a.s_dag).max_abs() < 1e-10);
        let (ss, _) = a.products();
        assert!((&ss - &OperatorMatrix::identity(Space::Single(6))).max_abs() < 1e-10);
    }

    #[test]
    fn closed_forms_are_identity_without_noncommutativity() {
        let t = random_normal(5, 11);
        let ops = CavesOperators::from_t(t.clone(), t.adjoint(), 2.0, 2.0);
        let (ss, sds) = ops.closed_form_products(&ToleranceConfig::default()).unwrap();
        let id = OperatorMatrix::identity(Space::Single(5));
        assert!((&ss - &id).max_abs() < 1e-12);
        assert!((&sds - &id).max_abs() < 1e-12);
    }

    #[test]
    fn trig_pair_of_a_unitary_s() {
        let t = random_normal(5, 5);
        let ops = CavesOperators::from_t(t.clone(), t.adjoint(), 1.0, 1.0);
        let tol = ToleranceConfig::default();
        let pair = ops.s_symmetrized(&tol).unwrap();
        let (c0, s0) = c0_s0(&pair);
        let id = OperatorMatrix::identity(Space::Single(5));
        assert!((&(&(&c0 * &c0) + &(&s0 * &s0)) - &id).max_abs() < 1e-10);
        assert!(commutator(&c0, &s0).unwrap().max_abs() < 1e-10);
        let (c23, c24) = ops.trig_closed_forms(&tol).unwrap();
        assert!(c23.max_abs() < 1e-12);
        assert!((&c24 - &id).max_abs() < 1e-12);
    }

    #[test]
    fn truncated_z_is_not_invertible() {
        let b = TwoModeBasis::square(4).unwrap();
        let ops = CavesOperators::new(&HeterodyneParams::caves_frequency(0.05, 0.0, 0.0).unwrap(), b)
            .unwrap();
        let tol = ToleranceConfig::default();
        assert!(ops.z_inverse(&tol).is_err());
        assert!(ops.s_symmetrized(&tol).is_err());
    }

    #[test]
    fn k_expansion_values() {
        let e = k_expansion(0.01).unwrap();
        assert!((e.k_exact - 0.019801980198019802).abs() < 1e-15);
        assert!((e.k_first_order - 0.0198).abs() < 1e-15);
        let e = k_expansion(0.1).unwrap();
        assert!((e.remainder() - 2.0 * 0.001 / 1.1).abs() < 1e-15);
        assert!(e.remainder() <= e.bound());
        assert!(k_expansion(0.0).is_err());
        assert!(k_expansion(1.0).is_err());
        let tiny = k_expansion(1e-9).unwrap();
        assert!(tiny.k_exact < 1e-8 && tiny.k_first_order < 1e-8);
    }

    #[test]
    fn closed_forms_on_truncated_space_are_computable() {
        let b = TwoModeBasis::square(6).unwrap();
        let ops = CavesOperators::new(&HeterodyneParams::caves_frequency(0.05, 0.0, 0.0).unwrap(), b)
            .unwrap();
        let (ss, sds) = ops.closed_form_products(&ToleranceConfig::default()).unwrap();
        assert!(ss.is_hermitian(1e-10) && sds.is_hermitian(1e-10));
    }
}
