//! The unified heterodyne operator ψ = √A·ã + √B·b̃†, its quadratures, and
//! the su(1,1) / Caves generator sets built from the rotated modes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{annihilator, embed, Mode, OperatorMatrix, TwoModeBasis, C64, I};

/// Weights `(A, B)` and rotation angles `(α, β)` of the unified operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeterodyneParams {
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    alpha: f64,
    beta: f64,
}

impl HeterodyneParams {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParams(format!("A must be positive, got {a}")));
        }
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::InvalidParams(format!("B must be nonnegative, got {b}")));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams("angles must be finite".into()));
        }
        Ok(Self { a, b, alpha, beta })
    }

    /// Shapiro–Wagner weights `A = B = a`.
    pub fn shapiro_wagner(a: f64) -> Result<Self> {
        Self::new(a, a, 0.0, 0.0)
    }

    /// `A = 1 + r`, `B = 1 − r` with `r = ν_IF/ν₀ ∈ (0, 1)`.
    pub fn caves_frequency(r: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParams(format!(
                "frequency ratio must lie in (0, 1), got {r}"
            )));
        }
        Self::new(1.0 + r, 1.0 - r, alpha, beta)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `μ = √(B/A)`.
    pub fn mu(&self) -> f64 {
        (self.b / self.a).sqrt()
    }

    /// `k = (A − B)/A = 1 − μ²`.
    pub fn k(&self) -> f64 {
        (self.a - self.b) / self.a
    }

    /// `ν_IF/ν₀ = (A − B)/2`, defined when `A + B = 2`.
    pub fn frequency_ratio(&self) -> Option<f64> {
        ((self.a + self.b - 2.0).abs() <= 1e-12).then(|| (self.a - self.b) / 2.0)
    }

    pub fn is_shapiro_wagner(&self) -> bool {
        (self.a - self.b).abs() <= 1e-14 * self.a.max(self.b)
    }

    pub fn with_angles(&self, alpha: f64, beta: f64) -> Self {
        Self { alpha, beta, ..*self }
    }

    /// Same angles and `A`, with `B` replaced by `A`.
    pub fn sw_projection(&self) -> Self {
        Self { b: self.a, ..*self }
    }
}

/// Rotation-valued modes together with their Hermitian quadratures.
#[derive(Debug, Clone)]
pub struct RotatedModes {
    pub basis: TwoModeBasis,
    pub a: OperatorMatrix,
    pub b: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub b_dag: OperatorMatrix,
    pub a1: OperatorMatrix,
    pub a2: OperatorMatrix,
    pub b1: OperatorMatrix,
    pub b2: OperatorMatrix,
}

/// Builds `ã`, `b̃` from rotated quadratures.
///
/// Signal: `â = â₁ + iâ₂`, rotate `(â₁, â₂)` by `+α`, recombine `ã = ã₁ + iã₂`,
/// giving `ã = e^{iα}â`.
/// Image: the quadratures are those of `b̂† = b̂₁ + ib̂₂`, rotated by the
/// transposed matrix, recombined `b̃ = b̃₁ − ib̃₂`, giving `b̃ = e^{iβ}b̂`. With
/// this convention `ψ = √A e^{iα}â + √B e^{−iβ}b̂†` and `α = β = 0` is `â + b̂†`.
pub fn rotated_modes(params: &HeterodyneParams, basis: TwoModeBasis) -> Result<RotatedModes> {
    let a0 = embed(&annihilator(basis.d_a()), Mode::Signal, basis)?;
    let b0 = embed(&annihilator(basis.d_b()), Mode::Image, basis)?;
    let half = C64::new(0.5, 0.0);
    let half_i = C64::new(0.0, -0.5); // 1/(2i)

    let a_dag0 = a0.adjoint();
    let qa1 = (&a0 + &a_dag0).scale(half);
    let qa2 = (&a0 - &a_dag0).scale(half_i);

    let b_dag0 = b0.adjoint();
    let qb1 = (&b_dag0 + &b0).scale(half);
    let qb2 = (&b_dag0 - &b0).scale(half_i);

    let (sa, ca) = params.alpha().sin_cos();
    let (sb, cb) = params.beta().sin_cos();

    let a1 = &(ca * &qa1) - &(sa * &qa2);
    let a2 = &(sa * &qa1) + &(ca * &qa2);
    let b1 = &(cb * &qb1) + &(sb * &qb2);
    let b2 = &(-sb * &qb1) + &(cb * &qb2);

    let a = &a1 + &a2.scale(I);
    let b = &b1 - &b2.scale(I);
    Ok(RotatedModes {
        basis,
        a_dag: a.adjoint(),
        b_dag: b.adjoint(),
        a,
        b,
        a1,
        a2,
        b1,
        b2,
    })
}

#[derive(Debug, Clone)]
pub struct Psi {
    pub params: HeterodyneParams,
    pub psi: OperatorMatrix,
    pub psi_dag: OperatorMatrix,
}

impl Psi {
    pub fn space(&self) -> crate::fock::Space {
        self.psi.space()
    }
}

pub fn build_psi(params: &HeterodyneParams, basis: TwoModeBasis) -> Result<Psi> {
    let modes = rotated_modes(params, basis)?;
    Ok(psi_from_modes(params, &modes))
}

pub fn psi_from_modes(params: &HeterodyneParams, modes: &RotatedModes) -> Psi {
    let psi = &(params.a().sqrt() * &modes.a) + &(params.b().sqrt() * &modes.b_dag);
    Psi {
        params: *params,
        psi_dag: psi.adjoint(),
        psi,
    }
}

/// `y₁ = (ψ + ψ†)/2`, `y₂ = (ψ − ψ†)/(2i)`.
pub fn quadratures(psi: &OperatorMatrix) -> (OperatorMatrix, OperatorMatrix) {
    let dag = psi.adjoint();
    let y1 = (psi + &dag).scale_real(0.5);
    let y2 = (psi - &dag).scale(C64::new(0.0, -0.5));
    (y1, y2)
}

/// su(1,1) generators in the two-boson realization plus the Caves set.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub j0: OperatorMatrix,
    pub j1: OperatorMatrix,
    pub j2: OperatorMatrix,
    /// `J₊ = J₁ + iJ₂ = ã†b̃†`.
    pub j_plus: OperatorMatrix,
    /// `J₋ = J₁ − iJ₂ = ãb̃`.
    pub j_minus: OperatorMatrix,
    /// Parabolic generator `K₊ = J₀ + J₁`.
    pub k_plus: OperatorMatrix,
    pub n1: OperatorMatrix,
    pub n2: OperatorMatrix,
    pub l_plus: OperatorMatrix,
    pub l_minus: OperatorMatrix,
    /// Number difference `ã†ã − b̃†b̃`.
    pub n_hat: OperatorMatrix,
}

impl GeneratorSet {
    pub fn from_modes(modes: &RotatedModes) -> Self {
        let na = &modes.a_dag * &modes.a;
        let nb = &modes.b_dag * &modes.b;
        let raise = &modes.a_dag * &modes.b_dag;
        let lower = &modes.a * &modes.b;
        let one = C64::new(1.0, 0.0);

        let j0 = (&na + &nb).shift(one).scale_real(0.5);
        let j1 = (&raise + &lower).scale_real(0.5);
        let j2 = (&raise - &lower).scale(C64::new(0.0, -0.5));
        let j_plus = &j1 + &j2.scale(I);
        let j_minus = &j1 - &j2.scale(I);
        let k_plus = &j0 + &j1;
        let n1 = j0.clone();
        let n2 = (&na - &nb).shift(-one).scale_real(0.5);
        let n_hat = &na - &nb;
        Self {
            j0,
            j1,
            j2,
            j_plus,
            j_minus,
            k_plus,
            n1,
            n2,
            l_plus: raise,
            l_minus: lower,
            n_hat,
        }
    }
}

/// Generators from the unrotated modes (`α = β = 0`).
pub fn su11_generators(basis: TwoModeBasis) -> Result<GeneratorSet> {
    let modes = rotated_modes(&HeterodyneParams::new(1.0, 1.0, 0.0, 0.0)?, basis)?;
    Ok(GeneratorSet::from_modes(&modes))
}

/// Same realization, read as the Caves algebra `{L±, N₁, N₂}`.
pub fn caves_algebra(basis: TwoModeBasis) -> Result<GeneratorSet> {
    su11_generators(basis)
}

/// Generators rebuilt from the rotated modes of `params`.
pub fn rotated_generators(params: &HeterodyneParams, basis: TwoModeBasis) -> Result<GeneratorSet> {
    Ok(GeneratorSet::from_modes(&rotated_modes(params, basis)?))
}

/// `Ĉ = J₀² − J₁² − J₂²`.
pub fn casimir(g: &GeneratorSet) -> OperatorMatrix {
    &(&(&g.j0 * &g.j0) - &(&g.j1 * &g.j1)) - &(&g.j2 * &g.j2)
}

/// The two generator expansions of `ψψ†` and `ψ†ψ`:
/// `A(N₁+N₂+1) + B(N₁−N₂−1) + √(AB)(L₊+L₋)` and
/// `A(N₁+N₂) + B(N₁−N₂) + √(AB)(L₋+L₊)`.
pub fn psi_product_expansions(
    params: &HeterodyneParams,
    g: &GeneratorSet,
) -> (OperatorMatrix, OperatorMatrix) {
    let one = C64::new(1.0, 0.0);
    let (a, b) = (params.a(), params.b());
    let sum = &g.n1 + &g.n2;
    let diff = &g.n1 - &g.n2;
    let pair = (&g.l_plus + &g.l_minus).scale_real((a * b).sqrt());
    let psi_psi_dag = &(&sum.shift(one).scale_real(a) + &diff.shift(-one).scale_real(b)) + &pair;
    let psi_dag_psi = &(&sum.scale_real(a) + &diff.scale_real(b)) + &pair;
    (psi_psi_dag, psi_dag_psi)
}

/// Mode-level expansions `A ã†ã + B b̃†b̃ + √(AB)(ãb̃ + ã†b̃†) + A` (for `ψψ†`)
/// and the same with `+ B` (for `ψ†ψ`).
pub fn psi_product_mode_expansions(
    params: &HeterodyneParams,
    modes: &RotatedModes,
) -> (OperatorMatrix, OperatorMatrix) {
    let (a, b) = (params.a(), params.b());
    let na = &modes.a_dag * &modes.a;
    let nb = &modes.b_dag * &modes.b;
    let pair = (&(&modes.a * &modes.b) + &(&modes.a_dag * &modes.b_dag)).scale_real((a * b).sqrt());
    let core = &(&na.scale_real(a) + &nb.scale_real(b)) + &pair;
    (core.shift(C64::new(a, 0.0)), core.shift(C64::new(b, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{commutator, projected_residual, safe_projector, Space};
    use std::f64::consts::FRAC_PI_2;

    fn basis(d: usize) -> TwoModeBasis {
        TwoModeBasis::square(d).unwrap()
    }

    fn raw_modes(basis: TwoModeBasis) -> (OperatorMatrix, OperatorMatrix) {
        (
            embed(&annihilator(basis.d_a()), Mode::Signal, basis).unwrap(),
            embed(&annihilator(basis.d_b()), Mode::Image, basis).unwrap(),
        )
    }

    #[test]
    fn params_validation_and_derived_values() {
        assert!(HeterodyneParams::new(0.0, 1.0, 0.0, 0.0).is_err());
        assert!(HeterodyneParams::new(1.0, -0.1, 0.0, 0.0).is_err());
        let p = HeterodyneParams::new(1.2, 0.8, 0.0, 0.0).unwrap();
        assert!((p.k() - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.k() - (1.0 - p.mu() * p.mu())).abs() < 1e-15);
        let c = HeterodyneParams::caves_frequency(0.1, 0.0, 0.0).unwrap();
        assert!((c.frequency_ratio().unwrap() - 0.1).abs() < 1e-15);
        assert!(HeterodyneParams::caves_frequency(1.0, 0.0, 0.0).is_err());
        let sw = HeterodyneParams::shapiro_wagner(0.7).unwrap();
        assert!(sw.is_shapiro_wagner());
        assert_eq!(sw.mu(), 1.0);
        assert_eq!(sw.k(), 0.0);
    }

    #[test]
    fn zero_angle_gives_bare_signal_mode() {
        let b = basis(4);
        let modes = rotated_modes(&HeterodyneParams::new(1.0, 1.0, 0.0, 0.0).unwrap(), b).unwrap();
        let (a0, b0) = raw_modes(b);
        assert!((&modes.a - &a0).max_abs() < 1e-15);
        assert!((&modes.b - &b0).max_abs() < 1e-15);
    }

    #[test]
    fn quarter_turn_is_a_phase() {
        let b = basis(5);
        let modes =
            rotated_modes(&HeterodyneParams::new(1.0, 1.0, FRAC_PI_2, 0.0).unwrap(), b).unwrap();
        let (a0, _) = raw_modes(b);
        assert!((&modes.a - &a0.scale(I)).max_abs() < 1e-12);
    }

    #[test]
    fn rotation_is_a_mode_phase_for_any_angle() {
        let b = basis(4);
        let (alpha, beta) = (0.77, -2.1);
        let modes = rotated_modes(&HeterodyneParams::new(1.0, 1.0, alpha, beta).unwrap(), b).unwrap();
        let (a0, b0) = raw_modes(b);
        assert!((&modes.a - &a0.scale(C64::from_polar(1.0, alpha))).max_abs() < 1e-12);
        assert!((&modes.b - &b0.scale(C64::from_polar(1.0, beta))).max_abs() < 1e-12);
        for q in [&modes.a1, &modes.a2, &modes.b1, &modes.b2] {
            assert!(q.is_hermitian(1e-12));
        }
    }

    #[test]
    fn rotated_modes_are_canonical_on_interior() {
        let b = basis(6);
        let modes = rotated_modes(&HeterodyneParams::new(1.0, 1.0, 0.4, 1.3).unwrap(), b).unwrap();
        let id = OperatorMatrix::identity(Space::TwoMode(b));
        let p = safe_projector(b, 1).unwrap();
        let caa = commutator(&modes.a, &modes.a_dag).unwrap();
        let cbb = commutator(&modes.b, &modes.b_dag).unwrap();
        assert!(projected_residual(&caa, &id, &p).unwrap() < 1e-14);
        assert!(projected_residual(&cbb, &id, &p).unwrap() < 1e-14);
        assert!(commutator(&modes.a, &modes.b).unwrap().max_abs() < 1e-14);
        assert!(commutator(&modes.a, &modes.b_dag).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn sw_psi_is_signal_plus_image_creation() {
        let b = basis(5);
        let psi = build_psi(&HeterodyneParams::shapiro_wagner(1.0).unwrap(), b).unwrap();
        let (a0, b0) = raw_modes(b);
        assert!((&psi.psi - &(&a0 + &b0.adjoint())).max_abs() < 1e-15);
    }

    #[test]
    fn psi_commutator_is_weight_difference() {
        let b = basis(8);
        let p = safe_projector(b, 2).unwrap();
        for params in [
            HeterodyneParams::new(1.5, 0.5, 0.3, -0.8).unwrap(),
            HeterodyneParams::caves_frequency(0.1, 0.0, 0.0).unwrap(),
            HeterodyneParams::new(0.4, 2.0, 1.0, 2.0).unwrap(),
        ] {
            let psi = build_psi(&params, b).unwrap();
            let comm = commutator(&psi.psi, &psi.psi_dag).unwrap();
            let rhs = OperatorMatrix::identity(Space::TwoMode(b)).scale_real(params.a() - params.b());
            assert!(projected_residual(&comm, &rhs, &p).unwrap() < 1e-12);
        }
    }

    #[test]
    fn quadratures_are_hermitian_and_commute_in_sw_limit() {
        let b = basis(8);
        let psi = build_psi(&HeterodyneParams::new(2.0, 2.0, 0.2, 0.9).unwrap(), b).unwrap();
        let (y1, y2) = quadratures(&psi.psi);
        assert!(y1.is_hermitian(1e-12) && y2.is_hermitian(1e-12));
        let p = safe_projector(b, 2).unwrap();
        let comm = commutator(&y1, &y2).unwrap();
        let zero = OperatorMatrix::zeros(Space::TwoMode(b));
        assert!(projected_residual(&comm, &zero, &p).unwrap() < 1e-12);
    }

    #[test]
    fn generator_adjoint_structure() {
        let g = su11_generators(basis(5)).unwrap();
        for h in [&g.j0, &g.j1, &g.j2, &g.n1, &g.n2, &g.n_hat] {
            assert!(h.is_hermitian(1e-12));
        }
        assert!((&g.j_plus.adjoint() - &g.j_minus).max_abs() < 1e-14);
        assert!((&g.l_plus.adjoint() - &g.l_minus).max_abs() < 1e-14);
        assert!((&g.k_plus - &(&g.j0 + &g.j1)).max_abs() == 0.0);
        assert!((&g.j_plus - &g.l_plus).max_abs() < 1e-14);
    }

    #[test]
    fn casimir_eigenvalues_on_fock_states() {
        let b = basis(8);
        let g = su11_generators(b).unwrap();
        let c = casimir(&g);
        let vac = b.index_of(0, 0).unwrap();
        assert!((c.entry(vac, vac) - C64::new(-0.25, 0.0)).norm() < 1e-12);
        let s = b.index_of(3, 1).unwrap();
        assert!((c.entry(s, s) - C64::new(0.75, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn product_expansions_agree_with_direct_products() {
        let b = basis(8);
        let params = HeterodyneParams::new(1.3, 0.6, 0.5, -0.4).unwrap();
        let modes = rotated_modes(&params, b).unwrap();
        let psi = psi_from_modes(&params, &modes);
        let g = GeneratorSet::from_modes(&modes);
        let (l32, l33) = psi_product_expansions(&params, &g);
        let (l11, l12) = psi_product_mode_expansions(&params, &modes);
        let p = safe_projector(b, 2).unwrap();
        let pp = &psi.psi * &psi.psi_dag;
        let dp = &psi.psi_dag * &psi.psi;
        for (x, y) in [(&pp, &l32), (&dp, &l33), (&pp, &l11), (&dp, &l12)] {
            assert!(projected_residual(x, y, &p).unwrap() < 1e-12);
        }
    }
}
