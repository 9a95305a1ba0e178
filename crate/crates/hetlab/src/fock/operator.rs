use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::basis::{Mode, Space, TwoModeBasis};
use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Dense complex matrix tagged with the space it acts on.
///
/// The checked methods (`checked_mul`, `checked_add`, ...) reject operands with
/// different tags. The arithmetic operator impls assume matching tags and
/// panic otherwise; builders inside this crate only combine operators they
/// constructed on the same basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    space: Space,
    data: DMatrix<C64>,
}

impl OperatorMatrix {
    pub fn new(space: Space, data: DMatrix<C64>) -> Result<Self> {
        let n = space.dim();
        if data.nrows() != n || data.ncols() != n {
            return Err(Error::InvalidBasis(format!(
                "matrix is {}x{} but {space} has dimension {n}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(Self { space, data })
    }

    pub(crate) fn from_parts(space: Space, data: DMatrix<C64>) -> Self {
        debug_assert_eq!(data.nrows(), space.dim());
        Self { space, data }
    }

    pub fn zeros(space: Space) -> Self {
        let n = space.dim();
        Self::from_parts(space, DMatrix::zeros(n, n))
    }

    pub fn identity(space: Space) -> Self {
        let n = space.dim();
        Self::from_parts(space, DMatrix::identity(n, n))
    }

    pub fn from_diagonal(space: Space, diag: &[C64]) -> Result<Self> {
        if diag.len() != space.dim() {
            return Err(Error::InvalidBasis(format!(
                "diagonal of length {} for {space}",
                diag.len()
            )));
        }
        Ok(Self::from_parts(
            space,
            DMatrix::from_diagonal(&DVector::from_column_slice(diag)),
        ))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn two_mode_basis(&self) -> Option<TwoModeBasis> {
        match self.space {
            Space::TwoMode(b) => Some(b),
            Space::Single(_) => None,
        }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.data
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.data[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_parts(self.space, self.data.adjoint())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_parts(self.space, &self.data * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// `self + c·1`.
    pub fn shift(&self, c: C64) -> Self {
        let mut data = self.data.clone();
        for i in 0..data.nrows() {
            data[(i, i)] += c;
        }
        Self::from_parts(self.space, data)
    }

    pub fn trace(&self) -> C64 {
        self.data.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `max|M − M†| / max|M|` (zero for the zero matrix).
    pub fn hermitian_deviation(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let dev = (&self.data - self.data.adjoint())
            .iter()
            .fold(0.0_f64, |m, z| m.max(z.norm()));
        dev / scale
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermitian_deviation() <= rel_tol
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(&self.data)
    }

    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        if v.len() != self.dim() {
            return Err(Error::InvalidBasis(format!(
                "vector of length {} for {}",
                v.len(),
                self.space
            )));
        }
        Ok(&self.data * v)
    }

    /// `⟨v|M|v⟩`.
    pub fn expectation(&self, v: &DVector<C64>) -> Result<C64> {
        let mv = self.apply(v)?;
        Ok(v.dotc(&mv))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::BasisMismatch {
                left: self.space,
                right: other.space,
            });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_parts(self.space, &self.data * &other.data))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_parts(self.space, &self.data + &other.data))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_parts(self.space, &self.data - &other.data))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.space);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

/// Largest singular value; `∞` when the matrix has non-finite entries or
/// the SVD does not converge.
pub fn spectral_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if !m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return f64::INFINITY;
    }
    let limit = 200 * m.nrows().max(m.ncols());
    match nalgebra::SVD::try_new(m.clone(), false, false, f64::EPSILON, limit) {
        Some(svd) => svd.singular_values.max(),
        None => f64::INFINITY,
    }
}

fn assert_same(a: &OperatorMatrix, b: &OperatorMatrix) {
    assert!(
        a.space == b.space,
        "operator basis mismatch: {} vs {}",
        a.space,
        b.space
    );
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_same(self, rhs);
        OperatorMatrix::from_parts(self.space, &self.data * &rhs.data)
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_same(self, rhs);
        OperatorMatrix::from_parts(self.space, &self.data + &rhs.data)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_same(self, rhs);
        OperatorMatrix::from_parts(self.space, &self.data - &rhs.data)
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        OperatorMatrix::from_parts(self.space, -&self.data)
    }
}

impl Mul<&OperatorMatrix> for C64 {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        rhs.scale(self)
    }
}

impl Mul<&OperatorMatrix> for f64 {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        rhs.scale_real(self)
    }
}

/// Single-mode lowering operator: `a|n⟩ = √n |n−1⟩` on `0..d`.
pub fn annihilator(d: usize) -> OperatorMatrix {
    let mut data = DMatrix::zeros(d, d);
    for n in 1..d {
        data[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    OperatorMatrix::from_parts(Space::Single(d), data)
}

/// Tensor `op ⊗ 1` (signal) or `1 ⊗ op` (image) in the flat ordering of `basis`.
pub fn embed(op: &OperatorMatrix, mode: Mode, basis: TwoModeBasis) -> Result<OperatorMatrix> {
    let expected = match mode {
        Mode::Signal => basis.d_a(),
        Mode::Image => basis.d_b(),
    };
    if op.space() != Space::Single(expected) {
        return Err(Error::BasisMismatch {
            left: op.space(),
            right: Space::Single(expected),
        });
    }
    let data = match mode {
        Mode::Signal => op.data.kronecker(&DMatrix::<C64>::identity(basis.d_b(), basis.d_b())),
        Mode::Image => DMatrix::<C64>::identity(basis.d_a(), basis.d_a()).kronecker(&op.data),
    };
    Ok(OperatorMatrix::from_parts(Space::TwoMode(basis), data))
}

/// `XY − YX`.
pub fn commutator(x: &OperatorMatrix, y: &OperatorMatrix) -> Result<OperatorMatrix> {
    let xy = x.checked_mul(y)?;
    let yx = y.checked_mul(x)?;
    xy.checked_sub(&yx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn annihilator_of_one_is_zero() {
        let a = annihilator(1);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.entry(0, 0), c(0.0));
    }

    #[test]
    fn annihilator_superdiagonal() {
        let a = annihilator(3);
        assert_eq!(a.entry(0, 1), c(1.0));
        assert_eq!(a.entry(1, 2), c(2f64.sqrt()));
        let nonzero = a.matrix().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn single_mode_commutator_has_edge_defect() {
        // Hand-multiplied: a a† = diag(1, 2, 0), a† a = diag(0, 1, 2).
        let a = annihilator(3);
        let comm = commutator(&a, &a.adjoint()).unwrap();
        let expected = OperatorMatrix::from_diagonal(Space::Single(3), &[c(1.0), c(1.0), c(-2.0)])
            .unwrap();
        assert!((&comm - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = annihilator(5);
        let x = &a + &a.adjoint().scale(C64::new(0.3, -1.1));
        assert_eq!(commutator(&x, &x).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn embed_identity_is_identity() {
        let basis = TwoModeBasis::new(3, 4).unwrap();
        let id = OperatorMatrix::identity(Space::Single(3));
        let e = embed(&id, Mode::Signal, basis).unwrap();
        assert_eq!(e, OperatorMatrix::identity(Space::TwoMode(basis)));
    }

    #[test]
    fn embed_signal_lowering_couples_one_q_to_zero_q() {
        let basis = TwoModeBasis::square(2).unwrap();
        let a = embed(&annihilator(2), Mode::Signal, basis).unwrap();
        for q in 0..2 {
            let from = basis.index_of(1, q).unwrap();
            let to = basis.index_of(0, q).unwrap();
            assert_eq!(a.entry(to, from), c(1.0));
        }
        let nonzero = a.matrix().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn cross_mode_operators_commute_exactly() {
        let basis = TwoModeBasis::new(4, 5).unwrap();
        let a = embed(&annihilator(4), Mode::Signal, basis).unwrap();
        let b = embed(&annihilator(5), Mode::Image, basis).unwrap();
        assert_eq!(commutator(&a, &b.adjoint()).unwrap().max_abs(), 0.0);
        assert_eq!(commutator(&a, &b).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn embed_rejects_wrong_dimension() {
        let basis = TwoModeBasis::new(3, 4).unwrap();
        assert!(embed(&annihilator(4), Mode::Signal, basis).is_err());
        assert!(embed(&annihilator(4), Mode::Image, basis).is_ok());
    }

    #[test]
    fn mismatched_tags_are_rejected() {
        let a = annihilator(3);
        let b = annihilator(4);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::BasisMismatch { .. })
        ));
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn commutator_is_antisymmetric() {
        let a = annihilator(4);
        let x = &a + &a.adjoint().pow(2);
        let y = a.adjoint().scale(C64::new(0.0, 2.0));
        let xy = commutator(&x, &y).unwrap();
        let yx = commutator(&y, &x).unwrap();
        assert!((&xy + &yx).max_abs() < 1e-14);
    }
}
