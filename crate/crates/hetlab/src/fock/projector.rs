use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::basis::{Space, TwoModeBasis};
use super::operator::{spectral_norm, OperatorMatrix, C64};
use crate::error::{Error, Result};

/// Which Fock states count as "interior" for a residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "value")]
pub enum Interior {
    /// Every state; margin 0.
    Full,
    /// `p ≤ d_a − 1 − margin` and `q ≤ d_b − 1 − margin`.
    Margin(usize),
    /// `p + q ≤ n`, independent of the cutoffs.
    TotalPhotons(usize),
}

/// Diagonal 0/1 projector onto a set of kept basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceProjector {
    space: Space,
    interior: Interior,
    kept: Vec<usize>,
}

impl SubspaceProjector {
    pub fn new(space: Space, interior: Interior) -> Result<Self> {
        let kept: Vec<usize> = match (space, interior) {
            (_, Interior::Full) => (0..space.dim()).collect(),
            (Space::Single(d), Interior::Margin(m)) => {
                if m >= d {
                    return Err(Error::MarginTooLarge { margin: m, d_a: d, d_b: d });
                }
                (0..d - m).collect()
            }
            (Space::Single(d), Interior::TotalPhotons(n)) => (0..d.min(n + 1)).collect(),
            (Space::TwoMode(b), Interior::Margin(m)) => {
                if m >= b.d_a().min(b.d_b()) {
                    return Err(Error::MarginTooLarge {
                        margin: m,
                        d_a: b.d_a(),
                        d_b: b.d_b(),
                    });
                }
                b.states()
                    .enumerate()
                    .filter(|(_, (p, q))| *p + m < b.d_a() && *q + m < b.d_b())
                    .map(|(i, _)| i)
                    .collect()
            }
            (Space::TwoMode(b), Interior::TotalPhotons(n)) => b
                .states()
                .enumerate()
                .filter(|(_, (p, q))| p + q <= n)
                .map(|(i, _)| i)
                .collect(),
        };
        if kept.is_empty() {
            return Err(Error::InvalidBasis("interior selects no states".into()));
        }
        Ok(Self { space, interior, kept })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn interior(&self) -> Interior {
        self.interior
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn rank(&self) -> usize {
        self.kept.len()
    }

    pub fn margin(&self) -> Option<usize> {
        match self.interior {
            Interior::Full => Some(0),
            Interior::Margin(m) => Some(m),
            Interior::TotalPhotons(_) => None,
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.kept.binary_search(&index).is_ok()
    }

    pub fn matrix(&self) -> OperatorMatrix {
        let n = self.space.dim();
        let mut data = DMatrix::zeros(n, n);
        for &i in &self.kept {
            data[(i, i)] = C64::new(1.0, 0.0);
        }
        OperatorMatrix::from_parts(self.space, data)
    }

    /// Product of two diagonal projectors: keeps the intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::BasisMismatch {
                left: self.space,
                right: other.space,
            });
        }
        let kept: Vec<usize> = self
            .kept
            .iter()
            .copied()
            .filter(|i| other.contains(*i))
            .collect();
        if kept.is_empty() {
            return Err(Error::InvalidBasis("intersection selects no states".into()));
        }
        let interior = match (self.interior, other.interior) {
            (Interior::Full, x) | (x, Interior::Full) => x,
            (Interior::Margin(a), Interior::Margin(b)) => Interior::Margin(a.max(b)),
            (Interior::TotalPhotons(a), Interior::TotalPhotons(b)) => {
                Interior::TotalPhotons(a.min(b))
            }
            (x, _) => x,
        };
        Ok(Self { space: self.space, interior, kept })
    }

    /// The kept block `P M P` as a `rank × rank` matrix.
    pub fn compress(&self, op: &OperatorMatrix) -> Result<DMatrix<C64>> {
        if op.space() != self.space {
            return Err(Error::BasisMismatch {
                left: op.space(),
                right: self.space,
            });
        }
        let k = self.kept.len();
        let m = op.matrix();
        Ok(DMatrix::from_fn(k, k, |r, c| m[(self.kept[r], self.kept[c])]))
    }

    pub fn compressed_norm(&self, op: &OperatorMatrix) -> Result<f64> {
        Ok(spectral_norm(&self.compress(op)?))
    }
}

/// Rectangle-interior projector with `margin` quanta of clearance below each cutoff.
pub fn safe_projector(basis: TwoModeBasis, margin: usize) -> Result<SubspaceProjector> {
    let interior = if margin == 0 {
        Interior::Full
    } else {
        Interior::Margin(margin)
    };
    SubspaceProjector::new(Space::TwoMode(basis), interior)
}

/// `‖P(X − Y)P‖₂ / max(1, ‖PXP‖₂)`.
pub fn projected_residual(
    x: &OperatorMatrix,
    y: &OperatorMatrix,
    projector: &SubspaceProjector,
) -> Result<f64> {
    let diff = x.checked_sub(y)?;
    let num = projector.compressed_norm(&diff)?;
    let den = projector.compressed_norm(x)?.max(1.0);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilator, commutator};

    #[test]
    fn margin_zero_is_identity() {
        let basis = TwoModeBasis::new(3, 4).unwrap();
        let p = safe_projector(basis, 0).unwrap();
        assert_eq!(p.matrix(), OperatorMatrix::identity(Space::TwoMode(basis)));
    }

    #[test]
    fn margin_two_on_four_by_four_keeps_four_states() {
        // Enumeration: p, q ∈ {0, 1}.
        let basis = TwoModeBasis::square(4).unwrap();
        let p = safe_projector(basis, 2).unwrap();
        assert_eq!(p.rank(), 4);
        let expected: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| basis.index_of(a, b).unwrap())
            .collect();
        assert_eq!(p.kept(), expected.as_slice());
    }

    #[test]
    fn margin_too_large_is_rejected() {
        let basis = TwoModeBasis::new(3, 5).unwrap();
        assert!(matches!(
            safe_projector(basis, 3),
            Err(Error::MarginTooLarge { .. })
        ));
    }

    #[test]
    fn projector_is_idempotent_and_hermitian() {
        let basis = TwoModeBasis::new(5, 4).unwrap();
        let p = safe_projector(basis, 1).unwrap().matrix();
        assert_eq!(&p * &p, p);
        assert_eq!(p.adjoint(), p);
    }

    #[test]
    fn nested_projectors_compose_to_larger_margin() {
        let basis = TwoModeBasis::square(6).unwrap();
        for (m1, m2) in [(1, 3), (2, 2), (4, 0)] {
            let p1 = safe_projector(basis, m1).unwrap();
            let p2 = safe_projector(basis, m2).unwrap();
            let pmax = safe_projector(basis, m1.max(m2)).unwrap();
            assert_eq!(&p1.matrix() * &p2.matrix(), pmax.matrix());
            assert_eq!(p1.intersect(&p2).unwrap().kept(), pmax.kept());
        }
    }

    #[test]
    fn total_photon_interior_counts() {
        let basis = TwoModeBasis::square(8).unwrap();
        let p = SubspaceProjector::new(Space::TwoMode(basis), Interior::TotalPhotons(4)).unwrap();
        assert_eq!(p.rank(), 15);
    }

    #[test]
    fn residual_of_equal_operators_is_zero() {
        let a = annihilator(5);
        let p = SubspaceProjector::new(Space::Single(5), Interior::Margin(1)).unwrap();
        assert_eq!(projected_residual(&a, &a, &p).unwrap(), 0.0);
    }

    #[test]
    fn residual_of_scaled_identity_offset() {
        let basis = TwoModeBasis::square(4).unwrap();
        let space = Space::TwoMode(basis);
        let n = crate::fock::embed(&annihilator(4), crate::fock::Mode::Signal, basis).unwrap();
        let y = &n.adjoint() * &n;
        let eps = 1e-3;
        let x = y.shift(C64::new(eps, 0.0));
        let p = SubspaceProjector::new(space, Interior::Margin(1)).unwrap();
        let pxp = p.compressed_norm(&x).unwrap();
        let r = projected_residual(&x, &y, &p).unwrap();
        assert!((r - eps / pxp.max(1.0)).abs() < 1e-15);
    }

    #[test]
    fn commutator_edge_defect_is_excluded_by_margin() {
        let a = annihilator(6);
        let comm = commutator(&a, &a.adjoint()).unwrap();
        let id = OperatorMatrix::identity(Space::Single(6));
        let p = SubspaceProjector::new(Space::Single(6), Interior::Margin(1)).unwrap();
        assert!(projected_residual(&comm, &id, &p).unwrap() < 1e-14);
        let full = SubspaceProjector::new(Space::Single(6), Interior::Full).unwrap();
        assert!(projected_residual(&comm, &id, &full).unwrap() > 1.0);
    }
}
