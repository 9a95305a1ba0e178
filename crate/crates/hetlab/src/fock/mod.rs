//! Truncated two-mode Fock space: basis, operator carrier, interior
//! projectors and spectral matrix functions.

mod basis;
mod coherent;
mod functions;
mod operator;
mod projector;

pub use basis::{Mode, Space, TwoModeBasis};
pub use coherent::{coherent_state, CoherentState};
pub use functions::{
    hermitian_power, principal_matrix_function, FunctionOutput, HermitianPower, MatrixFunction, Spectrum,
    ToleranceConfig, HERMITIAN_REL_TOL, MAX_EIGENVECTOR_CONDITION,
};
pub use operator::{annihilator, commutator, embed, spectral_norm, OperatorMatrix, C64, I};
pub use projector::{projected_residual, safe_projector, Interior, SubspaceProjector};
