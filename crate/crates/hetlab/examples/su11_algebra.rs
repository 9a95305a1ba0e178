//! su(1,1) in the two-boson realization: commutators, the Casimir and the
//! parabolic generator.

use hetlab::fock::{commutator, projected_residual, safe_projector, TwoModeBasis, C64};
use hetlab::heterodyne::{build_psi, casimir, su11_generators, HeterodyneParams};

fn main() -> hetlab::Result<()> {
    let basis = TwoModeBasis::square(10)?;
    let g = su11_generators(basis)?;
    let interior = safe_projector(basis, 2)?;

    let lhs = commutator(&g.j1, &g.j2)?;
    let rhs = g.j0.scale(C64::new(0.0, -1.0));
    println!("[J1, J2] + iJ0: {:.3e}", projected_residual(&lhs, &rhs, &interior)?);

    let lhs = commutator(&g.j0, &g.j_plus)?;
    println!("[J0, J+] - J+: {:.3e}", projected_residual(&lhs, &g.j_plus, &interior)?);

    let c = casimir(&g);
    let half_n = g.n_hat.scale_real(0.5);
    let expected = (&half_n * &half_n).shift(C64::new(-0.25, 0.0));
    println!("Casimir against (N/2)^2 - 1/4: {:.3e}", projected_residual(&c, &expected, &interior)?);

    let params = HeterodyneParams::shapiro_wagner(1.0)?;
    let psi = build_psi(&params, basis)?;
    let half = (&psi.psi_dag * &psi.psi).scale_real(0.5);
    println!("K+ against psi+ psi / 2: {:.3e}", projected_residual(&g.k_plus, &half, &interior)?);
    Ok(())
}
