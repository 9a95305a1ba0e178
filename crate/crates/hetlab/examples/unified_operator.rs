//! The unified operator for balanced and unbalanced weights.

use hetlab::fock::{commutator, projected_residual, safe_projector, OperatorMatrix, Space, TwoModeBasis};
use hetlab::heterodyne::{build_psi, quadratures, HeterodyneParams};

fn main() -> hetlab::Result<()> {
    let basis = TwoModeBasis::square(10)?;
    let interior = safe_projector(basis, 2)?;
    let id = OperatorMatrix::identity(Space::TwoMode(basis));

    let cases = [
        ("balanced", HeterodyneParams::new(1.0, 1.0, 0.4, -0.3)?),
        ("frequency ratio 0.1", HeterodyneParams::caves_frequency(0.1, 0.4, -0.3)?),
    ];
    for (label, params) in cases {
        let psi = build_psi(&params, basis)?;
        let c = commutator(&psi.psi, &psi.psi_dag)?;
        let expected = id.scale_real(params.a() - params.b());
        let (y1, y2) = quadratures(&psi.psi);
        let cq = commutator(&y1, &y2)?;
        println!("{label}: A = {}, B = {}, k = {:.4}", params.a(), params.b(), params.k());
        println!("  [psi, psi+] - (A-B): {:.3e}", projected_residual(&c, &expected, &interior)?);
        println!("  largest entry of [Y1, Y2]: {:.3e}", cq.max_abs());
    }
    Ok(())
}
