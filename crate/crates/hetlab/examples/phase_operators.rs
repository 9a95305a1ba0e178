//! Relative-number-state phase, the polar phase operator of the balanced
//! scheme and what happens to logarithms in a finite basis.

use hetlab::fock::{commutator, projected_residual, Interior, Space, SubspaceProjector, ToleranceConfig, TwoModeBasis};
use hetlab::heterodyne::{build_psi, HeterodyneParams};
use hetlab::rns::{amplitude_operator, number_diff, rns_map, rns_phase_operator, sw_phase_operator, theta_operator};

fn main() -> hetlab::Result<()> {
    let basis = TwoModeBasis::square(8)?;
    let tol = ToleranceConfig::default();
    let full = SubspaceProjector::new(Space::TwoMode(basis), Interior::Full)?;

    let map = rns_map(basis);
    for (p, q) in [(0, 0), (3, 1), (2, 5)] {
        let idx = map.to_rns(p, q)?;
        println!("|{p},{q}> is |n={}, m={}>>", idx.n, idx.m);
    }

    let n = number_diff(basis);
    let shift = rns_phase_operator(basis);
    let shift_rule = commutator(&shift, &n)?;
    println!("RNS shift, [E, N] - E on the whole truncated space: {:.3e}", projected_residual(&shift_rule, &shift, &full)?);

    let params = HeterodyneParams::new(1.0, 1.0, 0.2, 0.9)?;
    let psi = build_psi(&params, basis)?;
    let d = sw_phase_operator(&psi.psi, &tol)?;
    let dn = commutator(&d, &n)?;
    println!("[D, N] - D on the whole truncated space: {:.3e}", projected_residual(&dn, &d, &full)?);

    let amp = amplitude_operator(&psi.psi);
    println!("amplitude operator Hermitian deviation: {:.3e}", amp.hermitian_deviation());

    match theta_operator(&psi.psi, &tol) {
        Ok(theta) => println!("theta built, norm {:.3}", theta.spectral_norm()),
        Err(e) => println!("theta from logarithms: {e}"),
    }
    Ok(())
}
