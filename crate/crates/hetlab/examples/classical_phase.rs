//! Classical oscillator with a time-dependent frequency: amplitude from the
//! nonlinear auxiliary equation and the phase by two routes.

use hetlab::classical::{
    classical_phase, coherent_expectations, emp_amplitude, integrate_oscillator, Combination, OmegaProfile,
};
use hetlab::fock::C64;
use hetlab::report::default_spec;

fn main() -> hetlab::Result<()> {
    let profiles = [
        ("constant, omega = 2", OmegaProfile::constant_frequency(2.0)),
        ("linear, 4 + 3t", OmegaProfile::Linear { intercept: 4.0, slope: 3.0 }),
        ("tabulated", OmegaProfile::tabulated(vec![0.0, 0.5, 1.0, 1.5], vec![4.0, 6.0, 5.0, 4.5])?),
    ];
    for (label, profile) in profiles {
        let traj = integrate_oscillator(&default_spec(profile, 0.0, 1.5, 1e-3))?;
        let comb = Combination::canonical(traj.wronskian);
        let amp = emp_amplitude(&traj, &comb.constants(traj.wronskian)?)?;
        let phase = classical_phase(&traj, &amp, &comb)?;
        println!("{label}");
        println!("  wronskian drift {:.2e}, step halving change {:.2e}", traj.wronskian_drift, traj.halving_change);
        println!("  amplitude residual {:.2e}", amp.residual);
        println!("  theta(t1) = {:.10}, route discrepancy {:.2e}", phase.quadrature.last().unwrap(), phase.discrepancy);
    }

    let gamma = C64::from_polar(1.3, 0.7);
    let e = coherent_expectations(gamma, 2.0, 0.4, 24)?;
    println!("coherent <a(t)> = {:.6}, <b+(t)> = {:.6}, product {:.6}", e.signal, e.image_creation, e.product);
    Ok(())
}
