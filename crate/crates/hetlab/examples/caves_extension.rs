//! The unbalanced extension: T and Z, the attempt to build S, and the small-k
//! expansion.

use hetlab::caves::{k_expansion, CavesOperators, DEFAULT_K_GRID};
use hetlab::fock::{commutator, ToleranceConfig, TwoModeBasis};
use hetlab::heterodyne::HeterodyneParams;

fn main() -> hetlab::Result<()> {
    let basis = TwoModeBasis::square(8)?;
    let tol = ToleranceConfig::default();
    let params = HeterodyneParams::caves_frequency(0.05, 0.0, 0.0)?;
    let ops = CavesOperators::new(&params, basis)?;
    println!("A = {}, B = {}, mu = {:.6}, k = {:.6}", params.a(), params.b(), ops.mu(), ops.k());

    let tz = commutator(&ops.t, &ops.z)?;
    println!("largest entry of [T, Z]: {:.3e}", tz.max_abs());
    println!("T^{} = 0 exactly: {}", 2 * basis.d_a(), ops.t.pow(2 * basis.d_a() as u32).max_abs() == 0.0);

    match ops.s_symmetrized(&tol) {
        Ok(pair) => println!("S built, |S| = {:.3}", pair.s.spectral_norm()),
        Err(e) => println!("S: {e}"),
    }

    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "r", "2r/(1+r)", "2r(1-r)", "remainder", "2r^3");
    for r in DEFAULT_K_GRID {
        let k = k_expansion(r)?;
        println!("{r:>8} {:>12.8} {:>12.8} {:>12.3e} {:>12.3e}", k.k_exact, k.k_first_order, k.remainder(), k.bound());
    }
    Ok(())
}
