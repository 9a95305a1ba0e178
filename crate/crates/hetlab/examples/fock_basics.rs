//! Two-mode truncated Fock space: ladder matrices, the canonical commutator
//! on an interior block, and a truncated coherent state.

use hetlab::fock::{
    annihilator, coherent_state, commutator, embed, projected_residual, safe_projector, Interior, Mode,
    OperatorMatrix, Space, SubspaceProjector, TwoModeBasis, C64,
};

fn main() -> hetlab::Result<()> {
    let basis = TwoModeBasis::new(6, 4)?;
    println!("basis {}x{} has dimension {}", basis.d_a(), basis.d_b(), basis.dim());
    println!("|2,3> sits at flat index {}", basis.index_of(2, 3)?);

    let a = embed(&annihilator(basis.d_a()), Mode::Signal, basis)?;
    let a_dag = a.adjoint();
    let ccr = commutator(&a, &a_dag)?;
    let id = OperatorMatrix::identity(Space::TwoMode(basis));

    let full = SubspaceProjector::new(Space::TwoMode(basis), Interior::Full)?;
    let inner = safe_projector(basis, 1)?;
    println!("[a, a+] - 1 on the full space: {:.3e}", projected_residual(&ccr, &id, &full)?);
    println!("[a, a+] - 1 one level below the edge: {:.3e}", projected_residual(&ccr, &id, &inner)?);

    for gamma in [C64::new(0.5, 0.0), C64::new(1.0, 1.0), C64::new(2.5, -0.5)] {
        let state = coherent_state(gamma, 12)?;
        println!(
            "gamma = {gamma:.2}: norm {:.12}, tail bound {:.2e}, tail ok {}",
            state.amplitudes.norm(),
            state.tail_bound,
            state.tail_ok()
        );
    }
    Ok(())
}
