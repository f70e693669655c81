//! Frame potentials of the built-in families next to their closed forms.

use designlab::designs::{clifford_set, computational_basis_set, pauli_set, phase_state_fp, phase_state_set};
use designlab::framepotential::{fp_bounds, frame_potential, haar_value};

fn main() -> designlab::Result<()> {
    println!("phase states, n = 1, K = 16");
    let phase = phase_state_set(1, 16, 1)?;
    for t in 1..=3 {
        let f = frame_potential(&phase, t)?;
        println!("  t={t}  F={f:.12}  closed form {:.12}", phase_state_fp(1, t));
    }

    let basis = computational_basis_set(3)?;
    let f = frame_potential(&basis, 1)?;
    println!("basis n=3: F_1 = {f} (Haar {})", haar_value(basis.kind, basis.dim(), 1));

    let p = pauli_set(1)?;
    let c = clifford_set(1)?;
    for t in 1..=4 {
        let (lo, _) = fp_bounds(c.kind, 2, t, c.k);
        println!(
            "t={t}  pauli F={:<6} clifford F={:<6} haar={}  lower bound={lo}",
            frame_potential(&p, t)?.round(),
            frame_potential(&c, t)?.round(),
            haar_value(c.kind, 2, t)
        );
    }
    Ok(())
}
