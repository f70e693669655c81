//! Counting gadgets: frame potentials that encode a satisfying count.

use designlab::circuits::BooleanFunction;
use designlab::designs::{computational_basis_set, pauli_set, stabilizer_states};
use designlab::reductions::{sfp_gadget, stdes_gadget, ufp_gadget, MajSatThresholds};

fn planted(n_vars: usize, s: u64) -> designlab::Result<BooleanFunction> {
    BooleanFunction::from_fn(n_vars, |x| (x as u64) < s)
}

fn main() -> designlab::Result<()> {
    let base = computational_basis_set(4)?;
    println!("state gadget, n = 5, t = 2");
    for s in [0, 3, 4, 5, 8] {
        let g = sfp_gadget(&planted(3, s)?, &base, 2, None)?;
        println!("  s={s}  predicted {:.10}  Gram {:.10}", g.predicted_fp, g.verify()?);
    }
    if let Some(MajSatThresholds::AlphaBeta { alpha, beta, cut, .. }) =
        sfp_gadget(&planted(3, 0)?, &base, 2, None)?.thresholds
    {
        println!("  cut {cut}: F ≥ {alpha:.8} above, F ≤ {beta:.8} below");
    }

    let base = pauli_set(3)?;
    println!("unitary gadget, n = 4, t = 1");
    for s in 0..=4 {
        let g = ufp_gadget(&planted(2, s)?, &base, 1, None)?;
        println!("  s={s}  predicted {:.6}  Gram {:.6}", g.predicted_fp, g.verify()?);
    }

    let base = stabilizer_states(2)?;
    let g = stdes_gadget(&planted(1, 1)?, &base, 2, None)?;
    println!("design gadget on stabilizer states: predicted {:.10}, Gram {:.10}", g.predicted_fp, g.verify()?);
    Ok(())
}
