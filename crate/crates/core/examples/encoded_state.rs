//! The frame potential as the purity of the index register.

use designlab::designs::{pauli_set, phase_state_set};
use designlab::framepotential::frame_potential;
use designlab::qalgsim::build_encoded_state;

fn main() -> designlab::Result<()> {
    let sets = [("phase K=5", phase_state_set(1, 5, 1)?), ("pauli n=1", pauli_set(1)?)];
    for (name, set) in sets {
        for t in 1..=2 {
            let enc = build_encoded_state(&set, t)?;
            println!(
                "{name:<10} t={t}  kappa={}  purity={:.6}  via purity {:.12}  Gram {:.12}",
                enc.kappa,
                enc.purity(),
                enc.frame_potential(),
                frame_potential(&set, t)?
            );
        }
    }
    Ok(())
}
