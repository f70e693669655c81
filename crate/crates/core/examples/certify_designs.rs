//! Certify or refute approximate designs from the frame potential and, where
//! it fits, the exact moment distance.

use designlab::designs::{clifford_set, computational_basis_set, pauli_set, phase_state_set};
use designlab::framepotential::{certify, certify_with, CertifyMode, CertifyOptions};

fn main() -> designlab::Result<()> {
    let cases = [
        ("basis n=2, t=1", computational_basis_set(2)?, 1),
        ("phase K=4, t=2", phase_state_set(1, 4, 1)?, 2),
        ("pauli n=1, t=1", pauli_set(1)?, 1),
        ("pauli n=1, t=2", pauli_set(1)?, 2),
        ("clifford n=1, t=3", clifford_set(1)?, 3),
        ("clifford n=1, t=4", clifford_set(1)?, 4),
    ];
    for (name, set, t) in cases {
        let r = certify(&set, t, 0.05, 0.5)?;
        let dist = r.distance.map(|d| format!("{d:.3e}")).unwrap_or_else(|| "-".into());
        println!("{name:<20} F={:<10.6} haar={:<8.4} distance={dist:<10} {}", r.value, r.haar, r.verdict.label());
    }

    // frame potential alone cannot certify phase states with K = 4 at t = 2
    let mut opts = CertifyOptions::new(0.05, 0.5);
    opts.mode = CertifyMode::FramePotentialOnly;
    let r = certify_with(&phase_state_set(1, 4, 1)?, 2, &opts)?;
    println!("fp-only on phase K=4, t=2: thresholds {:?} -> {}", r.thresholds, r.verdict.label());
    Ok(())
}
