//! Pauli-averaged OTOCs against the unitary frame potential.

use designlab::circuits::{Circuit, SetDescriptor, SetKind};
use designlab::designs::{clifford_set, pauli_set};
use designlab::otoc::otoc_report;

fn main() -> designlab::Result<()> {
    let identity = SetDescriptor::explicit(SetKind::Unitary, 1, vec![Circuit::new(1)])?;
    let sets = [
        ("identity", identity, 2),
        ("pauli n=1", pauli_set(1)?, 2),
        ("clifford n=1", clifford_set(1)?, 3),
        ("pauli n=2", pauli_set(2)?, 1),
    ];
    for (name, set, max_t) in sets {
        for t in 1..=max_t {
            let r = otoc_report(&set, t)?;
            let direct = r.direct.map(|d| format!("{d:.10}")).unwrap_or_else(|| "-".into());
            println!("{name:<13} t={t}  direct {direct:<13} via F_t {:.10}", r.via_fp);
        }
    }
    Ok(())
}
