//! Path sums over Hadamard/Toffoli circuits, counted and simulated.

use designlab::circuits::{Circuit, Gate};
use designlab::reductions::{doubled_register_circuit, path_sum_count, path_sum_count_sparse, path_sum_direct, SwapPattern};

fn main() -> designlab::Result<()> {
    let c = Circuit::from_gates(3, vec![Gate::h(0), Gate::h(1), Gate::toffoli(0, 1, 2)])?;
    let obs = SwapPattern::new(vec![(1, 2)])?;
    let r = path_sum_count(&c, &obs)?;
    println!(
        "L={} h={}  s(f)={}  value {:.12}  direct {:.12}",
        r.l,
        r.h,
        r.s_f,
        r.reconstructed_value(),
        path_sum_direct(&c, &obs)?
    );

    // index qubit 0 labels |+0⟩ and the Bell pair; the doubled register gives F_1
    let (d, obs) = doubled_register_circuit(&c, 1)?;
    let r = path_sum_count_sparse(&d, &obs)?;
    println!("doubled: L={}  value {:.12}  direct {:.12}", r.l, r.reconstructed_value(), path_sum_direct(&d, &obs)?);
    Ok(())
}
