//! A state set whose frame potential encodes the acceptance probability of a circuit.

use designlab::circuits::{Circuit, Gate};
use designlab::reductions::{bqp_gadget, bqp_predicted_fp};

fn main() -> designlab::Result<()> {
    // accepts with probability sin²(π/8)
    let ux = Circuit::from_gates(3, vec![Gate::h(0), Gate::t(0), Gate::h(0), Gate::cnot(0, 1), Gate::h(2)])?;
    for t in 1..=2 {
        let g = bqp_gadget(&ux, t, t + 2)?;
        println!(
            "t={t}  q1={:.6} (measured {:.6})  predicted {:.10}  Gram {:.10}",
            g.q1,
            g.q1_measured,
            g.instance.predicted_fp,
            g.instance.verify()?
        );
    }

    for t in 1..=3 {
        let gap = bqp_predicted_fp(2.0 / 3.0, t) - bqp_predicted_fp(1.0 / 3.0, t);
        println!("t={t}  promise gap at q1 = 2/3 vs 1/3: {gap:.3e}");
    }
    Ok(())
}
