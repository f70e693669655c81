//! Odd-parity tuple counts of a subset-phase set, by enumeration and from its frame potential.

use designlab::designs::SubsetPhaseSpec;
use designlab::numerics::random::stream_rng;
use designlab::reductions::subset_phase_count;

fn main() -> designlab::Result<()> {
    let mut rng = stream_rng(11, 0);
    for (chi, k) in [(2, 3), (4, 4), (8, 8)] {
        let spec = SubsetPhaseSpec::random(3, chi, k, &mut rng)?;
        for t in 1..=2 {
            let r = subset_phase_count(&spec, t)?;
            println!(
                "chi={chi} K={k} t={t}: count {:>6}  from F_t {:>12.4}  (F_t = {:.6}, tuples {})",
                r.count, r.via_fp_raw, r.fp, r.tuples
            );
        }
    }
    Ok(())
}
