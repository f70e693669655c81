//! Variational search for a low frame potential, then certification of the result.

use designlab::framepotential::{certify, implied_delta};
use designlab::varopt::{multi_start, OptConfig, ParamFamily};

fn main() -> designlab::Result<()> {
    let fam = ParamFamily::PhaseAngles { n: 1, k: 8, m: 1, tilted: true };
    let t = 2;
    let cfg = OptConfig { seed: 3, ..OptConfig::default() };
    let ms = multi_start(&fam, t, &cfg)?;
    let best = &ms.best;
    println!("target {:.6}, best {:.8} from restart {} ({:?})", best.target, best.best_f, best.restart, best.stop);
    for it in &best.decimated(25).iterates {
        println!("  iter {:>4}  F = {:.8}", it.iter, it.value);
    }

    let set = fam.bind(&best.best_theta)?;
    let delta = implied_delta(set.kind, set.dim(), t, best.best_f);
    let r = certify(&set, t, delta + 1e-9, delta + 0.5)?;
    println!("implied δ = {delta:.4e} -> {}", r.verdict.label());
    Ok(())
}
