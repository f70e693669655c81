//! The Haar moment projector: its rank and its agreement with the Clifford average.

use designlab::designs::clifford_set;
use designlab::framepotential::{haar_unitary_moment, unitary_moment};

fn main() -> designlab::Result<()> {
    for d in 2..=4 {
        let ranks: Vec<usize> = (1..=3).map(|t| haar_unitary_moment(d, t).map(|h| h.rank())).collect::<Result<_, _>>()?;
        println!("d={d}: rank for t=1..3 = {ranks:?}");
    }

    let haar = haar_unitary_moment(2, 3)?.to_dense();
    let cliff = unitary_moment(&clifford_set(1)?, 3)?;
    let worst = haar.sub(&cliff).row_major().iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("single-qubit Clifford vs Haar, t=3: max entry gap {worst:.2e}");
    Ok(())
}
