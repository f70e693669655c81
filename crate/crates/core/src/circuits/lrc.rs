use rand::Rng;

use super::circuit::Circuit;
use super::descriptor::{Resolver, SetDescriptor, SetKind};
use crate::limits::MAX_DESCRIPTOR_K;
use crate::numerics::random::stream_rng;
use crate::{Error, Result};

/// Qubit pairs of one brickwork layer: `(0,1),(2,3),…` then `(1,2),(3,4),…`.
pub fn brickwork_pairs(n: usize, depth: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for _ in 0..depth {
        pairs.extend((0..n.saturating_sub(1)).step_by(2).map(|a| (a, a + 1)));
        pairs.extend((1..n.saturating_sub(1)).step_by(2).map(|a| (a, a + 1)));
    }
    pairs
}

/// Number of distinct gate assignments, or `None` when it overflows.
pub fn lrc_total(n: usize, depth: usize, gateset_len: usize) -> Option<usize> {
    crate::limits::checked_pow(gateset_len, brickwork_pairs(n, depth).len())
}

/// Brickwork random-circuit ensemble.
///
/// Without a cap, element `j` decodes `j−1` in mixed radix `|gateset|` (gate 0
/// is the least significant digit) and `K` is the full count. With a cap below
/// the full count, element `j` draws its choices from the stream `(seed, j)`.
pub fn lrc_descriptor(
    n: usize,
    depth: usize,
    gateset: Vec<Circuit>,
    seed: u64,
    k_cap: Option<usize>,
) -> Result<SetDescriptor> {
    validate_params(n, depth, &gateset)?;
    let total = lrc_total(n, depth, gateset.len());
    let k = match (k_cap, total) {
        (None, Some(t)) if t <= MAX_DESCRIPTOR_K => t,
        (None, _) => {
            return Err(Error::SizeGuard {
                guard: "MAX_DESCRIPTOR_K",
                detail: format!("full brickwork enumeration exceeds {MAX_DESCRIPTOR_K}; pass an explicit K cap"),
            })
        }
        (Some(cap), Some(t)) if cap > t => {
            return Err(Error::invalid(format!("K cap {cap} exceeds the {t} distinct circuits")))
        }
        (Some(cap), _) => cap,
    };
    let d = SetDescriptor {
        kind: SetKind::Unitary,
        n,
        k,
        resolver: Resolver::Lrc { depth, gateset, seed },
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}

pub(crate) fn validate_params(n: usize, depth: usize, gateset: &[Circuit]) -> Result<()> {
    if gateset.is_empty() {
        return Err(Error::invalid("LRC gate set is empty"));
    }
    if depth == 0 {
        return Err(Error::invalid("LRC depth must be at least 1"));
    }
    if n < 2 {
        return Err(Error::invalid("LRC needs at least 2 qubits"));
    }
    if let Some(g) = gateset.iter().find(|g| g.n() != 2) {
        return Err(Error::invalid(format!("LRC gates act on 2 qubits, got {}", g.n())));
    }
    Ok(())
}

pub(crate) fn resolve(n: usize, k: usize, depth: usize, gateset: &[Circuit], seed: u64, j: usize) -> Result<Circuit> {
    let pairs = brickwork_pairs(n, depth);
    let radix = gateset.len();
    let full = lrc_total(n, depth, radix) == Some(k);
    let mut rest = j - 1;
    let mut rng = stream_rng(seed, j as u64);
    let mut c = Circuit::new(n);
    for &(a, _) in &pairs {
        let choice = if full {
            let digit = rest % radix;
            rest /= radix;
            digit
        } else {
            rng.random_range(0..radix)
        };
        c.append_shifted(&gateset[choice], a)?;
    }
    Ok(c)
}
