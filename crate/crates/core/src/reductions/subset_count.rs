use serde::Serialize;

use crate::designs::{subset_phase_set, SubsetPhaseSpec};
use crate::framepotential::state_frame_potential;
use crate::{Error, Result};

/// Tuples `(j, k, x⃗)` the direct count may visit.
pub const MAX_SUBSET_TUPLES: u64 = 1 << 30;

/// `s(f_A)` from direct enumeration and from the frame-potential identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetCount {
    pub count: u64,
    /// `χ^{2t} K² (1 − F_t)/2` before rounding.
    pub via_fp_raw: f64,
    pub fp: f64,
    pub tuples: u64,
}

/// Number of `(j, k, x⃗ ∈ X^{2t})` with `Σ_i a_{j x_i} + a_{k x_i}` odd.
fn direct_count(spec: &SubsetPhaseSpec, t: usize) -> u64 {
    let chi = spec.chi();
    let len = 2 * t;
    let mut total = 0u64;
    for rj in &spec.a {
        for rk in &spec.a {
            let parity: Vec<bool> = rj.iter().zip(rk).map(|(a, b)| a ^ b).collect();
            let mut digits = vec![0usize; len];
            loop {
                if digits.iter().fold(false, |acc, &x| acc ^ parity[x]) {
                    total += 1;
                }
                let mut pos = 0;
                while pos < len {
                    digits[pos] += 1;
                    if digits[pos] < chi {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == len {
                    break;
                }
            }
        }
    }
    total
}

pub fn subset_phase_count(spec: &SubsetPhaseSpec, t: usize) -> Result<SubsetCount> {
    if t == 0 {
        return Err(Error::domain("degree t must be at least 1"));
    }
    spec.validate()?;
    let chi = spec.chi() as u64;
    let k = spec.rows() as u64;
    let tuples = chi
        .checked_pow(2 * t as u32)
        .and_then(|c| c.checked_mul(k * k))
        .filter(|&x| x <= MAX_SUBSET_TUPLES);
    let Some(tuples) = tuples else {
        return Err(Error::SizeGuard {
            guard: "MAX_SUBSET_TUPLES",
            detail: format!("χ^{{2t}}K² exceeds {MAX_SUBSET_TUPLES}"),
        });
    };
    let count = direct_count(spec, t);
    let fp = state_frame_potential(&subset_phase_set(spec.clone())?, t)?;
    let via_fp_raw = tuples as f64 * (1.0 - fp) / 2.0;
    if (via_fp_raw - count as f64).abs() > 0.5 {
        return Err(Error::Verification(format!(
            "direct count {count} but the frame potential gives {via_fp_raw}"
        )));
    }
    Ok(SubsetCount {
        count,
        via_fp_raw,
        fp,
        tuples,
    })
}
