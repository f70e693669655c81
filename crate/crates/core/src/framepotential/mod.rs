//! Frame potentials, moment operators, Haar references, design distances and
//! certification.

mod certify;
mod moments;

use rayon::prelude::*;

pub use certify::{certify, certify_with, fp_thresholds, implied_delta, CertifyMode, CertifyOptions, MomentReport, Verdict};
pub use moments::{
    haar_state_moment, haar_unitary_moment, state_design_distance, state_moment, state_moment_of,
    unitary_design_distance, unitary_moment, unitary_moment_of, DesignDistance, HaarProjector,
};

use crate::circuits::{SetDescriptor, SetKind};
use crate::limits::{self, MAX_GRAM_K};
use crate::numerics::{haar_unitary_frame_potential, inner_slices, pairwise_sum, sym_dimension, DenseOperator, DenseState, C64};
use crate::{Error, Result};

fn gram_guard(k: usize) -> Result<()> {
    limits::check(k <= MAX_GRAM_K, "MAX_GRAM_K", || {
        format!("K = {k} exceeds {MAX_GRAM_K}; the Gram loop visits K² pairs")
    })
}

/// `(1/K²) Σ_{i,j} |⟨v_i|v_j⟩|^{2t}` over the upper triangle.
///
/// Rows run in parallel, each row sums sequentially, and the row sums are
/// reduced by a fixed pairwise tree, so the value does not depend on the
/// thread count.
pub(crate) fn gram_power_mean(vectors: &[&[C64]], t: usize) -> f64 {
    let k = vectors.len();
    let rows: Vec<f64> = (0..k)
        .into_par_iter()
        .map(|i| {
            let diag = inner_slices(vectors[i], vectors[i]).norm_sqr().powi(t as i32);
            let off: f64 = (i + 1..k)
                .map(|j| inner_slices(vectors[i], vectors[j]).norm_sqr().powi(t as i32))
                .sum();
            diag + 2.0 * off
        })
        .collect();
    pairwise_sum(&rows) / (k as f64 * k as f64)
}

/// State frame potential of explicit vectors.
pub fn state_fp_of(states: &[DenseState], t: usize) -> Result<f64> {
    check_t(t)?;
    if states.is_empty() {
        return Err(Error::domain("frame potential of an empty set"));
    }
    gram_guard(states.len())?;
    let v: Vec<&[C64]> = states.iter().map(|s| s.amplitudes()).collect();
    Ok(gram_power_mean(&v, t))
}

/// Unitary frame potential of explicit matrices, via `Tr(U†V) = ⟨vec U|vec V⟩`.
pub fn unitary_fp_of(unitaries: &[DenseOperator], t: usize) -> Result<f64> {
    check_t(t)?;
    if unitaries.is_empty() {
        return Err(Error::domain("frame potential of an empty set"));
    }
    gram_guard(unitaries.len())?;
    let flat: Vec<Vec<C64>> = unitaries.iter().map(|u| u.row_major()).collect();
    let v: Vec<&[C64]> = flat.iter().map(|x| x.as_slice()).collect();
    Ok(gram_power_mean(&v, t))
}

fn check_t(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::domain("degree t must be at least 1"));
    }
    Ok(())
}

pub fn state_frame_potential(s: &SetDescriptor, t: usize) -> Result<f64> {
    check_t(t)?;
    expect(s, SetKind::State)?;
    gram_guard(s.k)?;
    state_fp_of(&s.states()?, t)
}

pub fn unitary_frame_potential(u: &SetDescriptor, t: usize) -> Result<f64> {
    check_t(t)?;
    expect(u, SetKind::Unitary)?;
    gram_guard(u.k)?;
    unitary_fp_of(&u.unitaries()?, t)
}

/// Dispatch on the descriptor kind.
pub fn frame_potential(s: &SetDescriptor, t: usize) -> Result<f64> {
    match s.kind {
        SetKind::State => state_frame_potential(s, t),
        SetKind::Unitary => unitary_frame_potential(s, t),
    }
}

pub(crate) fn expect(s: &SetDescriptor, kind: SetKind) -> Result<()> {
    if s.kind != kind {
        return Err(Error::invalid(format!("expected a {} set, got a {} set", kind.name(), s.kind.name())));
    }
    Ok(())
}

/// Haar value of the frame potential: `1/d_t` for states, `Σ_{λ⊢t, ℓ(λ)≤d} (f^λ)²` for unitaries.
pub fn haar_value(kind: SetKind, d: usize, t: usize) -> f64 {
    match kind {
        SetKind::State => 1.0 / sym_dimension(d, t),
        SetKind::Unitary => haar_unitary_frame_potential(d, t),
    }
}

/// `[max(haar, 1/K), 1]` for states, `[max(haar, d^{2t}/K), d^{2t}]` for unitaries.
pub fn fp_bounds(kind: SetKind, d: usize, t: usize, k: usize) -> (f64, f64) {
    let haar = haar_value(kind, d, t);
    match kind {
        SetKind::State => (haar.max(1.0 / k as f64), 1.0),
        SetKind::Unitary => {
            let top = (d as f64).powi(2 * t as i32);
            (haar.max(top / k as f64), top)
        }
    }
}
