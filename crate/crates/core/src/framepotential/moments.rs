use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::expect;
use crate::circuits::{SetDescriptor, SetKind};
use crate::limits::{self, checked_pow, MAX_MOMENT_DIM, MAX_MOMENT_T};
use crate::numerics::{
    orthonormal_span, perm_operator, schatten_norm, sym_dimension, sym_projector, DenseOperator, DenseState,
    Permutation, SchattenP, C64,
};
use crate::{Error, Result};

fn moment_guard(d: usize, power: usize, what: &str) -> Result<usize> {
    let dim = checked_pow(d, power);
    limits::check(dim.is_some_and(|x| x <= MAX_MOMENT_DIM), "MAX_MOMENT_DIM", || {
        format!("{what} side {d}^{power} exceeds {MAX_MOMENT_DIM}; moment operators grow like d^(2t)")
    })?;
    Ok(dim.unwrap())
}

fn t_guard(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::domain("degree t must be at least 1"));
    }
    limits::check(t <= MAX_MOMENT_T, "MAX_MOMENT_T", || {
        format!("t = {t} exceeds {MAX_MOMENT_T} on moment-operator paths")
    })
}

/// `E[|ψ⟩⟨ψ|^{⊗t}]` of explicit states.
pub fn state_moment_of(states: &[DenseState], t: usize) -> Result<DenseOperator> {
    t_guard(t)?;
    let first = states.first().ok_or_else(|| Error::domain("moment of an empty set"))?;
    let dim = moment_guard(first.dim(), t, "state moment")?;
    let mut acc = DMatrix::<C64>::zeros(dim, dim);
    for chunk in states.chunks(256) {
        let v = DMatrix::from_fn(chunk.len(), dim, |r, c| chunk[r].tensor_power(t).amplitudes()[c]);
        acc += v.transpose() * v.conjugate();
    }
    Ok(DenseOperator::from_matrix(acc).scale_real(1.0 / states.len() as f64))
}

/// `E[U^{⊗t} ⊗ Ū^{⊗t}]` of explicit unitaries.
pub fn unitary_moment_of(unitaries: &[DenseOperator], t: usize) -> Result<DenseOperator> {
    t_guard(t)?;
    let first = unitaries.first().ok_or_else(|| Error::domain("moment of an empty set"))?;
    let dim = moment_guard(first.rows(), 2 * t, "unitary moment")?;
    let mut acc = DMatrix::<C64>::zeros(dim, dim);
    for u in unitaries {
        let ut = u.tensor_power(t);
        acc += ut.kron(&ut.conj()).into_matrix();
    }
    Ok(DenseOperator::from_matrix(acc).scale_real(1.0 / unitaries.len() as f64))
}

pub fn state_moment(s: &SetDescriptor, t: usize) -> Result<DenseOperator> {
    expect(s, SetKind::State)?;
    t_guard(t)?;
    moment_guard(s.dim(), t, "state moment")?;
    state_moment_of(&s.states()?, t)
}

pub fn unitary_moment(u: &SetDescriptor, t: usize) -> Result<DenseOperator> {
    expect(u, SetKind::Unitary)?;
    t_guard(t)?;
    moment_guard(u.dim(), 2 * t, "unitary moment")?;
    unitary_moment_of(&u.unitaries()?, t)
}

/// `Π_sym / d_t`.
pub fn haar_state_moment(d: usize, t: usize) -> Result<DenseOperator> {
    t_guard(t)?;
    moment_guard(d, t, "state moment")?;
    Ok(sym_projector(d, t)?.scale_real(1.0 / sym_dimension(d, t)))
}

/// Orthogonal projector onto `span{|P_π⟩⟩ : π ∈ S_t}` in `(C^d)^{⊗t} ⊗ (C^d)^{⊗t}`,
/// kept as an orthonormal basis. Vectorization is row-major, `|X⟩⟩ = Σ X_ij |i⟩|j⟩`,
/// so `(A ⊗ Ā)|X⟩⟩ = |A X A†⟩⟩`.
#[derive(Clone, Debug)]
pub struct HaarProjector {
    pub d: usize,
    pub t: usize,
    pub dim: usize,
    pub basis: Vec<Vec<C64>>,
}

impl HaarProjector {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn to_dense(&self) -> DenseOperator {
        let v = DMatrix::from_fn(self.basis.len(), self.dim, |r, c| self.basis[r][c]);
        DenseOperator::from_matrix(v.transpose() * v.conjugate())
    }
}

pub fn haar_unitary_moment(d: usize, t: usize) -> Result<HaarProjector> {
    t_guard(t)?;
    let dim = moment_guard(d, 2 * t, "unitary moment")?;
    let vecs = Permutation::all(t)
        .iter()
        .map(|pi| Ok(perm_operator(d, t, pi)?.row_major()))
        .collect::<Result<Vec<_>>>()?;
    let span = orthonormal_span(&vecs)?;
    Ok(HaarProjector { d, t, dim, basis: span.basis })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignDistance {
    pub kind: SetKind,
    pub t: usize,
    pub distance: f64,
}

/// `d_t · ‖E[ψ^{⊗t}] − Π_sym/d_t‖_∞`, the least δ for which the set is a δ-approximate state t-design.
pub fn state_design_distance(s: &SetDescriptor, t: usize) -> Result<DesignDistance> {
    let m = state_moment(s, t)?;
    state_distance_from_moment(&m, s.dim(), t)
}

pub(crate) fn state_distance_from_moment(m: &DenseOperator, d: usize, t: usize) -> Result<DesignDistance> {
    let diff = m.sub(&haar_state_moment(d, t)?);
    let eig = diff.hermitian_eigenvalues()?;
    let norm = eig.iter().fold(0.0f64, |acc, e| acc.max(e.abs()));
    Ok(DesignDistance {
        kind: SetKind::State,
        t,
        distance: sym_dimension(d, t) * norm,
    })
}

/// `‖M_U − M_H‖₁`, through singular values.
pub fn unitary_design_distance(u: &SetDescriptor, t: usize) -> Result<DesignDistance> {
    let m = unitary_moment(u, t)?;
    unitary_distance_from_moment(&m, u.dim(), t)
}

pub(crate) fn unitary_distance_from_moment(m: &DenseOperator, d: usize, t: usize) -> Result<DesignDistance> {
    let h = haar_unitary_moment(d, t)?.to_dense();
    Ok(DesignDistance {
        kind: SetKind::Unitary,
        t,
        distance: schatten_norm(&m.sub(&h), SchattenP::One)?,
    })
}
