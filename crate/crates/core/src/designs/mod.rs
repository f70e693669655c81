//! Concrete ensembles: computational basis, phase states, Pauli and Clifford
//! groups, stabilizer states, subset phase states, and cardinality thresholds.

mod clifford;
mod subset;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use clifford::{clifford_circuit, clifford_order, clifford_set, stabilizer_states, symplectic_count};
pub use subset::{subset_phase_set, SubsetPhaseSpec};

use crate::circuits::{Circuit, Gate, Resolver, SetDescriptor, SetKind};
use crate::numerics::{binomial, factorial, sym_dimension};
use crate::{Error, Result};

pub const MAX_BASIS_QUBITS: usize = 12;
pub const MAX_PAULI_QUBITS: usize = 8;

/// `{|z⟩ : z ∈ {0,1}^n}`, element `j` is `|j−1⟩`.
pub fn computational_basis_set(n: usize) -> Result<SetDescriptor> {
    let d = SetDescriptor {
        kind: SetKind::State,
        n,
        k: 1usize.checked_shl(n as u32).unwrap_or(0),
        resolver: Resolver::Basis,
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}

pub fn basis_circuit(n: usize, idx: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n);
    for q in 0..n {
        if idx >> (n - 1 - q) & 1 == 1 {
            c.push(Gate::x(q))?;
        }
    }
    Ok(c)
}

pub(crate) fn check_phase_params(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::domain(format!("phase states need 1 ≤ m ≤ n, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// `|φ_j⟩ = ((|0⟩ + e^{2πij/K}|1⟩)/√2)^{⊗m} ⊗ |0^{n−m}⟩` for `j = 1..K`.
pub fn phase_state_set(n: usize, k: usize, m: usize) -> Result<SetDescriptor> {
    let d = SetDescriptor {
        kind: SetKind::State,
        n,
        k,
        resolver: Resolver::Phase { m },
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}

pub fn phase_circuit(n: usize, k: usize, m: usize, j: usize) -> Result<Circuit> {
    check_phase_params(n, m)?;
    let theta = 2.0 * PI * j as f64 / k as f64;
    let mut c = Circuit::new(n);
    for q in 0..m {
        c.push(Gate::h(q))?.push(Gate::phase(theta, q))?;
    }
    Ok(c)
}

/// `2^{1−2mt} C(2mt−1, mt−1)`, the phase-state frame potential once `K > mt`.
pub fn phase_state_fp(m: usize, t: usize) -> f64 {
    let r = (m * t) as i32;
    2f64.powi(1 - 2 * r) * binomial(2 * r as u64 - 1, r as u64 - 1)
}

/// `(1/K) Σ_{l<K} cos^{2mt}(πl/K)`, the phase-state frame potential for any `K`.
pub fn phase_state_fp_exact(k: usize, m: usize, t: usize) -> f64 {
    let terms: Vec<f64> = (0..k)
        .map(|l| (PI * l as f64 / k as f64).cos().powi(2 * (m * t) as i32))
        .collect();
    crate::numerics::pairwise_sum(&terms) / k as f64
}

/// `{I,X,Y,Z}^{⊗n}`; qubit 0 carries the most significant base-4 digit.
pub fn pauli_set(n: usize) -> Result<SetDescriptor> {
    let d = SetDescriptor {
        kind: SetKind::Unitary,
        n,
        k: 1usize.checked_shl(2 * n as u32).unwrap_or(0),
        resolver: Resolver::Pauli,
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}

pub fn pauli_circuit(n: usize, idx: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n);
    for q in 0..n {
        match idx >> (2 * (n - 1 - q)) & 3 {
            1 => c.push(Gate::x(q))?,
            2 => c.push(Gate::y(q))?,
            3 => c.push(Gate::z(q))?,
            _ => &mut c,
        };
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CardinalityThreshold {
    pub kind: SetKind,
    pub d: usize,
    pub t: usize,
    pub delta: f64,
    pub value: f64,
}

/// Fewest elements a δ-approximate t-design can have:
/// `d_t/(1+δ²)` for states, `d^{2t}/(t!+δ²)` for unitaries.
pub fn min_cardinality(kind: SetKind, d: usize, t: usize, delta: f64) -> Result<CardinalityThreshold> {
    if !(delta >= 0.0) || d == 0 || t == 0 {
        return Err(Error::domain(format!("need d, t ≥ 1 and δ ≥ 0, got d={d}, t={t}, δ={delta}")));
    }
    let value = match kind {
        SetKind::State => sym_dimension(d, t) / (1.0 + delta * delta),
        SetKind::Unitary => (d as f64).powi(2 * t as i32) / (factorial(t as u64) + delta * delta),
    };
    Ok(CardinalityThreshold { kind, d, t, delta, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{circuit_unitary, simulate_state};
    use crate::numerics::C64;

    #[test]
    fn basis_states() {
        let d = computational_basis_set(1).unwrap();
        assert_eq!(d.k, 2);
        let s = d.states().unwrap();
        assert_eq!(s[0].amplitudes(), &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert_eq!(s[1].amplitudes(), &[C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        let three = computational_basis_set(3).unwrap().states().unwrap();
        for (i, a) in three.iter().enumerate() {
            for (j, b) in three.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(a.inner(b).norm(), want);
            }
        }
        assert!(computational_basis_set(13).is_err());
    }

    #[test]
    fn pauli_enumeration_order() {
        let d = pauli_set(1).unwrap();
        assert_eq!(d.resolve(2).unwrap().gates(), &[Gate::x(0)]);
        assert_eq!(d.resolve(3).unwrap().gates(), &[Gate::y(0)]);
        assert_eq!(d.resolve(4).unwrap().gates(), &[Gate::z(0)]);
        assert!(d.resolve(1).unwrap().is_empty());
        // index 0b0111 on 2 qubits: X on qubit 0, Z on qubit 1
        assert_eq!(pauli_circuit(2, 7).unwrap().gates(), &[Gate::x(0), Gate::z(1)]);
        assert!(pauli_set(9).is_err());
    }

    #[test]
    fn phase_states_match_definition() {
        let (n, k, m) = (3, 5, 2);
        let d = phase_state_set(n, k, m).unwrap();
        for j in 1..=k {
            let psi = d.state(j).unwrap();
            let e = C64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
            for idx in 0..8usize {
                let (b0, b1, b2) = (idx >> 2 & 1, idx >> 1 & 1, idx & 1);
                let want = if b2 == 1 { C64::new(0.0, 0.0) } else { e.powi((b0 + b1) as i32) * 0.5 };
                assert!((psi.amplitudes()[idx] - want).norm() < 1e-14);
            }
        }
        assert!(phase_state_set(2, 4, 3).is_err());
        assert!(phase_state_set(2, 4, 0).is_err());
    }

    #[test]
    fn phase_closed_forms() {
        assert_eq!(phase_state_fp(1, 1), 0.5);
        assert_eq!(phase_state_fp(1, 2), 0.375);
        assert_eq!(phase_state_fp(1, 3), 0.3125);
        assert_eq!(phase_state_fp(2, 1), 0.375);
        for m in 1..=3 {
            for t in 1..=3 {
                for k in m * t + 1..m * t + 6 {
                    assert!((phase_state_fp_exact(k, m, t) - phase_state_fp(m, t)).abs() < 1e-14);
                }
            }
        }
        // K ≤ mt is genuinely different
        assert!((phase_state_fp_exact(2, 2, 1) - phase_state_fp(2, 1)).abs() > 0.1);
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(min_cardinality(SetKind::State, 4, 2, 0.0).unwrap().value, 10.0);
        assert_eq!(min_cardinality(SetKind::Unitary, 2, 1, 0.0).unwrap().value, 4.0);
        assert_eq!(min_cardinality(SetKind::Unitary, 2, 2, 0.0).unwrap().value, 8.0);
        assert!(min_cardinality(SetKind::State, 2, 1, -1.0).is_err());
    }

    #[test]
    fn circuits_are_well_formed() {
        let c = basis_circuit(3, 0b110).unwrap();
        assert_eq!(simulate_state(&c, "").unwrap().amplitudes()[6], C64::new(1.0, 0.0));
        let u = circuit_unitary(&pauli_circuit(2, 15).unwrap()).unwrap();
        assert!(u.is_unitary(1e-14));
    }
}
