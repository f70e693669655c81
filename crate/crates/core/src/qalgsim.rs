//! Classical simulation of the frame-potential estimation circuit and of the
//! swap-test deciders.
//!
//! The encoded state puts an index register `A` in a uniform superposition
//! over `K` labels and, controlled on label `j`, applies element `j` to each
//! of `t` blocks. Tracing out the blocks leaves `ρ_A`, whose purity is the
//! frame potential (times `2^{2nt}` for unitary sets).

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{apply_circuit, SetDescriptor, SetKind};
use crate::framepotential::{fp_bounds, haar_value};
use crate::limits::{self, MAX_STATE_QUBITS};
use crate::numerics::random::stream_rng;
use crate::numerics::{gram_of_rows, inner_slices, DenseOperator, C64};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct EncodedState {
    pub kind: SetKind,
    pub t: usize,
    pub n: usize,
    /// Width of register `A`, `⌈log₂ K⌉`.
    pub kappa: usize,
    pub k: usize,
    /// Reduced state on `A` (dimension `2^κ`; labels `≥ K` carry no weight).
    pub rho_a: DenseOperator,
}

/// Qubits in one branch of the simulated register, excluding `A`.
fn block_qubits(kind: SetKind, n: usize, t: usize) -> usize {
    match kind {
        SetKind::State => n * t,
        SetKind::Unitary => 2 * n * t,
    }
}

pub fn kappa(k: usize) -> usize {
    k.next_power_of_two().trailing_zeros() as usize
}

/// `|Φ_n⟩^{⊗t}` on `(B₁R₁)…(B_tR_t)`, each pair laid out as `B_m` then `R_m`.
fn max_entangled_blocks(n: usize, t: usize) -> Vec<C64> {
    let dim_pair = 1usize << (2 * n);
    let mut pair = vec![C64::new(0.0, 0.0); dim_pair];
    let amp = 1.0 / ((1usize << n) as f64).sqrt();
    for i in 0..1usize << n {
        pair[(i << n) | i] = C64::new(amp, 0.0);
    }
    let mut out = vec![C64::new(1.0, 0.0)];
    for _ in 0..t {
        out = out.iter().flat_map(|a| pair.iter().map(move |b| a * b)).collect();
    }
    out
}

pub fn build_encoded_state(s: &SetDescriptor, t: usize) -> Result<EncodedState> {
    if t == 0 {
        return Err(Error::domain("degree t must be at least 1"));
    }
    let kap = kappa(s.k);
    let width = block_qubits(s.kind, s.n, t);
    let total = kap + width;
    limits::check(total <= MAX_STATE_QUBITS, "MAX_STATE_QUBITS", || {
        format!("κ + block qubits = {kap} + {width} exceeds {MAX_STATE_QUBITS}")
    })?;
    let scale = 1.0 / (s.k as f64).sqrt();
    let start: Vec<C64> = match s.kind {
        SetKind::State => {
            let mut v = vec![C64::new(0.0, 0.0); 1 << width];
            v[0] = C64::new(scale, 0.0);
            v
        }
        SetKind::Unitary => max_entangled_blocks(s.n, t).into_iter().map(|a| a * scale).collect(),
    };
    let stride = match s.kind {
        SetKind::State => s.n,
        SetKind::Unitary => 2 * s.n,
    };
    let blocks: Vec<Vec<C64>> = (1..=s.k)
        .into_par_iter()
        .map(|j| {
            let c = match s.kind {
                SetKind::State => s.state_circuit(j)?,
                SetKind::Unitary => s.resolve(j)?,
            };
            if c.has_rescaled() {
                return Err(Error::invalid("RESCALED_H is only legal in path-sum circuits"));
            }
            let mut block = start.clone();
            for m in 0..t {
                apply_circuit(&mut block, width, &c, m * stride);
            }
            Ok(block)
        })
        .collect::<Result<_>>()?;
    let mut rows = blocks;
    rows.resize(1 << kap, vec![C64::new(0.0, 0.0); 1 << width]);
    Ok(EncodedState {
        kind: s.kind,
        t,
        n: s.n,
        kappa: kap,
        k: s.k,
        rho_a: gram_of_rows(&rows),
    })
}

impl EncodedState {
    pub fn purity(&self) -> f64 {
        self.rho_a.frobenius_norm().powi(2)
    }

    /// Frame potential read off the purity.
    pub fn frame_potential(&self) -> f64 {
        match self.kind {
            SetKind::State => self.purity(),
            SetKind::Unitary => self.purity() * 2f64.powi((2 * self.n * self.t) as i32),
        }
    }
}

/// `Tr ρ_A²`, times `2^{2nt}` for unitary sets.
pub fn fp_via_purity(s: &SetDescriptor, t: usize) -> Result<f64> {
    Ok(build_encoded_state(s, t)?.frame_potential())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    #[serde(rename = "F>=alpha")]
    AtLeastAlpha,
    #[serde(rename = "F<=beta")]
    AtMostBeta,
}

/// Promise thresholds `α > β` on the frame potential, sample count and seed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapTestPlan {
    pub alpha: f64,
    pub beta: f64,
    pub samples: u64,
    pub seed: u64,
}

impl SwapTestPlan {
    /// `2/(2+α+β)`, with `α, β` divided by `2^{2tn}` for unitary sets.
    pub fn p_gate(&self, kind: SetKind, n: usize, t: usize) -> f64 {
        let scale = match kind {
            SetKind::State => 1.0,
            SetKind::Unitary => 2f64.powi(-((2 * t * n) as i32)),
        };
        2.0 / (2.0 + (self.alpha + self.beta) * scale)
    }

    /// Acceptance probability of one trial when the frame potential is `f`.
    pub fn expected_acceptance(&self, kind: SetKind, n: usize, t: usize, f: f64) -> f64 {
        let normalized = match kind {
            SetKind::State => f,
            SetKind::Unitary => f * 2f64.powi(-((2 * t * n) as i32)),
        };
        self.p_gate(kind, n, t) * (1.0 + normalized) / 2.0
    }

    pub fn validate(&self, kind: SetKind, n: usize, t: usize, k: usize) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::invalid("swap test needs at least one sample"));
        }
        if !(self.alpha > self.beta) {
            return Err(Error::invalid(format!("need α > β, got α = {}, β = {}", self.alpha, self.beta)));
        }
        let (floor, _) = fp_bounds(kind, 1 << n, t, k);
        let floor = floor.max(haar_value(kind, 1 << n, t));
        if self.beta < floor - 1e-12 {
            return Err(Error::invalid(format!(
                "β = {} is below the smallest possible frame potential {floor}",
                self.beta
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapTestOutcome {
    pub accept_rate: f64,
    pub stderr: f64,
    pub decision: Decision,
    pub p_gate: f64,
    #[serde(rename = "N")]
    pub samples: u64,
    pub accepted: u64,
    pub seed: u64,
}

/// Monte-Carlo swap-test decider.
///
/// Each trial draws from its own stream `(seed, trial)`: with probability
/// `1−p` it rejects; otherwise it picks `(i, j)` uniformly and accepts with
/// probability `(1 + o_{ij})/2`, where `o_{ij} = |⟨ψ_i|ψ_j⟩|^{2t}` or
/// `|Tr(U_i†U_j)/2^n|^{2t}`.
pub fn swap_test_decide(s: &SetDescriptor, t: usize, plan: &SwapTestPlan) -> Result<SwapTestOutcome> {
    if t == 0 {
        return Err(Error::domain("degree t must be at least 1"));
    }
    plan.validate(s.kind, s.n, t, s.k)?;
    let (vectors, norm): (Vec<Vec<C64>>, f64) = match s.kind {
        SetKind::State => (s.states()?.into_iter().map(|v| v.into_amplitudes()).collect(), 1.0),
        SetKind::Unitary => (
            s.unitaries()?.iter().map(|u| u.row_major()).collect(),
            1.0 / (1usize << s.n) as f64,
        ),
    };
    let p = plan.p_gate(s.kind, s.n, t);
    let k = vectors.len();
    let accepted: u64 = (0..plan.samples)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream_rng(plan.seed, trial);
            let gate: f64 = rng.random();
            let (i, j) = (rng.random_range(0..k), rng.random_range(0..k));
            let coin: f64 = rng.random();
            if gate >= p {
                return 0;
            }
            let overlap = (inner_slices(&vectors[i], &vectors[j]).norm() * norm).powi(2 * t as i32);
            u64::from(coin < (1.0 + overlap) / 2.0)
        })
        .sum();
    let rate = accepted as f64 / plan.samples as f64;
    Ok(SwapTestOutcome {
        accept_rate: rate,
        stderr: (rate * (1.0 - rate) / plan.samples as f64).sqrt(),
        decision: if rate > 0.5 { Decision::AtLeastAlpha } else { Decision::AtMostBeta },
        p_gate: p,
        samples: plan.samples,
        accepted,
        seed: plan.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{Circuit, Gate};
    use crate::designs::{computational_basis_set, pauli_set, phase_state_set};
    use crate::framepotential::frame_potential;

    #[test]
    fn singleton_is_pure() {
        let d = SetDescriptor::explicit(SetKind::State, 1, vec![Circuit::new(1)]).unwrap();
        let e = build_encoded_state(&d, 2).unwrap();
        assert_eq!(e.kappa, 0);
        assert_eq!(e.rho_a.rows(), 1);
        assert!((e.purity() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_pair_decoheres() {
        let e = build_encoded_state(&computational_basis_set(1).unwrap(), 1).unwrap();
        assert!(e.rho_a.max_abs_diff(&DenseOperator::identity(2).scale_real(0.5)) < 1e-15);
        assert!((e.purity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn entries_match_overlaps() {
        let c1 = Circuit::from_gates(2, vec![Gate::h(0), Gate::t(0), Gate::cnot(0, 1)]).unwrap();
        let c2 = Circuit::from_gates(2, vec![Gate::h(1), Gate::s(1), Gate::cz(0, 1)]).unwrap();
        let c3 = Circuit::from_gates(2, vec![Gate::x(0), Gate::h(0)]).unwrap();
        for kind in [SetKind::State, SetKind::Unitary] {
            let d = SetDescriptor::explicit(kind, 2, vec![c1.clone(), c2.clone(), c3.clone()]).unwrap();
            for t in 1..=2 {
                let e = build_encoded_state(&d, t).unwrap();
                assert_eq!(e.kappa, 2);
                for a in 0..3 {
                    for b in 0..3 {
                        let want = match kind {
                            SetKind::State => d.state(b + 1).unwrap().inner(&d.state(a + 1).unwrap()).powi(t as i32) / 3.0,
                            SetKind::Unitary => {
                                let (ua, ub) = (d.unitary(a + 1).unwrap(), d.unitary(b + 1).unwrap());
                                (ub.dagger().mul(&ua).trace() / 4.0).powi(t as i32) / 3.0
                            }
                        };
                        assert!((e.rho_a.get(a, b) - want).norm() < 1e-12);
                    }
                }
                assert_eq!(e.rho_a.get(3, 3), C64::new(0.0, 0.0));
                assert!(e.rho_a.is_density());
                let f = frame_potential(&d, t).unwrap();
                assert!((e.frame_potential() - f).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn known_values() {
        assert!((fp_via_purity(&phase_state_set(2, 4, 1).unwrap(), 1).unwrap() - 0.5).abs() < 1e-12);
        assert!((fp_via_purity(&pauli_set(1).unwrap(), 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swap_test_orthogonal_pair() {
        let d = computational_basis_set(1).unwrap();
        let plan = SwapTestPlan { alpha: 0.9, beta: 0.5, samples: 100_000, seed: 3 };
        let out = swap_test_decide(&d, 1, &plan).unwrap();
        let want = plan.expected_acceptance(SetKind::State, 1, 1, 0.5);
        assert!((out.accept_rate - want).abs() < 4.0 * out.stderr);
        assert_eq!(out.decision, Decision::AtMostBeta);
        let again = swap_test_decide(&d, 1, &plan).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn swap_test_singleton_always_accepts_when_gated_in() {
        let d = SetDescriptor::explicit(SetKind::State, 1, vec![Circuit::new(1)]).unwrap();
        let plan = SwapTestPlan { alpha: 1.5, beta: 1.0, samples: 20_000, seed: 9 };
        let out = swap_test_decide(&d, 3, &plan).unwrap();
        let p = plan.p_gate(SetKind::State, 1, 3);
        assert!((out.accept_rate - p).abs() < 4.0 * (p * (1.0 - p) / 20_000.0).sqrt());
    }

    #[test]
    fn plan_validation() {
        let d = computational_basis_set(1).unwrap();
        let bad_order = SwapTestPlan { alpha: 0.5, beta: 0.6, samples: 10, seed: 0 };
        assert!(swap_test_decide(&d, 1, &bad_order).is_err());
        let below_floor = SwapTestPlan { alpha: 0.9, beta: 0.4, samples: 10, seed: 0 };
        assert!(swap_test_decide(&d, 1, &below_floor).is_err());
        let none = SwapTestPlan { alpha: 0.9, beta: 0.5, samples: 0, seed: 0 };
        assert!(swap_test_decide(&d, 1, &none).is_err());
    }
}
