use std::f64::consts::PI;

use serde::Serialize;

use super::{GadgetInstance, Ingredients};
use crate::circuits::{simulate_state, Circuit, Gate, Resolver, SetDescriptor, SetKind};
use crate::designs::phase_state_fp_exact;
use crate::limits;
use crate::numerics::binomial;
use crate::{Error, Result};

/// Largest gadget register, `m + 2`.
pub const MAX_BQP_QUBITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BqpGadget {
    pub instance: GadgetInstance,
    /// `|⟨0^m 1|V_x|0^{m+1}⟩|`.
    pub q1: f64,
    /// `⟨0^m|U_x† (|1⟩⟨1| ⊗ I) U_x|0^m⟩`.
    pub q1_measured: f64,
}

/// `(1 + q₁^{2t}) C(2t−1, t−1)/4^t`.
pub fn bqp_predicted_fp(q1: f64, t: usize) -> f64 {
    (1.0 + q1.powi(2 * t as i32)) * binomial(2 * t as u64 - 1, t as u64 - 1) / 4f64.powi(t as i32)
}

/// `V_x = (U_x† ⊗ H)·CZ(0, m)·(U_x ⊗ H)` on `m + 1` qubits, embedded in `n`.
fn v_x(ux: &Circuit, n: usize) -> Result<Circuit> {
    let m = ux.n();
    let mut c = ux.widened(n, 0)?;
    c.push(Gate::h(m))?.push(Gate::cz(0, m))?.push(Gate::h(m))?;
    c.append_shifted(&ux.inverse()?, 0)?;
    Ok(c)
}

/// Element `j` of `{V_x|0⟩ ⊗ |φ_j⟩} ∪ {|0^m 1⟩ ⊗ |φ_j⟩}`, `|φ_j⟩ = (|0⟩ + e^{2πij/K}|1⟩)/√2`.
pub(crate) fn bqp_element(ux: &Circuit, k: usize, j: usize) -> Result<Circuit> {
    let m = ux.n();
    let n = m + 2;
    let (mut c, idx) = if j <= k {
        (v_x(ux, n)?, j)
    } else {
        (Circuit::from_gates(n, vec![Gate::x(m)])?, j - k)
    };
    c.push(Gate::h(m + 1))?
        .push(Gate::phase(2.0 * PI * idx as f64 / k as f64, m + 1))?;
    Ok(c)
}

fn q1_two_ways(ux: &Circuit) -> Result<(f64, f64)> {
    let m = ux.n();
    let v = simulate_state(&v_x(ux, m + 1)?, "")?;
    let via_v = v.amplitudes()[1].norm();
    let u = simulate_state(ux, "")?;
    let half = 1usize << (m - 1);
    let measured = u.amplitudes()[half..].iter().map(|a| a.norm_sqr()).sum();
    Ok((via_v, measured))
}

/// State gadget whose frame potential encodes the acceptance probability of `U_x`.
///
/// `k` phase states per branch, so the set has `2k` elements on `m + 2` qubits.
pub fn bqp_gadget(ux: &Circuit, t: usize, k: usize) -> Result<BqpGadget> {
    let m = ux.n();
    if m < 2 {
        return Err(Error::domain("U_x must act on at least 2 qubits"));
    }
    limits::check(m + 2 <= MAX_BQP_QUBITS, "MAX_BQP_QUBITS", || {
        format!("BQP gadget on {} qubits exceeds {MAX_BQP_QUBITS}", m + 2)
    })?;
    if t == 0 || k <= t {
        return Err(Error::domain(format!("need K > t ≥ 1, got K = {k}, t = {t}")));
    }
    let (q1, q1_measured) = q1_two_ways(ux)?;
    if (q1 - q1_measured).abs() > 1e-10 {
        return Err(Error::Verification(format!("q₁ = {q1} from V_x but {q1_measured} from U_x")));
    }
    let descriptor = SetDescriptor {
        kind: SetKind::State,
        n: m + 2,
        k: 2 * k,
        resolver: Resolver::Bqp { ux: ux.clone() },
        initial_state: None,
    };
    descriptor.validate()?;
    let predicted = bqp_predicted_fp(q1, t);
    let ingredients = Ingredients {
        f: None,
        s_f: None,
        k: 2 * k,
        n: m + 2,
        t,
        base_fp: phase_state_fp_exact(k, 1, t),
    };
    Ok(BqpGadget {
        instance: GadgetInstance::new(descriptor, predicted, ingredients, None)?,
        q1,
        q1_measured,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_acceptors() {
        for t in 1..=3 {
            let c = binomial(2 * t as u64 - 1, t as u64 - 1) / 4f64.powi(t as i32);
            let yes = bqp_gadget(&Circuit::from_gates(2, vec![Gate::x(0)]).unwrap(), t, 4).unwrap();
            assert!((yes.q1 - 1.0).abs() < 1e-12);
            assert!((yes.instance.predicted_fp - 2.0 * c).abs() < 1e-15);
            yes.instance.verify().unwrap();
            let no = bqp_gadget(&Circuit::new(2), t, 4).unwrap();
            assert!(no.q1.abs() < 1e-12);
            assert!((no.instance.predicted_fp - c).abs() < 1e-15);
            no.instance.verify().unwrap();
        }
    }

    #[test]
    fn partial_acceptance() {
        let ux = Circuit::from_gates(3, vec![Gate::h(0), Gate::t(0), Gate::h(0), Gate::cnot(0, 2)]).unwrap();
        let g = bqp_gadget(&ux, 2, 5).unwrap();
        assert!(g.q1 > 0.0 && g.q1 < 1.0);
        g.instance.verify().unwrap();
    }

    #[test]
    fn promise_gap() {
        for t in 1..=4 {
            let c = binomial(2 * t as u64 - 1, t as u64 - 1);
            let gap = bqp_predicted_fp(2.0 / 3.0, t) - bqp_predicted_fp(1.0 / 3.0, t);
            let want = (9f64.powi(-(t as i32)) - 36f64.powi(-(t as i32))) * c;
            assert!((gap - want).abs() < 1e-12);
        }
    }

    #[test]
    fn preconditions() {
        assert!(bqp_gadget(&Circuit::new(1), 1, 4).is_err());
        assert!(bqp_gadget(&Circuit::new(2), 2, 2).is_err());
        assert!(matches!(bqp_gadget(&Circuit::new(19), 1, 4), Err(Error::SizeGuard { .. })));
    }
}
