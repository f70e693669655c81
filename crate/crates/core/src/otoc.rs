//! Infinite-temperature `2t`-point OTOCs averaged over Pauli strings.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{SetDescriptor, SetKind};
use crate::designs::pauli_set;
use crate::framepotential::{expect, unitary_frame_potential};
use crate::limits;
use crate::numerics::{pairwise_sum, DenseOperator, C64};
use crate::{Error, Result};

/// Pauli tuples times ensemble size the direct sum may visit.
pub const MAX_OTOC_TERMS: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OtocReport {
    pub t: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct: Option<f64>,
    pub via_fp: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub basis: String,
}

fn direct_guard(n: usize, t: usize, k: usize) -> Result<()> {
    let shape_ok = (n <= 2 && t <= 2) || (n <= 1 && t <= 3);
    limits::check(shape_ok, "OTOC_SHAPE", || {
        format!("direct OTOC needs n ≤ 2 and t ≤ 2, or n ≤ 1 and t ≤ 3; got n = {n}, t = {t}")
    })?;
    let terms = 1u64 << (4 * n * t);
    limits::check(terms.saturating_mul(k as u64) <= MAX_OTOC_TERMS, "MAX_OTOC_TERMS", || {
        format!("4^{{2nt}}·K = {terms}·{k} exceeds {MAX_OTOC_TERMS}")
    })
}

/// `2^{−4nt} Σ_{O_1..O_{2t}} |E_U Tr[O_{2t}·U O_{2t−1} U† ⋯ O_2·U O_1 U†·I/2^n]|²`.
///
/// The ensemble average sits inside the modulus; this is the form for which
/// the frame-potential identity holds.
pub fn otoc_direct(u: &SetDescriptor, t: usize) -> Result<f64> {
    expect(u, SetKind::Unitary)?;
    if t == 0 {
        return Err(Error::domain("degree t must be at least 1"));
    }
    let n = u.n;
    direct_guard(n, t, u.k)?;
    let paulis = pauli_set(n)?.unitaries()?;
    let us = u.unitaries()?;
    // U P U† for every element and every Pauli string
    let conj: Vec<Vec<DenseOperator>> = us
        .iter()
        .map(|m| paulis.iter().map(|p| m.mul(p).mul(&m.dagger())).collect())
        .collect();
    let np = paulis.len();
    let d = 1usize << n;
    let tuples = np.pow(2 * t as u32);
    let terms: Vec<f64> = (0..tuples)
        .into_par_iter()
        .map(|code| {
            // digit 2i is O_{2i+1}, digit 2i+1 is O_{2i+2}
            let digits: Vec<usize> = (0..2 * t).map(|i| code / np.pow(i as u32) % np).collect();
            let mut acc = C64::new(0.0, 0.0);
            for cu in &conj {
                let mut m = DenseOperator::identity(d);
                for j in (0..t).rev() {
                    m = m.mul(&paulis[digits[2 * j + 1]]).mul(&cu[digits[2 * j]]);
                }
                acc += m.trace();
            }
            (acc / (us.len() as f64 * d as f64)).norm_sqr()
        })
        .collect();
    Ok(pairwise_sum(&terms) / 2f64.powi((4 * n * t) as i32))
}

/// `F_t / 2^{2(t+1)n}`.
pub fn otoc_via_fp(u: &SetDescriptor, t: usize) -> Result<f64> {
    let f = unitary_frame_potential(u, t)?;
    Ok(f / 2f64.powi((2 * (t + 1) * u.n) as i32))
}

/// Both values when the direct sum is inside its guard, otherwise only the
/// frame-potential route.
pub fn otoc_report(u: &SetDescriptor, t: usize) -> Result<OtocReport> {
    let via_fp = otoc_via_fp(u, t)?;
    let direct = match otoc_direct(u, t) {
        Ok(v) => Some(v),
        Err(Error::SizeGuard { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(OtocReport {
        t,
        n: u.n,
        direct,
        via_fp,
        delta: direct.map(|d| (d - via_fp).abs()),
        basis: "pauli_unnormalized".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{Circuit, Gate};
    use crate::designs::clifford_set;

    fn identity_set(n: usize) -> SetDescriptor {
        SetDescriptor::explicit(SetKind::Unitary, n, vec![Circuit::new(n)]).unwrap()
    }

    #[test]
    fn identity_quarter() {
        let id = identity_set(1);
        assert_eq!(otoc_direct(&id, 1).unwrap(), 0.25);
        assert_eq!(otoc_via_fp(&id, 1).unwrap(), 0.25);
    }

    #[test]
    fn pauli_sixteenth() {
        let p = pauli_set(1).unwrap();
        assert!((otoc_direct(&p, 1).unwrap() - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_ordering() {
        // for t = 1 and a single U the summand is |Tr[O₂ U O₁ U†]/2|²
        let c = Circuit::from_gates(1, vec![Gate::h(0), Gate::t(0)]).unwrap();
        let s = SetDescriptor::explicit(SetKind::Unitary, 1, vec![c]).unwrap();
        let u = s.unitary(1).unwrap();
        let ps = pauli_set(1).unwrap().unitaries().unwrap();
        let mut acc = 0.0;
        for o1 in &ps {
            for o2 in &ps {
                acc += (o2.mul(&u).mul(o1).mul(&u.dagger()).trace() / 2.0).norm_sqr();
            }
        }
        assert!((otoc_direct(&s, 1).unwrap() - acc / 16.0).abs() < 1e-14);
    }

    #[test]
    fn identity_holds() {
        let c1 = clifford_set(1).unwrap();
        for t in 1..=3 {
            let r = otoc_report(&c1, t).unwrap();
            assert!(r.delta.unwrap() < 1e-9, "t={t}: {r:?}");
        }
        // F₃ = 5 and 2^{2(t+1)n} = 2^8
        assert!((otoc_via_fp(&c1, 3).unwrap() - 5.0 / 256.0).abs() < 1e-15);
        let phased = SetDescriptor::explicit(
            SetKind::Unitary,
            1,
            vec![Circuit::from_gates(1, vec![Gate::x(0), Gate::z(0), Gate::x(0), Gate::z(0)]).unwrap()],
        )
        .unwrap();
        // XZXZ = −I
        assert!((otoc_direct(&phased, 2).unwrap() - otoc_direct(&identity_set(1), 2).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn guards() {
        assert!(matches!(otoc_direct(&identity_set(3), 1), Err(Error::SizeGuard { .. })));
        assert!(matches!(otoc_direct(&identity_set(2), 3), Err(Error::SizeGuard { .. })));
        let r = otoc_report(&identity_set(3), 1).unwrap();
        assert!(r.direct.is_none());
        assert_eq!(r.via_fp, 1.0 / 16.0 / 16.0 * 4.0);
    }
}
