use serde::{Deserialize, Serialize};

use super::moments::{state_distance_from_moment, state_moment, unitary_distance_from_moment, unitary_moment};
use super::{fp_bounds, frame_potential, haar_value};
use crate::circuits::{SetDescriptor, SetKind};
use crate::limits::{checked_pow, MAX_MOMENT_DIM, MAX_MOMENT_T};
use crate::numerics::{sym_dimension, DEFAULT_TOL};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// A δ-approximate design.
    CertifiedDeltaDesign { delta: f64 },
    /// Not a δ'-approximate design.
    RefutedDeltaPrime { delta_prime: f64 },
    Inconclusive,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::CertifiedDeltaDesign { .. } => "CERTIFIED",
            Verdict::RefutedDeltaPrime { .. } => "REFUTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifyMode {
    /// Decide from the frame potential alone.
    FramePotentialOnly,
    /// Let the exact design distance decide whenever the moment operator fits.
    #[default]
    PreferExactDistance,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    pub delta: f64,
    pub delta_prime: f64,
    pub mode: CertifyMode,
    pub tol: f64,
}

impl CertifyOptions {
    pub fn new(delta: f64, delta_prime: f64) -> Self {
        CertifyOptions {
            delta,
            delta_prime,
            mode: CertifyMode::default(),
            tol: DEFAULT_TOL,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta >= 0.0) || !(self.delta_prime > self.delta) {
            return Err(Error::invalid(format!(
                "need δ' > δ ≥ 0, got δ = {}, δ' = {}",
                self.delta, self.delta_prime
            )));
        }
        Ok(())
    }
}

/// Frame-potential value together with its Haar reference, bounds and verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub kind: SetKind,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub t: usize,
    #[serde(rename = "F")]
    pub value: f64,
    pub haar: f64,
    pub bounds: [f64; 2],
    /// `[certify below, refute above]` on the frame potential.
    pub thresholds: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<f64>,
    pub fp_verdict: Verdict,
    pub verdict: Verdict,
}

/// Frame-potential thresholds `(certify, refute)` for the given δ, δ'.
pub fn fp_thresholds(kind: SetKind, d: usize, t: usize, delta: f64, delta_prime: f64) -> (f64, f64) {
    let haar = haar_value(kind, d, t);
    match kind {
        SetKind::State => {
            let dt = sym_dimension(d, t);
            (haar + delta * delta / (dt * dt), haar + delta_prime * delta_prime / dt)
        }
        SetKind::Unitary => {
            let d2t = (d as f64).powi(2 * t as i32);
            (haar + delta * delta / d2t, haar + delta_prime * delta_prime)
        }
    }
}

/// Smallest `δ` that the frame-potential sufficient condition certifies for
/// value `f`: `d_t·sqrt(F − 1/d_t)` for states, `d^t·sqrt(F − F_H)` for unitaries.
pub fn implied_delta(kind: SetKind, d: usize, t: usize, f: f64) -> f64 {
    let excess = (f - haar_value(kind, d, t)).max(0.0);
    match kind {
        SetKind::State => sym_dimension(d, t) * excess.sqrt(),
        SetKind::Unitary => (d as f64).powi(t as i32) * excess.sqrt(),
    }
}

fn distance_feasible(kind: SetKind, d: usize, t: usize) -> bool {
    let power = match kind {
        SetKind::State => t,
        SetKind::Unitary => 2 * t,
    };
    t <= MAX_MOMENT_T && checked_pow(d, power).is_some_and(|x| x <= MAX_MOMENT_DIM)
}

pub fn certify(s: &SetDescriptor, t: usize, delta: f64, delta_prime: f64) -> Result<MomentReport> {
    certify_with(s, t, &CertifyOptions::new(delta, delta_prime))
}

pub fn certify_with(s: &SetDescriptor, t: usize, opts: &CertifyOptions) -> Result<MomentReport> {
    opts.validate()?;
    let f = frame_potential(s, t)?;
    let d = s.dim();
    let distance = if opts.mode == CertifyMode::PreferExactDistance && distance_feasible(s.kind, d, t) {
        Some(match s.kind {
            SetKind::State => state_distance_from_moment(&state_moment(s, t)?, d, t)?.distance,
            SetKind::Unitary => unitary_distance_from_moment(&unitary_moment(s, t)?, d, t)?.distance,
        })
    } else {
        None
    };
    build_report(s.kind, s.n, s.k, t, f, distance, opts)
}

/// Assemble a report from an already computed value (and distance, if any).
pub(crate) fn build_report(
    kind: SetKind,
    n: usize,
    k: usize,
    t: usize,
    f: f64,
    distance: Option<f64>,
    opts: &CertifyOptions,
) -> Result<MomentReport> {
    opts.validate()?;
    let d = 1usize << n;
    let haar = haar_value(kind, d, t);
    let (lo, hi) = fp_bounds(kind, d, t, k);
    let slack = opts.tol * hi.max(1.0);
    if !(f >= lo - slack && f <= hi + slack) {
        return Err(Error::Verification(format!(
            "frame potential {f} outside its admissible range [{lo}, {hi}]"
        )));
    }
    let (cert, refute) = fp_thresholds(kind, d, t, opts.delta, opts.delta_prime);
    let fp_verdict = if f <= cert + opts.tol {
        Verdict::CertifiedDeltaDesign { delta: opts.delta }
    } else if f > refute + opts.tol {
        Verdict::RefutedDeltaPrime { delta_prime: opts.delta_prime }
    } else {
        Verdict::Inconclusive
    };
    let verdict = match distance {
        Some(dist) if dist <= opts.delta + opts.tol => Verdict::CertifiedDeltaDesign { delta: opts.delta },
        Some(dist) if dist > opts.delta_prime => Verdict::RefutedDeltaPrime { delta_prime: opts.delta_prime },
        Some(_) => Verdict::Inconclusive,
        None => fp_verdict,
    };
    Ok(MomentReport {
        kind,
        n,
        k,
        t,
        value: f,
        haar,
        bounds: [lo, hi],
        thresholds: [cert, refute],
        distance,
        fp_verdict,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::Circuit;
    use crate::designs::{clifford_set, computational_basis_set, pauli_set, phase_state_set};

    #[test]
    fn basis_certifies() {
        let r = certify(&computational_basis_set(2).unwrap(), 1, 0.0, 0.1).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedDeltaDesign { delta: 0.0 });
        assert_eq!(r.fp_verdict, r.verdict);
        assert!(r.distance.unwrap() < 1e-12);
    }

    #[test]
    fn singleton_refuted() {
        let single = SetDescriptor::explicit(SetKind::State, 1, vec![Circuit::new(1)]).unwrap();
        let mut opts = CertifyOptions::new(0.1, 0.5);
        opts.mode = CertifyMode::FramePotentialOnly;
        let r = certify_with(&single, 1, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::RefutedDeltaPrime { delta_prime: 0.5 });
        assert_eq!(r.thresholds, [0.5 + 0.01 / 4.0, 0.5 + 0.25 / 2.0]);
        assert!(r.distance.is_none());
        let exact = certify(&single, 1, 0.1, 0.5).unwrap();
        assert_eq!(exact.distance, Some(1.0));
        assert_eq!(exact.verdict, Verdict::RefutedDeltaPrime { delta_prime: 0.5 });
    }

    /// Phase states on one qubit at t = 2 have F = 3/8 against 1/d_2 = 1/3.
    /// With d_2 = 3, the band is (1/3 + δ²/9, 1/3 + δ'²/3]; δ = 0.3, δ' = 0.55
    /// puts 3/8 inside it.
    #[test]
    fn gap_is_reported() {
        let ph = phase_state_set(1, 8, 1).unwrap();
        let mut opts = CertifyOptions::new(0.3, 0.55);
        opts.mode = CertifyMode::FramePotentialOnly;
        let r = certify_with(&ph, 2, &opts).unwrap();
        assert!(r.thresholds[0] < 0.375 && 0.375 <= r.thresholds[1]);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        // M − Π/3 = diag(−1/12, 1/6, −1/12) on the symmetric subspace, so the distance is 1/2
        let exact = certify(&ph, 2, 0.3, 0.55).unwrap();
        assert!((exact.distance.unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(exact.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn groups_certify() {
        assert_eq!(certify(&pauli_set(1).unwrap(), 1, 0.0, 0.1).unwrap().verdict.label(), "CERTIFIED");
        let c3 = certify(&clifford_set(1).unwrap(), 3, 0.0, 0.1).unwrap();
        assert_eq!(c3.verdict.label(), "CERTIFIED");
        assert_eq!(c3.fp_verdict.label(), "CERTIFIED");
        assert_eq!(c3.haar, 5.0);
        // not a 4-design
        let c4 = certify(&clifford_set(1).unwrap(), 4, 0.0, 0.5).unwrap();
        assert_eq!(c4.haar, 14.0);
        assert!((c4.value - 15.0).abs() < 1e-9);
        assert_eq!(c4.verdict.label(), "REFUTED");
    }

    #[test]
    fn invalid_thresholds() {
        let b = computational_basis_set(1).unwrap();
        assert!(certify(&b, 1, 0.5, 0.5).is_err());
        assert!(certify(&b, 1, -0.1, 0.5).is_err());
    }

    #[test]
    fn json_shape() {
        let r = certify(&computational_basis_set(1).unwrap(), 1, 0.0, 0.1).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"], "state");
        assert_eq!(v["F"], 0.5);
        assert_eq!(v["verdict"]["status"], "CERTIFIED_DELTA_DESIGN");
        assert!(v["bounds"].is_array());
    }
}
