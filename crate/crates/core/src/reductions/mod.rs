//! Counting gadgets: sets whose frame potential encodes the satisfying count
//! of a Boolean function, a BQP acceptance probability, or a path sum.

mod bqp;
mod path_sum;
mod state_gadget;
mod subset_count;
mod thresholds;
mod unitary_gadget;

use serde::Serialize;

pub use bqp::{bqp_gadget, bqp_predicted_fp, BqpGadget};
pub use path_sum::{doubled_register_circuit, path_sum_count, path_sum_count_sparse, path_sum_direct, PathSumCount, SwapPattern, MAX_PATH_BITS};
pub use state_gadget::{sfp_gadget, stdes_gadget};
pub use subset_count::{subset_phase_count, SubsetCount, MAX_SUBSET_TUPLES};
pub use thresholds::{majsat_thresholds, GadgetKind, LbUb, MajSatThresholds};
pub use unitary_gadget::{g_t, reflection_trace, ufp_gadget, unides_gadget};

pub(crate) use bqp::bqp_element;
pub(crate) use state_gadget::{sfp_element, stdes_element};
pub(crate) use unitary_gadget::{ufp_element, unides_element};

use crate::circuits::{BooleanFunction, Resolver, SetDescriptor, SetKind};
use crate::designs::phase_state_fp_exact;
use crate::framepotential::{fp_bounds, frame_potential, haar_value};
use crate::{Error, Result};

/// Agreement required between a prediction and the Gram loop.
pub const ORACLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ingredients {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<BooleanFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_f: Option<u64>,
    #[serde(rename = "K")]
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub base_fp: f64,
}

/// A gadget set with its analytic frame potential.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GadgetInstance {
    pub descriptor: SetDescriptor,
    pub predicted_fp: f64,
    pub ingredients: Ingredients,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<MajSatThresholds>,
}

impl GadgetInstance {
    fn new(
        descriptor: SetDescriptor,
        predicted_fp: f64,
        ingredients: Ingredients,
        thresholds: Option<MajSatThresholds>,
    ) -> Result<Self> {
        let d = descriptor.dim();
        let (lo, hi) = fp_bounds(descriptor.kind, d, ingredients.t, descriptor.k);
        let slack = ORACLE_TOL * hi;
        if !(predicted_fp >= lo - slack && predicted_fp <= hi + slack) {
            return Err(Error::Verification(format!(
                "predicted frame potential {predicted_fp} outside [{lo}, {hi}]"
            )));
        }
        Ok(GadgetInstance {
            descriptor,
            predicted_fp,
            ingredients,
            thresholds,
        })
    }

    /// Gram-loop value of the gadget set.
    pub fn brute_force_fp(&self) -> Result<f64> {
        frame_potential(&self.descriptor, self.ingredients.t)
    }

    /// Compare the prediction with the Gram loop; returns the Gram value.
    pub fn verify(&self) -> Result<f64> {
        let brute = self.brute_force_fp()?;
        let diff = (brute - self.predicted_fp).abs();
        if diff > ORACLE_TOL {
            return Err(Error::Verification(format!(
                "predicted {} but the Gram loop gives {brute} (|Δ| = {diff:e})",
                self.predicted_fp
            )));
        }
        Ok(brute)
    }
}

pub(crate) fn check_gadget_base(base: &SetDescriptor, kind: SetKind, n: usize) -> Result<()> {
    if base.kind != kind {
        return Err(Error::invalid(format!("gadget base must be a {} set", kind.name())));
    }
    if base.n != n {
        return Err(Error::invalid(format!("gadget base must act on {n} qubits, got {}", base.n)));
    }
    Ok(())
}

/// Frame potential of a base set: a closed form when the resolver has one,
/// otherwise the Gram loop. A supplied value is checked against the Gram loop.
pub(crate) fn resolve_base_fp(base: &SetDescriptor, t: usize, supplied: Option<f64>) -> Result<f64> {
    if let Some(v) = supplied {
        let brute = frame_potential(base, t)?;
        if (brute - v).abs() > ORACLE_TOL * brute.max(1.0) {
            return Err(Error::Verification(format!(
                "supplied base frame potential {v} but the base set has {brute}"
            )));
        }
        return Ok(v);
    }
    match (&base.resolver, base.kind) {
        (Resolver::Basis, SetKind::State) => Ok(1.0 / base.k as f64),
        (Resolver::Phase { m }, SetKind::State) => Ok(phase_state_fp_exact(base.k, *m, t)),
        (Resolver::Pauli, SetKind::Unitary) => {
            let d = base.dim() as f64;
            Ok(d.powi(2 * t as i32) / base.k as f64)
        }
        _ => frame_potential(base, t),
    }
}

/// Base frame potential for the exact-design gadgets; rejects bases that are
/// not exact `t`-designs.
pub(crate) fn exact_design_fp(base: &SetDescriptor, t: usize, supplied: Option<f64>) -> Result<f64> {
    let fp = resolve_base_fp(base, t, supplied)?;
    let haar = haar_value(base.kind, base.dim(), t);
    if (fp - haar).abs() > ORACLE_TOL * haar.max(1.0) {
        return Err(Error::Regime(format!(
            "base frame potential {fp} differs from the Haar value {haar}; the base must be an exact {t}-design"
        )));
    }
    Ok(haar)
}

pub(crate) fn f_ingredients(f: &BooleanFunction, k: usize, n: usize, t: usize, base_fp: f64) -> Ingredients {
    Ingredients {
        f: Some(f.clone()),
        s_f: Some(f.sat_count()),
        k,
        n,
        t,
        base_fp,
    }
}
