use super::thresholds::{majsat_thresholds, ufp_prediction, GadgetKind, MajSatThresholds};
use super::{exact_design_fp, f_ingredients, resolve_base_fp, GadgetInstance};
use crate::circuits::{BooleanFunction, Circuit, Gate, Resolver, SetDescriptor, SetKind};
use crate::limits;
use crate::numerics::{DenseOperator, C64};
use crate::{Error, Result};

/// Largest register for the unitary gadgets.
pub const MAX_UNITARY_GADGET_QUBITS: usize = 10;

fn guard(n: usize) -> Result<()> {
    limits::check(n <= MAX_UNITARY_GADGET_QUBITS, "MAX_UNITARY_GADGET_QUBITS", || {
        format!("unitary gadget on {n} qubits exceeds {MAX_UNITARY_GADGET_QUBITS}")
    })
}

/// `(2^n − 8 + 2^{7−2n} x²)^{2t}`.
pub fn g_t(n: usize, t: usize, x: f64) -> f64 {
    (2f64.powi(n as i32) - 8.0 + 2f64.powi(7 - 2 * n as i32) * x * x).powi(2 * t as i32)
}

/// `Tr(U_f† U_p)` for the frame-potential gadget, `2^n − 8 + 2^{7−2n} s²`.
pub fn reflection_trace(n: usize, s: u64) -> f64 {
    2f64.powi(n as i32) - 8.0 + 2f64.powi(7 - 2 * n as i32) * (s * s) as f64
}

/// `I − 2|w⟩⟨w|` for a real unit vector `w`.
fn reflection(w: &[f64]) -> DenseOperator {
    DenseOperator::from_fn(w.len(), w.len(), |r, c| {
        let id = if r == c { 1.0 } else { 0.0 };
        C64::new(id - 2.0 * w[r] * w[c], 0.0)
    })
}

/// `2^{−v/2} Σ_x |x⟩|f(x)⟩`.
fn graph_vector(f: &BooleanFunction) -> Vec<f64> {
    let v = f.n_vars();
    let mut w = vec![0.0; 1 << (v + 1)];
    let a = 2f64.powf(-(v as f64) / 2.0);
    for x in 0..1usize << v {
        w[x << 1 | f.eval(x) as usize] = a;
    }
    w
}

/// `|+⟩^{⊗v}|1⟩`.
fn plus_one_vector(v: usize) -> Vec<f64> {
    let a = 2f64.powf(-(v as f64) / 2.0);
    (0..1usize << (v + 1)).map(|i| if i & 1 == 1 { a } else { 0.0 }).collect()
}

/// Reflection on the first `w.len()` qubits of an `n`-qubit register, with
/// `Z` on the last qubit when `tag_z` is set.
fn reflection_circuit(n: usize, w: &[f64], tag_z: bool) -> Result<Circuit> {
    let m = w.len().trailing_zeros() as usize;
    let mut c = Circuit::new(n);
    c.push(Gate::unitary((0..m).collect(), reflection(w))?)?;
    if tag_z {
        c.push(Gate::z(n - 1))?;
    }
    Ok(c)
}

/// Element `j` of `{U_f ⊗ Z, U_p ⊗ Z} ∪ {V_j ⊗ I}`.
pub(crate) fn ufp_element(f: &BooleanFunction, base: &SetDescriptor, j: usize) -> Result<Circuit> {
    let n = f.n_vars() + 2;
    match j {
        1 => reflection_circuit(n, &graph_vector(f), true),
        2 => reflection_circuit(n, &plus_one_vector(n - 2), true),
        _ => base.resolve(j - 2)?.widened(n, 0),
    }
}

/// Element `j` of `{U_f, U_p} ∪ V`.
pub(crate) fn unides_element(f: &BooleanFunction, base: &SetDescriptor, j: usize) -> Result<Circuit> {
    let n = f.n_vars() + 1;
    match j {
        1 => reflection_circuit(n, &graph_vector(f), false),
        2 => reflection_circuit(n, &plus_one_vector(n - 1), false),
        _ => base.resolve(j - 2),
    }
}

fn gadget_descriptor(resolver: Resolver, n: usize, k: usize) -> Result<SetDescriptor> {
    let d = SetDescriptor {
        kind: SetKind::Unitary,
        n,
        k,
        resolver,
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}

/// Unitary frame-potential gadget on `n = f.n_vars() + 2` qubits.
pub fn ufp_gadget(f: &BooleanFunction, base: &SetDescriptor, t: usize, base_fp: Option<f64>) -> Result<GadgetInstance> {
    let n = f.n_vars() + 2;
    guard(n)?;
    super::check_gadget_base(base, SetKind::Unitary, n - 1)?;
    let fb = resolve_base_fp(base, t, base_fp)?;
    let k = base.k + 2;
    let descriptor = gadget_descriptor(
        Resolver::Ufp {
            f: f.clone(),
            base: Box::new(base.clone()),
        },
        n,
        k,
    )?;
    let predicted = ufp_prediction(n, k, t, fb, f.sat_count() as f64);
    let thresholds = majsat_thresholds(GadgetKind::Ufp, t, n, k, fb, None).ok();
    GadgetInstance::new(descriptor, predicted, f_ingredients(f, k, n, t, fb), thresholds)
}

/// Gadget on `n = f.n_vars() + 1` qubits over an exact unitary `t`-design.
///
/// Cross terms average to the Haar value, so the prediction is `LB(s(f))`
/// with `δ₀ = 0`.
pub fn unides_gadget(f: &BooleanFunction, base: &SetDescriptor, t: usize, base_fp: Option<f64>) -> Result<GadgetInstance> {
    let n = f.n_vars() + 1;
    guard(n)?;
    super::check_gadget_base(base, SetKind::Unitary, n)?;
    let fb = exact_design_fp(base, t, base_fp)?;
    let k = base.k + 2;
    let descriptor = gadget_descriptor(
        Resolver::UniDes {
            f: f.clone(),
            base: Box::new(base.clone()),
        },
        n,
        k,
    )?;
    let th = majsat_thresholds(GadgetKind::UniDes, t, n, k, fb, Some(0.0))?;
    let predicted = match &th {
        MajSatThresholds::DesignBounds(env) => env.lb(f.sat_count() as f64),
        _ => return Err(Error::Verification("design gadget produced α/β thresholds".into())),
    };
    GadgetInstance::new(descriptor, predicted, f_ingredients(f, k, n, t, fb), Some(th))
}
