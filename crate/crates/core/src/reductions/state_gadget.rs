use super::thresholds::{majsat_thresholds, sfp_prediction, GadgetKind};
use super::{exact_design_fp, f_ingredients, resolve_base_fp, GadgetInstance};
use crate::circuits::{BooleanFunction, Circuit, Gate, Resolver, SetDescriptor, SetKind};
use crate::limits;
use crate::numerics::C64;
use crate::{Error, Result};

/// Largest register for the state gadgets.
pub const MAX_STATE_GADGET_QUBITS: usize = 12;

fn guard(n: usize) -> Result<()> {
    limits::check(n <= MAX_STATE_GADGET_QUBITS, "MAX_STATE_GADGET_QUBITS", || {
        format!("state gadget on {n} qubits exceeds {MAX_STATE_GADGET_QUBITS}")
    })
}

/// `2^{−v/2} Σ_x |x⟩|f(x)⟩`, followed by `pad` zero qubits.
fn graph_amplitudes(f: &BooleanFunction, pad: usize) -> Vec<C64> {
    let v = f.n_vars();
    let mut amps = vec![C64::new(0.0, 0.0); 1 << (v + 1 + pad)];
    let a = 2f64.powf(-(v as f64) / 2.0);
    for x in 0..1usize << v {
        let idx = (x << 1 | f.eval(x) as usize) << pad;
        amps[idx] = C64::new(a, 0.0);
    }
    amps
}

/// `|+⟩^{⊗v}|1⟩` on the first `v + 1` qubits.
fn plus_one(n: usize, v: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n);
    for q in 0..v {
        c.push(Gate::h(q))?;
    }
    c.push(Gate::x(v))?;
    Ok(c)
}

/// Element `j` of `{|f⟩|0⟩, |p⟩|0⟩} ∪ {|φ_j⟩|1⟩}`.
pub(crate) fn sfp_element(f: &BooleanFunction, base: &SetDescriptor, j: usize) -> Result<Circuit> {
    let n = f.n_vars() + 2;
    match j {
        1 => Circuit::from_gates(n, vec![Gate::prepare((0..n).collect(), graph_amplitudes(f, 1))?]),
        2 => plus_one(n, n - 2),
        _ => {
            let mut c = base.state_circuit(j - 2)?.widened(n, 0)?;
            c.push(Gate::x(n - 1))?;
            Ok(c)
        }
    }
}

/// Element `j` of `{|f⟩, |p⟩} ∪ S'`.
pub(crate) fn stdes_element(f: &BooleanFunction, base: &SetDescriptor, j: usize) -> Result<Circuit> {
    let n = f.n_vars() + 1;
    match j {
        1 => Circuit::from_gates(n, vec![Gate::prepare((0..n).collect(), graph_amplitudes(f, 0))?]),
        2 => plus_one(n, n - 1),
        _ => base.state_circuit(j - 2),
    }
}

fn gadget_descriptor(
    resolver: Resolver,
    n: usize,
    k: usize,
) -> Result<SetDescriptor> {
    let d = SetDescriptor {
        kind: SetKind::State,
        n,
        k,
        resolver,
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}

/// State frame-potential gadget on `n = f.n_vars() + 2` qubits.
///
/// `base_fp` may be supplied; it is checked against the Gram loop.
pub fn sfp_gadget(f: &BooleanFunction, base: &SetDescriptor, t: usize, base_fp: Option<f64>) -> Result<GadgetInstance> {
    let n = f.n_vars() + 2;
    guard(n)?;
    super::check_gadget_base(base, SetKind::State, n - 1)?;
    let fb = resolve_base_fp(base, t, base_fp)?;
    let k = base.k + 2;
    let descriptor = gadget_descriptor(
        Resolver::Sfp {
            f: f.clone(),
            base: Box::new(base.clone()),
        },
        n,
        k,
    )?;
    let predicted = sfp_prediction(n, k, t, fb, f.sat_count() as f64);
    let thresholds = majsat_thresholds(GadgetKind::Sfp, t, n, k, fb, None).ok();
    GadgetInstance::new(descriptor, predicted, f_ingredients(f, k, n, t, fb), thresholds)
}

/// Gadget on `n = f.n_vars() + 1` qubits over an exact state `t`-design.
///
/// The cross terms against the base then average to `1/d_t`, so the
/// prediction is `LB(s(f))` with `δ₀ = 0`.
pub fn stdes_gadget(f: &BooleanFunction, base: &SetDescriptor, t: usize, base_fp: Option<f64>) -> Result<GadgetInstance> {
    let n = f.n_vars() + 1;
    guard(n)?;
    super::check_gadget_base(base, SetKind::State, n)?;
    let fb = exact_design_fp(base, t, base_fp)?;
    let k = base.k + 2;
    let descriptor = gadget_descriptor(
        Resolver::StDes {
            f: f.clone(),
            base: Box::new(base.clone()),
        },
        n,
        k,
    )?;
    let th = majsat_thresholds(GadgetKind::StDes, t, n, k, fb, Some(0.0))?;
    let predicted = match &th {
        super::MajSatThresholds::DesignBounds(env) => env.lb(f.sat_count() as f64),
        _ => return Err(Error::Verification("design gadget produced α/β thresholds".into())),
    };
    GadgetInstance::new(descriptor, predicted, f_ingredients(f, k, n, t, fb), Some(th))
}
