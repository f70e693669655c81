use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use super::circuit::{parse_bits, Circuit};
use super::gate::{Gate, GateKind, Householder};
use crate::limits::{self, MAX_STATE_QUBITS, MAX_UNITARY_QUBITS};
use crate::numerics::{DenseOperator, DenseState, C64};
use crate::{Error, Result};

fn state_guard(n: usize) -> Result<()> {
    limits::check(n <= MAX_STATE_QUBITS, "MAX_STATE_QUBITS", || {
        format!("{n} qubits exceed the statevector limit of {MAX_STATE_QUBITS}")
    })
}

/// Exact statevector of `c` applied to `|input⟩`. An empty input means `|0…0⟩`.
pub fn simulate_state(c: &Circuit, input: &str) -> Result<DenseState> {
    if c.has_rescaled() {
        return Err(Error::invalid("RESCALED_H is only legal in path-sum circuits"));
    }
    simulate_unnormalized(c, input)
}

/// Like [`simulate_state`] but also accepts `RESCALED_H`.
pub fn simulate_unnormalized(c: &Circuit, input: &str) -> Result<DenseState> {
    state_guard(c.n())?;
    let idx = parse_bits(input, c.n())?;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << c.n()];
    amps[idx] = C64::new(1.0, 0.0);
    apply_circuit(&mut amps, c.n(), c, 0);
    Ok(DenseState::from_vec_unchecked(amps))
}

/// Apply `c` to an arbitrary input state.
pub fn simulate_from(c: &Circuit, psi: DenseState) -> Result<DenseState> {
    state_guard(c.n())?;
    if psi.dim() != 1 << c.n() {
        return Err(Error::domain(format!("state of dim {} on {} qubits", psi.dim(), c.n())));
    }
    let mut amps = psi.into_amplitudes();
    apply_circuit(&mut amps, c.n(), c, 0);
    Ok(DenseState::from_vec_unchecked(amps))
}

/// Full `2^n × 2^n` unitary, one simulated column per basis input.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseOperator> {
    if c.has_rescaled() {
        return Err(Error::invalid("RESCALED_H is only legal in path-sum circuits"));
    }
    let n = c.n();
    limits::check(n <= MAX_UNITARY_QUBITS, "MAX_UNITARY_QUBITS", || {
        format!("{n} qubits exceed the dense-unitary limit of {MAX_UNITARY_QUBITS}")
    })?;
    let dim = 1usize << n;
    let cols: Vec<Vec<C64>> = (0..dim)
        .into_par_iter()
        .map(|col| {
            let mut amps = vec![C64::new(0.0, 0.0); dim];
            amps[col] = C64::new(1.0, 0.0);
            apply_circuit(&mut amps, n, c, 0);
            amps
        })
        .collect();
    Ok(DenseOperator::from_fn(dim, dim, |r, col| cols[col][r]))
}

/// Apply `c` to qubits `offset..offset + c.n()` of an `n_total`-qubit register.
pub(crate) fn apply_circuit(amps: &mut [C64], n_total: usize, c: &Circuit, offset: usize) {
    debug_assert!(offset + c.n() <= n_total);
    for g in c.gates() {
        apply_gate(amps, n_total, g, offset);
    }
}

pub(crate) fn apply_gate(amps: &mut [C64], n_total: usize, g: &Gate, offset: usize) {
    let mask = |q: usize| 1usize << (n_total - 1 - (q + offset));
    let t = &g.targets;
    match &g.kind {
        GateKind::H => single(amps, mask(t[0]), |x, y| ((x + y) * FRAC_1_SQRT_2, (x - y) * FRAC_1_SQRT_2)),
        GateKind::RescaledH => single(amps, mask(t[0]), |x, y| (x + y, x - y)),
        GateKind::X => single(amps, mask(t[0]), |x, y| (y, x)),
        GateKind::Y => single(amps, mask(t[0]), |x, y| (C64::new(y.im, -y.re), C64::new(-x.im, x.re))),
        GateKind::Z => phase_where(amps, mask(t[0]), C64::new(-1.0, 0.0)),
        GateKind::S => phase_where(amps, mask(t[0]), C64::new(0.0, 1.0)),
        GateKind::T => phase_where(amps, mask(t[0]), C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
        GateKind::Phase { theta } => phase_where(amps, mask(t[0]), C64::from_polar(1.0, *theta)),
        GateKind::Cz => phase_where(amps, mask(t[0]) | mask(t[1]), C64::new(-1.0, 0.0)),
        GateKind::Cnot => controlled_flip(amps, mask(t[0]), mask(t[1])),
        GateKind::Toffoli => controlled_flip(amps, mask(t[0]) | mask(t[1]), mask(t[2])),
        GateKind::Unitary { matrix } => {
            let m = matrix.row_major();
            let dim = matrix.rows();
            dense_block(amps, t.iter().map(|&q| mask(q)).collect(), |v| {
                let out: Vec<C64> = (0..dim)
                    .map(|r| m[r * dim..(r + 1) * dim].iter().zip(v.iter()).map(|(a, b)| a * b).sum())
                    .collect();
                v.copy_from_slice(&out);
            })
        }
        GateKind::Prepare { amplitudes } => {
            let hh = Householder::new(amplitudes);
            dense_block(amps, t.iter().map(|&q| mask(q)).collect(), |v| hh.apply(v))
        }
    }
}

fn single(amps: &mut [C64], m: usize, f: impl Fn(C64, C64) -> (C64, C64)) {
    let dim = amps.len();
    let mut base = 0;
    while base < dim {
        for i in base..base + m {
            let (a, b) = f(amps[i], amps[i + m]);
            amps[i] = a;
            amps[i + m] = b;
        }
        base += 2 * m;
    }
}

/// Multiply amplitudes whose index has every bit of `m` set.
fn phase_where(amps: &mut [C64], m: usize, phase: C64) {
    for (i, a) in amps.iter_mut().enumerate() {
        if i & m == m {
            *a *= phase;
        }
    }
}

fn controlled_flip(amps: &mut [C64], controls: usize, target: usize) {
    for i in 0..amps.len() {
        if i & controls == controls && i & target == 0 {
            amps.swap(i, i | target);
        }
    }
}

/// Gather each block of amplitudes addressed by `masks` (first mask is the
/// most significant local bit), transform it, scatter it back.
fn dense_block(amps: &mut [C64], masks: Vec<usize>, mut f: impl FnMut(&mut [C64])) {
    let k = masks.len();
    let local = 1usize << k;
    let offsets: Vec<usize> = (0..local)
        .map(|l| {
            (0..k)
                .filter(|&pos| l >> (k - 1 - pos) & 1 == 1)
                .map(|pos| masks[pos])
                .sum()
        })
        .collect();
    let all: usize = masks.iter().sum();
    let mut buf = vec![C64::new(0.0, 0.0); local];
    for i in 0..amps.len() {
        if i & all != 0 {
            continue;
        }
        for (b, off) in buf.iter_mut().zip(&offsets) {
            *b = amps[i + off];
        }
        f(&mut buf);
        for (b, off) in buf.iter().zip(&offsets) {
            amps[i + off] = *b;
        }
    }
}
