use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuits::{simulate_state, Circuit, Gate, GateKind};
use crate::limits;
use crate::{Error, Result};

/// Largest `L` for exhaustive enumeration of `{0,1}^{L+1}`.
pub const MAX_PATH_BITS: usize = 20;
/// Largest `L` for the sparse counter (counts are held in `u128`).
pub const MAX_SPARSE_PATH_BITS: usize = 120;
/// Distinct intermediate basis states the sparse counter may track.
pub const MAX_SPARSE_BRANCHES: usize = 1 << 22;

/// A product of disjoint qubit swaps; `h̄(α, β) = ⟨β|O|α⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapPattern {
    pub pairs: Vec<(usize, usize)>,
}

impl SwapPattern {
    pub fn identity() -> Self {
        SwapPattern::default()
    }

    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let len = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != len {
            return Err(Error::invalid("swap pairs must be disjoint"));
        }
        Ok(SwapPattern { pairs })
    }

    fn check(&self, width: usize) -> Result<()> {
        if self.pairs.iter().any(|&(a, b)| a >= width || b >= width) {
            return Err(Error::invalid(format!("swap pattern addresses a qubit outside {width}")));
        }
        Ok(())
    }

    /// Image of a basis index; qubit `q` is bit `width − 1 − q`.
    pub fn apply(&self, x: usize, width: usize) -> usize {
        let mut y = x;
        for &(a, b) in &self.pairs {
            let (pa, pb) = (width - 1 - a, width - 1 - b);
            let (ba, bb) = (x >> pa & 1, x >> pb & 1);
            y = (y & !(1 << pa) & !(1 << pb)) | bb << pa | ba << pb;
        }
        y
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathSumCount {
    /// `|{(α⃗, β⃗, b) : f = 1}|`.
    pub s_f: u128,
    pub s_plus: u128,
    pub s_minus: u128,
    pub s_zero: u128,
    /// Hadamard count.
    pub h: usize,
    #[serde(rename = "L")]
    pub l: usize,
}

impl PathSumCount {
    /// `2^{−h}(s(f) − 2^L)`.
    pub fn reconstructed_value(&self) -> f64 {
        let diff = self.s_f as i128 - (1i128 << self.l);
        diff as f64 / 2f64.powi(self.h as i32)
    }
}

enum Step {
    Hadamard(usize),
    Toffoli(usize, usize, usize),
}

fn steps(c: &Circuit) -> Result<Vec<Step>> {
    let w = c.n();
    let bit = |q: usize| w - 1 - q;
    c.gates()
        .iter()
        .map(|g| match g.kind {
            GateKind::H | GateKind::RescaledH => Ok(Step::Hadamard(bit(g.targets[0]))),
            GateKind::Toffoli => Ok(Step::Toffoli(bit(g.targets[0]), bit(g.targets[1]), bit(g.targets[2]))),
            _ => Err(Error::invalid(format!("path sums take only H and TOFFOLI, found {}", g.kind_name()))),
        })
        .collect()
}

/// `⟨out|G|in⟩` with `H̃ = √2 H`.
fn entry(step: &Step, out: usize, inp: usize) -> i8 {
    match *step {
        Step::Hadamard(p) => {
            if (out ^ inp) & !(1 << p) != 0 {
                0
            } else if out >> p & inp >> p & 1 == 1 {
                -1
            } else {
                1
            }
        }
        Step::Toffoli(c1, c2, t) => {
            let flip = (inp >> c1 & inp >> c2 & 1) << t;
            (out == inp ^ flip) as i8
        }
    }
}

fn hadamards(st: &[Step]) -> usize {
    st.iter().filter(|s| matches!(s, Step::Hadamard(_))).count()
}

/// Exhaustive count over all `(α⃗, β⃗, b) ∈ {0,1}^{L+1}`, `L = 2M·width`.
pub fn path_sum_count(c: &Circuit, obs: &SwapPattern) -> Result<PathSumCount> {
    let st = steps(c)?;
    let w = c.n();
    obs.check(w)?;
    let half = st.len() * w;
    let l = 2 * half;
    limits::check(l <= MAX_PATH_BITS, "MAX_PATH_BITS", || {
        format!("L = {l} exceeds {MAX_PATH_BITS} for exhaustive enumeration")
    })?;
    let mask = (1usize << w) - 1;
    // (g(α⃗), α_M) for every α⃗
    let paths: Vec<(i8, usize)> = (0..1usize << half)
        .map(|code| {
            let mut prev = 0usize;
            let mut g = 1i8;
            for (m, s) in st.iter().enumerate() {
                let cur = code >> (m * w) & mask;
                g *= entry(s, cur, prev);
                prev = cur;
            }
            (g, prev)
        })
        .collect();
    let (mut s_f, mut s_plus, mut s_minus, mut s_zero) = (0u128, 0u128, 0u128, 0u128);
    for &(ga, ea) in &paths {
        let image = obs.apply(ea, w);
        for &(gb, eb) in &paths {
            let v = ga * gb * (eb == image) as i8;
            match v {
                1 => s_plus += 1,
                -1 => s_minus += 1,
                _ => s_zero += 1,
            }
            for b in 0..2i8 {
                if v >= b {
                    s_f += 1;
                }
            }
        }
    }
    Ok(PathSumCount {
        s_f,
        s_plus,
        s_minus,
        s_zero,
        h: hadamards(&st),
        l,
    })
}

/// Same counts without enumerating zero-weight paths: the number of paths
/// with `g = ±1` ending in each basis state is propagated gate by gate.
pub fn path_sum_count_sparse(c: &Circuit, obs: &SwapPattern) -> Result<PathSumCount> {
    let st = steps(c)?;
    let w = c.n();
    obs.check(w)?;
    let l = 2 * st.len() * w;
    limits::check(l <= MAX_SPARSE_PATH_BITS, "MAX_SPARSE_PATH_BITS", || {
        format!("L = {l} exceeds {MAX_SPARSE_PATH_BITS}")
    })?;
    let mut layer: BTreeMap<usize, (u128, u128)> = BTreeMap::from([(0, (1, 0))]);
    for s in &st {
        let mut next: BTreeMap<usize, (u128, u128)> = BTreeMap::new();
        for (&x, &(p, m)) in &layer {
            let outs: Vec<usize> = match *s {
                Step::Hadamard(q) => vec![x & !(1 << q), x | 1 << q],
                Step::Toffoli(c1, c2, t) => vec![x ^ (x >> c1 & x >> c2 & 1) << t],
            };
            for y in outs {
                let e = next.entry(y).or_insert((0, 0));
                if entry(s, y, x) < 0 {
                    e.0 += m;
                    e.1 += p;
                } else {
                    e.0 += p;
                    e.1 += m;
                }
            }
        }
        limits::check(next.len() <= MAX_SPARSE_BRANCHES, "MAX_SPARSE_BRANCHES", || {
            format!("more than {MAX_SPARSE_BRANCHES} live basis states")
        })?;
        layer = next;
    }
    let (mut s_plus, mut s_minus) = (0u128, 0u128);
    for (&x, &(pa, ma)) in &layer {
        if let Some(&(pb, mb)) = layer.get(&obs.apply(x, w)) {
            s_plus += pa * pb + ma * mb;
            s_minus += pa * mb + ma * pb;
        }
    }
    let s_zero = (1u128 << l) - s_plus - s_minus;
    Ok(PathSumCount {
        s_f: 2 * s_plus + s_zero,
        s_plus,
        s_minus,
        s_zero,
        h: hadamards(&st),
        l,
    })
}

/// `⟨ψ|O|ψ⟩` by statevector simulation, `H̃` read as `H`.
pub fn path_sum_direct(c: &Circuit, obs: &SwapPattern) -> Result<f64> {
    steps(c)?;
    obs.check(c.n())?;
    let gates = c
        .gates()
        .iter()
        .map(|g| match g.kind {
            GateKind::RescaledH => Gate::h(g.targets[0]),
            _ => g.clone(),
        })
        .collect();
    let psi = simulate_state(&Circuit::from_gates(c.n(), gates)?, "")?;
    let a = psi.amplitudes();
    Ok((0..a.len()).map(|x| (a[obs.apply(x, c.n())].conj() * a[x]).re).sum())
}

/// Two copies of `c` side by side with the first `kappa` qubits of each
/// copy exchanged by the observable. For `c` preparing
/// `K^{−1/2} Σ_j |j⟩|ψ_j⟩^{⊗t}` the path-sum value is `F_t`.
pub fn doubled_register_circuit(c: &Circuit, kappa: usize) -> Result<(Circuit, SwapPattern)> {
    let w = c.n();
    if kappa > w {
        return Err(Error::invalid(format!("index register of {kappa} qubits on a {w}-qubit circuit")));
    }
    let mut d = c.widened(2 * w, 0)?;
    d.append_shifted(c, w)?;
    Ok((d, SwapPattern::new((0..kappa).map(|i| (i, w + i)).collect())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{SetDescriptor, SetKind};
    use crate::framepotential::state_frame_potential;

    #[test]
    fn empty_circuit() {
        let r = path_sum_count(&Circuit::new(2), &SwapPattern::identity()).unwrap();
        assert_eq!((r.l, r.h, r.s_f), (0, 0, 2));
        assert_eq!(r.reconstructed_value(), 1.0);
    }

    #[test]
    fn single_hadamard() {
        let c = Circuit::from_gates(1, vec![Gate::h(0)]).unwrap();
        let r = path_sum_count(&c, &SwapPattern::identity()).unwrap();
        assert_eq!(r.l, 2);
        assert!((r.reconstructed_value() - path_sum_direct(&c, &SwapPattern::identity()).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn toffoli_with_swap() {
        let c = Circuit::from_gates(3, vec![Gate::h(0), Gate::h(1), Gate::toffoli(0, 1, 2)]).unwrap();
        let obs = SwapPattern::new(vec![(1, 2)]).unwrap();
        let brute = path_sum_count(&c, &obs).unwrap();
        assert_eq!(brute.l, 18);
        let direct = path_sum_direct(&c, &obs).unwrap();
        assert!((brute.reconstructed_value() - direct).abs() < 1e-12);
        assert_eq!(brute, path_sum_count_sparse(&c, &obs).unwrap());
    }

    #[test]
    fn sparse_counter_on_a_frame_potential() {
        // K^{−1/2}(|0⟩|+0⟩ + |1⟩|Φ⁺⟩): index on qubit 0, one copy of the state
        let c = Circuit::from_gates(3, vec![Gate::h(0), Gate::h(1), Gate::toffoli(0, 1, 2)]).unwrap();
        let (d, obs) = doubled_register_circuit(&c, 1).unwrap();
        let r = path_sum_count_sparse(&d, &obs).unwrap();
        assert_eq!(r.l, 72);
        let set = SetDescriptor::explicit(
            SetKind::State,
            2,
            vec![
                Circuit::from_gates(2, vec![Gate::h(0)]).unwrap(),
                Circuit::from_gates(2, vec![Gate::h(0), Gate::cnot(0, 1)]).unwrap(),
            ],
        )
        .unwrap();
        let fp = state_frame_potential(&set, 1).unwrap();
        assert!((fp - 0.625).abs() < 1e-12);
        assert!((r.reconstructed_value() - fp).abs() < 1e-12);
        assert!((path_sum_direct(&d, &obs).unwrap() - fp).abs() < 1e-12);
    }

    #[test]
    fn rejects_other_gates() {
        let c = Circuit::from_gates(1, vec![Gate::x(0)]).unwrap();
        assert!(path_sum_count(&c, &SwapPattern::identity()).is_err());
        let big = Circuit::from_gates(3, vec![Gate::h(0); 4]).unwrap();
        assert!(matches!(path_sum_count(&big, &SwapPattern::identity()), Err(Error::SizeGuard { .. })));
        assert!(SwapPattern::new(vec![(0, 1), (1, 2)]).is_err());
    }
}
