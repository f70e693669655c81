use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::numerics::{DenseOperator, C64};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GateKind {
    H,
    S,
    T,
    X,
    Y,
    Z,
    Cz,
    /// Control first, target second.
    Cnot,
    /// Two controls, then the target.
    Toffoli,
    Phase {
        theta: f64,
    },
    /// `√2·H`. Only path-sum circuits may contain it.
    RescaledH,
    /// An opaque matrix on the listed targets; the first target is the most
    /// significant bit of the matrix index.
    Unitary {
        matrix: Arc<DenseOperator>,
    },
    /// Maps `|0…0⟩` on the targets to the given amplitude table. Realized as a
    /// phase-corrected Householder reflection, so it is a genuine unitary.
    Prepare {
        amplitudes: Arc<Vec<C64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    #[serde(flatten)]
    pub kind: GateKind,
    pub targets: Vec<usize>,
}

impl Gate {
    fn fixed(kind: GateKind, targets: Vec<usize>) -> Gate {
        Gate { kind, targets }
    }

    pub fn h(q: usize) -> Gate {
        Gate::fixed(GateKind::H, vec![q])
    }
    pub fn s(q: usize) -> Gate {
        Gate::fixed(GateKind::S, vec![q])
    }
    pub fn t(q: usize) -> Gate {
        Gate::fixed(GateKind::T, vec![q])
    }
    pub fn x(q: usize) -> Gate {
        Gate::fixed(GateKind::X, vec![q])
    }
    pub fn y(q: usize) -> Gate {
        Gate::fixed(GateKind::Y, vec![q])
    }
    pub fn z(q: usize) -> Gate {
        Gate::fixed(GateKind::Z, vec![q])
    }
    pub fn cz(a: usize, b: usize) -> Gate {
        Gate::fixed(GateKind::Cz, vec![a, b])
    }
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::fixed(GateKind::Cnot, vec![control, target])
    }
    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Gate {
        Gate::fixed(GateKind::Toffoli, vec![c1, c2, target])
    }
    pub fn phase(theta: f64, q: usize) -> Gate {
        Gate::fixed(GateKind::Phase { theta }, vec![q])
    }
    pub fn rescaled_h(q: usize) -> Gate {
        Gate::fixed(GateKind::RescaledH, vec![q])
    }

    pub fn unitary(targets: Vec<usize>, matrix: DenseOperator) -> Result<Gate> {
        let g = Gate::fixed(GateKind::Unitary { matrix: Arc::new(matrix) }, targets);
        g.check_shape()?;
        Ok(g)
    }

    pub fn prepare(targets: Vec<usize>, amplitudes: Vec<C64>) -> Result<Gate> {
        let g = Gate::fixed(GateKind::Prepare { amplitudes: Arc::new(amplitudes) }, targets);
        g.check_shape()?;
        Ok(g)
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    pub fn is_rescaled(&self) -> bool {
        matches!(self.kind, GateKind::RescaledH)
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        let k = self.targets.len();
        let want = match &self.kind {
            GateKind::Cz | GateKind::Cnot => 2,
            GateKind::Toffoli => 3,
            GateKind::Unitary { matrix } => {
                if k == 0 || k > 24 || !matrix.is_square() || matrix.rows() != 1 << k {
                    return Err(Error::invalid(format!(
                        "a {}x{} matrix cannot act on {k} qubits",
                        matrix.rows(),
                        matrix.cols()
                    )));
                }
                if !matrix.is_unitary(1e-10) {
                    return Err(Error::invalid("matrix gate is not unitary"));
                }
                k
            }
            GateKind::Prepare { amplitudes } => {
                if k == 0 || k > 24 || amplitudes.len() != 1 << k {
                    return Err(Error::invalid(format!(
                        "{} amplitudes cannot be prepared on {k} qubits",
                        amplitudes.len()
                    )));
                }
                let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
                if (norm.sqrt() - 1.0).abs() > 1e-10 {
                    return Err(Error::invalid(format!("amplitude table has norm {}", norm.sqrt())));
                }
                k
            }
            _ => 1,
        };
        if k != want {
            return Err(Error::invalid(format!("{:?} expects {want} targets, got {k}", self.kind_name())));
        }
        let mut sorted = self.targets.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(Error::invalid(format!("repeated target in {:?}", self.targets)));
        }
        Ok(())
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Cz => "CZ",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Phase { .. } => "PHASE",
            GateKind::RescaledH => "RESCALED_H",
            GateKind::Unitary { .. } => "UNITARY",
            GateKind::Prepare { .. } => "PREPARE",
        }
    }

    /// The `2^k × 2^k` matrix on the targets.
    pub fn local_matrix(&self) -> DenseOperator {
        let r = |rows: &[&[f64]]| DenseOperator::from_real_rows(rows).unwrap();
        let s = FRAC_1_SQRT_2;
        match &self.kind {
            GateKind::H => r(&[&[s, s], &[s, -s]]),
            GateKind::RescaledH => r(&[&[1.0, 1.0], &[1.0, -1.0]]),
            GateKind::X => r(&[&[0.0, 1.0], &[1.0, 0.0]]),
            GateKind::Y => DenseOperator::from_row_major(
                2,
                2,
                &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
            )
            .unwrap(),
            GateKind::Z => phase_diag(std::f64::consts::PI),
            GateKind::S => phase_diag(FRAC_PI_2),
            GateKind::T => phase_diag(FRAC_PI_4),
            GateKind::Phase { theta } => phase_diag(*theta),
            GateKind::Cz => {
                let one = C64::new(1.0, 0.0);
                DenseOperator::diagonal(&[one, one, one, -one])
            }
            GateKind::Cnot => permutation_matrix(4, |i| if i >= 2 { i ^ 1 } else { i }),
            GateKind::Toffoli => permutation_matrix(8, |i| if i >= 6 { i ^ 1 } else { i }),
            GateKind::Unitary { matrix } => (**matrix).clone(),
            GateKind::Prepare { amplitudes } => Householder::new(amplitudes).matrix(),
        }
    }

    /// Inverse gate. `RESCALED_H` has no inverse in the gate set.
    pub fn inverse(&self) -> Result<Gate> {
        let kind = match &self.kind {
            GateKind::S => GateKind::Phase { theta: -FRAC_PI_2 },
            GateKind::T => GateKind::Phase { theta: -FRAC_PI_4 },
            GateKind::Phase { theta } => GateKind::Phase { theta: -theta },
            GateKind::RescaledH => return Err(Error::invalid("RESCALED_H is not unitary")),
            GateKind::Unitary { matrix } => GateKind::Unitary {
                matrix: Arc::new(matrix.dagger()),
            },
            GateKind::Prepare { .. } => GateKind::Unitary {
                matrix: Arc::new(self.local_matrix().dagger()),
            },
            k => k.clone(),
        };
        Ok(Gate {
            kind,
            targets: self.targets.clone(),
        })
    }
}

fn phase_diag(theta: f64) -> DenseOperator {
    DenseOperator::diagonal(&[C64::new(1.0, 0.0), C64::from_polar(1.0, theta)])
}

fn permutation_matrix(dim: usize, image: impl Fn(usize) -> usize) -> DenseOperator {
    let mut m = DenseOperator::zeros(dim, dim);
    for col in 0..dim {
        m.matrix_mut()[(image(col), col)] = C64::new(1.0, 0.0);
    }
    m
}

/// `U = e^{iθ}(I − 2ww†/‖w‖²)` with `U|0⟩ = ψ`.
pub(crate) struct Householder {
    phase: C64,
    w: Vec<C64>,
    inv_norm_sq: f64,
}

impl Householder {
    pub(crate) fn new(psi: &[C64]) -> Self {
        let a = psi[0];
        let phase = if a.norm() > 1e-300 { a / a.norm() } else { C64::new(1.0, 0.0) };
        let mut w: Vec<C64> = psi.iter().map(|z| -z).collect();
        w[0] += phase;
        let n2: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        let inv_norm_sq = if n2 > 1e-28 { 1.0 / n2 } else { 0.0 };
        Householder { phase, w, inv_norm_sq }
    }

    pub(crate) fn apply(&self, v: &mut [C64]) {
        let mut proj = C64::new(0.0, 0.0);
        for (wi, vi) in self.w.iter().zip(v.iter()) {
            proj += wi.conj() * vi;
        }
        let c = proj * 2.0 * self.inv_norm_sq;
        for (vi, wi) in v.iter_mut().zip(&self.w) {
            *vi = self.phase * (*vi - c * wi);
        }
    }

    pub(crate) fn matrix(&self) -> DenseOperator {
        let d = self.w.len();
        let mut cols = Vec::with_capacity(d * d);
        for c in 0..d {
            let mut e = vec![C64::new(0.0, 0.0); d];
            e[c] = C64::new(1.0, 0.0);
            self.apply(&mut e);
            cols.push(e);
        }
        DenseOperator::from_fn(d, d, |r, c| cols[c][r])
    }
}
