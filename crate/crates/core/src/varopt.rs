//! Variational minimization of the frame potential over parameterized sets.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{Circuit, Gate, SetDescriptor, SetKind};
use crate::framepotential::{fp_bounds, frame_potential};
use crate::limits::{self, MAX_GRAM_K};
use crate::numerics::random::stream_rng;
use crate::numerics::C64;
use crate::{Error, Result};

/// Widest register a family may bind.
pub const MAX_FAMILY_QUBITS: usize = 6;

/// A parameterized set together with its binder `θ → SetDescriptor`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ParamFamily {
    /// `K` states; on each of the first `m` qubits `H` then `PHASE(θ)`, or
    /// with `tilted` the sequence `H, PHASE(φ), H, PHASE(λ), H`.
    PhaseAngles {
        n: usize,
        #[serde(rename = "K")]
        k: usize,
        m: usize,
        #[serde(default)]
        tilted: bool,
    },
    /// `K` states `χ^{−1/2} Σ_{x∈X} e^{iθ_{jx}}|x⟩`.
    SubsetPhases {
        n: usize,
        #[serde(rename = "K")]
        k: usize,
        #[serde(rename = "X")]
        x: Vec<String>,
    },
    /// `K` copies of a layered template: per qubit `H, PHASE, H, PHASE`, then a
    /// CZ chain, repeated `layers` times.
    RotationCircuit {
        set_kind: SetKind,
        n: usize,
        #[serde(rename = "K")]
        k: usize,
        layers: usize,
    },
}

impl ParamFamily {
    pub fn set_kind(&self) -> SetKind {
        match self {
            ParamFamily::RotationCircuit { set_kind, .. } => *set_kind,
            _ => SetKind::State,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ParamFamily::PhaseAngles { n, .. } | ParamFamily::SubsetPhases { n, .. } | ParamFamily::RotationCircuit { n, .. } => *n,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            ParamFamily::PhaseAngles { k, .. } | ParamFamily::SubsetPhases { k, .. } | ParamFamily::RotationCircuit { k, .. } => *k,
        }
    }

    fn per_element(&self) -> usize {
        match self {
            ParamFamily::PhaseAngles { m, tilted, .. } => m * if *tilted { 2 } else { 1 },
            ParamFamily::SubsetPhases { x, .. } => x.len(),
            ParamFamily::RotationCircuit { n, layers, .. } => 2 * n * layers,
        }
    }

    pub fn num_params(&self) -> usize {
        self.k() * self.per_element()
    }

    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.n(), self.k());
        if n == 0 || k == 0 {
            return Err(Error::domain("a family needs n ≥ 1 and K ≥ 1"));
        }
        limits::check(n <= MAX_FAMILY_QUBITS, "MAX_FAMILY_QUBITS", || {
            format!("{n} qubits exceed {MAX_FAMILY_QUBITS}")
        })?;
        limits::check(k <= MAX_GRAM_K, "MAX_GRAM_K", || format!("K = {k} exceeds {MAX_GRAM_K}"))?;
        match self {
            ParamFamily::PhaseAngles { m, .. } => crate::designs::check_phase_params(n, *m),
            ParamFamily::SubsetPhases { x, .. } => {
                let spec = crate::designs::SubsetPhaseSpec::new(n, x.clone(), vec![vec![false; x.len()]])?;
                spec.validate()
            }
            ParamFamily::RotationCircuit { layers, .. } => {
                if *layers == 0 {
                    return Err(Error::domain("a rotation template needs at least one layer"));
                }
                Ok(())
            }
        }
    }

    fn element(&self, theta: &[f64]) -> Result<Circuit> {
        let n = self.n();
        let mut c = Circuit::new(n);
        match self {
            ParamFamily::PhaseAngles { m, tilted, .. } => {
                for q in 0..*m {
                    if *tilted {
                        c.push(Gate::h(q))?
                            .push(Gate::phase(theta[2 * q], q))?
                            .push(Gate::h(q))?
                            .push(Gate::phase(theta[2 * q + 1], q))?
                            .push(Gate::h(q))?;
                    } else {
                        c.push(Gate::h(q))?.push(Gate::phase(theta[q], q))?;
                    }
                }
            }
            ParamFamily::SubsetPhases { x, .. } => {
                let norm = 1.0 / (x.len() as f64).sqrt();
                let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
                for (s, &th) in x.iter().zip(theta) {
                    amps[crate::circuits::parse_bits(s, n)?] = C64::from_polar(norm, th);
                }
                c.push(Gate::prepare((0..n).collect(), amps)?)?;
            }
            ParamFamily::RotationCircuit { layers, .. } => {
                for l in 0..*layers {
                    for q in 0..n {
                        let base = 2 * (l * n + q);
                        c.push(Gate::h(q))?
                            .push(Gate::phase(theta[base], q))?
                            .push(Gate::h(q))?
                            .push(Gate::phase(theta[base + 1], q))?;
                    }
                    for q in 0..n.saturating_sub(1) {
                        c.push(Gate::cz(q, q + 1))?;
                    }
                }
            }
        }
        Ok(c)
    }

    /// Bind `θ` (angles taken mod 2π) to an explicit descriptor.
    pub fn bind(&self, theta: &[f64]) -> Result<SetDescriptor> {
        self.validate()?;
        if theta.len() != self.num_params() {
            return Err(Error::invalid(format!("expected {} parameters, got {}", self.num_params(), theta.len())));
        }
        if theta.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("parameters must be finite"));
        }
        let wrapped: Vec<f64> = theta.iter().map(|x| x.rem_euclid(TAU)).collect();
        let circuits = wrapped
            .chunks(self.per_element())
            .map(|chunk| self.element(chunk))
            .collect::<Result<Vec<_>>>()?;
        SetDescriptor::explicit(self.set_kind(), self.n(), circuits)
    }

    /// Smallest value the frame potential of a `K`-element set can take.
    pub fn target(&self, t: usize) -> f64 {
        fp_bounds(self.set_kind(), 1 << self.n(), t, self.k()).0
    }
}

pub fn objective(fam: &ParamFamily, theta: &[f64], t: usize) -> Result<f64> {
    frame_potential(&fam.bind(theta)?, t)
}

/// Central differences `(F(θ+h eᵢ) − F(θ−h eᵢ))/(2h)`.
pub fn fd_gradient(fam: &ParamFamily, theta: &[f64], t: usize, h: f64) -> Result<Vec<f64>> {
    central_differences(|x| objective(fam, x, t), theta, h)
}

pub(crate) fn central_differences(f: impl Fn(&[f64]) -> Result<f64>, theta: &[f64], h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(Error::invalid(format!("finite-difference step must be positive, got {h}")));
    }
    let mut x = theta.to_vec();
    let mut g = Vec::with_capacity(theta.len());
    for i in 0..theta.len() {
        x[i] = theta[i] + h;
        let up = f(&x)?;
        x[i] = theta[i] - h;
        let down = f(&x)?;
        x[i] = theta[i];
        g.push((up - down) / (2.0 * h));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    pub max_iters: usize,
    pub seed: u64,
    /// Initial trial step of the line search.
    pub step: f64,
    /// Stop once `F − target < tol`.
    pub tol: f64,
    pub fd_h: f64,
    pub armijo_c: f64,
    pub shrink: f64,
    pub restarts: usize,
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig {
            max_iters: 400,
            seed: 0,
            step: 1.0,
            tol: 1e-10,
            fd_h: 1e-5,
            armijo_c: 1e-4,
            shrink: 0.5,
            restarts: 8,
        }
    }
}

impl OptConfig {
    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.fd_h > 0.0 && self.tol >= 0.0) {
            return Err(Error::invalid("step, fd_h must be positive and tol non-negative"));
        }
        if !(self.armijo_c > 0.0 && self.armijo_c < 1.0 && self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::invalid("Armijo constant and shrink factor must lie in (0, 1)"));
        }
        if self.restarts == 0 {
            return Err(Error::invalid("at least one restart is needed"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Iterate {
    pub iter: usize,
    pub theta: Vec<f64>,
    #[serde(rename = "F")]
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    ReachedTarget,
    StepUnderflow,
    MaxIters,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptTrace {
    pub iterates: Vec<Iterate>,
    pub best_theta: Vec<f64>,
    pub best_f: f64,
    pub target: f64,
    pub stop: StopReason,
    pub restart: usize,
}

impl OptTrace {
    /// Every `every`-th iterate plus the last one.
    pub fn decimated(&self, every: usize) -> OptTrace {
        let every = every.max(1);
        let last = self.iterates.len().saturating_sub(1);
        let iterates = self
            .iterates
            .iter()
            .enumerate()
            .filter(|(i, _)| i % every == 0 || *i == last)
            .map(|(_, it)| it.clone())
            .collect();
        OptTrace { iterates, ..self.clone() }
    }
}

/// Gradient descent with Armijo backtracking from `theta0`.
pub fn minimize_from(fam: &ParamFamily, t: usize, cfg: &OptConfig, theta0: Vec<f64>) -> Result<OptTrace> {
    cfg.validate()?;
    let target = fam.target(t);
    let mut theta = theta0;
    let mut f = objective(fam, &theta, t)?;
    let mut iterates = vec![Iterate { iter: 0, theta: theta.clone(), value: f }];
    let mut step = cfg.step;
    let mut stop = StopReason::MaxIters;
    for iter in 1..=cfg.max_iters {
        if f - target < cfg.tol {
            stop = StopReason::ReachedTarget;
            break;
        }
        let g = fd_gradient(fam, &theta, t, cfg.fd_h)?;
        let g2: f64 = g.iter().map(|x| x * x).sum();
        if g2 == 0.0 {
            stop = StopReason::StepUnderflow;
            break;
        }
        // start from twice the last accepted step, capped at the configured step
        let mut alpha = (2.0 * step).min(cfg.step);
        let accepted = loop {
            let trial: Vec<f64> = theta.iter().zip(&g).map(|(x, gi)| x - alpha * gi).collect();
            let ft = objective(fam, &trial, t)?;
            if ft <= f - cfg.armijo_c * alpha * g2 {
                break Some((trial, ft));
            }
            alpha *= cfg.shrink;
            if alpha < 1e-12 {
                break None;
            }
        };
        let Some((next, fnext)) = accepted else {
            stop = StopReason::StepUnderflow;
            break;
        };
        step = alpha;
        theta = next;
        f = fnext;
        iterates.push(Iterate { iter, theta: theta.clone(), value: f });
    }
    if stop == StopReason::MaxIters && f - target < cfg.tol {
        stop = StopReason::ReachedTarget;
    }
    if f < target - 1e-9 {
        return Err(Error::Verification(format!("frame potential {f} fell below the lower bound {target}")));
    }
    Ok(OptTrace {
        iterates,
        best_theta: theta,
        best_f: f,
        target,
        stop,
        restart: 0,
    })
}

fn random_start(fam: &ParamFamily, seed: u64, restart: usize) -> Vec<f64> {
    let mut rng = stream_rng(seed, restart as u64);
    (0..fam.num_params()).map(|_| rng.random::<f64>() * TAU).collect()
}

/// One descent from a random start drawn from stream `(seed, 0)`.
pub fn minimize(fam: &ParamFamily, t: usize, cfg: &OptConfig) -> Result<OptTrace> {
    fam.validate()?;
    minimize_from(fam, t, cfg, random_start(fam, cfg.seed, 0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiStart {
    pub best: OptTrace,
    /// Final value of every restart, in restart order.
    pub finals: Vec<f64>,
}

/// `cfg.restarts` independent descents from streams `(seed, r)`; the lowest
/// final value wins, ties going to the lower restart index.
pub fn multi_start(fam: &ParamFamily, t: usize, cfg: &OptConfig) -> Result<MultiStart> {
    fam.validate()?;
    cfg.validate()?;
    let traces = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            minimize_from(fam, t, cfg, random_start(fam, cfg.seed, r)).map(|mut tr| {
                tr.restart = r;
                tr
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let finals: Vec<f64> = traces.iter().map(|tr| tr.best_f).collect();
    let best = traces
        .into_iter()
        .reduce(|a, b| if b.best_f < a.best_f { b } else { a })
        .ok_or_else(|| Error::invalid("no restarts"))?;
    Ok(MultiStart { best, finals })
}
