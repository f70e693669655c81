use serde::{Deserialize, Serialize};

use crate::numerics::sym_dimension;
use crate::numerics::haar_unitary_frame_potential;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Sfp,
    Ufp,
    StDes,
    UniDes,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Sfp => "sfp",
            GadgetKind::Ufp => "ufp",
            GadgetKind::StDes => "stdes",
            GadgetKind::UniDes => "unides",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum MajSatThresholds {
    /// `F ≥ α` when `s(f) ≥ cut`, `F ≤ β` when `s(f) ≤ cut − 1`.
    AlphaBeta {
        alpha: f64,
        beta: f64,
        cut: u64,
        gap: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        gap_lower_bound: Option<f64>,
    },
    DesignBounds(LbUb),
}

impl MajSatThresholds {
    pub fn alpha_beta(&self) -> Option<(f64, f64)> {
        match self {
            MajSatThresholds::AlphaBeta { alpha, beta, .. } => Some((*alpha, *beta)),
            MajSatThresholds::DesignBounds(_) => None,
        }
    }
}

/// Lower and upper envelopes `LB(x) ≤ F ≤ UB(x)` for a gadget built on a
/// `δ₀`-approximate design, and the `(δ, δ')` pair they induce.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LbUb {
    pub kind: GadgetKind,
    pub t: usize,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub delta0: f64,
    pub haar: f64,
    pub delta: f64,
    pub delta_prime: f64,
    /// Largest `K` for which `δ` is real; `None` when unbounded.
    #[serde(rename = "K_max")]
    pub k_max: Option<f64>,
    pub cut: u64,
}

impl LbUb {
    fn overlap_term(&self, x: f64) -> f64 {
        match self.kind {
            GadgetKind::StDes => (2f64.powi(1 - self.n as i32) * x).powi(2 * self.t as i32),
            _ => unides_g(self.n, x).powi(2 * self.t as i32),
        }
    }

    fn top(&self) -> f64 {
        match self.kind {
            GadgetKind::StDes => 1.0,
            _ => 2f64.powi(2 * (self.n * self.t) as i32),
        }
    }

    pub fn lb(&self, x: f64) -> f64 {
        let (k, d0, h) = (self.k as f64, self.delta0, self.haar);
        let o = self.overlap_term(x);
        match self.kind {
            GadgetKind::StDes => h - 4.0 * d0 * h / k + 2.0 / (k * k) * (1.0 + o - 2.0 * (1.0 - 2.0 * d0) * h),
            _ => h - 4.0 * d0 / k + 2.0 / (k * k) * (self.top() + o - 2.0 * h + 4.0 * d0),
        }
    }

    pub fn ub(&self, x: f64) -> f64 {
        let (k, d0, h) = (self.k as f64, self.delta0, self.haar);
        let o = self.overlap_term(x);
        match self.kind {
            GadgetKind::StDes => {
                (1.0 + d0 * d0) * h + 4.0 * d0 * (1.0 - d0) * h / k
                    + 2.0 / (k * k) * (1.0 + o - 2.0 * (1.0 + d0 * (2.0 - d0)) * h)
            }
            _ => {
                h + d0 * d0 + 4.0 * d0 * (1.0 - d0) / k
                    + 2.0 / (k * k) * (self.top() + o - 2.0 * h - 2.0 * d0 * (2.0 - d0))
            }
        }
    }

    /// `2^{n−2} − 2/3`, where `LB` is pinned to the `δ`-design bound.
    pub fn s0(&self) -> f64 {
        2f64.powi(self.n as i32 - 2) - 2.0 / 3.0
    }

    /// `2^{n−2} − 1/3`, where `UB` is pinned to the `δ'` refutation bound.
    pub fn s0_prime(&self) -> f64 {
        2f64.powi(self.n as i32 - 2) - 1.0 / 3.0
    }
}

/// `2^n − 4 + x²/2^{2(n−2)}`, the trace between the two reflections.
pub(crate) fn unides_g(n: usize, x: f64) -> f64 {
    2f64.powi(n as i32) - 4.0 + x * x / 2f64.powi(2 * (n as i32 - 2))
}

/// `(1 − 2/K)² F_base + (2/K²)[1 + (s/2^{n−2})^{2t}]`.
pub(crate) fn sfp_prediction(n: usize, k: usize, t: usize, base_fp: f64, s: f64) -> f64 {
    let k = k as f64;
    let overlap = s / 2f64.powi(n as i32 - 2);
    (1.0 - 2.0 / k).powi(2) * base_fp + 2.0 / (k * k) * (1.0 + overlap.powi(2 * t as i32))
}

/// `2^{2t}(1 − 2/K)² F_V + (2/K²)[2^{2nt} + g_t(s)]`.
pub(crate) fn ufp_prediction(n: usize, k: usize, t: usize, base_fp: f64, s: f64) -> f64 {
    let k = k as f64;
    let top = 2f64.powi(2 * (n * t) as i32);
    4f64.powi(t as i32) * (1.0 - 2.0 / k).powi(2) * base_fp + 2.0 / (k * k) * (top + super::g_t(n, t, s))
}

fn check_common(kind: GadgetKind, t: usize, n: usize, k: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::domain("degree t must be at least 1"));
    }
    if k < 3 {
        return Err(Error::domain(format!("a gadget needs K ≥ 3 (two witnesses and a base), got {k}")));
    }
    let min_n = match kind {
        GadgetKind::Sfp | GadgetKind::Ufp => 3,
        GadgetKind::StDes | GadgetKind::UniDes => 2,
    };
    if n < min_n {
        return Err(Error::domain(format!("the {} gadget needs n ≥ {min_n}", kind.name())));
    }
    Ok(())
}

/// Thresholds separating `s(f) < cut` from `s(f) ≥ cut`.
///
/// `base_fp` feeds the `sfp`/`ufp` forms, `delta0` the design-envelope forms
/// (default 0).
pub fn majsat_thresholds(
    kind: GadgetKind,
    t: usize,
    n: usize,
    k: usize,
    base_fp: f64,
    delta0: Option<f64>,
) -> Result<MajSatThresholds> {
    check_common(kind, t, n, k)?;
    match kind {
        GadgetKind::Sfp | GadgetKind::Ufp => {
            if delta0.is_some() {
                return Err(Error::invalid("δ₀ applies only to the design-envelope gadgets"));
            }
            let cut = 1u64 << (n - 3);
            let predict = |s: f64| match kind {
                GadgetKind::Sfp => sfp_prediction(n, k, t, base_fp, s),
                _ => ufp_prediction(n, k, t, base_fp, s),
            };
            let alpha = predict(cut as f64);
            let beta = predict(cut as f64 - 1.0);
            let gap_lower_bound = (kind == GadgetKind::Sfp).then(|| {
                let kf = k as f64;
                t as f64 / (2f64.powi(2 * t as i32 - 1) * kf * kf * (2f64.powi(n as i32 - 4) + t as f64))
            });
            Ok(MajSatThresholds::AlphaBeta {
                alpha,
                beta,
                cut,
                gap: alpha - beta,
                gap_lower_bound,
            })
        }
        GadgetKind::StDes | GadgetKind::UniDes => {
            let d0 = delta0.unwrap_or(0.0);
            if !(0.0..1.0).contains(&d0) {
                return Err(Error::domain(format!("δ₀ must lie in [0, 1), got {d0}")));
            }
            let d = 1usize << n;
            let haar = match kind {
                GadgetKind::StDes => 1.0 / sym_dimension(d, t),
                _ => haar_unitary_frame_potential(d, t),
            };
            let mut env = LbUb {
                kind,
                t,
                n,
                k,
                delta0: d0,
                haar,
                delta: 0.0,
                delta_prime: 0.0,
                k_max: None,
                cut: 1u64 << (n - 2),
            };
            // δ is real iff K² (LB(s₀) − haar) ≥ 0, a quadratic in K with a
            // negative linear term once δ₀ > 0.
            let kf = k as f64;
            let lb_excess = env.lb(env.s0()) - haar;
            let quad = lb_excess * kf * kf + 4.0 * d0 * kf * if kind == GadgetKind::StDes { haar } else { 1.0 };
            if quad < 0.0 {
                return Err(Error::Regime("the envelope constant is negative for every K".into()));
            }
            if d0 > 0.0 {
                let per_k = if kind == GadgetKind::StDes { haar } else { 1.0 };
                env.k_max = Some(quad / (4.0 * d0 * per_k));
            }
            if lb_excess < 0.0 {
                return Err(Error::Regime(format!(
                    "K = {k} is too large for δ₀ = {d0}: LB(s₀) falls below the Haar value (K_max = {:.3})",
                    env.k_max.unwrap_or(f64::INFINITY)
                )));
            }
            let ub_excess = env.ub(env.s0_prime()) - haar;
            if ub_excess <= 0.0 {
                return Err(Error::Regime("UB(s₀') does not exceed the Haar value".into()));
            }
            match kind {
                GadgetKind::StDes => {
                    let dt = 1.0 / haar;
                    env.delta = (dt * env.lb(env.s0()) - 1.0).max(0.0).sqrt();
                    env.delta_prime = dt * ub_excess.sqrt();
                }
                _ => {
                    env.delta = lb_excess.sqrt();
                    env.delta_prime = 2f64.powi((n * t) as i32) * ub_excess.sqrt();
                }
            }
            Ok(MajSatThresholds::DesignBounds(env))
        }
    }
}
