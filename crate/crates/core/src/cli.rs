//! The `designlab` command line.
//!
//! Every subcommand produces one report: a JSON object (or a flattened CSV
//! projection of it) carrying the tool version, seed and tolerance next to
//! the computed fields. Exit codes: 0 success, 1 usage or input error, 2 size
//! guard, 3 failed internal cross-check.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::circuits::{BooleanFunction, Circuit, SetDescriptor, SetKind};
use crate::designs::{clifford_set, computational_basis_set, pauli_set, phase_state_fp_exact, phase_state_set};
use crate::framepotential::{
    certify_with, fp_bounds, frame_potential, haar_unitary_moment, haar_value, implied_delta, CertifyMode,
    CertifyOptions,
};
use crate::numerics::DEFAULT_TOL;
use crate::otoc::otoc_report;
use crate::qalgsim::{fp_via_purity, swap_test_decide, SwapTestPlan};
use crate::reductions::{
    bqp_gadget, bqp_predicted_fp, sfp_gadget, stdes_gadget, subset_phase_count, ufp_gadget, unides_gadget,
    GadgetInstance,
};
use crate::varopt::{multi_start, OptConfig, OptTrace, ParamFamily};
use crate::{Error, Result, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SIZE_GUARD: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "designlab", version, about = "Frame potentials and t-design tools for small ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; affects wall-clock only.
    #[arg(long, env = "DESIGNLAB_THREADS")]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SetArgs {
    #[arg(long)]
    descriptor: PathBuf,
    #[arg(long)]
    t: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GadgetArg {
    Sfp,
    Ufp,
    Stdes,
    Unides,
    Bqp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// State frame potential of a descriptor.
    FpState {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Unitary frame potential of a descriptor.
    FpUnitary {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Certify or refute a δ-approximate t-design.
    Certify {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        delta_prime: f64,
        /// Decide from the frame potential even when the exact distance fits.
        #[arg(long)]
        fp_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Swap-test decision between F ≥ α and F ≤ β for a state set.
    DecideSfp {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Swap-test decision between F ≥ α and F ≤ β for a unitary set.
    DecideUfp {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Frame potential from the purity of the encoded index register.
    Qalg {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Build a counting gadget and check its predicted frame potential.
    Reduce {
        #[arg(long, value_enum)]
        gadget: GadgetArg,
        #[arg(long)]
        t: usize,
        /// Packed truth-table file (8-byte little-endian variable count, then bits).
        #[arg(long, required_if_eq_any([("gadget", "sfp"), ("gadget", "ufp"), ("gadget", "stdes"), ("gadget", "unides")]))]
        truth_table: Option<PathBuf>,
        /// Base set descriptor.
        #[arg(long, required_if_eq_any([("gadget", "sfp"), ("gadget", "ufp"), ("gadget", "stdes"), ("gadget", "unides")]))]
        descriptor: Option<PathBuf>,
        #[arg(long)]
        base_fp: Option<f64>,
        /// Circuit JSON for `U_x`.
        #[arg(long, required_if_eq("gadget", "bqp"))]
        circuit: Option<PathBuf>,
        /// Phase states per branch of the BQP gadget.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Skip the Gram-loop cross-check.
        #[arg(long)]
        no_verify: bool,
        /// Also write the gadget descriptor alone to this path.
        #[arg(long)]
        emit_descriptor: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Pauli-averaged OTOC directly and through the frame potential.
    Otoc {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Minimise the frame potential over a parameterised family.
    Synthesize {
        /// Family JSON.
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 400)]
        max_iters: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Keep every k-th iterate of the winning trace.
        #[arg(long, default_value_t = 10)]
        every: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in invariant suite.
    Selfcheck {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::FpState { common, .. }
            | Command::FpUnitary { common, .. }
            | Command::Certify { common, .. }
            | Command::DecideSfp { common, .. }
            | Command::DecideUfp { common, .. }
            | Command::Qalg { common, .. }
            | Command::Reduce { common, .. }
            | Command::Otoc { common, .. }
            | Command::Synthesize { common, .. }
            | Command::Selfcheck { common } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::FpState { .. } => "fp-state",
            Command::FpUnitary { .. } => "fp-unitary",
            Command::Certify { .. } => "certify",
            Command::DecideSfp { .. } => "decide-sfp",
            Command::DecideUfp { .. } => "decide-ufp",
            Command::Qalg { .. } => "qalg",
            Command::Reduce { .. } => "reduce",
            Command::Otoc { .. } => "otoc",
            Command::Synthesize { .. } => "synthesize",
            Command::Selfcheck { .. } => "selfcheck",
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard { .. } => EXIT_SIZE_GUARD,
        Error::Verification(_) => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}

/// Result fields plus the status the process should exit with.
struct Outcome {
    fields: Value,
    code: i32,
}

impl Outcome {
    fn ok(fields: impl Serialize) -> Result<Self> {
        Ok(Outcome {
            fields: serde_json::to_value(fields)?,
            code: EXIT_OK,
        })
    }
}

fn load_set(set: &SetArgs, kind: Option<SetKind>) -> Result<SetDescriptor> {
    let s = SetDescriptor::read_file(&set.descriptor)?;
    if let Some(kind) = kind {
        if s.kind != kind {
            return Err(Error::Invalid(format!(
                "{} holds a {} set; this subcommand needs a {} set",
                set.descriptor.display(),
                s.kind.name(),
                kind.name()
            )));
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct FpFields {
    kind: SetKind,
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    t: usize,
    #[serde(rename = "F")]
    value: f64,
    haar: f64,
    bounds: [f64; 2],
}

fn fp_fields(s: &SetDescriptor, t: usize) -> Result<FpFields> {
    let value = frame_potential(s, t)?;
    let (lo, hi) = fp_bounds(s.kind, s.dim(), t, s.k);
    Ok(FpFields {
        kind: s.kind,
        n: s.n,
        k: s.k,
        t,
        value,
        haar: haar_value(s.kind, s.dim(), t),
        bounds: [lo, hi],
    })
}

fn decide(set: &SetArgs, kind: SetKind, alpha: f64, beta: f64, samples: u64, seed: u64) -> Result<Outcome> {
    let s = load_set(set, Some(kind))?;
    let plan = SwapTestPlan {
        alpha,
        beta,
        samples,
        seed,
    };
    let outcome = swap_test_decide(&s, set.t, &plan)?;
    let mut fields = serde_json::to_value(&outcome)?;
    let map = fields.as_object_mut().expect("outcome serializes to an object");
    map.insert("alpha".into(), alpha.into());
    map.insert("beta".into(), beta.into());
    map.insert("accept_at_alpha".into(), plan.expected_acceptance(kind, s.n, set.t, alpha).into());
    map.insert("accept_at_beta".into(), plan.expected_acceptance(kind, s.n, set.t, beta).into());
    Ok(Outcome { fields, code: EXIT_OK })
}

fn qalg(set: &SetArgs, tol: f64) -> Result<Outcome> {
    let s = load_set(set, None)?;
    let via_purity = fp_via_purity(&s, set.t)?;
    let gram = frame_potential(&s, set.t)?;
    let delta = (via_purity - gram).abs();
    let scale = gram.abs().max(1.0);
    let code = if delta > tol * scale { EXIT_VERIFICATION } else { EXIT_OK };
    let fields = serde_json::json!({
        "kind": s.kind,
        "n": s.n,
        "K": s.k,
        "t": set.t,
        "F": via_purity,
        "gram_F": gram,
        "delta": delta,
        "agree": code == EXIT_OK,
    });
    Ok(Outcome { fields, code })
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    gadget: GadgetArg,
    t: usize,
    truth_table: Option<&Path>,
    descriptor: Option<&Path>,
    base_fp: Option<f64>,
    circuit: Option<&Path>,
    k: usize,
    verify: bool,
    emit: Option<&Path>,
) -> Result<Outcome> {
    let mut extra = Map::new();
    let instance: GadgetInstance = match gadget {
        GadgetArg::Bqp => {
            let path = circuit.ok_or_else(|| Error::invalid("--circuit is required for the bqp gadget"))?;
            let ux: Circuit = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let k = if k == 0 { t + 1 } else { k };
            let g = bqp_gadget(&ux, t, k)?;
            extra.insert("q1".into(), g.q1.into());
            extra.insert("q1_measured".into(), g.q1_measured.into());
            g.instance
        }
        _ => {
            let tt = truth_table.ok_or_else(|| Error::invalid("--truth-table is required"))?;
            let base = descriptor.ok_or_else(|| Error::invalid("--descriptor is required for the base set"))?;
            let f = BooleanFunction::read_file(tt)?;
            let base = SetDescriptor::read_file(base)?;
            match gadget {
                GadgetArg::Sfp => sfp_gadget(&f, &base, t, base_fp)?,
                GadgetArg::Ufp => ufp_gadget(&f, &base, t, base_fp)?,
                GadgetArg::Stdes => stdes_gadget(&f, &base, t, base_fp)?,
                GadgetArg::Unides => unides_gadget(&f, &base, t, base_fp)?,
                GadgetArg::Bqp => unreachable!(),
            }
        }
    };
    if let Some(path) = emit {
        instance.descriptor.write_file(path)?;
    }
    let (verified, gram) = if verify {
        match instance.verify() {
            Ok(v) => (true, Some(v)),
            Err(Error::SizeGuard { .. }) => (false, None),
            Err(e) => return Err(e),
        }
    } else {
        (false, None)
    };
    let mut fields = serde_json::to_value(&instance)?;
    let map = fields.as_object_mut().expect("instance serializes to an object");
    map.insert("verified".into(), verified.into());
    if let Some(g) = gram {
        map.insert("gram_fp".into(), g.into());
    }
    map.extend(extra);
    Ok(Outcome { fields, code: EXIT_OK })
}

fn otoc(set: &SetArgs, tol: f64) -> Result<Outcome> {
    let s = load_set(set, Some(SetKind::Unitary))?;
    let r = otoc_report(&s, set.t)?;
    let code = match r.delta {
        Some(d) if d > tol * r.via_fp.max(1.0) => EXIT_VERIFICATION,
        _ => EXIT_OK,
    };
    Ok(Outcome {
        fields: serde_json::to_value(&r)?,
        code,
    })
}

fn synthesize(family: &Path, t: usize, cfg: &OptConfig, every: usize, tol: f64) -> Result<Outcome> {
    let fam: ParamFamily = serde_json::from_str(&std::fs::read_to_string(family)?)?;
    let ms = multi_start(&fam, t, cfg)?;
    let best = best_point(&ms.best, &fam, t, tol)?;
    let fields = serde_json::json!({
        "family": fam,
        "t": t,
        "trace": ms.best.decimated(every),
        "finals": ms.finals,
        "best": best,
    });
    Ok(Outcome { fields, code: EXIT_OK })
}

/// Certification of the winning point of a descent.
#[derive(Serialize)]
struct BestPoint {
    #[serde(rename = "F")]
    value: f64,
    target: f64,
    gap: f64,
    implied_delta: f64,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<f64>,
}

fn best_point(trace: &OptTrace, fam: &ParamFamily, t: usize, tol: f64) -> Result<BestPoint> {
    let set = fam.bind(&trace.best_theta)?;
    let delta = implied_delta(set.kind, set.dim(), t, trace.best_f);
    let opts = CertifyOptions {
        delta: delta + tol.max(1e-12),
        delta_prime: delta + 1.0,
        mode: CertifyMode::PreferExactDistance,
        tol,
    };
    let report = certify_with(&set, t, &opts)?;
    Ok(BestPoint {
        value: trace.best_f,
        target: trace.target,
        gap: trace.best_f - trace.target,
        implied_delta: delta,
        verdict: report.verdict.label(),
        distance: report.distance,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// The invariant suite behind `selfcheck`.
pub fn selfcheck_suite(tol: f64) -> Vec<Check> {
    let checks = vec![
        check("phase_state_closed_form", || {
            let s = phase_state_set(2, 5, 2)?;
            let mut worst = 0f64;
            for t in 1..=2 {
                worst = worst.max((frame_potential(&s, t)? - phase_state_fp_exact(5, 2, t)).abs());
            }
            Ok((worst <= tol, format!("max |Δ| = {worst:e}")))
        }),
        check("basis_is_exact_1_design", || {
            let s = computational_basis_set(2)?;
            let f = frame_potential(&s, 1)?;
            Ok((close(f, 0.25, tol), format!("F_1 = {f}")))
        }),
        check("pauli_is_unitary_1_design", || {
            let f = frame_potential(&pauli_set(1)?, 1)?;
            Ok((close(f, 1.0, tol), format!("F_1 = {f}")))
        }),
        check("clifford_moments", || {
            let c = clifford_set(1)?;
            let got: Vec<f64> = (1..=3).map(|t| frame_potential(&c, t)).collect::<Result<_>>()?;
            let want = [1.0, 2.0, 5.0];
            let pass = got.iter().zip(want).all(|(g, w)| close(*g, w, tol));
            Ok((pass, format!("F_1..3 = {got:?}")))
        }),
        check("haar_projector_rank", || {
            let r: Vec<usize> = (1..=3).map(|t| haar_unitary_moment(2, t).map(|h| h.rank())).collect::<Result<_>>()?;
            Ok((r == [1, 2, 5], format!("ranks = {r:?}")))
        }),
        check("purity_route", || {
            let s = phase_state_set(1, 3, 1)?;
            let a = fp_via_purity(&s, 2)?;
            let b = frame_potential(&s, 2)?;
            Ok((close(a, b, tol), format!("purity {a}, Gram {b}")))
        }),
        check("sfp_gadget_prediction", || {
            let f = BooleanFunction::majority(3)?;
            let base = computational_basis_set(4)?;
            let g = sfp_gadget(&f, &base, 2, None)?;
            let gram = g.verify()?;
            Ok((true, format!("predicted {}, Gram {gram}", g.predicted_fp)))
        }),
        check("ufp_gadget_prediction", || {
            let f = BooleanFunction::majority(2)?;
            let base = pauli_set(3)?;
            let g = ufp_gadget(&f, &base, 1, None)?;
            let gram = g.verify()?;
            Ok((true, format!("predicted {}, Gram {gram}", g.predicted_fp)))
        }),
        check("bqp_gap", || {
            let want = (9f64.powi(-2) - 36f64.powi(-2)) * 3.0;
            let got = bqp_predicted_fp(2.0 / 3.0, 2) - bqp_predicted_fp(1.0 / 3.0, 2);
            Ok(((got - want).abs() <= 1e-12, format!("gap {got}")))
        }),
        check("subset_count_identity", || {
            use crate::designs::SubsetPhaseSpec;
            let mut rng = crate::numerics::random::stream_rng(0, 0);
            let spec = SubsetPhaseSpec::random(3, 4, 4, &mut rng)?;
            let r = subset_phase_count(&spec, 2)?;
            Ok((r.count == r.via_fp_raw.round() as u64, format!("count {}", r.count)))
        }),
        check("otoc_identity", || {
            let r = otoc_report(&clifford_set(1)?, 2)?;
            let d = r.delta.unwrap_or(f64::INFINITY);
            Ok((d <= tol, format!("|Δ| = {d:e}")))
        }),
    ];
    checks
}

fn selfcheck(tol: f64) -> Result<Outcome> {
    let results = selfcheck_suite(tol);
    let passed = results.iter().filter(|c| c.pass).count();
    let code = if passed == results.len() { EXIT_OK } else { EXIT_VERIFICATION };
    let fields = serde_json::json!({
        "passed": passed,
        "total": results.len(),
        "checks": results,
    });
    Ok(Outcome { fields, code })
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    let common = cmd.common();
    let tol = common.tol;
    match cmd {
        Command::FpState { set, .. } => Outcome::ok(fp_fields(&load_set(set, Some(SetKind::State))?, set.t)?),
        Command::FpUnitary { set, .. } => Outcome::ok(fp_fields(&load_set(set, Some(SetKind::Unitary))?, set.t)?),
        Command::Certify {
            set,
            delta,
            delta_prime,
            fp_only,
            ..
        } => {
            let s = load_set(set, None)?;
            let opts = CertifyOptions {
                delta: *delta,
                delta_prime: *delta_prime,
                mode: if *fp_only {
                    CertifyMode::FramePotentialOnly
                } else {
                    CertifyMode::PreferExactDistance
                },
                tol,
            };
            let r = certify_with(&s, set.t, &opts)?;
            let mut fields = serde_json::to_value(&r)?;
            fields
                .as_object_mut()
                .expect("report serializes to an object")
                .insert("label".into(), r.verdict.label().into());
            Ok(Outcome { fields, code: EXIT_OK })
        }
        Command::DecideSfp {
            set,
            alpha,
            beta,
            samples,
            common,
        } => decide(set, SetKind::State, *alpha, *beta, *samples, common.seed),
        Command::DecideUfp {
            set,
            alpha,
            beta,
            samples,
            common,
        } => decide(set, SetKind::Unitary, *alpha, *beta, *samples, common.seed),
        Command::Qalg { set, .. } => qalg(set, tol),
        Command::Reduce {
            gadget,
            t,
            truth_table,
            descriptor,
            base_fp,
            circuit,
            k,
            no_verify,
            emit_descriptor,
            ..
        } => reduce(
            *gadget,
            *t,
            truth_table.as_deref(),
            descriptor.as_deref(),
            *base_fp,
            circuit.as_deref(),
            *k,
            !no_verify,
            emit_descriptor.as_deref(),
        ),
        Command::Otoc { set, .. } => otoc(set, tol),
        Command::Synthesize {
            family,
            t,
            max_iters,
            restarts,
            every,
            common,
        } => {
            let cfg = OptConfig {
                max_iters: *max_iters,
                restarts: *restarts,
                seed: common.seed,
                ..OptConfig::default()
            };
            synthesize(family, *t, &cfg, *every, tol)
        }
        Command::Selfcheck { .. } => selfcheck(tol),
    }
}

fn envelope(cmd: &Command, fields: Value) -> Value {
    let common = cmd.common();
    let mut map = Map::new();
    map.insert("command".into(), cmd.name().into());
    map.insert("version".into(), VERSION.into());
    map.insert("seed".into(), common.seed.into());
    map.insert("tol".into(), common.tol.into());
    match fields {
        Value::Object(inner) => map.extend(inner),
        other => {
            map.insert("result".into(), other);
        }
    }
    Value::Object(map)
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, inner) in m {
                flatten_into(&key(k), inner, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let joined: Vec<String> = items.iter().map(scalar_text).collect();
                out.push((prefix.to_string(), joined.join(";")));
            }
        }
        _ => out.push((prefix.to_string(), scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header and value rows of a flattened report; nested arrays of objects are dropped.
pub fn to_csv(report: &Value) -> String {
    let mut cells = Vec::new();
    flatten_into("", report, &mut cells);
    let header: Vec<String> = cells.iter().map(|(k, _)| csv_field(k)).collect();
    let row: Vec<String> = cells.iter().map(|(_, v)| csv_field(v)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn render(report: &Value, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(report),
    })
}

fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let common = cmd.common();
    let run = || dispatch(cmd);
    let result = match common.threads {
        Some(0) => Err(Error::invalid("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::Invalid(format!("thread pool: {e}"))),
        },
        None => run(),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "designlab {}: {e}", cmd.name());
            return exit_code(&e);
        }
    };
    let report = envelope(cmd, outcome.fields);
    let text = match render(&report, common.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "designlab {}: {e}", cmd.name());
            return exit_code(&e);
        }
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "designlab {}: {e}", cmd.name());
        return EXIT_USAGE;
    }
    outcome.code
}

/// Parse `argv` (program name first) and run, writing the report to `stdout`
/// or `--out` and diagnostics to `stderr`.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    execute(&cli.command, stdout, stderr)
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn main_exit() -> i32 {
    run(std::env::args_os())
}
