//! verify, step and orbit for each mode. Commands return their output text
//! and, separately, the failure that decides the exit code.

use elementary_divisor::ElementaryDivisor;
use fuchsian_core::io::{fmt_f64, pair, to_json_string, Pair, SchemeJson, SystemJson};
use fuchsian_core::{decompose, default_labels, riemann_scheme, FuchsianSystem, Tolerances, C64};
use painleve_a2star::{
    a2_orbit, a2_standard_step, build_a2_point, composite_stages, composite_step, schlesinger_index,
    to_standard as a2_to_standard, A2Parameters, StandardA2Parameters,
};
use painleve_d4::{
    build_dpv_point, dpv_index, dpv_orbit, dpv_standard_step, dpv_step, to_standard as dpv_to_standard, DpvParameters,
    DpvState, StandardDpvParameters,
};
use picard_lattice::{a2_standard_surface, dpv_standard_surface};
use schlesinger_map::{orbit_partial, trace_json, transform_system_labelled, TransformationIndex};
use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, Mode, RunConfig};
use crate::error::CliError;
use crate::random::{self, trial_rng, unit};
use crate::suites::{self, Suite};

pub const DEFAULT_TRIALS: usize = 10;
pub const DEFAULT_DPV_STEPS: usize = 20;
pub const DEFAULT_A2_STEPS: usize = 10;

/// Flags and config merged; flags win.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    /// None runs every suite in verify.
    pub mode: Option<Mode>,
    pub config: RunConfig,
    pub seed: u64,
    pub steps: Option<usize>,
    pub trials: Option<usize>,
    pub tol: Tolerances,
    pub check_tol: Option<f64>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub error: Option<CliError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }

    fn from_result(r: Result<String, CliError>) -> Self {
        match r {
            Ok(output) => Outcome { output, error: None },
            Err(e) => Outcome {
                output: String::new(),
                error: Some(e),
            },
        }
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::RawSystem => "raw-system",
        Mode::Dpv => "dpv",
        Mode::A2star => "a2star",
        Mode::Lattice => "lattice",
    }
}

/// Mode from the config blocks when neither flag nor config names one.
pub fn infer_mode(config: &RunConfig) -> Option<Mode> {
    config.mode.or_else(|| {
        if config.system.is_some() {
            Some(Mode::RawSystem)
        } else if config.dpv.is_some() {
            Some(Mode::Dpv)
        } else if config.a2star.is_some() {
            Some(Mode::A2star)
        } else {
            None
        }
    })
}

// ---- serialized views ----

#[derive(Serialize)]
struct Snapshot {
    system: SystemJson,
    riemann_scheme: SchemeJson,
}

fn snapshot(system: &FuchsianSystem, labels: &[Vec<C64>]) -> Snapshot {
    let inf = riemann_scheme(system, Tolerances::default().cluster)
        .map(|s| s.infinity)
        .unwrap_or_default();
    Snapshot {
        system: SystemJson::from_system(system),
        riemann_scheme: scheme_json(labels, &inf),
    }
}

fn scheme_json(finite: &[Vec<C64>], infinity: &[C64]) -> SchemeJson {
    SchemeJson {
        finite: finite.iter().map(|t| t.iter().copied().map(pair).collect()).collect(),
        infinity: infinity.iter().copied().map(pair).collect(),
    }
}

#[derive(Serialize)]
struct RawStep {
    index: [usize; 4],
    before: Snapshot,
    after: Snapshot,
}

#[derive(Serialize)]
struct DpvParamsJson {
    theta0: Pair,
    theta1: Pair,
    thetat: Pair,
    kappa1: Pair,
    kappa2: Pair,
    t: Pair,
}

impl From<&DpvParameters> for DpvParamsJson {
    fn from(p: &DpvParameters) -> Self {
        DpvParamsJson {
            theta0: pair(p.theta0),
            theta1: pair(p.theta1),
            thetat: pair(p.thetat),
            kappa1: pair(p.kappa1),
            kappa2: pair(p.kappa2),
            t: pair(p.t),
        }
    }
}

fn dpv_scheme(p: &DpvParameters) -> SchemeJson {
    scheme_json(&[vec![p.theta0], vec![p.theta1], vec![p.thetat]], &[p.kappa1, p.kappa2])
}

#[derive(Serialize)]
struct DpvStandardJson {
    a: Vec<Pair>,
    s: Pair,
    delta: Pair,
}

impl From<&StandardDpvParameters> for DpvStandardJson {
    fn from(s: &StandardDpvParameters) -> Self {
        DpvStandardJson {
            a: s.a.iter().copied().map(pair).collect(),
            s: pair(s.s),
            delta: pair(s.delta()),
        }
    }
}

#[derive(Serialize)]
struct DpvSide {
    params: DpvParamsJson,
    riemann_scheme: SchemeJson,
    p: Pair,
    q: Pair,
    standard: DpvStandardJson,
    f: Pair,
    g: Pair,
}

#[derive(Serialize)]
struct DpvStepJson {
    before: DpvSide,
    after: DpvSide,
}

#[derive(Serialize)]
struct A2ParamsJson {
    theta11: Pair,
    theta12: Pair,
    theta21: Pair,
    theta22: Pair,
    kappa: Vec<Pair>,
}

impl From<&A2Parameters> for A2ParamsJson {
    fn from(p: &A2Parameters) -> Self {
        A2ParamsJson {
            theta11: pair(p.theta11),
            theta12: pair(p.theta12),
            theta21: pair(p.theta21),
            theta22: pair(p.theta22),
            kappa: p.kappa.iter().copied().map(pair).collect(),
        }
    }
}

fn a2_scheme(p: &A2Parameters) -> SchemeJson {
    scheme_json(&p.thetas(), &p.kappa)
}

#[derive(Serialize)]
struct A2StandardJson {
    b: Vec<Pair>,
    delta: Pair,
}

impl From<&StandardA2Parameters> for A2StandardJson {
    fn from(s: &StandardA2Parameters) -> Self {
        A2StandardJson {
            b: s.b.iter().copied().map(pair).collect(),
            delta: pair(s.delta()),
        }
    }
}

#[derive(Serialize)]
struct A2Side {
    params: A2ParamsJson,
    riemann_scheme: SchemeJson,
    x: Pair,
    y: Pair,
    standard: A2StandardJson,
    f: Pair,
    g: Pair,
}

#[derive(Serialize)]
struct StageJson {
    stage: usize,
    name: &'static str,
    riemann_scheme: SchemeJson,
}

#[derive(Serialize)]
struct A2StepJson {
    before: A2Side,
    stages: Vec<StageJson>,
    after: A2Side,
}

#[derive(Serialize)]
struct HaltJson {
    step: usize,
    exit_code: i32,
    reason: String,
}

impl HaltJson {
    fn new(step: usize, e: &CliError) -> Self {
        HaltJson {
            step,
            exit_code: e.exit_code(),
            reason: e.message().to_string(),
        }
    }
}

#[derive(Serialize)]
struct OrbitJson<T> {
    trace: Vec<T>,
    halt: Option<HaltJson>,
}

#[derive(Serialize)]
struct DpvRowJson {
    step: usize,
    params: DpvParamsJson,
    p: Pair,
    q: Pair,
    f: Pair,
    g: Pair,
}

#[derive(Serialize)]
struct A2RowJson {
    step: usize,
    params: A2ParamsJson,
    x: Pair,
    y: Pair,
    f: Pair,
    g: Pair,
}

/// `key,value` rows of every leaf, keys joined with dots.
pub fn flatten_csv(value: &Value) -> String {
    fn go(v: &Value, key: &str, out: &mut String) {
        let join = |k: &str| {
            if key.is_empty() {
                k.to_string()
            } else {
                format!("{key}.{k}")
            }
        };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| go(x, &join(k), out)),
            Value::Array(a) => a
                .iter()
                .enumerate()
                .for_each(|(i, x)| go(x, &join(&i.to_string()), out)),
            Value::Number(n) if n.is_f64() => {
                out.push_str(&format!("{key},{}\n", fmt_f64(n.as_f64().unwrap_or(f64::NAN))))
            }
            Value::Number(n) => out.push_str(&format!("{key},{n}\n")),
            Value::String(s) => out.push_str(&format!("{key},{s}\n")),
            Value::Bool(b) => out.push_str(&format!("{key},{b}\n")),
            Value::Null => out.push_str(&format!("{key},\n")),
        }
    }
    let mut out = String::from("key,value\n");
    go(value, "", &mut out);
    out
}

fn emit<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Json => to_json_string(value) + "\n",
        Format::Csv => flatten_csv(&serde_json::to_value(value).expect("plain data serializes")),
    }
}

fn halt_line(h: &HaltJson) -> String {
    format!("# halt step={} exit={} reason={}\n", h.step, h.exit_code, h.reason)
}

// ---- instances ----

fn dpv_instance(s: &Settings, trial: u64, steps: usize) -> Result<(DpvParameters, DpvState), CliError> {
    match &s.config.dpv {
        Some(block) => block.instance(),
        None => Ok(random::dpv_instance(&mut trial_rng(s.seed, trial), steps)),
    }
}

fn a2_instance(s: &Settings, trial: u64, steps: usize) -> Result<(A2Parameters, C64, C64), CliError> {
    match &s.config.a2star {
        Some(block) => block.instance(),
        None => Ok(random::a2_instance(&mut trial_rng(s.seed, trial), steps)),
    }
}

/// The configured system and schedule, or a seeded random case. An empty
/// configured schedule defaults to {1 2; 1 1}.
fn raw_case(s: &Settings) -> Result<(FuchsianSystem, Vec<TransformationIndex>), CliError> {
    let schedule = s.config.schedule()?;
    match &s.config.system {
        Some(sj) => {
            let system = sj.to_system(&s.tol)?;
            let schedule = if schedule.is_empty() {
                vec![TransformationIndex::new(0, 1, 0, 0)]
            } else {
                schedule
            };
            Ok((system, schedule))
        }
        None => {
            let (system, idx) = random::raw_case(&mut trial_rng(s.seed, 0), 2, 3, 1);
            Ok((system, if schedule.is_empty() { vec![idx] } else { schedule }))
        }
    }
}

// ---- verify ----

/// Collects errors from checks on user-supplied data: failed checks count as
/// check failures, anything else is kept to decide the exit code.
struct Pending(Option<CliError>);

impl Pending {
    fn absorb(&mut self, suite: &mut Suite, name: &str, tol: f64, r: Result<(), CliError>) {
        match r {
            Ok(()) => {}
            Err(CliError::Failed(m)) => suite.fail(name, tol, m),
            Err(e) => {
                suite.notes.push(format!("{name}: {e}"));
                let keep = matches!(
                    (&self.0, &e),
                    (None, _) | (Some(CliError::Indeterminacy(_)), CliError::Usage(_))
                );
                if keep {
                    self.0 = Some(e);
                }
            }
        }
    }
}

fn raw_system_checks(
    s: &Settings,
    system: &FuchsianSystem,
    schedule: &[TransformationIndex],
    pending: &mut Pending,
) -> Suite {
    let mut suite = Suite::default();
    let tol = &s.tol;
    match riemann_scheme(system, tol.cluster) {
        Ok(scheme) => {
            if let Some(declared) = &s.config.riemann_scheme {
                let to_c = |v: &[Pair]| v.iter().map(|p| C64::new(p[0], p[1])).collect::<Vec<_>>();
                let finite: Vec<Vec<C64>> = declared.finite.iter().map(|v| to_c(v)).collect();
                let d = suites::scheme_distance(&finite, &to_c(&declared.infinity), &scheme);
                suite.record(
                    "declared Riemann scheme matches the residues",
                    d,
                    suites::SCHEME_PAIRING_TOL,
                );
            }
            suite.record("Fuchs relation", scheme.fuchs_sum().norm(), suites::TRACE_TOL);
        }
        Err(e) => pending.absorb(&mut suite, "Riemann scheme", 0.0, Err(e.into())),
    }
    match decompose(system) {
        Ok(point) => {
            let scale = system
                .residues()
                .iter()
                .map(fuchsian_core::linalg::max_abs)
                .fold(1.0, f64::max);
            suite.record(
                "decomposition C_i B_i = Theta_i",
                point.normalization_residual().1 / scale,
                suites::ROUND_TRIP_TOL,
            );
            suite.record(
                "decomposition sum B_i C_i = -A_inf",
                point.infinity_residual() / scale,
                suites::ROUND_TRIP_TOL,
            );
            for idx in schedule {
                let r = suites::generating_checks(&mut suite, &point, idx);
                pending.absorb(&mut suite, "dH+/db reproduces C", suites::GENERATING_TOL, r);
            }
        }
        Err(e) => pending.absorb(&mut suite, "decomposition", 0.0, Err(e.into())),
    }
    let mut rng = trial_rng(s.seed, 0);
    for idx in schedule {
        let samples = suites::sample_points(&mut rng, system.poles(), suites::SAMPLE_POINTS);
        let r = suites::transformation_checks(&mut suite, system, idx, &samples, tol);
        pending.absorb(
            &mut suite,
            "residue equation (relative, 10 points)",
            suites::RESIDUE_EQUATION_TOL,
            r,
        );
        let r = suites::scheme_checks(&mut suite, system, idx, tol);
        pending.absorb(&mut suite, "scheme shift rule", suites::SCHEME_PAIRING_TOL, r);
        // lemma identities on the multiplier of this step
        let r = default_labels(system, tol.cluster)
            .map_err(CliError::from)
            .and_then(|labels| Ok(transform_system_labelled(system, &labels, idx, tol)?.2))
            .map(|d: ElementaryDivisor| {
                let m = d.dim();
                let v = fuchsian_core::CVec::from_fn(m, |_, _| unit(&mut rng));
                let w = fuchsian_core::CRow::from_fn(m, |_, _| unit(&mut rng));
                suites::divisor_checks(&mut suite, &d, &v, &w, samples[0]);
            });
        pending.absorb(&mut suite, "determinant identity", suites::DIVISOR_TOL, r);
    }
    suite
}

pub fn verify(s: &Settings) -> Outcome {
    let mut sections: Vec<(String, Suite)> = Vec::new();
    let mut pending = Pending(None);
    let trials = s.trials.unwrap_or(DEFAULT_TRIALS);
    let mut header = format!("verify mode={} seed={}", s.mode.map_or("all", mode_name), s.seed);
    let modes = match s.mode {
        Some(m) => vec![m],
        None => vec![Mode::RawSystem, Mode::Dpv, Mode::A2star, Mode::Lattice],
    };
    for mode in modes {
        match mode {
            Mode::RawSystem if s.config.system.is_some() => match raw_case(s) {
                Ok((system, schedule)) => {
                    let suite = raw_system_checks(s, &system, &schedule, &mut pending);
                    sections.push(("configured system".into(), suite));
                }
                Err(e) => {
                    return Outcome {
                        output: String::new(),
                        error: Some(e),
                    }
                }
            },
            Mode::RawSystem => {
                header.push_str(&format!(" trials={trials}"));
                sections.push(("elementary divisors".into(), suites::divisor_suite(s.seed, trials)));
                sections.push((
                    "transformation equation".into(),
                    suites::transformation_suite(s.seed, trials),
                ));
                sections.push(("Riemann-scheme shift".into(), suites::scheme_suite(s.seed, trials)));
                sections.push(("generating function".into(), suites::generating_suite(s.seed, trials)));
            }
            Mode::Dpv => {
                let steps = s.steps.unwrap_or(DEFAULT_DPV_STEPS);
                let count = if s.config.dpv.is_some() { 1 } else { trials };
                header.push_str(&format!(" dpv={count}x{steps}"));
                let mut suite = Suite::default();
                for k in 0..count {
                    let inst = match dpv_instance(s, k as u64, steps) {
                        Ok(i) => i,
                        Err(e) => {
                            return Outcome {
                                output: String::new(),
                                error: Some(e),
                            }
                        }
                    };
                    let (params, state) = inst;
                    let r = suites::dpv_checks(&mut suite, &params, &state, steps);
                    pending.absorb(
                        &mut suite,
                        "(p, q) closed form vs decomposition space, per step",
                        suites::DPV_STEP_TOL,
                        r,
                    );
                    let r = build_dpv_point(&params, &state, C64::new(1.0, 0.0))
                        .map_err(CliError::from)
                        .and_then(|point| suites::generating_checks(&mut suite, &point, &dpv_index()));
                    pending.absorb(&mut suite, "dH+/db reproduces C", suites::GENERATING_TOL, r);
                }
                sections.push(("d-PV conjugacy".into(), suite));
            }
            Mode::A2star => {
                let steps = s.steps.unwrap_or(DEFAULT_A2_STEPS);
                let configured = s.config.a2star.is_some();
                let count = if configured { 1 } else { trials };
                header.push_str(&format!(" a2star={count}x{steps}"));
                let mut suite = Suite::default();
                for k in 0..count {
                    let (params, x, y) = match a2_instance(s, k as u64, steps) {
                        Ok(i) => i,
                        Err(e) => {
                            return Outcome {
                                output: String::new(),
                                error: Some(e),
                            }
                        }
                    };
                    let r = suites::a2_step_checks(&mut suite, &params, x, y);
                    pending.absorb(&mut suite, "first standard equation", suites::A2_EQUATION_TOL, r);
                    let r = suites::a2_orbit_checks(&mut suite, &params, x, y, steps);
                    pending.absorb(
                        &mut suite,
                        "orbit vs standard recursion, cumulative",
                        suites::A2_ORBIT_TOL,
                        r,
                    );
                    let r = build_a2_point(&params, x, y)
                        .map_err(CliError::from)
                        .and_then(|point| suites::generating_checks(&mut suite, &point, &schlesinger_index()));
                    pending.absorb(&mut suite, "dH+/db reproduces C", suites::GENERATING_TOL, r);
                    if !configured {
                        let mut rng = trial_rng(s.seed ^ 0xd1ad1c, k as u64);
                        let (p, x, y) = random::a2_instance_with(&mut rng, 1, random::dyadic);
                        let r = suites::a2_scheme_action_check(&mut suite, &p, x, y);
                        pending.absorb(&mut suite, "scheme action equals the parameter column (exact)", 0.0, r);
                    }
                }
                sections.push(("d-P(A2*) conjugacy".into(), suite));
            }
            Mode::Lattice => {
                sections.push(("Picard lattices".into(), suites::lattice_suite()));
                sections.push(("accessory dimension".into(), suites::dimension_suite()));
            }
        }
    }

    let mut output = header + "\n";
    let (mut total, mut failed) = (0, 0);
    for (title, mut suite) in sections {
        if let Some(t) = s.check_tol {
            suite.override_tol(t);
        }
        total += suite.checks.len();
        failed += suite.checks.iter().filter(|c| !c.passed()).count();
        output.push_str(&format!("[{title}]\n{}", suite.report()));
    }
    let error = match pending.0 {
        Some(e @ CliError::Usage(_)) => Some(e),
        _ if failed > 0 || total == 0 => Some(CliError::Failed(format!("{failed} of {total} checks failed"))),
        other => other,
    };
    let verdict = match &error {
        None => "PASS".to_string(),
        Some(e) => format!("FAIL ({e})"),
    };
    output.push_str(&format!("result: {verdict}\n"));
    Outcome { output, error }
}

// ---- step ----

fn step_raw(s: &Settings) -> Result<String, CliError> {
    let (system, schedule) = raw_case(s)?;
    let idx = schedule[0];
    let labels = default_labels(&system, s.tol.cluster)?;
    let (next, next_labels, _) = transform_system_labelled(&system, &labels, &idx, &s.tol)?;
    let out = RawStep {
        index: [idx.alpha + 1, idx.beta + 1, idx.mu + 1, idx.nu + 1],
        before: snapshot(&system, &labels),
        after: snapshot(&next, &next_labels),
    };
    Ok(emit(&out, s.format))
}

fn step_dpv(s: &Settings) -> Result<String, CliError> {
    let (params, state) = dpv_instance(s, 0, 1)?;
    let (sp, f, g) = dpv_to_standard(&params, &state)?;
    let (np, ns) = dpv_step(&params, &state)?;
    let (sp1, f1, g1) = dpv_standard_step(&sp, f, g)?;
    let side = |p: &DpvParameters, st: &DpvState, sp: &StandardDpvParameters, f: C64, g: C64| DpvSide {
        params: p.into(),
        riemann_scheme: dpv_scheme(p),
        p: pair(st.p),
        q: pair(st.q),
        standard: sp.into(),
        f: pair(f),
        g: pair(g),
    };
    let out = DpvStepJson {
        before: side(&params, &state, &sp, f, g),
        after: side(&np, &ns, &sp1, f1, g1),
    };
    Ok(emit(&out, s.format))
}

fn step_a2(s: &Settings) -> Result<String, CliError> {
    let (params, x, y) = a2_instance(s, 0, 1)?;
    let (sp, f, g) = a2_to_standard(&params, x, y)?;
    let stages = composite_stages(&params, x, y)?;
    let (np, x1, y1) = composite_step(&params, x, y)?;
    let (sp1, f1, g1) = a2_standard_step(&sp, f, g)?;
    let side = |p: &A2Parameters, x: C64, y: C64, sp: &StandardA2Parameters, f: C64, g: C64| A2Side {
        params: p.into(),
        riemann_scheme: a2_scheme(p),
        x: pair(x),
        y: pair(y),
        standard: sp.into(),
        f: pair(f),
        g: pair(g),
    };
    let stages = stages
        .iter()
        .enumerate()
        .map(|(i, st)| StageJson {
            stage: i + 1,
            name: st.name,
            riemann_scheme: a2_scheme(&st.params),
        })
        .collect();
    let out = A2StepJson {
        before: side(&params, x, y, &sp, f, g),
        stages,
        after: side(&np, x1, y1, &sp1, f1, g1),
    };
    Ok(emit(&out, s.format))
}

fn require_mode(s: &Settings, command: &str) -> Result<Mode, CliError> {
    s.mode
        .ok_or_else(|| CliError::Usage(format!("{command} needs --mode or a config with a mode")))
}

pub fn step(s: &Settings) -> Outcome {
    let mode = match require_mode(s, "step") {
        Ok(m) => m,
        Err(e) => {
            return Outcome {
                output: String::new(),
                error: Some(e),
            }
        }
    };
    Outcome::from_result(match mode {
        Mode::RawSystem => step_raw(s),
        Mode::Dpv => step_dpv(s),
        Mode::A2star => step_a2(s),
        Mode::Lattice => Err(CliError::Usage("step needs mode raw-system, dpv or a2star".into())),
    })
}

// ---- orbit ----

fn orbit_raw(s: &Settings, steps: usize) -> Result<(String, Option<CliError>), CliError> {
    let (system, schedule) = raw_case(s)?;
    if steps == 0 {
        return Ok((empty_orbit(s.format, "step,pole,slot,theta_re,theta_im\n"), None));
    }
    let outcome = orbit_partial(&system, &schedule, steps, &s.tol);
    let halt_err = outcome.halt.map(CliError::from);
    let halt_step = outcome.records.len();
    let halt = halt_err.as_ref().map(|e| HaltJson::new(halt_step, e));
    let text = match s.format {
        Format::Json => format!(
            "{{\"trace\":{},\"halt\":{}}}\n",
            trace_json(&outcome.records),
            to_json_string(&halt)
        ),
        Format::Csv => {
            let mut out = String::from("step,pole,slot,theta_re,theta_im\n");
            for r in &outcome.records {
                for (i, labels) in r.labels.iter().enumerate() {
                    for (j, th) in labels.iter().enumerate() {
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            r.step,
                            i + 1,
                            j + 1,
                            fmt_f64(th.re),
                            fmt_f64(th.im)
                        ));
                    }
                }
                for (j, th) in r.scheme.infinity.iter().enumerate() {
                    out.push_str(&format!(
                        "{},inf,{},{},{}\n",
                        r.step,
                        j + 1,
                        fmt_f64(th.re),
                        fmt_f64(th.im)
                    ));
                }
            }
            if let Some(h) = &halt {
                out.push_str(&halt_line(h));
            }
            out
        }
    };
    Ok((text, halt_err))
}

fn empty_orbit(format: Format, header: &str) -> String {
    match format {
        Format::Json => "{\"trace\":[],\"halt\":null}\n".to_string(),
        Format::Csv => header.to_string(),
    }
}

fn orbit_dpv(s: &Settings, steps: usize) -> Result<(String, Option<CliError>), CliError> {
    let (params, state) = dpv_instance(s, 0, steps)?;
    if steps == 0 {
        return Ok((empty_orbit(s.format, &painleve_d4::orbit_csv(&[])), None));
    }
    let orbit = dpv_orbit(&params, &state, steps)?;
    let halt_err = orbit.halt.as_ref().map(|(step, e)| (*step, CliError::from(e.clone())));
    let halt = halt_err.as_ref().map(|(step, e)| HaltJson::new(*step, e));
    let text = match s.format {
        Format::Csv => {
            let mut out = painleve_d4::orbit_csv(&orbit.rows);
            if let Some(h) = &halt {
                out.push_str(&halt_line(h));
            }
            out
        }
        Format::Json => {
            let trace = orbit
                .rows
                .iter()
                .map(|r| DpvRowJson {
                    step: r.step,
                    params: (&r.params).into(),
                    p: pair(r.state.p),
                    q: pair(r.state.q),
                    f: pair(r.f),
                    g: pair(r.g),
                })
                .collect();
            to_json_string(&OrbitJson { trace, halt }) + "\n"
        }
    };
    Ok((text, halt_err.map(|(_, e)| e)))
}

fn orbit_a2(s: &Settings, steps: usize) -> Result<(String, Option<CliError>), CliError> {
    let (params, x, y) = a2_instance(s, 0, steps)?;
    if steps == 0 {
        return Ok((empty_orbit(s.format, &painleve_a2star::orbit_csv(&[])), None));
    }
    let orbit = a2_orbit(&params, x, y, steps)?;
    let halt_err = orbit.halt.as_ref().map(|(step, e)| (*step, CliError::from(e.clone())));
    let halt = halt_err.as_ref().map(|(step, e)| HaltJson::new(*step, e));
    let text = match s.format {
        Format::Csv => {
            let mut out = painleve_a2star::orbit_csv(&orbit.rows);
            if let Some(h) = &halt {
                out.push_str(&halt_line(h));
            }
            out
        }
        Format::Json => {
            let trace = orbit
                .rows
                .iter()
                .map(|r| A2RowJson {
                    step: r.step,
                    params: (&r.params).into(),
                    x: pair(r.x),
                    y: pair(r.y),
                    f: pair(r.f),
                    g: pair(r.g),
                })
                .collect();
            to_json_string(&OrbitJson { trace, halt }) + "\n"
        }
    };
    Ok((text, halt_err.map(|(_, e)| e)))
}

#[derive(Serialize)]
struct TranslationJson {
    surface: &'static str,
    action: &'static str,
    vector: Vec<i64>,
}

fn orbit_lattice(s: &Settings) -> Result<(String, Option<CliError>), CliError> {
    let mut rows = Vec::new();
    for surface in [dpv_standard_surface(), a2_standard_surface()] {
        for (action, vector) in surface.translations()? {
            rows.push(TranslationJson {
                surface: surface.name,
                action,
                vector,
            });
        }
    }
    let text = match s.format {
        Format::Json => to_json_string(&rows) + "\n",
        Format::Csv => {
            let mut out = String::from("surface,action,vector\n");
            for r in &rows {
                let v: Vec<String> = r.vector.iter().map(i64::to_string).collect();
                out.push_str(&format!("{},{},{}\n", r.surface, r.action, v.join(" ")));
            }
            out
        }
    };
    Ok((text, None))
}

pub fn orbit(s: &Settings) -> Outcome {
    let mode = match require_mode(s, "orbit") {
        Ok(m) => m,
        Err(e) => {
            return Outcome {
                output: String::new(),
                error: Some(e),
            }
        }
    };
    let default_steps = match mode {
        Mode::A2star => DEFAULT_A2_STEPS,
        _ => DEFAULT_DPV_STEPS,
    };
    let steps = s.steps.unwrap_or(default_steps);
    let r = match mode {
        Mode::RawSystem => orbit_raw(s, steps),
        Mode::Dpv => orbit_dpv(s, steps),
        Mode::A2star => orbit_a2(s, steps),
        Mode::Lattice => orbit_lattice(s),
    };
    match r {
        Ok((output, error)) => Outcome { output, error },
        Err(e) => Outcome {
            output: String::new(),
            error: Some(e),
        },
    }
}
