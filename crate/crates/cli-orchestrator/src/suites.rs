//! Invariant suites. Each check keeps the worst residual over its instances;
//! a check passes when that residual is finite and at most its tolerance.

use elementary_divisor::ElementaryDivisor;
use fuchsian_core::linalg::{identity, max_abs, trace};
use fuchsian_core::{
    accessory_dimension, decompose, default_labels, riemann_scheme, DecompositionPoint, FuchsianSystem, RiemannScheme,
    Tolerances, C64,
};
use painleve_a2star::{
    a2_orbit, build_a2_point, composite_step, schlesinger_index, to_standard as a2_to_standard, A2Parameters,
};
use painleve_d4::{build_dpv_point, dpv_index, dpv_orbit, dpv_pipeline_step, to_standard as dpv_to_standard};
use painleve_d4::{DpvParameters, DpvState};
use picard_lattice::{
    a2_p2_surface, a2_standard_surface, affine_type, build_action, cartan_matrix, dpv_pq_surface, dpv_standard_surface,
    Surface,
};
use rand::Rng;
use schlesinger_map::{
    residue_equation_residual, transform_decomposition, transform_system_labelled, verify_generating, GeneratingReport,
    SchlesingerError, TransformationIndex,
};

use crate::error::CliError;
use crate::random::{self, trial_rng, unit, POLE_SEPARATION};

pub const DIVISOR_TOL: f64 = 1e-10;
pub const RESIDUE_EQUATION_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-10;
pub const SCHEME_PAIRING_TOL: f64 = 1e-8;
pub const ROUND_TRIP_TOL: f64 = 1e-9;
pub const GENERATING_TOL: f64 = 1e-8;
pub const FD_STEP: f64 = 1e-7;
pub const FD_TOL: f64 = 1e-6;
pub const DPV_STEP_TOL: f64 = 1e-9;
pub const DPV_ORBIT_TOL: f64 = 1e-7;
pub const A2_EQUATION_TOL: f64 = 1e-8;
pub const A2_ORBIT_TOL: f64 = 1e-6;
/// Parameter tables are sums of the inputs; only rounding separates them.
pub const TABLE_TOL: f64 = 1e-10;
pub const SAMPLE_POINTS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tol
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        write!(
            f,
            "{verdict:4} {:<52} residual {:.3e}  tol {:.0e}",
            self.name, self.residual, self.tol
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Suite {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Suite {
    /// Keeps the worst residual per check name, in first-seen order.
    pub fn record(&mut self, name: &str, residual: f64, tol: f64) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => c.residual = c.residual.max(residual),
            None => self.checks.push(Check {
                name: name.to_string(),
                residual,
                tol,
            }),
        }
    }

    /// An instance that errored out: its check fails with an infinite residual.
    pub fn fail(&mut self, name: &str, tol: f64, why: impl std::fmt::Display) {
        self.record(name, f64::INFINITY, tol);
        self.notes.push(format!("{name}: {why}"));
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn merge(&mut self, other: Suite) {
        for c in other.checks {
            self.record(&c.name, c.residual, c.tol);
        }
        self.notes.extend(other.notes);
    }

    /// Replaces the tolerance of every inexact check; exact checks stay exact.
    pub fn override_tol(&mut self, tol: f64) {
        for c in self.checks.iter_mut().filter(|c| c.tol > 0.0) {
            c.tol = tol;
        }
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{c}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn rel(err: f64, scale: f64) -> f64 {
    err / scale.max(1.0)
}

/// Smallest, over matchings, of the largest distance between paired entries.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn go(a: &[C64], b: &[C64], used: &mut Vec<bool>) -> f64 {
        let Some((first, rest)) = a.split_first() else {
            return 0.0;
        };
        let mut best = f64::INFINITY;
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            best = best.min((first - b[j]).norm().max(go(rest, b, used)));
            used[j] = false;
        }
        best
    }
    go(a, b, &mut vec![false; b.len()])
}

/// Worst multiset distance between two Riemann schemes, pole by pole.
pub fn scheme_distance(expected_finite: &[Vec<C64>], expected_inf: &[C64], scheme: &RiemannScheme) -> f64 {
    if expected_finite.len() != scheme.finite.len() {
        return f64::INFINITY;
    }
    expected_finite
        .iter()
        .zip(&scheme.finite)
        .map(|(a, b)| multiset_distance(a, b))
        .fold(multiset_distance(expected_inf, &scheme.infinity), f64::max)
}

// ---- elementary divisors ----

pub fn divisor_checks(
    suite: &mut Suite,
    d: &ElementaryDivisor,
    v: &fuchsian_core::CVec,
    w: &fuchsian_core::CRow,
    x: C64,
) {
    let eval = d.eval(x).and_then(|r| Ok((r, d.eval_inverse(x)?)));
    let (r, ri) = match eval {
        Ok(x) => x,
        Err(e) => return suite.fail("determinant identity", DIVISOR_TOL, e),
    };
    let det_err = (r.determinant() - (x - d.zeta()) / (x - d.z())).norm();
    let det_inv_err = (ri.determinant() - (x - d.z()) / (x - d.zeta())).norm();
    suite.record("determinant identity", det_err.max(det_inv_err), DIVISOR_TOL);
    let m = d.dim();
    let inv_err = max_abs(&(&r * &ri - identity(m))).max(max_abs(&(&ri * &r - identity(m))));
    suite.record("inverse identity", inv_err, DIVISOR_TOL);
    match d.check_vanishing_rule(v, w, x) {
        Ok(res) => suite.record("vanishing rule", res, DIVISOR_TOL),
        Err(e) => suite.fail("vanishing rule", DIVISOR_TOL, e),
    }
    match d.check_exchange_rule(v, w, x) {
        Ok(res) => suite.record("exchange rule", res, DIVISOR_TOL),
        Err(e) => suite.fail("exchange rule", DIVISOR_TOL, e),
    }
}

/// Criterion 1: `count` random divisors with m = 2, 3, 4 in turn.
pub fn divisor_suite(seed: u64, count: usize) -> Suite {
    let mut suite = Suite::default();
    for k in 0..count {
        let mut rng = trial_rng(seed, k as u64);
        let inst = random::divisor_instance(&mut rng, 2 + k % 3);
        match ElementaryDivisor::new(inst.z, inst.zeta, inst.f, inst.g) {
            Ok(d) => divisor_checks(&mut suite, &d, &inst.v, &inst.w, inst.x),
            Err(e) => suite.fail("determinant identity", DIVISOR_TOL, e),
        }
    }
    suite
}

// ---- one Schlesinger step on a system ----

/// Points at least 0.3 from every pole, in the box |Re|, |Im| <= 1.5.
pub fn sample_points(rng: &mut impl Rng, poles: &[C64], count: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = unit(rng) * 1.5;
        if poles.iter().all(|u| (x - u).norm() >= POLE_SEPARATION) {
            out.push(x);
        }
    }
    out
}

/// Residue equation, trace shifts, A_inf, Fuchs relation.
pub fn transformation_checks(
    suite: &mut Suite,
    system: &FuchsianSystem,
    idx: &TransformationIndex,
    samples: &[C64],
    tol: &Tolerances,
) -> Result<(), CliError> {
    let labels = default_labels(system, tol.cluster)?;
    let (next, _, r) = transform_system_labelled(system, &labels, idx, tol)?;
    let res = residue_equation_residual(system, &next, &r, samples)?;
    suite.record("residue equation (relative, 10 points)", res, RESIDUE_EQUATION_TOL);

    let trace_err = (0..system.n_poles())
        .map(|i| {
            let expected = if i == idx.alpha {
                -1.0
            } else if i == idx.beta {
                1.0
            } else {
                0.0
            };
            (trace(next.residue(i)) - trace(system.residue(i)) - expected).norm()
        })
        .fold(0.0, f64::max);
    suite.record("trace shifts -1 at alpha, +1 at beta", trace_err, TRACE_TOL);
    let inf_err = max_abs(&(next.residue_at_infinity() - system.residue_at_infinity()));
    suite.record("A_inf invariant", inf_err, TRACE_TOL);
    let scheme = riemann_scheme(&next, tol.cluster)?;
    suite.record("Fuchs relation after the step", scheme.fuchs_sum().norm(), TRACE_TOL);
    Ok(())
}

/// Index shift rule of the scheme and the round trip through the reverse step.
pub fn scheme_checks(
    suite: &mut Suite,
    system: &FuchsianSystem,
    idx: &TransformationIndex,
    tol: &Tolerances,
) -> Result<(), CliError> {
    let before = riemann_scheme(system, tol.cluster)?;
    let labels = default_labels(system, tol.cluster)?;
    let (next, next_labels, _) = transform_system_labelled(system, &labels, idx, tol)?;
    let after = riemann_scheme(&next, tol.cluster)?;
    let expected = idx.shifted_labels(&labels);
    suite.record(
        "scheme shift rule",
        scheme_distance(&expected, &before.infinity, &after),
        SCHEME_PAIRING_TOL,
    );
    let (back, back_labels, _) = transform_system_labelled(&next, &next_labels, &idx.reverse(), tol)?;
    let err = system
        .residues()
        .iter()
        .zip(back.residues())
        .map(|(a, b)| rel(max_abs(&(a - b)), max_abs(a)))
        .fold(0.0, f64::max);
    suite.record("round trip {a b; m n} then {b a; n m}", err, ROUND_TRIP_TOL);
    let label_err = labels
        .iter()
        .zip(&back_labels)
        .map(|(a, b)| multiset_distance(a, b))
        .fold(0.0, f64::max);
    suite.record("round trip restores the scheme", label_err, ROUND_TRIP_TOL);
    Ok(())
}

fn transformation_shape(k: usize) -> (usize, usize, usize) {
    let m = 2 + k % 2;
    let n = 2 + (k / 2) % 2;
    let rank = 1 + (k / 4) % (m - 1);
    (m, n, rank)
}

/// Criterion 2: random systems with m, n in {2, 3}.
pub fn transformation_suite(seed: u64, count: usize) -> Suite {
    let tol = Tolerances::default();
    let mut suite = Suite::default();
    for k in 0..count {
        let mut rng = trial_rng(seed, k as u64);
        let (m, n, rank) = transformation_shape(k);
        let (system, idx) = random::raw_case(&mut rng, m, n, rank);
        let samples = sample_points(&mut rng, system.poles(), SAMPLE_POINTS);
        if let Err(e) = transformation_checks(&mut suite, &system, &idx, &samples, &tol) {
            suite.fail(
                "residue equation (relative, 10 points)",
                RESIDUE_EQUATION_TOL,
                format!("trial {k}: {e}"),
            );
        }
    }
    suite
}

/// Criterion 3 on the same kind of systems.
pub fn scheme_suite(seed: u64, count: usize) -> Suite {
    let tol = Tolerances::default();
    let mut suite = Suite::default();
    for k in 0..count {
        let mut rng = trial_rng(seed, k as u64);
        let (m, n, rank) = transformation_shape(k);
        let (system, idx) = random::raw_case(&mut rng, m, n, rank);
        if let Err(e) = scheme_checks(&mut suite, &system, &idx, &tol) {
            suite.fail("scheme shift rule", SCHEME_PAIRING_TOL, format!("trial {k}: {e}"));
        }
    }
    suite
}

// ---- generating function ----

pub fn generating_checks(
    suite: &mut Suite,
    point: &DecompositionPoint,
    idx: &TransformationIndex,
) -> Result<(), CliError> {
    let (barred, _) = transform_decomposition(point, idx)?;
    let report: GeneratingReport = match verify_generating(point, &barred, idx, FD_STEP) {
        Ok(r) => r,
        Err(SchlesingerError::GradientMismatch(r)) => *r,
        Err(e) => return Err(e.into()),
    };
    let worst = |v: &[schlesinger_map::SlotResidual]| v.iter().map(|s| s.residual).fold(0.0, f64::max);
    suite.record("dH+/db reproduces C", worst(&report.b_gradient), GENERATING_TOL);
    let contract = worst(&report.c_bar_normalization).max(report.c_bar_residue.iter().copied().fold(0.0, f64::max));
    suite.record(
        "dH+/dcbar gauge contract (cbar b = theta, sum = Abar)",
        contract,
        GENERATING_TOL,
    );
    suite.record(
        "analytic vs central differences (h = 1e-7)",
        report.worst_finite_difference(),
        FD_TOL,
    );
    Ok(())
}

/// Criterion 4: instances cycle through the d-PV shape (2x2, three rank-one
/// poles), the A2* shape (3x3, two rank-two poles) and generic systems.
pub fn generating_suite(seed: u64, count: usize) -> Suite {
    let mut suite = Suite::default();
    let mut shapes = [0usize; 3];
    for k in 0..count {
        let mut rng = trial_rng(seed, k as u64);
        let case: Result<(DecompositionPoint, TransformationIndex), CliError> = match k % 3 {
            0 => {
                let (params, state) = random::dpv_instance(&mut rng, 0);
                build_dpv_point(&params, &state, unit(&mut rng) + 2.0)
                    .map(|p| (p, dpv_index()))
                    .map_err(Into::into)
            }
            1 => {
                let (params, x, y) = random::a2_instance(&mut rng, 0);
                build_a2_point(&params, x, y)
                    .map(|p| (p, schlesinger_index()))
                    .map_err(Into::into)
            }
            _ => {
                let (m, n, rank) = transformation_shape(k / 3);
                let (system, idx) = random::raw_case(&mut rng, m, n, rank);
                decompose(&system).map(|p| (p, idx)).map_err(Into::into)
            }
        };
        shapes[k % 3] += 1;
        let outcome = case.and_then(|(point, idx)| generating_checks(&mut suite, &point, &idx));
        if let Err(e) = outcome {
            suite.fail("dH+/db reproduces C", GENERATING_TOL, format!("trial {k}: {e}"));
        }
    }
    suite.notes.push(format!(
        "shapes: {} d-PV, {} A2*, {} generic",
        shapes[0], shapes[1], shapes[2]
    ));
    suite
}

// ---- d-PV ----

/// Closed form against the decomposition space at every step, and the
/// (f, g) image of the orbit against the standard recursion.
pub fn dpv_checks(suite: &mut Suite, params: &DpvParameters, state: &DpvState, steps: usize) -> Result<(), CliError> {
    suite.record("Fuchs relation of the parameters", params.fuchs_sum().norm(), TRACE_TOL);
    let orbit = dpv_orbit(params, state, steps)?;
    if let Some((step, e)) = orbit.halt {
        return Err(CliError::from(e).prefixed(format!("step {step}")));
    }
    for w in orbit.rows.windows(2) {
        let (np, ns) = dpv_pipeline_step(&w[0].params, &w[0].state, C64::new(1.0, 0.0))?;
        let (p, q) = (w[1].state.p, w[1].state.q);
        let err = (ns.p - p).norm().max((ns.q - q).norm());
        suite.record(
            "(p, q) closed form vs decomposition space, per step",
            rel(err, p.norm().max(q.norm())),
            DPV_STEP_TOL,
        );
        let perr = [np.theta1 - w[1].params.theta1, np.thetat - w[1].params.thetat]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        suite.record("parameter shift theta1 - 1, thetat + 1", perr, TABLE_TOL);
    }
    for row in &orbit.rows {
        let (sp, f, g) = dpv_to_standard(&row.params, &row.state)?;
        let err = (f - row.f).norm().max((g - row.g).norm());
        suite.record(
            "(f, g) orbit vs standard recursion, cumulative",
            rel(err, f.norm().max(g.norm())),
            DPV_ORBIT_TOL,
        );
        let table =
            sp.a.iter()
                .zip(&row.standard.a)
                .map(|(a, b)| (a - b).norm())
                .fold((sp.delta() + 1.0).norm(), f64::max)
                .max((sp.s - row.params.t).norm())
                .max((row.standard.delta() + 1.0).norm());
        suite.record("parameter table (delta = -1, s = t)", table, TABLE_TOL);
    }
    Ok(())
}

/// Criterion 5.
pub fn dpv_suite(seed: u64, count: usize, steps: usize) -> Suite {
    let mut suite = Suite::default();
    let mut rejected = 0;
    for k in 0..count {
        let mut rng = trial_rng(seed, k as u64);
        let ((params, state), r) = random::dpv_instance_counted(&mut rng, steps);
        rejected += r;
        if let Err(e) = dpv_checks(&mut suite, &params, &state, steps) {
            suite.fail(
                "(p, q) closed form vs decomposition space, per step",
                DPV_STEP_TOL,
                format!("trial {k}: {e}"),
            );
        }
    }
    suite
        .notes
        .push(format!("{rejected} draws rejected by the guard along the orbit"));
    suite
}

// ---- A2* ----

/// Both standard-form equations for one composite step, read in (f, g).
pub fn a2_step_checks(suite: &mut Suite, params: &A2Parameters, x: C64, y: C64) -> Result<(), CliError> {
    let (next, x1, y1) = composite_step(params, x, y)?;
    let (sp0, f0, g0) = a2_to_standard(params, x, y)?;
    let (sp1, f1, g1) = a2_to_standard(&next, x1, y1)?;
    let b = sp0.b;
    let d = sp0.delta();
    let lhs1 = (f0 + g0) * (f1 + g0) * (g0 - b[4]) * (g0 - b[5]);
    let rhs1: C64 = b[..4].iter().map(|bi| g0 + bi).product();
    suite.record(
        "first standard equation",
        rel((lhs1 - rhs1).norm(), lhs1.norm().max(rhs1.norm())),
        A2_EQUATION_TOL,
    );
    let lhs2 = (f1 + g0) * (f1 + g1) * (f1 + b[6] - d) * (f1 + b[7] - d);
    let rhs2: C64 = b[..4].iter().map(|bi| f1 - bi).product();
    suite.record(
        "second standard equation",
        rel((lhs2 - rhs2).norm(), lhs2.norm().max(rhs2.norm())),
        A2_EQUATION_TOL,
    );
    let table = sp1
        .b
        .iter()
        .zip(sp0.shifted().b)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    suite.record("standard parameters advance by delta", table, TABLE_TOL);
    Ok(())
}

pub fn a2_orbit_checks(suite: &mut Suite, params: &A2Parameters, x: C64, y: C64, steps: usize) -> Result<(), CliError> {
    let orbit = a2_orbit(params, x, y, steps)?;
    if let Some((step, e)) = orbit.halt {
        return Err(CliError::from(e).prefixed(format!("step {step}")));
    }
    for row in &orbit.rows {
        let (_, f, g) = a2_to_standard(&row.params, row.x, row.y)?;
        let err = (f - row.f).norm().max((g - row.g).norm());
        suite.record(
            "orbit vs standard recursion, cumulative",
            rel(err, f.norm().max(g.norm())),
            A2_ORBIT_TOL,
        );
    }
    Ok(())
}

/// The composite's action on (theta, kappa) and on the standard parameters,
/// compared with exact equality. Dyadic inputs make every sum exact.
pub fn a2_scheme_action_check(suite: &mut Suite, params: &A2Parameters, x: C64, y: C64) -> Result<(), CliError> {
    let (next, x1, y1) = composite_step(params, x, y)?;
    let one = C64::new(1.0, 0.0);
    let expected = [
        params.theta11,
        params.theta12 - one,
        params.theta21 - one,
        params.theta22 - one,
        params.kappa[0] + one,
        params.kappa[1] + one,
        params.kappa[2] + one,
    ];
    let exact = next.to_array() == expected;
    let (sp0, _, _) = a2_to_standard(params, x, y)?;
    let (sp1, _, _) = a2_to_standard(&next, x1, y1)?;
    let exact_b = sp1.b == sp0.shifted().b;
    let mismatches = usize::from(!exact) + usize::from(!exact_b);
    suite.record(
        "scheme action equals the parameter column (exact)",
        mismatches as f64,
        0.0,
    );
    Ok(())
}

/// Criterion 6.
pub fn a2_suite(seed: u64, count: usize, steps: usize) -> Suite {
    let mut suite = Suite::default();
    for k in 0..count {
        let mut rng = trial_rng(seed, k as u64);
        let (params, x, y) = random::a2_instance(&mut rng, steps);
        let outcome =
            a2_step_checks(&mut suite, &params, x, y).and_then(|_| a2_orbit_checks(&mut suite, &params, x, y, steps));
        if let Err(e) = outcome {
            suite.fail("first standard equation", A2_EQUATION_TOL, format!("trial {k}: {e}"));
        }
        let mut rng = trial_rng(seed ^ 0xd1ad1c, k as u64);
        let (params, x, y) = random::a2_instance_with(&mut rng, 1, random::dyadic);
        if let Err(e) = a2_scheme_action_check(&mut suite, &params, x, y) {
            suite.fail(
                "scheme action equals the parameter column (exact)",
                0.0,
                format!("trial {k}: {e}"),
            );
        }
    }
    suite
}

// ---- lattices and dimensions ----

fn count_issues(suite: &mut Suite, name: &str, r: Result<Vec<String>, picard_lattice::LatticeError>) {
    match r {
        Ok(issues) => {
            suite.record(name, issues.len() as f64, 0.0);
            suite.notes.extend(issues.into_iter().map(|i| format!("{name}: {i}")));
        }
        Err(e) => suite.fail(name, 0.0, e),
    }
}

fn isometry_issues(s: &Surface) -> Result<usize, picard_lattice::LatticeError> {
    let mut bad = 0;
    for (_, a) in &s.actions {
        let images: Vec<_> = (0..s.basis.rank())
            .map(|j| a.apply(&s.basis.generator(j)))
            .collect::<Result<_, _>>()?;
        let isometry = build_action(&s.basis, &images).map(|b| &b == a).unwrap_or(false);
        bad += usize::from(!isometry) + usize::from(!a.fixes(&s.minus_k)?);
    }
    Ok(bad)
}

/// Criterion 7, in exact integer arithmetic; residuals count mismatches.
pub fn lattice_suite() -> Suite {
    let mut suite = Suite::default();
    let dpv = dpv_standard_surface();
    let a2 = a2_standard_surface();
    for s in [&dpv, &a2] {
        count_issues(
            &mut suite,
            &format!("anticanonical decomposition, {}", s.name),
            s.basis.verify_anticanonical_decomposition(&s.minus_k, &s.components),
        );
    }
    for s in [dpv_pq_surface(), a2_p2_surface()] {
        let name = format!("blow-down structure, {}", s.name);
        match &s.blowdown {
            Some(bd) => count_issues(
                &mut suite,
                &name,
                s.basis
                    .verify_blowdown_structure(&s.minus_k, &bd.h_f, &bd.h_g, &bd.exceptional),
            ),
            None => suite.fail(&name, 0.0, "no blow-down data"),
        }
    }
    let mut actions = 0;
    for s in [&dpv, &a2] {
        actions += s.actions.len();
        match isometry_issues(s) {
            Ok(bad) => suite.record("actions are isometries fixing -K", bad as f64, 0.0),
            Err(e) => suite.fail("actions are isometries fixing -K", 0.0, e),
        }
    }
    suite.record("three shipped actions", (actions as f64 - 3.0).abs(), 0.0);
    type Expected<'a> = (&'a Surface, &'a [(&'a str, &'a [i64])]);
    let expected: [Expected; 2] = [
        (&dpv, &[("phi", &[0, 0, 1, -1, -1])]),
        (
            &a2,
            &[("phi", &[0, 0, 0, 1, 0, -1, 0]), ("psi", &[0, 0, 0, -1, 1, 1, -1])],
        ),
    ];
    for (s, want) in expected {
        match s.translations() {
            Ok(got) => {
                let same = got.len() == want.len()
                    && got
                        .iter()
                        .zip(want)
                        .all(|((n, v), (wn, wv))| n == wn && v.as_slice() == *wv);
                suite.record("translation vectors", f64::from(u8::from(!same)), 0.0);
                for (n, v) in got {
                    suite.notes.push(format!("{} {n}: {v:?}", s.name));
                }
            }
            Err(e) => suite.fail("translation vectors", 0.0, e),
        }
    }
    for (s, want) in [(&dpv, "D4(1)"), (&a2, "E6(1)")] {
        let got = cartan_matrix(&s.basis, &s.roots).map(|c| affine_type(&c));
        match got {
            Ok(t) => {
                suite.record(
                    "Cartan types D4(1) and E6(1)",
                    f64::from(u8::from(t.as_deref() != Some(want))),
                    0.0,
                );
                suite
                    .notes
                    .push(format!("{}: {}", s.name, t.unwrap_or_else(|| "unclassified".into())));
            }
            Err(e) => suite.fail("Cartan types D4(1) and E6(1)", 0.0, e),
        }
    }
    suite
}

/// Criterion 8: both spectral types have a two-dimensional accessory space,
/// matching the two chart coordinates (p, q) and (x, y).
pub fn dimension_suite() -> Suite {
    let mut suite = Suite::default();
    let cases = [
        ("d-PV 11,11,11,11", vec![vec![1, 1]; 4], 3, 2),
        ("A2* 111,111,111", vec![vec![1, 1, 1]; 3], 2, 3),
    ];
    let chart_dim = 2;
    for (name, st, n, m) in cases {
        match accessory_dimension(&st, n, m) {
            Ok(d) => {
                suite.record(
                    "accessory dimension equals chart dimension",
                    (d - chart_dim).abs() as f64,
                    0.0,
                );
                suite.notes.push(format!("{name}: {d}"));
            }
            Err(e) => suite.fail("accessory dimension equals chart dimension", 0.0, e),
        }
    }
    suite
}
