use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::{ClassicalRun, RunConfig};
use super::{Report, ReportRecord, Route, RouteValue};
use crate::classical::{
    classical_oam, closed_form_state, guiding_center, integrate_rk4, period, time_average_oam, InitialConditions,
    Trajectory, CLASSICAL_SPECS,
};
use crate::error::Result;
use crate::fock::{
    build_operator_set, conservation_checks, expectation_fock, identity_checks, interior_projector, spectrum,
    InteriorProjector, OperatorId, OperatorSet,
};
use crate::model::{Axis, LandauQuantumNumbers, OamKind, OamSpec, PhysicalConfig};
use crate::quadrature::QuadratureRule;
use crate::wavefunction::{LandauState, QuadratureExpectations};

const SRC_OAM_TABLE: &str = "closed-form OAM table: origin (m, 2n+1, m), guiding center ((2n+1)/2, 2n+1, (2n+1)/2)";
const SRC_SPECTRUM: &str = "Landau spectrum E_n = omega (n + 1/2)";
const SRC_RADII: &str = "radii: <r_c^2> = (2n+1) l_B^2, <R^2> = (2n-2m+1) l_B^2";
const SRC_R2: &str = "<r^2> = <r_c^2> + <R^2> = 2 l_B^2 (2n - m + 1)";
const SRC_OSC: &str = "H = H_osc + omega_L L_can: <H_osc> = (2n-m+1) omega_L, <H_Larmor> = m omega_L";
const SRC_NORM: &str = "normalized symmetric-gauge eigenfunction";
const SRC_ALGEBRA: &str = "exact operator identity (guiding-center algebra, reductions to H, Johnson-Lippmann)";
const SRC_CONSERVED: &str = "conserved operator: commutes with H";
const SRC_HERMITIAN: &str = "observable is Hermitian";
const SRC_ROUTES: &str = "quadrature and Fock routes agree";
const SRC_SIGN: &str = "sign of m follows r_c^2 vs R^2 (Johnson-Lippmann)";
const SRC_M_INDEP: &str = "mechanical and guiding-center OAMs depend on n only";
const SRC_DEGENERACY: &str = "interior degeneracy: one state per n_b with n + n_b <= cutoff - margin";
const SRC_CLASSICAL_GC: &str = "classical guiding center X = x - v_y/omega, Y = y + v_x/omega is conserved";
const SRC_SPEED: &str = "magnetic force does no work";
const SRC_MECH_ORIGIN: &str = "L_mech(origin) = r_c m_e v0 + m_e (X v_y - Y v_x)";
const SRC_PS_ORIGIN: &str = "L_ps(origin) = r_c m_e v0 / 2 - (eB/2)(X^2 + Y^2)";
const SRC_MECH_GC: &str = "L_mech(guiding center) = r_c m_e v0";
const SRC_PS_GC: &str = "L_ps(guiding center) = r_c m_e v0 / 2";
const SRC_AVG_MECH: &str = "one-period average <L_mech(origin)>_T = r_c m_e v0";
const SRC_RK4: &str = "RK4 reproduces the closed-form orbit";
const SRC_PS_RATE: &str = "dL_ps(origin)/dt = 0 along the equation of motion";

fn map_states<T, F>(run: &RunConfig, states: &[LandauQuantumNumbers], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(LandauQuantumNumbers) -> T + Sync,
{
    if run.parallel {
        states.par_iter().map(|&q| f(q)).collect()
    } else {
        states.iter().map(|&q| f(q)).collect()
    }
}

fn qn_inputs(qn: LandauQuantumNumbers) -> [(&'static str, f64); 2] {
    [("n", qn.n() as f64), ("m", qn.m() as f64)]
}

fn quadrature_sweep(
    run: &RunConfig,
    config: &PhysicalConfig,
    rule: &QuadratureRule,
    states: &[LandauQuantumNumbers],
) -> Vec<QuadratureExpectations> {
    map_states(run, states, |q| LandauState::new(q, *config).expectations(rule))
}

fn fock_value(
    qn: LandauQuantumNumbers,
    ops: &OperatorSet,
    proj: &InteriorProjector,
    id: impl Into<OperatorId>,
) -> (RouteValue, Option<String>) {
    match expectation_fock(qn, ops, proj, id) {
        Ok(v) => (RouteValue::new(Route::Fock, v), None),
        Err(e) => (RouteValue::missing(Route::Fock), Some(e.to_string())),
    }
}

struct Setup {
    config: PhysicalConfig,
    rule: QuadratureRule,
    proj: InteriorProjector,
    states: Vec<LandauQuantumNumbers>,
}

fn setup(run: &RunConfig) -> Result<Setup> {
    run.validate()?;
    Ok(Setup {
        config: run.physical()?,
        rule: run.rule()?,
        proj: interior_projector(run.cutoff, run.margin)?,
        states: run.grid(),
    })
}

/// Six OAM expectation values per state from both quantum routes against
/// the closed-form table.
pub fn cmd_table1(run: &RunConfig) -> Result<Report> {
    let s = setup(run)?;
    let ops = build_operator_set(&s.config, run.cutoff)?;
    let quad = quadrature_sweep(run, &s.config, &s.rule, &s.states);
    let mut records = Vec::new();
    for (qn, q) in s.states.iter().zip(&quad) {
        for spec in OamSpec::ALL {
            let (fock, note) = fock_value(*qn, &ops, &s.proj, spec);
            let rec = ReportRecord::compare(
                format!("table1 {}", spec.label()),
                &qn_inputs(*qn),
                spec.closed_form(*qn),
                SRC_OAM_TABLE,
                vec![RouteValue::new(Route::Quadrature, q.oam(spec)), fock],
                run.tolerances.expectation,
            );
            records.push(match note {
                Some(n) => rec.with_note(n),
                None => rec,
            });
        }
    }
    Ok(Report::new("table1", run.parameters(), records))
}

pub fn cmd_verify(run: &RunConfig) -> Result<Report> {
    let config = run.physical()?;
    run.validate()?;
    let ops = build_operator_set(&config, run.cutoff)?;
    cmd_verify_with(run, &ops)
}

/// The identity suite against a prebuilt operator set (which may carry
/// injected faults).
pub fn cmd_verify_with(run: &RunConfig, ops: &OperatorSet) -> Result<Report> {
    let s = setup(run)?;
    let tol = run.tolerances;
    let lb2 = s.config.magnetic_length().powi(2);
    let wl = s.config.omega_larmor();
    let mut records = Vec::new();

    let residual_record = |name: &str, src: &str, value: f64, tolerance: f64| {
        ReportRecord::with_residual(
            name,
            &[],
            0.0,
            src,
            vec![RouteValue::new(Route::Fock, value)],
            Some(value),
            tolerance,
        )
    };

    for r in conservation_checks(ops, &s.proj, tol.identity).residuals {
        records.push(residual_record(&r.name, SRC_CONSERVED, r.value, r.tolerance));
    }
    for r in identity_checks(ops, &s.proj, &s.config, tol.identity).residuals {
        records.push(residual_record(&r.name, SRC_ALGEBRA, r.value, r.tolerance));
    }
    for (id, op) in ops.iter() {
        if id.is_hermitian() {
            let h = if op.matrix.is_finite() {
                op.matrix.hermiticity_residual()
            } else {
                f64::INFINITY
            };
            records.push(residual_record(
                &format!("hermitian {}", op.label),
                SRC_HERMITIAN,
                h,
                tol.hermiticity,
            ));
        }
    }

    let quad = quadrature_sweep(run, &s.config, &s.rule, &s.states);
    for (qn, q) in s.states.iter().zip(&quad) {
        let inputs = qn_inputs(*qn);
        let n = qn.n() as f64;
        let m = qn.m() as f64;

        records.push(ReportRecord::compare(
            "norm",
            &inputs,
            1.0,
            SRC_NORM,
            vec![RouteValue::new(Route::Quadrature, q.norm)],
            tol.norm,
        ));

        for spec in OamSpec::ALL {
            let (fock, note) = fock_value(*qn, ops, &s.proj, spec);
            let qv = q.oam(spec);
            let residual = fock.value.map(|f| (f - qv).abs());
            let rec = ReportRecord::with_residual(
                format!("routes agree {}", spec.label()),
                &inputs,
                spec.closed_form(*qn),
                SRC_ROUTES,
                vec![RouteValue::new(Route::Quadrature, qv), fock],
                residual,
                tol.expectation,
            );
            records.push(match note {
                Some(n) => rec.with_note(n),
                None => rec,
            });
        }

        let (rc2, note_rc) = fock_value(*qn, ops, &s.proj, OperatorId::CyclotronRadiusSq);
        let (big_r2, note_r) = fock_value(*qn, ops, &s.proj, OperatorId::GuidingCenterRadiusSq);
        let mut rec = ReportRecord::compare(
            "radius r_c^2",
            &inputs,
            (2.0 * n + 1.0) * lb2,
            SRC_RADII,
            vec![rc2.clone()],
            tol.identity,
        );
        rec.note = note_rc;
        records.push(rec);
        let mut rec = ReportRecord::compare(
            "radius R^2",
            &inputs,
            (2.0 * n - 2.0 * m + 1.0) * lb2,
            SRC_RADII,
            vec![big_r2.clone()],
            tol.identity,
        );
        rec.note = note_r;
        records.push(rec);
        let fock_sum = match (rc2.value, big_r2.value) {
            (Some(a), Some(b)) => RouteValue::new(Route::Fock, a + b),
            _ => RouteValue::missing(Route::Fock),
        };
        records.push(ReportRecord::compare(
            "radius r^2 = r_c^2 + R^2",
            &inputs,
            2.0 * lb2 * (2.0 * n - m + 1.0),
            SRC_R2,
            vec![RouteValue::new(Route::Quadrature, q.r2), fock_sum],
            tol.expectation,
        ));

        records.push(ReportRecord::compare(
            "energy <H>",
            &inputs,
            s.config.omega() * (n + 0.5),
            SRC_SPECTRUM,
            vec![RouteValue::new(Route::Quadrature, q.energy.total)],
            tol.expectation,
        ));
        records.push(ReportRecord::compare(
            "energy <H_osc>",
            &inputs,
            (2.0 * n - m + 1.0) * wl,
            SRC_OSC,
            vec![RouteValue::new(Route::Quadrature, q.energy.oscillator)],
            tol.expectation,
        ));
        records.push(ReportRecord::compare(
            "energy <H_Larmor>",
            &inputs,
            m * wl,
            SRC_OSC,
            vec![RouteValue::new(Route::Quadrature, q.energy.larmor)],
            tol.expectation,
        ));

        let can = OamSpec::new(OamKind::Canonical, Axis::Origin);
        let (l_can, _) = fock_value(*qn, ops, &s.proj, can);
        let sign_ok = match (l_can.value, rc2.value, big_r2.value) {
            (Some(l), Some(a), Some(b)) => {
                let quad_ok = (q.oam(can) > 0.5) == (a > b);
                Some(if (l > 0.5) == (a > b) && quad_ok { 0.0 } else { 1.0 })
            }
            _ => None,
        };
        records.push(ReportRecord::with_residual(
            "sign L_can > 0 iff r_c^2 > R^2",
            &inputs,
            0.0,
            SRC_SIGN,
            vec![RouteValue::new(Route::Quadrature, q.oam(can)), l_can],
            sign_ok,
            tol.identity,
        ));
    }

    // m-independence at fixed n
    let m_free = [
        OamSpec::new(OamKind::Mechanical, Axis::Origin),
        OamSpec::new(OamKind::Canonical, Axis::GuidingCenter),
        OamSpec::new(OamKind::Mechanical, Axis::GuidingCenter),
        OamSpec::new(OamKind::Pseudo, Axis::GuidingCenter),
    ];
    for n in 0..=run.n_max {
        for spec in m_free {
            let values: Vec<f64> = s
                .states
                .iter()
                .zip(&quad)
                .filter(|(qn, _)| qn.n() == n)
                .map(|(_, q)| q.oam(spec))
                .collect();
            if values.is_empty() {
                continue;
            }
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            records.push(ReportRecord::with_residual(
                format!("m-independence {}", spec.label()),
                &[("n", n as f64)],
                spec.closed_form(LandauQuantumNumbers::new(n, n).expect("m = n is valid")),
                SRC_M_INDEP,
                vec![RouteValue::new(Route::Quadrature, hi)],
                Some(hi - lo),
                tol.expectation,
            ));
        }
    }

    Ok(Report::new("verify", run.parameters(), records))
}

/// Landau levels from the closed form, quadrature and interior Fock eigenvalues.
pub fn cmd_spectrum(run: &RunConfig) -> Result<Report> {
    let s = setup(run)?;
    let ops = build_operator_set(&s.config, run.cutoff)?;
    let levels = spectrum(&ops, &s.proj);
    let quad = quadrature_sweep(run, &s.config, &s.rule, &s.states);
    let mut records = Vec::new();
    for n in 0..=run.n_max {
        let expected = s.config.landau_energy(n)?;
        let worst_quad = s
            .states
            .iter()
            .zip(&quad)
            .filter(|(qn, _)| qn.n() == n)
            .map(|(_, q)| q.energy.total)
            .max_by(|a, b| (a - expected).abs().total_cmp(&(b - expected).abs()));
        let level = levels.iter().find(|l| l.n as i64 == n);
        let mut computed = Vec::new();
        if let Some(e) = worst_quad {
            computed.push(RouteValue::new(Route::Quadrature, e));
        }
        computed.push(match level {
            Some(l) => RouteValue::new(Route::Fock, l.energy),
            None => RouteValue::missing(Route::Fock),
        });
        let mut rec = ReportRecord::compare(
            "level energy",
            &[("n", n as f64)],
            expected,
            SRC_SPECTRUM,
            computed,
            run.tolerances.identity.max(run.tolerances.expectation),
        );
        if let (Some(l), Some(r)) = (level, rec.residual) {
            rec.residual = Some(r.max(l.spread));
            rec.pass = rec.residual.is_some_and(|r| r <= rec.tolerance);
        }
        records.push(rec);

        let limit = s.proj.limit() as i64;
        let want = (limit - n + 1).max(0) as f64;
        let got = level.map_or(0.0, |l| l.multiplicity as f64);
        records.push(ReportRecord::compare(
            "level multiplicity",
            &[("n", n as f64)],
            want,
            SRC_DEGENERACY,
            vec![RouteValue::new(Route::Fock, got)],
            0.5,
        ));
    }
    Ok(Report::new("spectrum", run.parameters(), records))
}

/// Column order of trajectory CSV files.
pub const TRAJECTORY_HEADER: &str = "t,x,y,vx,vy,L_mech_origin,L_ps_origin,L_mech_gc,L_ps_gc";

/// Trajectory as CSV with [`TRAJECTORY_HEADER`]; OAMs about the guiding
/// center of `ic`.
pub fn trajectory_csv(traj: &Trajectory, ic: &InitialConditions, config: &PhysicalConfig) -> String {
    let mut out = String::with_capacity(traj.states.len() * 160);
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for s in &traj.states {
        let _ = write!(out, "{},{},{},{},{}", s.t, s.x, s.y, s.vx, s.vy);
        for spec in CLASSICAL_SPECS {
            let l = classical_oam(s, ic, config, spec).expect("non-canonical spec");
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub struct ClassicalOutput {
    pub report: Report,
    pub initial: InitialConditions,
    pub closed_form: Trajectory,
    pub rk4: Trajectory,
}

impl ClassicalOutput {
    pub fn closed_form_csv(&self, config: &PhysicalConfig) -> String {
        trajectory_csv(&self.closed_form, &self.initial, config)
    }

    pub fn rk4_csv(&self, config: &PhysicalConfig) -> String {
        trajectory_csv(&self.rk4, &self.initial, config)
    }
}

fn max_over<I: Iterator<Item = f64>>(it: I) -> f64 {
    it.fold(0.0, f64::max)
}

/// One period of the orbit by closed form and RK4, with the four classical
/// OAMs checked against their closed-form values.
pub fn cmd_classical(run: &RunConfig, cl: &ClassicalRun) -> Result<ClassicalOutput> {
    run.validate()?;
    let config = run.physical()?;
    let tol = run.tolerances;
    let ic = InitialConditions::new(cl.x0, cl.y0, cl.vx0, cl.vy0);
    let omega = config.omega();
    let mass = config.mass();
    let eb = config.eb();
    let v0 = ic.speed();
    let rc = ic.cyclotron_radius(&config);
    let (gx, gy) = guiding_center(&ic, &config);
    let big_r2 = gx * gx + gy * gy;
    let l0 = rc * mass * v0;

    let t_period = period(&config);
    let dt = cl.dt.unwrap_or(t_period / 1000.0);
    let steps = ((t_period / dt).round() as usize).max(1);
    let rk4 = integrate_rk4(&ic, &config, dt, steps)?;
    let closed = Trajectory {
        states: rk4
            .states
            .iter()
            .map(|s| closed_form_state(&ic, &config, s.t))
            .collect(),
    };

    let oam = |s, spec| classical_oam(s, &ic, &config, spec).expect("non-canonical spec");
    let [mech_o, ps_o, mech_gc, ps_gc] = CLASSICAL_SPECS;
    let inputs = [("x0", cl.x0), ("y0", cl.y0), ("vx0", cl.vx0), ("vy0", cl.vy0)];
    let mut records = Vec::new();
    let pointwise = |records: &mut Vec<ReportRecord>,
                     name: &str,
                     src: &str,
                     expected: f64,
                     residual: f64,
                     tolerance: f64,
                     route: Route| {
        records.push(ReportRecord::with_residual(
            name,
            &inputs,
            expected,
            src,
            vec![RouteValue::new(route, expected + residual)],
            Some(residual),
            tolerance,
        ));
    };

    let cf = &closed.states;
    pointwise(
        &mut records,
        "guiding center conserved",
        SRC_CLASSICAL_GC,
        0.0,
        max_over(cf.iter().map(|s| {
            let (x, y) = s.guiding_center(&config);
            (x - gx).abs().max((y - gy).abs())
        })),
        tol.classical_exact,
        Route::ClassicalClosedForm,
    );
    pointwise(
        &mut records,
        "speed conserved",
        SRC_SPEED,
        0.0,
        max_over(cf.iter().map(|s| (s.speed() - v0).abs())),
        tol.classical_exact,
        Route::ClassicalClosedForm,
    );
    pointwise(
        &mut records,
        "L_mech_origin decomposition",
        SRC_MECH_ORIGIN,
        0.0,
        max_over(
            cf.iter()
                .map(|s| (oam(s, mech_o) - l0 - mass * (gx * s.vy - gy * s.vx)).abs()),
        ),
        tol.classical_exact,
        Route::ClassicalClosedForm,
    );
    let ps_o_expected = 0.5 * l0 - 0.5 * eb * big_r2;
    for (spec, expected, src) in [
        (ps_o, ps_o_expected, SRC_PS_ORIGIN),
        (mech_gc, l0, SRC_MECH_GC),
        (ps_gc, 0.5 * l0, SRC_PS_GC),
    ] {
        pointwise(
            &mut records,
            &format!("{} constant", spec.label()),
            src,
            expected,
            max_over(cf.iter().map(|s| (oam(s, spec) - expected).abs())),
            tol.classical_exact,
            Route::ClassicalClosedForm,
        );
    }
    pointwise(
        &mut records,
        "L_ps_gc = L_mech_gc / 2",
        SRC_PS_GC,
        0.0,
        max_over(cf.iter().map(|s| (oam(s, ps_gc) - 0.5 * oam(s, mech_gc)).abs())),
        tol.classical_exact,
        Route::ClassicalClosedForm,
    );

    let mut averages = Vec::new();
    for (spec, expected, src) in [
        (mech_o, l0, SRC_AVG_MECH),
        (ps_o, ps_o_expected, SRC_PS_ORIGIN),
        (mech_gc, l0, SRC_MECH_GC),
        (ps_gc, 0.5 * l0, SRC_PS_GC),
    ] {
        let avg = time_average_oam(&ic, &config, spec, cl.samples)?;
        averages.push((spec, avg));
        records.push(ReportRecord::compare(
            format!("time average {}", spec.label()),
            &inputs,
            expected,
            src,
            vec![RouteValue::new(Route::ClassicalClosedForm, avg)],
            tol.classical_average,
        ));
    }

    let scale = rc.max(v0);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let state_dev = max_over(rk4.states.iter().zip(cf).map(|(a, b)| {
        [(a.x - b.x), (a.y - b.y), (a.vx - b.vx), (a.vy - b.vy)]
            .into_iter()
            .fold(0.0, |m: f64, d| m.max(d.abs()))
    }));
    pointwise(
        &mut records,
        "rk4 vs closed form",
        SRC_RK4,
        0.0,
        state_dev / scale,
        tol.rk4_state,
        Route::ClassicalRk4,
    );
    let v_scale = if v0 > 0.0 { v0 } else { 1.0 };
    pointwise(
        &mut records,
        "rk4 speed drift",
        SRC_SPEED,
        0.0,
        max_over(rk4.states.iter().map(|s| (s.speed() - v0).abs())) / v_scale,
        tol.rk4_speed,
        Route::ClassicalRk4,
    );
    pointwise(
        &mut records,
        "rk4 guiding center drift",
        SRC_CLASSICAL_GC,
        0.0,
        max_over(rk4.states.iter().map(|s| {
            let (x, y) = s.guiding_center(&config);
            (x - gx).abs().max((y - gy).abs())
        })),
        tol.rk4_guiding_center,
        Route::ClassicalRk4,
    );
    let ps_series: Vec<f64> = rk4.states.iter().map(|s| oam(s, ps_o)).collect();
    let rate = max_over(ps_series.windows(3).map(|w| ((w[2] - w[0]) / (2.0 * dt)).abs()));
    let rate_scale = omega * l0;
    let rate_scale = if rate_scale > 0.0 { rate_scale } else { 1.0 };
    pointwise(
        &mut records,
        "rk4 dL_ps_origin/dt",
        SRC_PS_RATE,
        0.0,
        rate / rate_scale,
        tol.rk4_pseudo_rate,
        Route::ClassicalRk4,
    );

    let mut params = run.parameters();
    for k in ["n_max", "m_min", "cutoff", "margin", "quad_order", "azimuthal_points"] {
        params.remove(k);
    }
    params.insert("dt".into(), dt);
    params.insert("steps".into(), steps as f64);
    params.insert("samples".into(), cl.samples as f64);
    let mut report = Report::new("classical", params, records);
    report.extras.insert("X".into(), gx);
    report.extras.insert("Y".into(), gy);
    report.extras.insert("v0".into(), v0);
    report.extras.insert("alpha".into(), ic.alpha());
    report.extras.insert("r_c".into(), rc);
    report.extras.insert("period".into(), t_period);
    for (spec, avg) in averages {
        report.extras.insert(format!("average {}", spec.label()), avg);
    }
    Ok(ClassicalOutput {
        report,
        initial: ic,
        closed_form: closed,
        rk4,
    })
}
