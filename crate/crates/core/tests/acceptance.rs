//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values are computed here from the closed forms, not taken
//! from the library.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use landau_oam::classical::{
    classical_oam, closed_form_state, guiding_center, integrate_rk4, period, time_average_oam, InitialConditions,
};
use landau_oam::fock::{
    build_operator_set, conservation_checks, expectation_fock, identity_checks, interior_projector, OperatorId,
};
use landau_oam::quadrature::QuadratureRule;
use landau_oam::special::{assoc_laguerre, LaguerreParams};
use landau_oam::wavefunction::{expectation_energy, expectation_oam, expectation_r2, norm_check, LandauState};
use landau_oam::{Axis, LandauQuantumNumbers, OamKind, OamSpec, PhysicalConfig};
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N_MAX: i64 = 5;
const M_MIN: i64 = -5;
const CUTOFF: usize = 20;
const MARGIN: usize = 4;

struct Outcome {
    detail: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            detail: String::new(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, what: impl FnOnce() -> String, residual: f64, tol: f64) {
        if residual.is_nan() || residual > tol {
            self.failures
                .push(format!("{} residual {residual:.3e} > {tol:.0e}", what()));
        }
    }
}

fn grid() -> Vec<LandauQuantumNumbers> {
    LandauQuantumNumbers::grid(N_MAX, M_MIN)
}

fn unit() -> PhysicalConfig {
    PhysicalConfig::new(1.0, 1.0, 1.0).unwrap()
}

fn spec(kind: OamKind, axis: Axis) -> OamSpec {
    OamSpec::new(kind, axis)
}

/// Closed-form OAM table at ω = 1 in the order can/mech/ps about origin, then GC.
fn table1_row(n: i64, m: i64) -> [(OamSpec, f64); 6] {
    let n = n as f64;
    let m = m as f64;
    [
        (spec(OamKind::Canonical, Axis::Origin), m),
        (spec(OamKind::Mechanical, Axis::Origin), 2.0 * n + 1.0),
        (spec(OamKind::Pseudo, Axis::Origin), m),
        (spec(OamKind::Canonical, Axis::GuidingCenter), (2.0 * n + 1.0) / 2.0),
        (spec(OamKind::Mechanical, Axis::GuidingCenter), 2.0 * n + 1.0),
        (spec(OamKind::Pseudo, Axis::GuidingCenter), (2.0 * n + 1.0) / 2.0),
    ]
}

fn criterion_table1() -> Outcome {
    let mut out = Outcome::new();
    let config = unit();
    let rule = QuadratureRule::default();
    let ops = build_operator_set(&config, CUTOFF).unwrap();
    let proj = interior_projector(CUTOFF, MARGIN).unwrap();
    let mut worst: f64 = 0.0;
    for qn in grid() {
        for (s, expected) in table1_row(qn.n(), qn.m()) {
            let quad = expectation_oam(qn, &config, s, &rule);
            let fock = expectation_fock(qn, &ops, &proj, s).unwrap();
            for (route, v) in [("quadrature", quad), ("fock", fock)] {
                let r = (v - expected).abs();
                worst = worst.max(r);
                out.check(|| format!("{route} {} n={} m={}", s.label(), qn.n(), qn.m()), r, 1e-8);
            }
        }
    }
    out.detail = format!("{} states x 6 OAMs x 2 routes, max residual {worst:.2e}", grid().len());
    out
}

fn criterion_radii() -> Outcome {
    let mut out = Outcome::new();
    let config = unit();
    let lb2 = config.magnetic_length().powi(2);
    let rule = QuadratureRule::default();
    let ops = build_operator_set(&config, CUTOFF).unwrap();
    let proj = interior_projector(CUTOFF, MARGIN).unwrap();
    let (mut worst_fock, mut worst_quad): (f64, f64) = (0.0, 0.0);
    for qn in grid() {
        let (n, m) = (qn.n() as f64, qn.m() as f64);
        let rc2 = (2.0 * n + 1.0) * lb2;
        let big_r2 = (2.0 * n - 2.0 * m + 1.0) * lb2;
        let f_rc2 = expectation_fock(qn, &ops, &proj, OperatorId::CyclotronRadiusSq).unwrap();
        let f_r2 = expectation_fock(qn, &ops, &proj, OperatorId::GuidingCenterRadiusSq).unwrap();
        let q_r2 = expectation_r2(qn, &config, &rule);
        let r1 = (f_rc2 - rc2).abs();
        let r2 = (f_r2 - big_r2).abs();
        let r3 = (q_r2 - (rc2 + big_r2)).abs();
        worst_fock = worst_fock.max(r1).max(r2);
        worst_quad = worst_quad.max(r3);
        out.check(|| format!("fock r_c^2 n={n} m={m}"), r1, 1e-10);
        out.check(|| format!("fock R^2 n={n} m={m}"), r2, 1e-10);
        out.check(|| format!("quadrature r^2 n={n} m={m}"), r3, 1e-8);
    }
    out.detail = format!("fock max {worst_fock:.2e}, quadrature max {worst_quad:.2e}");
    out
}

fn criterion_identities() -> Outcome {
    let mut out = Outcome::new();
    let config = unit();
    let ops = build_operator_set(&config, CUTOFF).unwrap();
    let proj = interior_projector(CUTOFF, MARGIN).unwrap();
    let ids = identity_checks(&ops, &proj, &config, 1e-10);
    let cons = conservation_checks(&ops, &proj, 1e-10);
    let required = [
        "[X,Y]-i*l_B^2",
        "[X,H]",
        "[Y,H]",
        "[R^2,H]",
        "[L_ps_origin,H]",
        "Johnson-Lippmann",
        "L_mech_gc-(2/w)H",
        "L_ps_gc-(1/w)H",
        "L_can_gc-[(2/w)H-L_can/2-(eB/4)r^2]",
    ];
    let mut worst: f64 = 0.0;
    for name in required {
        match ids.get(name).or_else(|| cons.get(name)) {
            Some(r) => {
                worst = worst.max(r.value);
                out.check(|| name.to_string(), r.value, 1e-10);
            }
            None => out.failures.push(format!("{name} missing from the identity suite")),
        }
    }
    // The interior diagonal of H is ω(n_a + 1/2) with n_a = n.
    for qn in grid() {
        let e = expectation_fock(qn, &ops, &proj, OperatorId::Hamiltonian).unwrap();
        let r = (e - (qn.n() as f64 + 0.5)).abs();
        worst = worst.max(r);
        out.check(|| format!("<H> n={} m={}", qn.n(), qn.m()), r, 1e-10);
    }
    out.detail = format!(
        "{} identities, interior rank {}, max residual {worst:.2e}",
        required.len(),
        proj.rank()
    );
    out
}

fn criterion_energy() -> Outcome {
    let mut out = Outcome::new();
    let rule = QuadratureRule::default();
    let mut worst: f64 = 0.0;
    for (b, mass) in [(1.0, 1.0), (2.0, 1.0), (3.0, 1.5)] {
        let config = PhysicalConfig::new(b, 1.0, mass).unwrap();
        let omega = b / mass;
        let wl = omega / 2.0;
        for qn in grid() {
            let (n, m) = (qn.n() as f64, qn.m() as f64);
            let e = expectation_energy(qn, &config, &rule);
            let checks = [
                ("<H>", e.total, omega * (n + 0.5)),
                ("<H_osc>", e.oscillator, (2.0 * n - m + 1.0) * wl),
                ("<H_Larmor>", e.larmor, m * wl),
            ];
            for (what, got, want) in checks {
                let r = (got - want).abs();
                worst = worst.max(r);
                out.check(|| format!("{what} B={b} m_e={mass} n={n} m={m}"), r, 1e-8);
            }
        }
    }
    out.detail = format!("3 field/mass settings, max residual {worst:.2e}");
    out
}

fn criterion_classical() -> Outcome {
    let mut out = Outcome::new();
    let config = unit();
    let (omega, eb, mass) = (config.omega(), config.eb(), config.mass());
    let mech_o = spec(OamKind::Mechanical, Axis::Origin);
    let ps_o = spec(OamKind::Pseudo, Axis::Origin);
    let mech_gc = spec(OamKind::Mechanical, Axis::GuidingCenter);
    let ps_gc = spec(OamKind::Pseudo, Axis::GuidingCenter);
    let t_period = 2.0 * PI / omega;

    // Case A: unit orbit centred on the origin.
    let a = InitialConditions::new(0.0, -1.0, 1.0, 0.0);
    let (v0, rc) = (1.0, 1.0 / omega);
    let lm = rc * mass * v0;
    for k in 0..=200 {
        let t = t_period * k as f64 / 200.0;
        let s = closed_form_state(&a, &config, t);
        for (sp, want) in [(mech_o, lm), (ps_o, lm / 2.0), (mech_gc, lm), (ps_gc, lm / 2.0)] {
            let got = classical_oam(&s, &a, &config, sp).unwrap();
            out.check(|| format!("case A {} t={t:.4}", sp.label()), (got - want).abs(), 1e-12);
        }
    }

    // Case B: guiding center (3, 4), unit speed.
    let b = InitialConditions::new(3.0, 3.0, 1.0, 0.0);
    let (gx, gy) = guiding_center(&b, &config);
    out.check(
        || "case B guiding center".into(),
        (gx - 3.0).abs().max((gy - 4.0).abs()),
        1e-12,
    );
    let avg = time_average_oam(&b, &config, mech_o, 1000).unwrap();
    out.check(|| "case B <L_mech_origin>_T".into(), (avg - lm).abs(), 1e-9);
    let ps_const = 0.5 * rc * mass * v0 - 0.5 * eb * (3.0f64 * 3.0 + 4.0 * 4.0);
    let mut worst_ps: f64 = 0.0;
    for k in 0..=200 {
        let t = t_period * k as f64 / 200.0;
        let got = classical_oam(&closed_form_state(&b, &config, t), &b, &config, ps_o).unwrap();
        worst_ps = worst_ps.max((got - ps_const).abs());
    }
    out.check(|| "case B L_ps_origin constant".into(), worst_ps, 1e-12);

    // RK4 over one period at dt = T/1000.
    let steps = 1000;
    let dt = period(&config) / steps as f64;
    let traj = integrate_rk4(&b, &config, dt, steps).unwrap();
    let mut worst_state: f64 = 0.0;
    for s in &traj.states {
        let c = closed_form_state(&b, &config, s.t);
        let d = [s.x - c.x, s.y - c.y, s.vx - c.vx, s.vy - c.vy];
        worst_state = d.iter().fold(worst_state, |acc, v| acc.max(v.abs()));
    }
    out.check(|| "RK4 vs closed form".into(), worst_state, 1e-9 * rc.max(v0));

    // Central differences of L_ps_origin along the RK4 samples.
    let l: Vec<f64> = traj
        .states
        .iter()
        .map(|s| classical_oam(s, &b, &config, ps_o).unwrap())
        .collect();
    let worst_rate = (1..l.len() - 1)
        .map(|i| ((l[i + 1] - l[i - 1]) / (2.0 * dt)).abs())
        .fold(0.0f64, f64::max);
    out.check(
        || "RK4 dL_ps_origin/dt".into(),
        worst_rate,
        1e-6 * omega * rc * mass * v0,
    );

    out.detail = format!(
        "case B L_ps_origin = {ps_const}, <L_mech_origin>_T err {:.2e}, RK4 err {worst_state:.2e}, max |dL_ps/dt| {worst_rate:.2e}",
        (avg - lm).abs()
    );
    out
}

fn laguerre_exact(p: u64, k: u64, z: &BigRational) -> BigRational {
    let binom = |n: u64, r: u64| -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..r {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    };
    let mut sum = BigRational::zero();
    let mut zpow = BigRational::one();
    let mut fact = BigInt::one();
    for j in 0..=p {
        if j > 0 {
            zpow *= z;
            fact *= BigInt::from(j);
        }
        let term = BigRational::from_integer(binom(p + k, p - j)) * &zpow / BigRational::from_integer(fact.clone());
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

fn criterion_properties() -> Outcome {
    let mut out = Outcome::new();
    let config = unit();
    let rule = QuadratureRule::default();
    let ops = build_operator_set(&config, CUTOFF).unwrap();
    let proj = interior_projector(CUTOFF, MARGIN).unwrap();
    let lb = config.magnetic_length();

    // Normalization.
    let mut worst_norm: f64 = 0.0;
    for qn in grid() {
        let r = (norm_check(qn, &config, &rule) - 1.0).abs();
        worst_norm = worst_norm.max(r);
        out.check(|| format!("norm n={} m={}", qn.n(), qn.m()), r, 1e-10);
    }

    // Laguerre recurrence against the exact series.
    let mut worst_lag: f64 = 0.0;
    for p in 0..=12u64 {
        for k in 0..=10u64 {
            for q in 1..=60i64 {
                let z = BigRational::new(BigInt::from(q), BigInt::from(4));
                let exact = laguerre_exact(p, k, &z).to_f64().unwrap();
                let got = assoc_laguerre(LaguerreParams::new(p, k), q as f64 / 4.0).unwrap();
                // Exact rational roots (e.g. L^k_1 at z = k + 1) are compared absolutely.
                let r = (got - exact).abs() / if exact == 0.0 { 1.0 } else { exact.abs() };
                worst_lag = worst_lag.max(r);
                out.check(|| format!("L^{k}_{p}({})", q as f64 / 4.0), r, 1e-10);
            }
        }
    }

    // Analytic radial derivative against central differences.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a9d_a0a1);
    let h = 1e-5 * lb;
    let mut worst_fd: f64 = 0.0;
    for qn in grid() {
        let state = LandauState::new(qn, config);
        for _ in 0..20 {
            let r = rng.random_range(0.05..6.0) * lb;
            let phi = rng.random_range(0.0..2.0 * PI);
            let analytic = state.dpsi_dr(r, phi).unwrap();
            let fd = (state.psi(r + h, phi).unwrap() - state.psi(r - h, phi).unwrap()) / (2.0 * h);
            let scale = analytic.norm().max(state.psi(r, phi).unwrap().norm() / lb);
            let rel = (analytic - fd).norm() / scale;
            worst_fd = worst_fd.max(rel);
            out.check(|| format!("d/dr psi n={} m={} r={r:.4}", qn.n(), qn.m()), rel, 1e-6);
        }
    }

    // m-independence of the mechanical and guiding-center OAMs.
    let m_free = [
        spec(OamKind::Mechanical, Axis::Origin),
        spec(OamKind::Canonical, Axis::GuidingCenter),
        spec(OamKind::Mechanical, Axis::GuidingCenter),
        spec(OamKind::Pseudo, Axis::GuidingCenter),
    ];
    let mut worst_spread: f64 = 0.0;
    for n in 0..=N_MAX {
        let level: Vec<LandauQuantumNumbers> = grid().into_iter().filter(|q| q.n() == n).collect();
        for s in m_free {
            for route in ["quadrature", "fock"] {
                let vals: Vec<f64> = level
                    .iter()
                    .map(|&qn| match route {
                        "quadrature" => expectation_oam(qn, &config, s, &rule),
                        _ => expectation_fock(qn, &ops, &proj, s).unwrap(),
                    })
                    .collect();
                let hi = vals.iter().copied().fold(f64::MIN, f64::max);
                let lo = vals.iter().copied().fold(f64::MAX, f64::min);
                worst_spread = worst_spread.max(hi - lo);
                out.check(|| format!("{route} {} spread n={n}", s.label()), hi - lo, 1e-8);
            }
        }
    }

    // Sign of <L_can> follows r_c^2 > R^2.
    let mut sign_states = 0;
    for qn in grid() {
        let l_can = expectation_oam(qn, &config, spec(OamKind::Canonical, Axis::Origin), &rule);
        let rc2 = expectation_fock(qn, &ops, &proj, OperatorId::CyclotronRadiusSq).unwrap();
        let big_r2 = expectation_fock(qn, &ops, &proj, OperatorId::GuidingCenterRadiusSq).unwrap();
        let half_gap = 0.5 * lb * lb;
        let l_pos = l_can > 0.5;
        let l_zero = l_can.abs() < 0.5;
        let r_pos = rc2 - big_r2 > half_gap;
        let r_zero = (rc2 - big_r2).abs() < half_gap;
        if l_pos != r_pos || l_zero != r_zero {
            out.failures.push(format!(
                "sign mismatch n={} m={}: L_can {l_can}, r_c^2 {rc2}, R^2 {big_r2}",
                qn.n(),
                qn.m()
            ));
        }
        sign_states += 1;
    }

    out.detail = format!(
        "norm {worst_norm:.1e}, Laguerre rel {worst_lag:.1e}, d/dr rel {worst_fd:.1e}, m-spread {worst_spread:.1e}, sign {sign_states} states"
    );
    out
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        (
            "1 OAM table reproduction",
            criterion_table1,
            Some(Duration::from_secs(10)),
        ),
        ("2 radii formulas", criterion_radii, None),
        (
            "3 operator identity suite",
            criterion_identities,
            Some(Duration::from_secs(5)),
        ),
        ("4 energy decomposition", criterion_energy, None),
        ("5 classical suite", criterion_classical, Some(Duration::from_secs(2))),
        ("6 property suites", criterion_properties, None),
    ];
    let mut all_ok = true;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = budget {
            if elapsed > limit {
                outcome.failures.push(format!(
                    "runtime {:.2} s over the {} s target",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                ));
            }
        }
        let ok = outcome.failures.is_empty();
        all_ok &= ok;
        println!(
            "criterion {name}: {} ({}; {:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
        if outcome.failures.len() > 10 {
            println!("    ... {} more", outcome.failures.len() - 10);
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
