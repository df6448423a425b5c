//! The verification report must notice a corrupted operator and only in the
//! checks that depend on it.

use landau_oam::fock::{build_operator_set, FockBasisState, OperatorId};
use landau_oam::report::{cmd_verify, cmd_verify_with, Report, RunConfig};
use landau_oam::LandauQuantumNumbers;
use num_complex::Complex64;

fn record_pass(report: &Report, check: &str) -> bool {
    report
        .records
        .iter()
        .find(|r| r.check == check)
        .unwrap_or_else(|| panic!("no record {check}"))
        .pass
}

fn small_run() -> RunConfig {
    RunConfig {
        n_max: 2,
        m_min: -2,
        ..RunConfig::default()
    }
}

#[test]
fn perturbed_hamiltonian_breaks_conservation_only() {
    let run = small_run();
    let config = run.physical().unwrap();
    let mut ops = build_operator_set(&config, run.cutoff).unwrap();
    let clean = cmd_verify_with(&run, &ops).unwrap();
    assert!(clean.pass);
    assert_eq!(clean, cmd_verify(&run).unwrap());

    let k = FockBasisState::from_quantum_numbers(LandauQuantumNumbers::new(1, 0).unwrap()).index(run.cutoff);
    ops.perturb(OperatorId::Hamiltonian, k, k, Complex64::new(1e-6, 0.0));
    let report = cmd_verify_with(&run, &ops).unwrap();

    assert!(!report.pass);
    assert_eq!(report.exit_code(), 1);
    assert!(!record_pass(&report, "[X,H]"));
    assert!(!record_pass(&report, "[Y,H]"));
    assert!(!record_pass(&report, "L_mech_gc-(2/w)H"));
    assert!(record_pass(&report, "Johnson-Lippmann"));
    assert!(record_pass(&report, "[X,Y]-i*l_B^2"));
    assert!(record_pass(&report, "[a,a+]-1"));
}

#[test]
fn off_diagonal_perturbation_breaks_hermiticity() {
    let run = small_run();
    let config = run.physical().unwrap();
    let mut ops = build_operator_set(&config, run.cutoff).unwrap();
    ops.perturb(OperatorId::GuideX, 0, 1, Complex64::new(0.0, 1e-9));
    let report = cmd_verify_with(&run, &ops).unwrap();
    let herm = report.records.iter().find(|r| r.check == "hermitian X").unwrap();
    assert!(!herm.pass, "{herm:?}");
    assert!(record_pass(&report, "Johnson-Lippmann"));
}

#[test]
fn failing_records_still_produce_full_report() {
    let mut run = small_run();
    run.tolerances = landau_oam::report::Tolerances::uniform(1e-16);
    let report = cmd_verify(&run).unwrap();
    assert!(!report.pass);
    assert_eq!(report.summary.total, report.records.len());
    assert!(report.summary.passed > 0 && report.summary.failed > 0);
    for r in &report.records {
        assert_eq!(r.pass, r.residual.is_some_and(|v| v <= r.tolerance));
    }
}
