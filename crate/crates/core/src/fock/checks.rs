use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::operators::{FockBasisState, OperatorId, OperatorSet};
use crate::error::{Error, Result};
use crate::model::{Axis, LandauQuantumNumbers, OamKind, OamSpec, PhysicalConfig};

/// Basis states with `n_a + n_b <= cutoff - margin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorProjector {
    cutoff: usize,
    margin: usize,
    indices: Vec<usize>,
}

impl InteriorProjector {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Largest `n_a + n_b` inside the block.
    pub fn limit(&self) -> usize {
        self.cutoff - self.margin
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, state: FockBasisState) -> bool {
        state.n_a + state.n_b <= self.limit()
    }

    /// `max |(P M P)_{ij}|`.
    pub fn residual(&self, m: &ComplexMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for &i in &self.indices {
            for &j in &self.indices {
                worst = worst.max(m.get(i, j).norm());
            }
        }
        worst
    }

    fn check_state(&self, state: FockBasisState) -> Result<usize> {
        if self.contains(state) {
            Ok(state.index(self.cutoff))
        } else {
            Err(Error::OutsideInterior {
                n_a: state.n_a,
                n_b: state.n_b,
                limit: self.limit(),
            })
        }
    }
}

pub fn interior_projector(cutoff: usize, margin: usize) -> Result<InteriorProjector> {
    if margin == 0 || margin >= cutoff {
        return Err(Error::InvalidMargin { cutoff, margin });
    }
    let limit = cutoff - margin;
    let mut indices = Vec::new();
    for n_a in 0..=cutoff {
        for n_b in 0..=cutoff {
            let s = FockBasisState { n_a, n_b };
            if n_a + n_b <= limit {
                indices.push(s.index(cutoff));
            }
        }
    }
    Ok(InteriorProjector {
        cutoff,
        margin,
        indices,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Residual {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residuals: Vec<Residual>,
}

impl ResidualReport {
    fn push(&mut self, name: &str, value: f64, tolerance: f64) {
        self.residuals.push(Residual {
            name: name.to_string(),
            value,
            tolerance,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.residuals.iter().all(Residual::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }
}

fn oam(ops: &OperatorSet, kind: OamKind, axis: Axis) -> &ComplexMatrix {
    ops.matrix(OperatorId::Oam(OamSpec::new(kind, axis)))
}

/// Interior residuals of the commutators with H that must vanish; tolerance
/// `tol_scale · ω`.
pub fn conservation_checks(ops: &OperatorSet, proj: &InteriorProjector, tol_scale: f64) -> ResidualReport {
    let h = ops.matrix(OperatorId::Hamiltonian);
    let tol = tol_scale * ops.config().omega();
    let mut report = ResidualReport::default();
    let items: [(&str, &ComplexMatrix); 7] = [
        ("[X,H]", ops.matrix(OperatorId::GuideX)),
        ("[Y,H]", ops.matrix(OperatorId::GuideY)),
        ("[R^2,H]", ops.matrix(OperatorId::GuidingCenterRadiusSq)),
        ("[L_ps_origin,H]", oam(ops, OamKind::Pseudo, Axis::Origin)),
        ("[L_can_origin,H]", oam(ops, OamKind::Canonical, Axis::Origin)),
        ("[L_mech_gc,H]", oam(ops, OamKind::Mechanical, Axis::GuidingCenter)),
        ("[L_ps_gc,H]", oam(ops, OamKind::Pseudo, Axis::GuidingCenter)),
    ];
    for (name, m) in items {
        report.push(name, proj.residual(&m.commutator(h)), tol);
    }
    report
}

/// Interior residuals of the exact operator identities (canonical
/// commutators, guiding-center reductions, Johnson–Lippmann, radii).
pub fn identity_checks(
    ops: &OperatorSet,
    proj: &InteriorProjector,
    config: &PhysicalConfig,
    tolerance: f64,
) -> ResidualReport {
    let dim = ops.dim();
    let id = ComplexMatrix::identity(dim);
    let lb2 = config.magnetic_length().powi(2);
    let eb = config.eb();
    let omega = config.omega();
    let m = |i: OperatorId| ops.matrix(i);

    let a = m(OperatorId::A);
    let b = m(OperatorId::B);
    let h = m(OperatorId::Hamiltonian);
    let r2 = m(OperatorId::RadiusSq);
    let rc2 = m(OperatorId::CyclotronRadiusSq);
    let big_r2 = m(OperatorId::GuidingCenterRadiusSq);
    let l_can = oam(ops, OamKind::Canonical, Axis::Origin);
    let l_mech = oam(ops, OamKind::Mechanical, Axis::Origin);
    let l_ps = oam(ops, OamKind::Pseudo, Axis::Origin);
    let gc_can = oam(ops, OamKind::Canonical, Axis::GuidingCenter);
    let gc_mech = oam(ops, OamKind::Mechanical, Axis::GuidingCenter);
    let gc_ps = oam(ops, OamKind::Pseudo, Axis::GuidingCenter);
    let pi_x = m(OperatorId::PiX);
    let pi_y = m(OperatorId::PiY);

    let mut report = ResidualReport::default();
    let mut push = |name: &str, residual: ComplexMatrix| {
        report.push(name, proj.residual(&residual), tolerance);
    };

    push("[a,a+]-1", &a.commutator(&a.adjoint()) - &id);
    push("[b,b+]-1", &b.commutator(&b.adjoint()) - &id);
    push("[a,b]", a.commutator(b));
    push("[a,b+]", a.commutator(&b.adjoint()));
    push(
        "[X,Y]-i*l_B^2",
        &m(OperatorId::GuideX).commutator(m(OperatorId::GuideY)) - &id.scale(Complex64::new(0.0, lb2)),
    );
    push(
        "[Pi_x,Pi_y]+i*eB",
        &pi_x.commutator(pi_y) + &id.scale(Complex64::new(0.0, eb)),
    );
    push("L_mech_gc-(2/w)H", gc_mech - &h.scale_real(2.0 / omega));
    push("L_ps_gc-(1/w)H", gc_ps - &h.scale_real(1.0 / omega));
    let can_rhs = &(&h.scale_real(2.0 / omega) - &l_can.scale_real(0.5)) - &r2.scale_real(0.25 * eb);
    push("L_can_gc-[(2/w)H-L_can/2-(eB/4)r^2]", gc_can - &can_rhs);
    push(
        "Johnson-Lippmann",
        l_can - &(rc2 - big_r2).scale_real(1.0 / (2.0 * lb2)),
    );
    let na = &a.adjoint() * a;
    let nb = &b.adjoint() * b;
    push(
        "r_c^2-l_B^2(2a+a+1)",
        rc2 - &(&na.scale_real(2.0) + &id).scale_real(lb2),
    );
    push(
        "R^2-l_B^2(2b+b+1)",
        big_r2 - &(&nb.scale_real(2.0) + &id).scale_real(lb2),
    );
    push("L_ps-[L_mech-(eB/2)r^2]", l_ps - &(l_mech - &r2.scale_real(0.5 * eb)));
    push("L_ps-L_can", l_ps - l_can);
    let rel_x = m(OperatorId::PosX) - m(OperatorId::GuideX);
    let rel_y = m(OperatorId::PosY) - m(OperatorId::GuideY);
    let lhs = &(&rel_x * pi_y) - &(&rel_y * pi_x);
    let rhs = (&(pi_x * pi_x) + &(pi_y * pi_y)).scale_real(1.0 / eb);
    push("(x-X)Pi_y-(y-Y)Pi_x-Pi^2/(eB)", &lhs - &rhs);
    report
}

/// `<n_a, n_b| M |n_a, n_b>` for the basis ket of `qn`; the ket must lie in
/// the interior block.
pub fn expectation_fock(
    qn: LandauQuantumNumbers,
    ops: &OperatorSet,
    proj: &InteriorProjector,
    target: impl Into<OperatorId>,
) -> Result<f64> {
    let state = FockBasisState::from_quantum_numbers(qn);
    let k = proj.check_state(state)?;
    Ok(ops.matrix(target.into()).get(k, k).re)
}

/// One Landau level found among the interior eigenvalues of H.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    pub n: usize,
    pub energy: f64,
    pub multiplicity: usize,
    /// Largest distance of a clustered eigenvalue from `energy`.
    pub spread: f64,
}

/// Eigenvalues of `P H P` restricted to the interior block, grouped by the
/// nearest Landau level.
pub fn spectrum(ops: &OperatorSet, proj: &InteriorProjector) -> Vec<SpectrumLevel> {
    let h = ops.matrix(OperatorId::Hamiltonian);
    let n = proj.rank();
    let block = DMatrix::<Complex64>::from_fn(n, n, |i, j| h.get(proj.indices[i], proj.indices[j]));
    let eig = block.symmetric_eigenvalues();
    let omega = ops.config().omega();
    let mut levels: Vec<SpectrumLevel> = Vec::new();
    let mut values: Vec<f64> = eig.iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    for e in values {
        let level = (e / omega - 0.5).round().max(0.0) as usize;
        match levels.iter_mut().find(|l| l.n == level) {
            Some(l) => {
                l.multiplicity += 1;
                l.spread = l.spread.max((e - l.energy).abs());
            }
            None => levels.push(SpectrumLevel {
                n: level,
                energy: e,
                multiplicity: 1,
                spread: 0.0,
            }),
        }
    }
    levels.sort_by_key(|l| l.n);
    levels
}

#[cfg(test)]
mod tests {
    use super::super::operators::build_operator_set;
    use super::*;

    #[test]
    fn projector_rank_and_errors() {
        // n_a + n_b <= 16: 17·18/2
        assert_eq!(interior_projector(20, 4).unwrap().rank(), 153);
        assert_eq!(
            interior_projector(4, 4),
            Err(Error::InvalidMargin { cutoff: 4, margin: 4 })
        );
        assert!(interior_projector(10, 0).is_err());
        let p = interior_projector(10, 2).unwrap();
        assert_eq!(p.rank(), 9 * 10 / 2);
        assert!(p.contains(FockBasisState { n_a: 8, n_b: 0 }));
        assert!(!p.contains(FockBasisState { n_a: 8, n_b: 1 }));
    }

    #[test]
    fn checks_pass_on_small_basis() {
        let c = crate::model::make_config(1.7, 0.9, 1.3).unwrap();
        let ops = build_operator_set(&c, 10).unwrap();
        let proj = interior_projector(10, 4).unwrap();
        let cons = conservation_checks(&ops, &proj, 1e-10);
        assert!(cons.all_passed(), "{cons:?}");
        let ids = identity_checks(&ops, &proj, &c, 1e-10);
        assert!(ids.all_passed(), "{ids:?}");
    }

    #[test]
    fn truncation_edge_is_visible_without_projector() {
        let c = PhysicalConfig::default();
        let ops = build_operator_set(&c, 6).unwrap();
        let a = ops.matrix(OperatorId::A);
        let full = (&a.commutator(&a.adjoint()) - &ComplexMatrix::identity(ops.dim())).max_abs();
        assert!(full > 1.0, "top shell should break [a, a+] = 1");
    }

    #[test]
    fn expectation_examples() {
        let c = PhysicalConfig::default();
        let ops = build_operator_set(&c, 20).unwrap();
        let proj = interior_projector(20, 4).unwrap();
        let q = |n, m| LandauQuantumNumbers::new(n, m).unwrap();
        let spec = OamSpec::new(OamKind::Canonical, Axis::GuidingCenter);
        assert!((expectation_fock(q(3, 0), &ops, &proj, spec).unwrap() - 3.5).abs() < 1e-10);
        let rc2 = expectation_fock(q(0, -4), &ops, &proj, OperatorId::CyclotronRadiusSq).unwrap();
        assert!((rc2 - 1.0).abs() < 1e-10);
        let big = expectation_fock(q(0, -4), &ops, &proj, OperatorId::GuidingCenterRadiusSq).unwrap();
        assert!((big - 9.0).abs() < 1e-10);
        assert_eq!(
            expectation_fock(q(9, 0), &ops, &proj, OperatorId::Hamiltonian),
            Err(Error::OutsideInterior {
                n_a: 9,
                n_b: 9,
                limit: 16
            })
        );
    }

    #[test]
    fn spectrum_multiplicities() {
        let c = crate::model::make_config(2.0, 1.0, 1.0).unwrap();
        let ops = build_operator_set(&c, 8).unwrap();
        let proj = interior_projector(8, 3).unwrap();
        let levels = spectrum(&ops, &proj);
        assert_eq!(levels.len(), 6);
        for l in &levels {
            assert_eq!(l.multiplicity, 5 - l.n + 1);
            assert!((l.energy - 2.0 * (l.n as f64 + 0.5)).abs() < 1e-10);
            assert!(l.spread < 1e-10);
        }
    }

    #[test]
    fn perturbed_hamiltonian_breaks_conservation_only() {
        let c = PhysicalConfig::default();
        let mut ops = build_operator_set(&c, 10).unwrap();
        let proj = interior_projector(10, 4).unwrap();
        let k = FockBasisState { n_a: 1, n_b: 1 }.index(10);
        ops.perturb(OperatorId::Hamiltonian, k, k, Complex64::new(1e-6, 0.0));
        let cons = conservation_checks(&ops, &proj, 1e-10);
        assert!(!cons.get("[X,H]").unwrap().passed());
        let ids = identity_checks(&ops, &proj, &c, 1e-10);
        assert!(ids.get("Johnson-Lippmann").unwrap().passed());
    }
}
