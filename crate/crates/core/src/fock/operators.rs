use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::model::{LandauQuantumNumbers, OamSpec, PhysicalConfig};

pub const MIN_CUTOFF: usize = 4;

/// Basis ket `|n_a, n_b>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FockBasisState {
    pub n_a: usize,
    pub n_b: usize,
}

impl FockBasisState {
    /// `n_a = n`, `n_b = n - m`.
    pub fn from_quantum_numbers(qn: LandauQuantumNumbers) -> Self {
        Self {
            n_a: qn.n() as usize,
            n_b: (qn.n() - qn.m()) as usize,
        }
    }

    pub fn quantum_numbers(&self) -> LandauQuantumNumbers {
        let n = self.n_a as i64;
        LandauQuantumNumbers::new(n, n - self.n_b as i64).expect("n_b >= 0 implies m <= n")
    }

    /// Row of this ket in matrices with per-mode `cutoff`.
    pub fn index(&self, cutoff: usize) -> usize {
        self.n_a * (cutoff + 1) + self.n_b
    }
}

/// Names of the operators held by an [`OperatorSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorId {
    /// Lowering operator of the cyclotron mode.
    A,
    /// Lowering operator of the guiding-center mode.
    B,
    PiX,
    PiY,
    /// Guiding-center coordinates.
    GuideX,
    GuideY,
    PosX,
    PosY,
    /// Canonical momenta in the symmetric gauge.
    Px,
    Py,
    Hamiltonian,
    CyclotronRadiusSq,
    GuidingCenterRadiusSq,
    RadiusSq,
    Oam(OamSpec),
}

impl OperatorId {
    pub fn label(&self) -> String {
        match self {
            OperatorId::A => "a".into(),
            OperatorId::B => "b".into(),
            OperatorId::PiX => "Pi_x".into(),
            OperatorId::PiY => "Pi_y".into(),
            OperatorId::GuideX => "X".into(),
            OperatorId::GuideY => "Y".into(),
            OperatorId::PosX => "x".into(),
            OperatorId::PosY => "y".into(),
            OperatorId::Px => "p_x".into(),
            OperatorId::Py => "p_y".into(),
            OperatorId::Hamiltonian => "H".into(),
            OperatorId::CyclotronRadiusSq => "r_c^2".into(),
            OperatorId::GuidingCenterRadiusSq => "R^2".into(),
            OperatorId::RadiusSq => "r^2".into(),
            OperatorId::Oam(spec) => spec.label().into(),
        }
    }

    /// Whether the operator is an observable (everything but the ladders).
    pub fn is_hermitian(&self) -> bool {
        !matches!(self, OperatorId::A | OperatorId::B)
    }

    pub const ALL: [OperatorId; 20] = [
        OperatorId::A,
        OperatorId::B,
        OperatorId::PiX,
        OperatorId::PiY,
        OperatorId::GuideX,
        OperatorId::GuideY,
        OperatorId::PosX,
        OperatorId::PosY,
        OperatorId::Px,
        OperatorId::Py,
        OperatorId::Hamiltonian,
        OperatorId::CyclotronRadiusSq,
        OperatorId::GuidingCenterRadiusSq,
        OperatorId::RadiusSq,
        OperatorId::Oam(OamSpec::ALL[0]),
        OperatorId::Oam(OamSpec::ALL[1]),
        OperatorId::Oam(OamSpec::ALL[2]),
        OperatorId::Oam(OamSpec::ALL[3]),
        OperatorId::Oam(OamSpec::ALL[4]),
        OperatorId::Oam(OamSpec::ALL[5]),
    ];
}

impl From<OamSpec> for OperatorId {
    fn from(spec: OamSpec) -> Self {
        OperatorId::Oam(spec)
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    pub label: String,
    pub cutoff: usize,
    pub matrix: ComplexMatrix,
}

/// Every operator of the model realized on one truncated basis.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    config: PhysicalConfig,
    cutoff: usize,
    ops: BTreeMap<OperatorId, TruncatedOperator>,
}

impl OperatorSet {
    pub fn config(&self) -> &PhysicalConfig {
        &self.config
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 1)
    }

    pub fn get(&self, id: OperatorId) -> &TruncatedOperator {
        self.ops.get(&id).expect("every OperatorId is built")
    }

    pub fn matrix(&self, id: OperatorId) -> &ComplexMatrix {
        &self.get(id).matrix
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OperatorId, &TruncatedOperator)> {
        self.ops.iter()
    }

    /// Adds `delta` to one entry of one operator. Fault-injection hook for
    /// exercising the residual checks.
    pub fn perturb(&mut self, id: OperatorId, row: usize, col: usize, delta: Complex64) {
        let op = self.ops.get_mut(&id).expect("every OperatorId is built");
        let v = op.matrix.get(row, col);
        op.matrix.set(row, col, v + delta);
    }

    fn insert(&mut self, id: OperatorId, matrix: ComplexMatrix) {
        self.ops.insert(
            id,
            TruncatedOperator {
                label: id.label(),
                cutoff: self.cutoff,
                matrix,
            },
        );
    }
}

fn lowering(cutoff: usize, mode_a: bool) -> ComplexMatrix {
    let dim = (cutoff + 1) * (cutoff + 1);
    let mut m = ComplexMatrix::zeros(dim);
    for n_a in 0..=cutoff {
        for n_b in 0..=cutoff {
            let ket = FockBasisState { n_a, n_b };
            let (occ, bra) = if mode_a {
                (
                    n_a,
                    FockBasisState {
                        n_a: n_a.wrapping_sub(1),
                        n_b,
                    },
                )
            } else {
                (
                    n_b,
                    FockBasisState {
                        n_a,
                        n_b: n_b.wrapping_sub(1),
                    },
                )
            };
            if occ > 0 {
                m.set(
                    bra.index(cutoff),
                    ket.index(cutoff),
                    Complex64::new((occ as f64).sqrt(), 0.0),
                );
            }
        }
    }
    m
}

/// `[u × v]_z` with each product Hermitian-symmetrized.
fn cross(ux: &ComplexMatrix, uy: &ComplexMatrix, vx: &ComplexMatrix, vy: &ComplexMatrix) -> ComplexMatrix {
    &ux.symmetrized_product(vy) - &uy.symmetrized_product(vx)
}

fn square_sum(u: &ComplexMatrix, v: &ComplexMatrix) -> ComplexMatrix {
    &(u * u) + &(v * v)
}

/// Builds the ladders, then every derived operator:
///
/// ```text
/// a = (l_B/√2)(Π_x - iΠ_y),   b = (X + iY)/(√2 l_B)
/// x = X + Π_y/(eB),           y = Y - Π_x/(eB)
/// p_x = Π_x + (eB/2) y,       p_y = Π_y - (eB/2) x
/// ```
///
/// Cross products use the symmetrized ordering `(AB + BA)/2`; only the
/// canonical OAM about the guiding center has non-commuting factors.
pub fn build_operator_set(config: &PhysicalConfig, cutoff: usize) -> Result<OperatorSet> {
    if cutoff < MIN_CUTOFF {
        return Err(Error::CutoffTooSmall {
            cutoff,
            min: MIN_CUTOFF,
        });
    }
    let lb = config.magnetic_length();
    let eb = config.eb();
    let i = Complex64::new(0.0, 1.0);
    let s2 = std::f64::consts::SQRT_2;

    let a = lowering(cutoff, true);
    let b = lowering(cutoff, false);
    let ad = a.adjoint();
    let bd = b.adjoint();

    let pi_x = (&a + &ad).scale_real(1.0 / (s2 * lb));
    let pi_y = (&a - &ad).scale(i / (s2 * lb));
    let gx = (&b + &bd).scale_real(lb / s2);
    let gy = (&b - &bd).scale(-i * lb / s2);

    let x = &gx + &pi_y.scale_real(1.0 / eb);
    let y = &gy - &pi_x.scale_real(1.0 / eb);
    let px = &pi_x + &y.scale_real(0.5 * eb);
    let py = &pi_y - &x.scale_real(0.5 * eb);

    let ham = square_sum(&pi_x, &pi_y).scale_real(0.5 / config.mass());
    let rel_x = &x - &gx;
    let rel_y = &y - &gy;
    let rc2 = square_sum(&rel_x, &rel_y);
    let big_r2 = square_sum(&gx, &gy);
    let r2 = square_sum(&x, &y);

    let l_can = cross(&x, &y, &px, &py);
    let l_mech = cross(&x, &y, &pi_x, &pi_y);
    let l_ps = &l_mech - &r2.scale_real(0.5 * eb);
    let gc_can = cross(&rel_x, &rel_y, &px, &py);
    let gc_mech = cross(&rel_x, &rel_y, &pi_x, &pi_y);
    let gc_ps = &gc_mech - &rc2.scale_real(0.5 * eb);

    let mut set = OperatorSet {
        config: *config,
        cutoff,
        ops: BTreeMap::new(),
    };
    set.insert(OperatorId::A, a);
    set.insert(OperatorId::B, b);
    set.insert(OperatorId::PiX, pi_x);
    set.insert(OperatorId::PiY, pi_y);
    set.insert(OperatorId::GuideX, gx);
    set.insert(OperatorId::GuideY, gy);
    set.insert(OperatorId::PosX, x);
    set.insert(OperatorId::PosY, y);
    set.insert(OperatorId::Px, px);
    set.insert(OperatorId::Py, py);
    set.insert(OperatorId::Hamiltonian, ham);
    set.insert(OperatorId::CyclotronRadiusSq, rc2);
    set.insert(OperatorId::GuidingCenterRadiusSq, big_r2);
    set.insert(OperatorId::RadiusSq, r2);
    let oams = [l_can, l_mech, l_ps, gc_can, gc_mech, gc_ps];
    for (spec, m) in OamSpec::ALL.into_iter().zip(oams) {
        set.insert(OperatorId::Oam(spec), m);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_cutoff() {
        let c = PhysicalConfig::default();
        assert_eq!(
            build_operator_set(&c, 3).unwrap_err(),
            Error::CutoffTooSmall { cutoff: 3, min: 4 }
        );
        assert!(build_operator_set(&c, 4).is_ok());
    }

    #[test]
    fn hermitian_and_finite() {
        let c = crate::model::make_config(2.0, 1.5, 0.7).unwrap();
        let set = build_operator_set(&c, 8).unwrap();
        for (id, op) in set.iter() {
            assert!(op.matrix.is_finite(), "{id}");
            if id.is_hermitian() {
                assert!(op.matrix.hermiticity_residual() <= 1e-12, "{id}");
            }
        }
        assert_eq!(set.iter().count(), OperatorId::ALL.len());
    }

    #[test]
    fn hamiltonian_diagonal_on_every_state() {
        let c = crate::model::make_config(3.0, 1.0, 2.0).unwrap();
        let cutoff = 6;
        let set = build_operator_set(&c, cutoff).unwrap();
        let h = set.matrix(OperatorId::Hamiltonian);
        // a†a is exact even on the top shell; a a† is not, so only check the
        // diagonal below the top Landau shell.
        for n_a in 0..cutoff {
            for n_b in 0..=cutoff {
                let k = FockBasisState { n_a, n_b }.index(cutoff);
                let want = c.omega() * (n_a as f64 + 0.5);
                assert!((h.get(k, k).re - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn basis_mapping_round_trips() {
        let qn = LandauQuantumNumbers::new(2, -3).unwrap();
        let s = FockBasisState::from_quantum_numbers(qn);
        assert_eq!(s, FockBasisState { n_a: 2, n_b: 5 });
        assert_eq!(s.quantum_numbers(), qn);
    }
}
