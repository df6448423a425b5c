//! Physical scales, quantum-number validation and the OAM taxonomy.
//!
//! Natural units (ħ = c = 1). The electron carries charge −e with e > 0 and
//! the field points along +z, so the cyclotron rotation is counterclockwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field strength, charge and mass together with the scales they fix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConfig {
    b: f64,
    e: f64,
    mass: f64,
    omega: f64,
    omega_larmor: f64,
    magnetic_length: f64,
}

impl PhysicalConfig {
    pub fn new(b: f64, e: f64, mass: f64) -> Result<Self> {
        check_positive("B", b)?;
        check_positive("e", e)?;
        check_positive("m_e", mass)?;
        let eb = e * b;
        let omega = eb / mass;
        Ok(Self {
            b,
            e,
            mass,
            omega,
            omega_larmor: omega / 2.0,
            magnetic_length: 1.0 / eb.sqrt(),
        })
    }

    pub fn field(&self) -> f64 {
        self.b
    }

    pub fn charge(&self) -> f64 {
        self.e
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// eB, the combination that appears in every commutator.
    pub fn eb(&self) -> f64 {
        self.e * self.b
    }

    /// Cyclotron frequency ω = eB/m_e.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Larmor frequency ω/2.
    pub fn omega_larmor(&self) -> f64 {
        self.omega_larmor
    }

    /// Magnetic length 1/sqrt(eB).
    pub fn magnetic_length(&self) -> f64 {
        self.magnetic_length
    }

    /// Energy ω(n + 1/2) of the n-th Landau level.
    pub fn landau_energy(&self, n: i64) -> Result<f64> {
        if n < 0 {
            return Err(Error::NegativeLandauIndex(n));
        }
        Ok(self.omega * (n as f64 + 0.5))
    }
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        Self::new(1.0, 1.0, 1.0).expect("unit config is valid")
    }
}

fn check_positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { field, value })
    }
}

/// Builds a [`PhysicalConfig`] from B, e and m_e.
pub fn make_config(b: f64, e: f64, mass: f64) -> Result<PhysicalConfig> {
    PhysicalConfig::new(b, e, mass)
}

/// Energy of Landau level `n`.
pub fn landau_energy(config: &PhysicalConfig, n: i64) -> Result<f64> {
    config.landau_energy(n)
}

/// Landau index `n` and magnetic quantum number `m` of a symmetric-gauge
/// eigenstate. Only constructible with `n >= 0` and `m <= n`; `m` is
/// unbounded below (the Landau degeneracy).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LandauQuantumNumbers {
    n: i64,
    m: i64,
}

impl LandauQuantumNumbers {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n < 0 || m > n {
            return Err(Error::InvalidQuantumNumbers { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn abs_m(&self) -> u64 {
        self.m.unsigned_abs()
    }

    /// Every admissible pair with `0 <= n <= n_max` and `m_min <= m <= n`,
    /// ordered by `n` then `m`.
    pub fn grid(n_max: i64, m_min: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 0..=n_max.max(-1) {
            for m in m_min..=n {
                out.push(Self { n, m });
            }
        }
        out
    }
}

impl fmt::Display for LandauQuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={})", self.n, self.m)
    }
}

pub fn validate_quantum_numbers(n: i64, m: i64) -> Result<LandauQuantumNumbers> {
    LandauQuantumNumbers::new(n, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OamKind {
    Canonical,
    Mechanical,
    Pseudo,
}

/// Reference axis of an angular momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    Origin,
    GuidingCenter,
}

/// One of the six orbital angular momenta: a kind about an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OamSpec {
    pub kind: OamKind,
    pub axis: Axis,
}

impl OamSpec {
    pub const fn new(kind: OamKind, axis: Axis) -> Self {
        Self { kind, axis }
    }

    /// All six combinations, origin row first, columns canonical/mechanical/pseudo.
    pub const ALL: [OamSpec; 6] = [
        OamSpec::new(OamKind::Canonical, Axis::Origin),
        OamSpec::new(OamKind::Mechanical, Axis::Origin),
        OamSpec::new(OamKind::Pseudo, Axis::Origin),
        OamSpec::new(OamKind::Canonical, Axis::GuidingCenter),
        OamSpec::new(OamKind::Mechanical, Axis::GuidingCenter),
        OamSpec::new(OamKind::Pseudo, Axis::GuidingCenter),
    ];

    /// Closed-form expectation value in the eigenstate |n, m>, in units of ħ:
    /// about the origin (m, 2n+1, m), about the guiding center
    /// ((2n+1)/2, 2n+1, (2n+1)/2).
    pub fn closed_form(&self, qn: LandauQuantumNumbers) -> f64 {
        let n = qn.n() as f64;
        let m = qn.m() as f64;
        match (self.axis, self.kind) {
            (Axis::Origin, OamKind::Canonical | OamKind::Pseudo) => m,
            (_, OamKind::Mechanical) => 2.0 * n + 1.0,
            (Axis::GuidingCenter, OamKind::Canonical | OamKind::Pseudo) => n + 0.5,
        }
    }

    /// Short machine-friendly label such as `L_mech_gc`.
    pub fn label(&self) -> &'static str {
        match (self.kind, self.axis) {
            (OamKind::Canonical, Axis::Origin) => "L_can_origin",
            (OamKind::Mechanical, Axis::Origin) => "L_mech_origin",
            (OamKind::Pseudo, Axis::Origin) => "L_ps_origin",
            (OamKind::Canonical, Axis::GuidingCenter) => "L_can_gc",
            (OamKind::Mechanical, Axis::GuidingCenter) => "L_mech_gc",
            (OamKind::Pseudo, Axis::GuidingCenter) => "L_ps_gc",
        }
    }
}

impl fmt::Display for OamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
