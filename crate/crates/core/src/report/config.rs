use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LandauQuantumNumbers, PhysicalConfig};
use crate::quadrature::{QuadratureRule, DEFAULT_AZIMUTHAL_POINTS, DEFAULT_RADIAL_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Per-family tolerances. [`Tolerances::uniform`] replaces all of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Quadrature and Fock expectation values.
    pub expectation: f64,
    pub norm: f64,
    /// Interior operator residuals and Fock radii.
    pub identity: f64,
    pub hermiticity: f64,
    /// Closed-form classical identities.
    pub classical_exact: f64,
    /// One-period classical time averages.
    pub classical_average: f64,
    /// RK4 vs closed form, relative to `max(r_c, v0)`.
    pub rk4_state: f64,
    /// Guiding-center drift along RK4.
    pub rk4_guiding_center: f64,
    /// RK4 speed drift, relative to `v0`.
    pub rk4_speed: f64,
    /// `|dL_ps/dt|` along RK4, relative to `ω r_c m_e v0`.
    pub rk4_pseudo_rate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            expectation: 1e-8,
            norm: 1e-10,
            identity: 1e-10,
            hermiticity: 1e-12,
            classical_exact: 1e-12,
            classical_average: 1e-9,
            rk4_state: 1e-9,
            rk4_guiding_center: 1e-9,
            rk4_speed: 1e-10,
            rk4_pseudo_rate: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Self {
            expectation: tol,
            norm: tol,
            identity: tol,
            hermiticity: tol,
            classical_exact: tol,
            classical_average: tol,
            rk4_state: tol,
            rk4_guiding_center: tol,
            rk4_speed: tol,
            rk4_pseudo_rate: tol,
        }
    }

    fn all(&self) -> [f64; 10] {
        [
            self.expectation,
            self.norm,
            self.identity,
            self.hermiticity,
            self.classical_exact,
            self.classical_average,
            self.rk4_state,
            self.rk4_guiding_center,
            self.rk4_speed,
            self.rk4_pseudo_rate,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub b: f64,
    pub e: f64,
    pub mass: f64,
    pub n_max: i64,
    pub m_min: i64,
    pub cutoff: usize,
    pub margin: usize,
    pub quad_order: usize,
    pub azimuthal_points: usize,
    pub tolerances: Tolerances,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            b: 1.0,
            e: 1.0,
            mass: 1.0,
            n_max: 5,
            m_min: -5,
            cutoff: 20,
            margin: 4,
            quad_order: DEFAULT_RADIAL_ORDER,
            azimuthal_points: DEFAULT_AZIMUTHAL_POINTS,
            tolerances: Tolerances::default(),
            parallel: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 0 {
            return Err(Error::InvalidRun(format!("n_max must be >= 0, got {}", self.n_max)));
        }
        if self.m_min > self.n_max {
            return Err(Error::InvalidRun(format!(
                "empty quantum-number range: m_min = {} > n_max = {}",
                self.m_min, self.n_max
            )));
        }
        if self.margin == 0 || self.margin >= self.cutoff {
            return Err(Error::InvalidMargin {
                cutoff: self.cutoff,
                margin: self.margin,
            });
        }
        if self.tolerances.all().iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::InvalidRun("every tolerance must be finite and > 0".into()));
        }
        if self.quad_order == 0 || self.azimuthal_points == 0 {
            return Err(Error::InvalidQuadratureOrder(0));
        }
        self.physical()?;
        Ok(())
    }

    pub fn physical(&self) -> Result<PhysicalConfig> {
        PhysicalConfig::new(self.b, self.e, self.mass)
    }

    pub fn rule(&self) -> Result<QuadratureRule> {
        QuadratureRule::new(self.quad_order, self.azimuthal_points)
    }

    /// States with `0 <= n <= n_max`, `m_min <= m <= n`, ordered by (n, m).
    pub fn grid(&self) -> Vec<LandauQuantumNumbers> {
        LandauQuantumNumbers::grid(self.n_max, self.m_min)
    }

    pub(crate) fn parameters(&self) -> BTreeMap<String, f64> {
        [
            ("B", self.b),
            ("e", self.e),
            ("m_e", self.mass),
            ("n_max", self.n_max as f64),
            ("m_min", self.m_min as f64),
            ("cutoff", self.cutoff as f64),
            ("margin", self.margin as f64),
            ("quad_order", self.quad_order as f64),
            ("azimuthal_points", self.azimuthal_points as f64),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }
}

/// Initial conditions and sampling for the classical subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalRun {
    pub x0: f64,
    pub y0: f64,
    pub vx0: f64,
    pub vy0: f64,
    /// Simpson intervals for the one-period averages.
    pub samples: usize,
    /// RK4 step; one period is `2π/ω` when `None`, sampled with 1000 steps.
    pub dt: Option<f64>,
}

impl Default for ClassicalRun {
    fn default() -> Self {
        // Orbit of unit speed centred on the origin (at unit ω).
        Self {
            x0: 0.0,
            y0: -1.0,
            vx0: 1.0,
            vy0: 0.0,
            samples: 1000,
            dt: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(RunConfig::default().validate().is_ok());
        assert_eq!(RunConfig::default().grid().len(), 51);
    }

    #[test]
    fn invalid_configs() {
        let base = RunConfig::default();
        assert!(RunConfig {
            margin: 20,
            ..base.clone()
        }
        .validate()
        .is_err());
        assert!(RunConfig {
            m_min: 6,
            ..base.clone()
        }
        .validate()
        .is_err());
        assert!(RunConfig {
            n_max: -1,
            ..base.clone()
        }
        .validate()
        .is_err());
        assert!(RunConfig { b: 0.0, ..base.clone() }.validate().is_err());
        assert!(RunConfig {
            tolerances: Tolerances::uniform(0.0),
            ..base
        }
        .validate()
        .is_err());
    }
}
