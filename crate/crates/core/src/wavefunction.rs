//! Real-space route: the symmetric-gauge eigenfunctions and their
//! expectation values by Gauss–Laguerre quadrature in ρ = r²/(2 l_B²).
//!
//! Every radial integrand is a polynomial in ρ times `e^{-ρ}`, so the rule
//! integrates it exactly once the order exceeds half the polynomial degree.
//! Guiding-center quantities go through the operator reductions
//!
//! ```text
//! L_mech^GC = (2/ω) H,   L_ps^GC = (1/ω) H,
//! L_can^GC  = (2/ω) H - L_can/2 - (eB/4) r²
//! ```
//!
//! which the Fock-space route checks independently.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Axis, LandauQuantumNumbers, OamKind, OamSpec, PhysicalConfig};
use crate::quadrature::QuadratureRule;
use crate::special::{laguerre_derivative_unchecked, laguerre_unchecked, ln_norm_sq_dimensionless, radial_index};

/// Sampled amplitude `ψ(r, φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionPoint {
    pub r: f64,
    pub phi: f64,
    pub value: Complex64,
}

/// A Landau eigenstate `|n, m>` bound to a physical configuration.
#[derive(Debug, Clone, Copy)]
pub struct LandauState {
    qn: LandauQuantumNumbers,
    config: PhysicalConfig,
    n_r: u64,
    abs_m: u64,
    /// ln(N² l_B²)
    ln_norm_sq: f64,
}

impl LandauState {
    pub fn new(qn: LandauQuantumNumbers, config: PhysicalConfig) -> Self {
        Self {
            qn,
            config,
            n_r: radial_index(qn),
            abs_m: qn.abs_m(),
            ln_norm_sq: ln_norm_sq_dimensionless(qn),
        }
    }

    pub fn quantum_numbers(&self) -> LandauQuantumNumbers {
        self.qn
    }

    fn lb(&self) -> f64 {
        self.config.magnetic_length()
    }

    fn rho(&self, r: f64) -> f64 {
        let lb = self.lb();
        r * r / (2.0 * lb * lb)
    }

    fn laguerre(&self, rho: f64) -> f64 {
        laguerre_unchecked(self.n_r, self.abs_m as f64, rho)
    }

    fn laguerre_prime(&self, rho: f64) -> f64 {
        laguerre_derivative_unchecked(self.n_r, self.abs_m as f64, rho)
    }

    fn phase(&self, phi: f64) -> Complex64 {
        Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), self.qn.m() as f64 * phi)
    }

    /// `N e^{-ρ/2} ρ^{|m|/2}` assembled in log space; exactly 0 at ρ = 0 for m ≠ 0.
    fn radial_envelope(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return if self.abs_m == 0 {
                (0.5 * self.ln_norm_sq).exp() / self.lb()
            } else {
                0.0
            };
        }
        (0.5 * self.ln_norm_sq - 0.5 * rho + 0.5 * self.abs_m as f64 * rho.ln()).exp() / self.lb()
    }

    pub fn psi(&self, r: f64, phi: f64) -> Result<Complex64> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidRadius(r));
        }
        let rho = self.rho(r);
        Ok(self.phase(phi) * (self.radial_envelope(rho) * self.laguerre(rho)))
    }

    /// `∂ψ/∂r` from `d/dz L^k_p = -L^{k+1}_{p-1}`.
    pub fn dpsi_dr(&self, r: f64, phi: f64) -> Result<Complex64> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidRadius(r));
        }
        let lb = self.lb();
        let rho = self.rho(r);
        let l = self.laguerre(rho);
        let lp = self.laguerre_prime(rho);
        let radial = if self.abs_m == 0 {
            // d/dr = (r/l²) d/dρ
            let amp = (0.5 * self.ln_norm_sq - 0.5 * rho).exp() / lb;
            amp * (r / (lb * lb)) * (lp - 0.5 * l)
        } else {
            // ρ^{(|m|-1)/2} [(|m| - ρ) L / 2 + ρ L'] √2 / l_B
            let k = self.abs_m as f64;
            let pow = if rho == 0.0 {
                if self.abs_m == 1 {
                    1.0
                } else {
                    0.0
                }
            } else {
                (0.5 * (k - 1.0) * rho.ln()).exp()
            };
            let amp = (0.5 * self.ln_norm_sq - 0.5 * rho).exp() / lb;
            amp * pow * (0.5 * (k - rho) * l + rho * lp) * std::f64::consts::SQRT_2 / lb
        };
        Ok(self.phase(phi) * radial)
    }

    /// `∂ψ/∂φ = i m ψ`.
    pub fn dpsi_dphi(&self, r: f64, phi: f64) -> Result<Complex64> {
        Ok(Complex64::new(0.0, self.qn.m() as f64) * self.psi(r, phi)?)
    }

    /// `N ρ^{|m|/2} L(ρ)`: the radial profile with the Gaussian envelope removed.
    fn reduced_amplitude(&self, rho: f64) -> f64 {
        let pow = if self.abs_m == 0 {
            1.0
        } else if rho == 0.0 {
            0.0
        } else {
            (0.5 * self.abs_m as f64 * rho.ln()).exp()
        };
        (0.5 * self.ln_norm_sq).exp() / self.lb() * pow * self.laguerre(rho)
    }

    /// `ψ e^{ρ/2}`, whose squared modulus the Gauss–Laguerre rule integrates.
    fn reduced_psi(&self, rho: f64, phi: f64) -> Complex64 {
        self.phase(phi) * self.reduced_amplitude(rho)
    }

    /// `2π |ψ|² e^{ρ} = N² ρ^{|m|} L(ρ)²`, in log space for large `|m|`.
    fn reduced_radial_sq(&self, rho: f64) -> f64 {
        let l = self.laguerre(rho);
        let lb = self.lb();
        let pow = if self.abs_m == 0 {
            0.0
        } else {
            self.abs_m as f64 * rho.ln()
        };
        (self.ln_norm_sq + pow).exp() / (lb * lb) * l * l
    }

    /// `∫ |ψ|² f(r) d²r` with the azimuthal integral done analytically.
    fn radial_expectation<F: Fn(f64) -> f64>(&self, rule: &QuadratureRule, f: F) -> f64 {
        let lb = self.lb();
        let lb2 = lb * lb;
        // d²r = l_B² dρ dφ; the 1/(2π) of the phase cancels the φ integral.
        lb2 * rule.integrate(|rho| self.reduced_radial_sq(rho) * f(rho))
    }

    /// `∫∫ |ψ|² r dr dφ` with the explicit azimuthal grid.
    pub fn norm(&self, rule: &QuadratureRule) -> f64 {
        let lb2 = self.lb() * self.lb();
        let mut total = 0.0;
        for (&rho, &w) in rule.nodes().iter().zip(rule.weights()) {
            let mut ring = 0.0;
            for (phi, wphi) in rule.azimuthal_grid() {
                ring += wphi * self.reduced_psi(rho, phi).norm_sqr();
            }
            total += w * ring;
        }
        lb2 * total
    }

    pub fn expectation_r2(&self, rule: &QuadratureRule) -> f64 {
        let lb2 = self.lb() * self.lb();
        self.radial_expectation(rule, |rho| 2.0 * lb2 * rho)
    }

    /// `<-i ∂_φ>` summed over the explicit azimuthal grid.
    pub fn expectation_canonical_origin(&self, rule: &QuadratureRule) -> f64 {
        let lb2 = self.lb() * self.lb();
        let m = Complex64::new(0.0, self.qn.m() as f64);
        let mut total = 0.0;
        for (&rho, &w) in rule.nodes().iter().zip(rule.weights()) {
            let mut ring = 0.0;
            for (phi, wphi) in rule.azimuthal_grid() {
                let psi = self.reduced_psi(rho, phi);
                let dphi = m * psi;
                ring += wphi * (psi.conj() * Complex64::new(0.0, -1.0) * dphi).re;
            }
            total += w * ring;
        }
        lb2 * total
    }

    /// `<H>` in gradient form, split into the two-dimensional oscillator part
    /// and the Larmor term `ω_L <L_can>`.
    pub fn expectation_energy(&self, rule: &QuadratureRule) -> EnergyBreakdown {
        let lb = self.lb();
        let lb2 = lb * lb;
        let mass = self.config.mass();
        let wl = self.config.omega_larmor();
        let k = self.abs_m as f64;
        let m2 = (self.qn.m() * self.qn.m()) as f64;

        // |∂_r ψ|² e^{ρ}·2π and |∂_φ ψ|² e^{ρ}·2π / r², per unit N²/l_B² prefactor.
        let kinetic = lb2
            * rule.integrate(|rho| {
                let l = self.laguerre(rho);
                let lp = self.laguerre_prime(rho);
                let pref = self.ln_norm_sq.exp() / lb2;
                let radial = if self.abs_m == 0 {
                    pref * (2.0 * rho / lb2) * (lp - 0.5 * l).powi(2)
                } else {
                    let pow = ((k - 1.0) * rho.ln() + self.ln_norm_sq).exp() / lb2;
                    pow * (2.0 / lb2) * (0.5 * (k - rho) * l + rho * lp).powi(2)
                };
                let angular = if self.abs_m == 0 {
                    0.0
                } else {
                    ((k - 1.0) * rho.ln() + self.ln_norm_sq).exp() / lb2 * m2 * l * l / (2.0 * lb2)
                };
                (radial + angular) / (2.0 * mass)
            });
        let potential = self.radial_expectation(rule, |rho| 0.5 * mass * wl * wl * 2.0 * lb2 * rho);
        let larmor = wl * self.expectation_canonical_origin(rule);
        EnergyBreakdown {
            oscillator: kinetic + potential,
            larmor,
            total: kinetic + potential + larmor,
        }
    }

    /// All quadrature expectation values of this state in one pass.
    pub fn expectations(&self, rule: &QuadratureRule) -> QuadratureExpectations {
        let eb = self.config.eb();
        let omega = self.config.omega();
        let r2 = self.expectation_r2(rule);
        let l_can = self.expectation_canonical_origin(rule);
        let energy = self.expectation_energy(rule);
        let l_mech = l_can + 0.5 * eb * r2;
        let l_ps = l_mech - 0.5 * eb * r2;
        let gc_mech = 2.0 / omega * energy.total;
        let gc_ps = energy.total / omega;
        let gc_can = 2.0 / omega * energy.total - 0.5 * l_can - 0.25 * eb * r2;
        QuadratureExpectations {
            qn: self.qn,
            norm: self.norm(rule),
            r2,
            energy,
            oam: [l_can, l_mech, l_ps, gc_can, gc_mech, gc_ps],
        }
    }
}

/// `<H> = <H_osc> + ω_L <L_can>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub oscillator: f64,
    pub larmor: f64,
    pub total: f64,
}

/// Quadrature results for one state; `oam` follows the order of [`OamSpec::ALL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureExpectations {
    pub qn: LandauQuantumNumbers,
    pub norm: f64,
    pub r2: f64,
    pub energy: EnergyBreakdown,
    pub oam: [f64; 6],
}

impl QuadratureExpectations {
    pub fn oam(&self, spec: OamSpec) -> f64 {
        let idx = OamSpec::ALL.iter().position(|s| *s == spec).expect("all specs listed");
        self.oam[idx]
    }
}

pub fn psi_value(qn: LandauQuantumNumbers, config: &PhysicalConfig, r: f64, phi: f64) -> Result<Complex64> {
    LandauState::new(qn, *config).psi(r, phi)
}

pub fn sample(qn: LandauQuantumNumbers, config: &PhysicalConfig, r: f64, phi: f64) -> Result<WavefunctionPoint> {
    Ok(WavefunctionPoint {
        r,
        phi: phi.rem_euclid(2.0 * PI),
        value: psi_value(qn, config, r, phi)?,
    })
}

pub fn norm_check(qn: LandauQuantumNumbers, config: &PhysicalConfig, rule: &QuadratureRule) -> f64 {
    LandauState::new(qn, *config).norm(rule)
}

pub fn expectation_r2(qn: LandauQuantumNumbers, config: &PhysicalConfig, rule: &QuadratureRule) -> f64 {
    LandauState::new(qn, *config).expectation_r2(rule)
}

pub fn expectation_energy(qn: LandauQuantumNumbers, config: &PhysicalConfig, rule: &QuadratureRule) -> EnergyBreakdown {
    LandauState::new(qn, *config).expectation_energy(rule)
}

pub fn expectation_oam(qn: LandauQuantumNumbers, config: &PhysicalConfig, spec: OamSpec, rule: &QuadratureRule) -> f64 {
    let state = LandauState::new(qn, *config);
    let eb = config.eb();
    let omega = config.omega();
    match (spec.kind, spec.axis) {
        (OamKind::Canonical, Axis::Origin) => state.expectation_canonical_origin(rule),
        (OamKind::Mechanical, Axis::Origin) => {
            state.expectation_canonical_origin(rule) + 0.5 * eb * state.expectation_r2(rule)
        }
        (OamKind::Pseudo, Axis::Origin) => {
            let r2 = state.expectation_r2(rule);
            let mech = state.expectation_canonical_origin(rule) + 0.5 * eb * r2;
            mech - 0.5 * eb * r2
        }
        (OamKind::Mechanical, Axis::GuidingCenter) => 2.0 / omega * state.expectation_energy(rule).total,
        (OamKind::Pseudo, Axis::GuidingCenter) => state.expectation_energy(rule).total / omega,
        (OamKind::Canonical, Axis::GuidingCenter) => {
            2.0 / omega * state.expectation_energy(rule).total
                - 0.5 * state.expectation_canonical_origin(rule)
                - 0.25 * eb * state.expectation_r2(rule)
        }
    }
}
