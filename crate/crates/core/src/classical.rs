//! Classical cyclotron motion of a charge −e in a field B along +z.
//!
//! Equation of motion `m_e dv/dt = -e (v × B)`, i.e. `dvx/dt = -ω vy`,
//! `dvy/dt = ω vx`: the velocity rotates counterclockwise at ω about a fixed
//! guiding center.
//!
//! The guiding center is `X = x0 - vy0/ω`, `Y = y0 + vx0/ω`. These are the
//! values that reproduce the closed-form orbit `x = X + vy(t)/ω`,
//! `y = Y - vx(t)/ω` at t = 0 and match the quantum operators
//! `X = x - Π_y/(eB)`, `Y = y + Π_x/(eB)` with `Π = m_e v`. The often-quoted
//! `X = x0 - vx0/ω`, `Y = y0 - vy0/ω` does not satisfy the initial conditions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Axis, OamKind, OamSpec, PhysicalConfig};

pub const MIN_AVERAGE_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialConditions {
    pub x0: f64,
    pub y0: f64,
    pub vx0: f64,
    pub vy0: f64,
}

impl InitialConditions {
    pub fn new(x0: f64, y0: f64, vx0: f64, vy0: f64) -> Self {
        Self { x0, y0, vx0, vy0 }
    }

    /// Orbit of speed `v0` about `(gx, gy)` whose velocity phase starts at `alpha`.
    pub fn about_guiding_center(gx: f64, gy: f64, v0: f64, alpha: f64, config: &PhysicalConfig) -> Self {
        let omega = config.omega();
        let vx0 = v0 * alpha.cos();
        let vy0 = v0 * alpha.sin();
        Self {
            x0: gx + vy0 / omega,
            y0: gy - vx0 / omega,
            vx0,
            vy0,
        }
    }

    pub fn speed(&self) -> f64 {
        self.vx0.hypot(self.vy0)
    }

    /// Initial velocity phase, quadrant-correct; 0 for a particle at rest.
    pub fn alpha(&self) -> f64 {
        if self.speed() == 0.0 {
            0.0
        } else {
            self.vy0.atan2(self.vx0)
        }
    }

    /// Cyclotron radius `v0/ω`.
    pub fn cyclotron_radius(&self, config: &PhysicalConfig) -> f64 {
        self.speed() / config.omega()
    }

    pub fn initial_state(&self) -> ClassicalState {
        ClassicalState {
            t: 0.0,
            x: self.x0,
            y: self.y0,
            vx: self.vx0,
            vy: self.vy0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalState {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

impl ClassicalState {
    pub fn speed(&self) -> f64 {
        self.vx.hypot(self.vy)
    }

    /// Guiding center re-extracted from the instantaneous state.
    pub fn guiding_center(&self, config: &PhysicalConfig) -> (f64, f64) {
        let omega = config.omega();
        (self.x - self.vy / omega, self.y + self.vx / omega)
    }
}

pub fn guiding_center(ic: &InitialConditions, config: &PhysicalConfig) -> (f64, f64) {
    ic.initial_state().guiding_center(config)
}

/// Cyclotron period `2π/ω`.
pub fn period(config: &PhysicalConfig) -> f64 {
    2.0 * PI / config.omega()
}

pub fn closed_form_state(ic: &InitialConditions, config: &PhysicalConfig, t: f64) -> ClassicalState {
    let omega = config.omega();
    let (s, c) = (omega * t).sin_cos();
    // Rotating the initial velocity keeps t = 0 bit-exact.
    let vx = ic.vx0 * c - ic.vy0 * s;
    let vy = ic.vx0 * s + ic.vy0 * c;
    ClassicalState {
        t,
        x: ic.x0 + (vy - ic.vy0) / omega,
        y: ic.y0 - (vx - ic.vx0) / omega,
        vx,
        vy,
    }
}

/// One of the four classical angular momenta about the origin or the
/// guiding center of `ic`.
pub fn classical_oam(
    state: &ClassicalState,
    ic: &InitialConditions,
    config: &PhysicalConfig,
    spec: OamSpec,
) -> Result<f64> {
    let (gx, gy) = match spec.axis {
        Axis::Origin => (0.0, 0.0),
        Axis::GuidingCenter => guiding_center(ic, config),
    };
    let dx = state.x - gx;
    let dy = state.y - gy;
    let mech = config.mass() * (dx * state.vy - dy * state.vx);
    match spec.kind {
        OamKind::Canonical => Err(Error::CanonicalClassical),
        OamKind::Mechanical => Ok(mech),
        OamKind::Pseudo => Ok(mech - 0.5 * config.eb() * (dx * dx + dy * dy)),
    }
}

/// The four classical OAMs in the trajectory-column order
/// `L_mech_origin, L_ps_origin, L_mech_gc, L_ps_gc`.
pub const CLASSICAL_SPECS: [OamSpec; 4] = [
    OamSpec::new(OamKind::Mechanical, Axis::Origin),
    OamSpec::new(OamKind::Pseudo, Axis::Origin),
    OamSpec::new(OamKind::Mechanical, Axis::GuidingCenter),
    OamSpec::new(OamKind::Pseudo, Axis::GuidingCenter),
];

/// `(1/T) ∫_0^T L dt` by composite Simpson over the closed-form orbit.
/// An odd `samples` is rounded up to the next even interval count.
pub fn time_average_oam(ic: &InitialConditions, config: &PhysicalConfig, spec: OamSpec, samples: usize) -> Result<f64> {
    if samples < MIN_AVERAGE_SAMPLES {
        return Err(Error::TooFewSamples {
            samples,
            min: MIN_AVERAGE_SAMPLES,
        });
    }
    let intervals = samples + samples % 2;
    let period = period(config);
    let h = period / intervals as f64;
    let mut sum = 0.0;
    for k in 0..=intervals {
        let w = if k == 0 || k == intervals {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let state = closed_form_state(ic, config, k as f64 * h);
        sum += w * classical_oam(&state, ic, config, spec)?;
    }
    Ok(sum * h / 3.0 / period)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<ClassicalState>,
}

impl Trajectory {
    pub fn last(&self) -> &ClassicalState {
        self.states.last().expect("trajectory holds the initial state")
    }
}

fn derivative(s: [f64; 4], omega: f64) -> [f64; 4] {
    let [_, _, vx, vy] = s;
    [vx, vy, -omega * vy, omega * vx]
}

/// Classic fourth-order Runge–Kutta; returns `steps + 1` states starting at t = 0.
pub fn integrate_rk4(ic: &InitialConditions, config: &PhysicalConfig, dt: f64, steps: usize) -> Result<Trajectory> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidTimeStep(dt));
    }
    let omega = config.omega();
    let mut s = [ic.x0, ic.y0, ic.vx0, ic.vy0];
    let mut states = Vec::with_capacity(steps + 1);
    states.push(ic.initial_state());
    let axpy = |a: [f64; 4], k: [f64; 4], h: f64| std::array::from_fn(|i| a[i] + h * k[i]);
    for step in 1..=steps {
        let k1 = derivative(s, omega);
        let k2 = derivative(axpy(s, k1, 0.5 * dt), omega);
        let k3 = derivative(axpy(s, k2, 0.5 * dt), omega);
        let k4 = derivative(axpy(s, k3, dt), omega);
        s = std::array::from_fn(|i| s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        states.push(ClassicalState {
            t: step as f64 * dt,
            x: s[0],
            y: s[1],
            vx: s[2],
            vy: s[3],
        });
    }
    Ok(Trajectory { states })
}
