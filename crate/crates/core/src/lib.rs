//! Orbital angular momenta of an electron in a uniform magnetic field.
//!
//! Canonical, mechanical and pseudo OAMs about the coordinate origin and the
//! quantum guiding center, computed by two independent quantum routes and a
//! classical one:
//!
//! - [`wavefunction`]: the symmetric-gauge eigenfunctions integrated by
//!   Gauss–Laguerre quadrature;
//! - [`fock`]: dense matrices on a truncated two-mode number basis built
//!   from the cyclotron and guiding-center ladders;
//! - [`classical`]: closed-form cyclotron orbits with an RK4 cross-check.
//!
//! [`report`] ties them into the verification reports emitted by the CLI.

pub mod classical;
pub mod error;
pub mod fock;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{
    landau_energy, make_config, validate_quantum_numbers, Axis, LandauQuantumNumbers, OamKind, OamSpec, PhysicalConfig,
};
