//! Operator-algebra route on a truncated two-mode number basis.
//!
//! Mode `a` lowers the Landau index (`n = n_a`); mode `b` lowers the
//! guiding-center radius (`n_b = n - m`). Ladder truncation corrupts the top
//! occupation shells, so identities are asserted only on the interior block
//! `n_a + n_b <= cutoff - margin`.

mod checks;
mod matrix;
mod operators;

pub use checks::{
    conservation_checks, expectation_fock, identity_checks, interior_projector, spectrum, InteriorProjector, Residual,
    ResidualReport, SpectrumLevel,
};
pub use matrix::ComplexMatrix;
pub use operators::{build_operator_set, FockBasisState, OperatorId, OperatorSet, TruncatedOperator, MIN_CUTOFF};
