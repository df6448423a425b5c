//! Associated Laguerre polynomials and the symmetric-gauge normalization.

use crate::error::{Error, Result};
use crate::model::LandauQuantumNumbers;

/// Degree `p` (the radial quantum number) and order `k` (|m|) of `L^k_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaguerreParams {
    pub degree: u64,
    pub order: u64,
}

impl LaguerreParams {
    pub fn new(degree: u64, order: u64) -> Self {
        Self { degree, order }
    }
}

/// Radial quantum number `n - (m + |m|)/2`; non-negative whenever `m <= n`.
pub fn radial_index(qn: LandauQuantumNumbers) -> u64 {
    let n = qn.n();
    let m = qn.m();
    (n - (m + m.abs()) / 2) as u64
}

/// `L^k_p(z)` by upward recurrence in the degree:
/// `(p+1) L_{p+1} = (2p + 1 + k - z) L_p - (p + k) L_{p-1}`.
pub fn assoc_laguerre(params: LaguerreParams, z: f64) -> Result<f64> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::InvalidLaguerreArgument(z));
    }
    Ok(laguerre_unchecked(params.degree, params.order as f64, z))
}

/// Recurrence without argument validation; used in inner quadrature loops
/// where the nodes are known to be non-negative.
pub(crate) fn laguerre_unchecked(degree: u64, order: f64, z: f64) -> f64 {
    if degree == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + order - z;
    for p in 1..degree {
        let p = p as f64;
        let next = ((2.0 * p + 1.0 + order - z) * cur - (p + order) * prev) / (p + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dz L^k_p(z) = -L^{k+1}_{p-1}(z)`, zero for `p = 0`.
pub(crate) fn laguerre_derivative_unchecked(degree: u64, order: f64, z: f64) -> f64 {
    if degree == 0 {
        0.0
    } else {
        -laguerre_unchecked(degree - 1, order + 1.0, z)
    }
}

/// `ln(N_{n,m}^2 l_B^2) = ln(n_r! / (n_r + |m|)!)`, as a telescoped sum of
/// logarithms so large `|m|` never overflows.
pub(crate) fn ln_norm_sq_dimensionless(qn: LandauQuantumNumbers) -> f64 {
    let n_r = radial_index(qn);
    let upper = n_r + qn.abs_m();
    -((n_r + 1)..=upper).map(|k| (k as f64).ln()).sum::<f64>()
}

/// Normalization constant
/// `N_{n,m} = (1/l_B) sqrt((n - (m+|m|)/2)! / (n + (|m|-m)/2)!)`.
pub fn normalization(qn: LandauQuantumNumbers, magnetic_length: f64) -> Result<f64> {
    if !magnetic_length.is_finite() || magnetic_length <= 0.0 {
        return Err(Error::NonPositive {
            field: "l_B",
            value: magnetic_length,
        });
    }
    Ok((0.5 * ln_norm_sq_dimensionless(qn)).exp() / magnetic_length)
}
