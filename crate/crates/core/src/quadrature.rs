//! Gauss–Laguerre quadrature in the reduced radial variable ρ = r²/(2 l_B²).

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_RADIAL_ORDER: usize = 64;
pub const DEFAULT_AZIMUTHAL_POINTS: usize = 128;

/// Nodes and weights for `∫_0^∞ f(ρ) e^{-ρ} dρ ≈ Σ w_i f(ρ_i)` plus a
/// uniform azimuthal grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    azimuthal_points: usize,
}

impl QuadratureRule {
    pub fn new(radial_order: usize, azimuthal_points: usize) -> Result<Self> {
        if radial_order == 0 {
            return Err(Error::InvalidQuadratureOrder(radial_order));
        }
        if azimuthal_points == 0 {
            return Err(Error::InvalidQuadratureOrder(azimuthal_points));
        }
        let (nodes, weights) = gauss_laguerre(radial_order);
        Ok(Self {
            nodes,
            weights,
            azimuthal_points,
        })
    }

    pub fn radial_order(&self) -> usize {
        self.nodes.len()
    }

    pub fn azimuthal_points(&self) -> usize {
        self.azimuthal_points
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i f(ρ_i)`, summed in node order.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Uniform azimuthal nodes `φ_j = 2πj/N` with the common weight `2π/N`.
    pub fn azimuthal_grid(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.azimuthal_points;
        let w = 2.0 * PI / n as f64;
        (0..n).map(move |j| (w * j as f64, w))
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::new(DEFAULT_RADIAL_ORDER, DEFAULT_AZIMUTHAL_POINTS).expect("default orders valid")
    }
}

/// Newton iteration on `L_n` from asymptotic starting guesses; the weight is
/// `-1 / (n L_{n-1}(x) L_n'(x))`.
fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut z: f64 = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut deriv = 0.0;
        let mut prev_poly = 0.0;
        for _ in 0..100 {
            let (p_n, p_nm1) = laguerre_pair(n, z);
            deriv = nf * (p_n - p_nm1) / z;
            prev_poly = p_nm1;
            let step = p_n / deriv;
            z -= step;
            if step.abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        // One more evaluation at the converged node for the weight.
        let (p_n, p_nm1) = laguerre_pair(n, z);
        if p_nm1.is_finite() {
            deriv = nf * (p_n - p_nm1) / z;
            prev_poly = p_nm1;
        }
        nodes[i] = z;
        weights[i] = -1.0 / (deriv * nf * prev_poly);
    }
    (nodes, weights)
}

/// `(L_n(z), L_{n-1}(z))` for the plain Laguerre family.
fn laguerre_pair(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
    }
    (p1, p2)
}
