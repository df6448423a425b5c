use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Dense row-major complex square matrix.
///
/// The ladder-built operators are banded, so the product skips zero entries
/// of the left factor; the result is still stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `(AB + BA)/2`
    pub fn symmetrized_product(&self, other: &Self) -> Self {
        (&(self * other) + &(other * self)).scale_real(0.5)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M†|` over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = self.data[i * n + j] - self.data[j * n + i].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(dim: usize, seed: f64) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if (i + 2 * j) % 3 != 0 {
                    m.set(i, j, c((i as f64 + seed).sin(), (j as f64 * seed).cos()));
                }
            }
        }
        m
    }

    #[test]
    fn product_matches_naive() {
        let a = sample(7, 0.3);
        let b = sample(7, 1.7);
        let p = &a * &b;
        for i in 0..7 {
            for j in 0..7 {
                let naive: Complex64 = (0..7).map(|k| a.get(i, k) * b.get(k, j)).sum();
                assert!((p.get(i, j) - naive).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn adjoint_and_hermiticity() {
        let a = sample(5, 0.9);
        let h = &a + &a.adjoint();
        assert!(h.hermiticity_residual() < 1e-15);
        assert!(a.hermiticity_residual() > 0.1);
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let a = sample(6, 2.1);
        assert_eq!(a.commutator(&ComplexMatrix::identity(6)).max_abs(), 0.0);
    }
}
