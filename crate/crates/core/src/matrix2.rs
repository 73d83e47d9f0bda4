//! Closed-form kernels for 2×2 complex matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domains::{Gamma2Point, PentaPoint, TetraPoint};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new(one, zero, zero, one)
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new(d1, zero, zero, d2)
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Mat2::new(self.a11 * c, self.a12 * c, self.a21 * c, self.a22 * c)
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a21 * v[0] + self.a22 * v[1],
        ]
    }

    /// Squared Frobenius norm, i.e. `trace(A* A)`.
    pub fn frobenius_sqr(&self) -> f64 {
        self.a11.norm_sqr() + self.a12.norm_sqr() + self.a21.norm_sqr() + self.a22.norm_sqr()
    }

    pub fn op_norm(&self) -> f64 {
        op_norm(self)
    }

    pub fn spectral_radius(&self) -> f64 {
        spectral_radius(self)
    }

    pub fn eigenvalues(&self) -> [Complex64; 2] {
        quadratic_roots(self.trace(), self.det())
    }
}

/// Largest singular value: `sigma^2 = (T + sqrt(T^2 - 4D)) / 2` with
/// `T = trace(A* A)` and `D = |det A|^2`.
pub fn op_norm(a: &Mat2) -> f64 {
    let t = a.frobenius_sqr();
    let d = a.det().norm_sqr();
    let disc = (t * t - 4.0 * d).max(0.0);
    ((t + disc.sqrt()) / 2.0).sqrt()
}

pub fn spectral_radius(a: &Mat2) -> f64 {
    let [l1, l2] = a.eigenvalues();
    l1.norm().max(l2.norm())
}

/// Roots of `z^2 - s z + p`, computed without cancellation: the larger root
/// comes from `(s ± sqrt(s^2 - 4p)) / 2` with the sign matching `s`, the other
/// from Vieta's product.
pub fn quadratic_roots(s: Complex64, p: Complex64) -> [Complex64; 2] {
    let disc = (s * s - 4.0 * p).sqrt();
    let q = if (s.conj() * disc).re >= 0.0 {
        (s + disc) / 2.0
    } else {
        (s - disc) / 2.0
    };
    if q.norm() == 0.0 {
        return [q, q];
    }
    [q, p / q]
}

/// `(a11, a22, det A)`.
pub fn project_tetra(a: &Mat2) -> TetraPoint {
    TetraPoint::new(a.a11, a.a22, a.det())
}

/// `(a21, tr A, det A)`.
pub fn project_penta(a: &Mat2) -> PentaPoint {
    PentaPoint::new(a.a21, a.trace(), a.det())
}

/// `(tr A, det A)`, the symmetrized eigenvalues.
pub fn project_gamma2(a: &Mat2) -> Gamma2Point {
    Gamma2Point::new(a.trace(), a.det())
}
