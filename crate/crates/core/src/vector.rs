//! Complex Cartesian 3-vectors for analytic-signal fields.

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use core::ops::{Add, Mul, Neg, Sub};


use crate::Complex;

/// A complex 3-vector `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3(pub [Complex; 3]);

impl CVec3 {
    pub const ZERO: CVec3 = CVec3([Complex::new(0.0, 0.0); 3]);

    pub fn new(x: Complex, y: Complex, z: Complex) -> Self {
        CVec3([x, y, z])
    }

    pub fn x(&self) -> Complex {
        self.0[0]
    }

    pub fn y(&self) -> Complex {
        self.0[1]
    }

    pub fn z(&self) -> Complex {
        self.0[2]
    }

    /// Bilinear product `a·b` without conjugation, as used for the field
    /// invariants of analytic signals.
    pub fn dot(&self, other: &CVec3) -> Complex {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    /// Bilinear square `a·a`.
    pub fn square(&self) -> Complex {
        self.dot(self)
    }

    pub fn cross(&self, other: &CVec3) -> CVec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        CVec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn conj(&self) -> CVec3 {
        CVec3(self.0.map(|c| c.conj()))
    }

    pub fn scale(&self, s: Complex) -> CVec3 {
        CVec3(self.0.map(|c| c * s))
    }

    /// Hermitian norm `sqrt(Σ |cᵢ|²)`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, rhs: CVec3) -> CVec3 {
        CVec3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, rhs: CVec3) -> CVec3 {
        CVec3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        CVec3(self.0.map(|c| -c))
    }
}

impl Mul<Complex> for CVec3 {
    type Output = CVec3;
    fn mul(self, rhs: Complex) -> CVec3 {
        self.scale(rhs)
    }
}

impl Mul<f64> for CVec3 {
    type Output = CVec3;
    fn mul(self, rhs: f64) -> CVec3 {
        CVec3(self.0.map(|c| c * rhs))
    }
}
