//! Zeroth-order standing wave between the beam source and the mirror.
//!
//! The incident beam `e^{ikz}` and its reflection `r e^{-ikz}` share the
//! transverse profile `U(ρ) = ℰ₀ exp(-ρ²/w₀²)`, which does not depend on `z`
//! (infinite Rayleigh range). The electric field is along x̂ and the
//! paraxial magnetic field along ŷ.

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use core::f64::consts::PI;


use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::units::{amplitude_from_power, power_from_amplitude, UnitSystem};
use crate::{CVec3, Complex};

/// Default bound on the collimation metric `1/(ω w₀)`.
pub const DEFAULT_PARAXIAL_THRESHOLD: f64 = 0.1;

/// Beam and interferometer parameters, natural units (lengths in m, ω in m⁻¹,
/// amplitude in m⁻²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamScenario {
    amplitude: f64,
    waist: f64,
    radius: f64,
    length: f64,
    omega: f64,
    reflection: Complex,
}

impl BeamScenario {
    pub fn new(
        amplitude: f64,
        waist: f64,
        radius: f64,
        length: f64,
        omega: f64,
        reflection: Complex,
    ) -> Result<Self> {
        let modulus = reflection.norm();
        if !modulus.is_finite() || modulus > 1.0 + 4.0 * f64::EPSILON {
            return Err(Error::domain("reflection", modulus, "must have modulus <= 1"));
        }
        Ok(BeamScenario {
            amplitude: require_non_negative("amplitude", amplitude)?,
            waist: require_positive("waist", waist)?,
            radius: require_positive("radius", radius)?,
            length: require_positive("length", length)?,
            omega: require_positive("omega", omega)?,
            reflection,
        })
    }

    /// Builds a scenario from SI boundary inputs: power (W), vacuum wavelength
    /// (m), waist, aperture radius and arm length (m).
    pub fn from_si(
        power: f64,
        wavelength: f64,
        waist: f64,
        radius: f64,
        length: f64,
        reflection: Complex,
        units: &UnitSystem,
    ) -> Result<Self> {
        let wavelength = require_positive("wavelength", wavelength)?;
        let amplitude = amplitude_from_power(power, radius, units)?;
        Self::new(amplitude, waist, radius, length, 2.0 * PI / wavelength, reflection)
    }

    /// Peak amplitude ℰ₀, m⁻².
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Beam width w₀, m.
    pub fn waist(&self) -> f64 {
        self.waist
    }

    /// Interferometer radius R, m.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Interferometer length L, m.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Angular frequency ω = k, m⁻¹.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Wavenumber k (equal to ω).
    pub fn k(&self) -> f64 {
        self.omega
    }

    /// Complex reflection coefficient r.
    pub fn reflection(&self) -> Complex {
        self.reflection
    }

    /// Vacuum wavelength λ_L = 2π/ω, m.
    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Beam power `π R² ℰ₀²` in watts.
    pub fn power_si(&self, units: &UnitSystem) -> f64 {
        power_from_amplitude(self.amplitude, self.radius, units)
    }

    /// Collimation metric `1/(ω w₀)`.
    pub fn paraxial_metric(&self) -> f64 {
        1.0 / (self.omega * self.waist)
    }

    /// True when the collimation metric is within `threshold`.
    pub fn is_paraxial(&self, threshold: f64) -> bool {
        self.paraxial_metric() <= threshold
    }

    pub fn with_amplitude(&self, amplitude: f64) -> Result<Self> {
        Self::new(amplitude, self.waist, self.radius, self.length, self.omega, self.reflection)
    }

    pub fn with_reflection(&self, reflection: Complex) -> Result<Self> {
        Self::new(self.amplitude, self.waist, self.radius, self.length, self.omega, reflection)
    }

    pub fn with_length(&self, length: f64) -> Result<Self> {
        Self::new(self.amplitude, self.waist, self.radius, length, self.omega, self.reflection)
    }

    pub fn with_geometry(&self, waist: f64, radius: f64) -> Result<Self> {
        Self::new(self.amplitude, waist, radius, self.length, self.omega, self.reflection)
    }
}

/// Cylindrical position (ρ, φ, z) about the beam axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CylPoint {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
}

impl CylPoint {
    pub fn new(rho: f64, phi: f64, z: f64) -> Self {
        CylPoint { rho, phi, z }
    }

    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        CylPoint {
            rho: x.hypot(y),
            phi: y.atan2(x),
            z,
        }
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        [self.rho * self.phi.cos(), self.rho * self.phi.sin(), self.z]
    }
}

/// Complex E and B at a spacetime point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub e: CVec3,
    pub b: CVec3,
    pub point: CylPoint,
    /// Time in natural units (metres of light travel).
    pub t: f64,
}

/// Transverse profile `U(ρ) = ℰ₀ exp(-ρ²/w₀²)`.
pub fn gaussian_profile(rho: f64, scenario: &BeamScenario) -> f64 {
    let s = rho / scenario.waist;
    scenario.amplitude * (-s * s).exp()
}

/// `e^{iθ}`.
pub(crate) fn cis(theta: f64) -> Complex {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

/// Standing wave `E = e^{-iωt} U (e^{ikz} + r e^{-ikz}) x̂`,
/// `B = e^{-iωt} U (e^{ikz} - r e^{-ikz}) ŷ`.
pub fn linear_field(point: CylPoint, t: f64, scenario: &BeamScenario) -> FieldSample {
    let u = gaussian_profile(point.rho, scenario);
    let time = cis(-scenario.omega * t) * u;
    let forward = cis(scenario.k() * point.z);
    let backward = scenario.reflection * forward.conj();
    let zero = Complex::new(0.0, 0.0);
    FieldSample {
        e: CVec3::new(time * (forward + backward), zero, zero),
        b: CVec3::new(zero, time * (forward - backward), zero),
        point,
        t,
    }
}

/// The two bilinear invariants `(E·B, E² − B²)` of the analytic fields.
pub fn field_invariants(sample: &FieldSample) -> (Complex, Complex) {
    (sample.e.dot(&sample.b), sample.e.square() - sample.b.square())
}
