//! Physical constants and the natural-Gaussian ↔ SI boundary.
//!
//! Inside the crate ħ = c = 1 and lengths are measured in metres, so every
//! other dimensionful quantity is a power of m⁻¹:
//!
//! | quantity        | natural unit | SI unit  | natural per SI |
//! |-----------------|--------------|----------|----------------|
//! | length          | m            | m        | 1              |
//! | time            | m            | s        | c              |
//! | energy, mass    | m⁻¹          | J        | 1/(ħc)         |
//! | power, force    | m⁻²          | W, N     | 1/(ħc²), 1/(ħc)|
//! | field amplitude | m⁻²          | √W / m   | 1/(c√ħ)        |
//!
//! The SI field amplitude is *defined* through the beam power convention
//! `P = π R² ℰ₀²`: an amplitude of `x` √W/m over an aperture of radius `R`
//! carries `π R² x²` watts. No `c/8π` or time-averaging factor is inserted.

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use core::f64::consts::PI;


use crate::error::{require_non_negative, require_positive, Result};

/// CODATA 2022 recommended values.
pub mod codata {
    /// Fine-structure constant α.
    pub const FINE_STRUCTURE: f64 = 7.297_352_564_3e-3;
    /// Electron mass in kg.
    pub const ELECTRON_MASS_KG: f64 = 9.109_383_713_9e-31;
    /// Speed of light in m/s (exact).
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Planck constant in J·s (exact).
    pub const PLANCK: f64 = 6.626_070_15e-34;
    /// Reduced Planck constant in J·s.
    pub const HBAR: f64 = PLANCK / (2.0 * core::f64::consts::PI);
}

/// Which side of the boundary a number lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    /// ħ = c = 1, Gaussian charge units, metres for length.
    NaturalGaussian,
    /// SI.
    Si,
}

/// Quantities that cross the natural/SI boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Length,
    Time,
    Energy,
    Mass,
    Power,
    Force,
    FieldAmplitude,
}

/// Conversion factors between natural Gaussian units and SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    hbar: f64,
    c: f64,
}

impl UnitSystem {
    /// Unit system built on the given ħ (J·s) and c (m/s).
    pub fn new(hbar_si: f64, c_si: f64) -> Result<Self> {
        Ok(UnitSystem {
            hbar: require_positive("hbar_si", hbar_si)?,
            c: require_positive("c_si", c_si)?,
        })
    }

    /// CODATA ħ and c.
    pub fn codata() -> Self {
        UnitSystem {
            hbar: codata::HBAR,
            c: codata::SPEED_OF_LIGHT,
        }
    }

    pub fn hbar_si(&self) -> f64 {
        self.hbar
    }

    pub fn c_si(&self) -> f64 {
        self.c
    }

    /// How many natural units one SI unit of `quantity` is worth.
    pub fn natural_per_si(&self, quantity: Quantity) -> f64 {
        let (h, c) = (self.hbar, self.c);
        match quantity {
            Quantity::Length => 1.0,
            Quantity::Time => c,
            Quantity::Energy => 1.0 / (h * c),
            Quantity::Mass => c / h,
            Quantity::Power => 1.0 / (h * c * c),
            Quantity::Force => 1.0 / (h * c),
            Quantity::FieldAmplitude => 1.0 / (c * h.sqrt()),
        }
    }

    pub fn to_natural(&self, quantity: Quantity, si_value: f64) -> f64 {
        si_value * self.natural_per_si(quantity)
    }

    pub fn to_si(&self, quantity: Quantity, natural_value: f64) -> f64 {
        natural_value / self.natural_per_si(quantity)
    }

    /// Converts `value` of `quantity` from `from` units to `to` units.
    pub fn convert(&self, quantity: Quantity, value: f64, from: UnitMode, to: UnitMode) -> f64 {
        match (from, to) {
            (UnitMode::Si, UnitMode::NaturalGaussian) => self.to_natural(quantity, value),
            (UnitMode::NaturalGaussian, UnitMode::Si) => self.to_si(quantity, value),
            _ => value,
        }
    }
}

/// Fundamental constants and the scales derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Fine-structure constant.
    pub alpha: f64,
    /// Electron rest energy mₑc², J.
    pub electron_rest_energy_si: f64,
    /// Electron mass in natural units, m⁻¹ (inverse reduced Compton wavelength).
    pub electron_mass: f64,
    /// Speed of light, m/s.
    pub c_si: f64,
    /// Reduced Planck constant, J·s.
    pub hbar_si: f64,
    /// Euler–Heisenberg coupling λ = α²/(45π mₑ⁴), m⁴.
    pub lambda_coupling: f64,
    /// Classical electron radius r₀ = αħ/(mₑc), m.
    pub r0: f64,
    /// Quantum power 𝒫ₑ = mₑ²c⁴/ħ, W.
    pub p_e: f64,
    /// Boundary conversions built on the same ħ and c.
    pub units: UnitSystem,
}

impl PhysicalConstants {
    /// Derives every scale from α and the electron rest energy (J), using
    /// CODATA ħ and c.
    pub fn derive(alpha: f64, electron_rest_energy_si: f64) -> Result<Self> {
        let alpha = require_positive("alpha", alpha)?;
        let rest = require_positive("electron_mass", electron_rest_energy_si)?;
        let units = UnitSystem::codata();
        let (hbar, c) = (units.hbar_si(), units.c_si());

        let electron_mass = units.to_natural(Quantity::Energy, rest);
        let m2 = electron_mass * electron_mass;
        Ok(PhysicalConstants {
            alpha,
            electron_rest_energy_si: rest,
            electron_mass,
            c_si: c,
            hbar_si: hbar,
            lambda_coupling: alpha * alpha / (45.0 * PI * m2 * m2),
            r0: alpha * hbar * c / rest,
            p_e: rest * rest / hbar,
            units,
        })
    }

    /// CODATA 2022 inputs.
    pub fn codata() -> Self {
        let rest = codata::ELECTRON_MASS_KG * codata::SPEED_OF_LIGHT * codata::SPEED_OF_LIGHT;
        Self::derive(codata::FINE_STRUCTURE, rest).expect("CODATA constants are positive")
    }
}

/// Peak field amplitude ℰ₀ (natural units, m⁻²) of a beam carrying
/// `power_si` watts over an aperture of radius `radius` metres, using
/// `P = π R² ℰ₀²`.
pub fn amplitude_from_power(power_si: f64, radius: f64, units: &UnitSystem) -> Result<f64> {
    let power = require_non_negative("power", power_si)?;
    let radius = require_positive("radius", radius)?;
    let power_natural = units.to_natural(Quantity::Power, power);
    Ok((power_natural / (PI * radius * radius)).sqrt())
}

/// Beam power in watts for a natural-unit amplitude over radius `radius`.
pub fn power_from_amplitude(amplitude: f64, radius: f64, units: &UnitSystem) -> f64 {
    units.to_si(Quantity::Power, PI * radius * radius * amplitude * amplitude)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn quoted_scales_from_codata() {
        let k = PhysicalConstants::codata();
        assert!(rel(k.r0, 2.817_940_320_5e-15) < 1e-9, "r0 = {}", k.r0);
        assert!(rel(k.r0, 2.8e-15) < 0.02);
        // mₑ²c⁴/ħ evaluates to 6.36e7 W.
        assert!(rel(k.p_e, 6.3560e7) < 1e-4, "P_e = {}", k.p_e);
    }

    #[test]
    fn coupling_by_hand() {
        let k = PhysicalConstants::codata();
        // inverse reduced Compton wavelength, m⁻¹
        let m: f64 = 1.0 / 3.861_592_674_4e-13;
        let lambda = codata::FINE_STRUCTURE.powi(2) / (45.0 * PI * m.powi(4));
        assert!(rel(k.electron_mass, m) < 1e-9);
        assert!(rel(k.lambda_coupling, lambda) < 1e-8);
        assert!(k.lambda_coupling > 8.0e-57 && k.lambda_coupling < 9.0e-57);
    }

    #[test]
    fn constants_are_reproducible() {
        let a = PhysicalConstants::codata();
        let b = PhysicalConstants::codata();
        assert_eq!(a, b);
        assert_eq!(a.lambda_coupling.to_bits(), b.lambda_coupling.to_bits());
    }

    #[test]
    fn non_positive_inputs_rejected() {
        assert!(PhysicalConstants::derive(0.0, 1.0).is_err());
        assert!(PhysicalConstants::derive(1e-2, -1.0).is_err());
        assert!(PhysicalConstants::derive(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn amplitude_edge_cases() {
        let u = UnitSystem::codata();
        assert_eq!(amplitude_from_power(0.0, 0.1, &u).unwrap(), 0.0);
        let a1 = amplitude_from_power(1.0e5, 0.1, &u).unwrap();
        let a2 = amplitude_from_power(2.0e5, 0.1, &u).unwrap();
        assert!(rel(a2 / a1, 2f64.sqrt()) < 1e-15);
        assert!(amplitude_from_power(1.0, 0.0, &u).is_err());
        assert!(amplitude_from_power(-1.0, 0.1, &u).is_err());
    }

    #[test]
    fn ligo_amplitude() {
        let u = UnitSystem::codata();
        let amp = amplitude_from_power(7.5e5, 0.1, &u).unwrap();
        // √(P/πR²) in √W/m, then divided by c√ħ
        let si = (7.5e5 / (PI * 0.01)).sqrt();
        assert!(rel(u.to_si(Quantity::FieldAmplitude, amp), si) < 1e-14);
        assert!(rel(amp, 1.587_073e12) < 1e-6, "amp = {amp:e}");
    }

    #[test]
    fn mass_and_energy_agree() {
        let u = UnitSystem::codata();
        let from_mass = u.to_natural(Quantity::Mass, codata::ELECTRON_MASS_KG);
        let c = codata::SPEED_OF_LIGHT;
        let from_energy = u.to_natural(Quantity::Energy, codata::ELECTRON_MASS_KG * c * c);
        assert!(rel(from_mass, from_energy) < 1e-15);
    }
}
