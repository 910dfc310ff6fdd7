//! Euler–Heisenberg vacuum corrections for two counter-propagating collimated
//! light beams.
//!
//! The crate evaluates the standing-wave background inside an interferometer
//! arm, the cubic vacuum-polarisation terms it drives, the third-harmonic
//! correction field radiated along the cone `cos θ = 1/3`, and the resulting
//! order-λ² correction to the radiation pressure on the end mirrors.
//!
//! All internal arithmetic uses natural Gaussian units (ħ = c = 1, α = e²)
//! with the metre as the unit of length, so wavenumbers, masses and
//! frequencies are all in m⁻¹. SI only appears at the boundary, through
//! [`units::UnitSystem`].
//!
//! The crate is `no_std` and only needs `alloc` (for the adaptive quadrature
//! work list).

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod background;
pub mod correction;
mod error;
pub mod oscillatory;
pub mod pressure;
pub mod quadrature;
pub mod sources;
pub mod units;
pub mod vector;

pub use background::{BeamScenario, CylPoint, FieldSample};
pub use correction::{ConeGeometry, CorrectionField, Evaluator, Terms};
pub use error::{Error, Result};
pub use oscillatory::{Branch, IntegralResult, Method, PhaseModel, QuadratureOptions};
pub use pressure::PressureReport;
pub use sources::NonlinearSources;
pub use units::{PhysicalConstants, UnitSystem};
pub use vector::CVec3;

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
