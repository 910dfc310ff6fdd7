//! Cubic vacuum-polarisation terms and the effective charge and current
//! they induce.
//!
//! Everything here is reported per unit of the coupling λ; the coupling is
//! applied once, when correction fields are turned into observables.

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use core::f64::consts::PI;


use crate::background::{cis, gaussian_profile, BeamScenario, CylPoint};
use crate::{CVec3, Complex};

/// Effective sources of the first-order correction, per unit λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearSources {
    pub delta_e: CVec3,
    pub delta_b: CVec3,
    /// Effective charge density `-(1/4π) ∇·δE`.
    pub rho0: Complex,
    /// Effective current `(1/4π)(∂ₜδE − ∇×δB)`.
    pub j0: CVec3,
}

/// `δE = 2(E² − B²)E + 7(E·B)B`, `δB = 2(E² − B²)B − 7(E·B)E`, with the
/// bilinear (unconjugated) products of the analytic fields.
pub fn delta_fields(e: &CVec3, b: &CVec3) -> (CVec3, CVec3) {
    let two_f = (e.square() - b.square()) * 2.0;
    let seven_g = e.dot(b) * 7.0;
    (e.scale(two_f) + b.scale(seven_g), b.scale(two_f) - e.scale(seven_g))
}

/// Closed-form sources of the standing wave.
///
/// For the background, `E·B = 0` and `E² − B² = 4r e^{-2iωt} U²`, so both
/// terms are pure third harmonics. The current keeps only the terms of
/// order ω: the transverse derivative `∂ₓδB_y` in `(∇×δB)_z` is of relative
/// order `1/(ω w₀)` and is dropped, as is `∇·δE = ∂ₓδE_x`.
pub fn standing_wave_sources(point: CylPoint, t: f64, scenario: &BeamScenario) -> NonlinearSources {
    let u = gaussian_profile(point.rho, scenario);
    let r = scenario.reflection();
    let forward = cis(scenario.k() * point.z);
    let backward = r * forward.conj();
    let common = r * cis(-3.0 * scenario.omega() * t) * (8.0 * u * u * u);
    let zero = Complex::new(0.0, 0.0);

    let ex = common * (forward + backward);
    let by = common * (forward - backward);
    let jx = ex * Complex::new(0.0, -2.0 * scenario.omega()) / (4.0 * PI);
    NonlinearSources {
        delta_e: CVec3::new(ex, zero, zero),
        delta_b: CVec3::new(zero, by, zero),
        rho0: zero,
        j0: CVec3::new(jx, zero, zero),
    }
}

/// Drive constant `C = 16 r ω² ℰ₀³`.
pub fn drive_constant(scenario: &BeamScenario) -> Complex {
    let a = scenario.amplitude();
    scenario.reflection() * (16.0 * scenario.omega().powi(2) * a * a * a)
}
