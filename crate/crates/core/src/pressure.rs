//! Radiation pressure on the end mirrors.
//!
//! To order λ the Poynting flux oscillates at 2ω and averages out; the
//! first time-averaged correction is the order-λ² product of the two
//! correction fields. At the far mirror (z = L) only the right-moving cone
//! contributes and, integrated over the cross-section `0 < ρ < R`,
//!
//! ```text
//! ⟨ΔI(L)⟩ = (16√2/3) π² λ² ℰ₀⁶ |r|² ω³ w₀⁴ (1 − e^{−3(R/w₀)²})² R
//! ```
//!
//! which equals the classical force `2𝒫/c` times a dimensionless factor.

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use core::f64::consts::{PI, SQRT_2};


use crate::background::{linear_field, BeamScenario, CylPoint};
use crate::correction::{correction_at, Evaluator, Terms};
use crate::error::{Error, Result};
use crate::quadrature::integrate_real;
use crate::units::{PhysicalConstants, Quantity};
use crate::{CVec3, Complex};

/// Forces on the mirrors, newtons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureReport {
    /// Classical radiation force `2𝒫/c`.
    pub classical_force: f64,
    /// Time-averaged QED correction at the far mirror (z = L).
    pub correction_end: f64,
    /// Same at the near mirror (z = 0): `|r|²` times `correction_end`.
    pub correction_origin: f64,
    /// `correction_end / classical_force`.
    pub dimensionless_factor: f64,
}

fn check_support(scenario: &BeamScenario) -> Result<()> {
    if scenario.length() > scenario.radius() / 8f64.sqrt() {
        Ok(())
    } else {
        Err(Error::UnsupportedGeometry {
            condition: "length must exceed radius/sqrt(8) for the whole aperture to be in support",
        })
    }
}

fn fill(scenario: &BeamScenario) -> f64 {
    -(-3.0 * (scenario.radius() / scenario.waist()).powi(2)).exp_m1()
}

/// `2𝒫/c`, newtons.
pub fn classical_force(scenario: &BeamScenario, constants: &PhysicalConstants) -> f64 {
    2.0 * scenario.power_si(&constants.units) / constants.c_si
}

/// Closed-form time-averaged correction at z = L, newtons.
pub fn poynting_correction_end(scenario: &BeamScenario, constants: &PhysicalConstants) -> Result<f64> {
    check_support(scenario)?;
    let lambda = constants.lambda_coupling;
    let a = scenario.amplitude();
    let natural = 16.0 * SQRT_2 / 3.0
        * PI
        * PI
        * lambda
        * lambda
        * a.powi(6)
        * scenario.reflection().norm_sqr()
        * scenario.omega().powi(3)
        * scenario.waist().powi(4)
        * fill(scenario).powi(2)
        * scenario.radius();
    Ok(constants.units.to_si(Quantity::Force, natural))
}

/// The dimensionless bracket
/// `(64√2/(3·45²)) |r|² (1 − e^{−3(R/w₀)²})² (r₀/R)⁴ (w₀⁴/(λ_L³ R)) (𝒫/𝒫ₑ)²`,
/// evaluated in SI.
pub fn pressure_correction_factor(scenario: &BeamScenario, constants: &PhysicalConstants) -> Result<f64> {
    check_support(scenario)?;
    let (radius, waist, wavelength) = (scenario.radius(), scenario.waist(), scenario.wavelength());
    let power = scenario.power_si(&constants.units);
    Ok(64.0 * SQRT_2 / (3.0 * 45.0 * 45.0)
        * scenario.reflection().norm_sqr()
        * fill(scenario).powi(2)
        * (constants.r0 / radius).powi(4)
        * waist.powi(4)
        / (wavelength.powi(3) * radius)
        * (power / constants.p_e).powi(2))
}

pub fn pressure_report(scenario: &BeamScenario, constants: &PhysicalConstants) -> Result<PressureReport> {
    let correction_end = poynting_correction_end(scenario, constants)?;
    Ok(PressureReport {
        classical_force: classical_force(scenario, constants),
        correction_end,
        correction_origin: scenario.reflection().norm_sqr() * correction_end,
        dimensionless_factor: pressure_correction_factor(scenario, constants)?,
    })
}

/// `(1/2)|E×B* + E*×B|` for complex amplitudes.
pub fn intensity(e: &CVec3, b: &CVec3) -> f64 {
    0.5 * (e.cross(&b.conj()) + e.conj().cross(b)).norm()
}

/// Order-λ² flux at z = L integrated over `0 < ρ < R`, assembled from the
/// correction fields of `evaluator` (right-moving wave only), newtons.
pub fn cross_section_poynting(
    scenario: &BeamScenario,
    constants: &PhysicalConstants,
    evaluator: &Evaluator,
    rel_tol: f64,
) -> Result<f64> {
    check_support(scenario)?;
    let evaluator = evaluator.with_terms(Terms::RightMoving);
    let zero = Complex::new(0.0, 0.0);
    let failure = core::cell::Cell::new(None);
    let (value, _, converged) = integrate_real(
        |rho| {
            match correction_at(CylPoint::new(rho, 0.0, scenario.length()), 0.0, scenario, constants, &evaluator) {
                Ok(f) => {
                    let e = CVec3::new(f.delta_ex(), zero, zero);
                    let b = CVec3::new(zero, f.delta_by(), zero);
                    2.0 * PI * rho * intensity(&e, &b)
                }
                Err(err) => {
                    failure.set(Some(err));
                    0.0
                }
            }
        },
        0.0,
        scenario.radius(),
        rel_tol,
        10_000,
    );
    if let Some(err) = failure.take() {
        return Err(err);
    }
    if !converged {
        return Err(Error::NotConverged {
            value: Complex::new(value, 0.0),
            error_estimate: f64::NAN,
            tolerance: rel_tol,
        });
    }
    Ok(constants.units.to_si(Quantity::Force, value))
}

/// z-component of the order-λ flux
/// `(1/2)(E₀×ΔB* + E₀*×ΔB + ΔE×B₀* + ΔE*×B₀)` at time `t`, natural units.
pub fn order_lambda_flux(
    point: CylPoint,
    t: f64,
    scenario: &BeamScenario,
    constants: &PhysicalConstants,
    evaluator: &Evaluator,
) -> Result<f64> {
    let background = linear_field(point, t, scenario);
    let f = correction_at(point, t, scenario, constants, evaluator)?;
    let zero = Complex::new(0.0, 0.0);
    let de = CVec3::new(f.delta_ex(), zero, zero);
    let db = CVec3::new(zero, f.delta_by(), zero);
    let (e0, b0) = (background.e, background.b);
    let sum = e0.cross(&db.conj()) + e0.conj().cross(&db) + de.cross(&b0.conj()) + de.conj().cross(&b0);
    Ok(0.5 * sum.z().re)
}

/// Mean and peak magnitude of [`order_lambda_flux`] over one optical period
/// `2π/ω`, sampled at `samples` equally spaced times.
pub fn order_lambda_flux_average(
    point: CylPoint,
    scenario: &BeamScenario,
    constants: &PhysicalConstants,
    evaluator: &Evaluator,
    samples: usize,
) -> Result<(f64, f64)> {
    let period = 2.0 * PI / scenario.omega();
    let n = samples.max(1);
    let mut sum = 0.0;
    let mut peak: f64 = 0.0;
    for j in 0..n {
        let v = order_lambda_flux(point, period * j as f64 / n as f64, scenario, constants, evaluator)?;
        sum += v;
        peak = peak.max(v.abs());
    }
    Ok((sum / n as f64, peak))
}
