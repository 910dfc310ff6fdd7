//! First-order correction fields and the conical third-harmonic emission.
//!
//! With the thin-beam distance `|x − x'| ≈ [ρ² + (z − z')²]^{1/2}` the
//! retarded solution for the electric correction is
//!
//! ```text
//! E₁ = C · (w₀²/4)(1 − e^{−3(R/w₀)²}) · e^{−3iωt} · (I₊ + r I₋)
//! ```
//!
//! and `B₁` is the same with `r → −r` inside the bracket and an overall 1/3.
//! The physical corrections are `ΔE_x = λE₁`, `ΔB_y = λB₁`.

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use core::f64::consts::PI;


use crate::background::{cis, BeamScenario, CylPoint};
use crate::error::{require_positive, Result};
use crate::oscillatory::{
    asymptotic_modulus, eval, Branch, IntegralResult, Method, PhaseModel, QuadratureOptions,
};
use crate::sources::drive_constant;
use crate::units::PhysicalConstants;
use crate::Complex;

/// Which conical waves to superpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Terms {
    /// Both waves, added coherently.
    #[default]
    Both,
    /// Only the `I₊` wave (moving towards +z).
    RightMoving,
    /// Only the `r I₋` wave.
    LeftMoving,
}

/// How to evaluate the integrals and which terms to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluator {
    pub method: Method,
    pub quadrature: QuadratureOptions,
    pub terms: Terms,
}

impl Evaluator {
    pub fn asymptotic() -> Self {
        Evaluator {
            method: Method::Asymptotic,
            quadrature: QuadratureOptions::default(),
            terms: Terms::Both,
        }
    }

    pub fn numeric(tol: f64) -> Self {
        Evaluator {
            method: Method::Numeric,
            quadrature: QuadratureOptions::new(tol),
            terms: Terms::Both,
        }
    }

    pub fn with_terms(mut self, terms: Terms) -> Self {
        self.terms = terms;
        self
    }
}

/// Correction fields at one point.
///
/// `e1` and `b1` are stored per unit λ; [`delta_ex`](Self::delta_ex) and
/// [`delta_by`](Self::delta_by) apply the coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionField {
    pub e1: Complex,
    pub b1: Complex,
    /// Coupling λ, m⁴.
    pub coupling: f64,
    pub method: Method,
    /// Fresnel-zone flag of any contributing asymptotic integral.
    pub low_accuracy: bool,
    pub plus: Option<IntegralResult>,
    pub minus: Option<IntegralResult>,
}

impl CorrectionField {
    /// `ΔE_x = λE₁`, natural units (m⁻²).
    pub fn delta_ex(&self) -> Complex {
        self.e1 * self.coupling
    }

    /// `ΔB_y = λB₁`, natural units (m⁻²).
    pub fn delta_by(&self) -> Complex {
        self.b1 * self.coupling
    }
}

/// `(w₀²/4)(1 − e^{−3(R/w₀)²})`.
pub fn transverse_factor(scenario: &BeamScenario) -> f64 {
    let ratio = scenario.radius() / scenario.waist();
    0.25 * scenario.waist().powi(2) * -(-3.0 * ratio * ratio).exp_m1()
}

fn phase_model(point: &CylPoint, scenario: &BeamScenario, branch: Branch) -> Result<PhaseModel> {
    PhaseModel::new(point.rho, point.z, scenario.k(), scenario.length(), branch)
}

/// Correction fields at `point`, time `t` (natural units).
pub fn correction_at(
    point: CylPoint,
    t: f64,
    scenario: &BeamScenario,
    constants: &PhysicalConstants,
    evaluator: &Evaluator,
) -> Result<CorrectionField> {
    require_positive("rho", point.rho)?;
    let want_plus = evaluator.terms != Terms::LeftMoving;
    let want_minus = evaluator.terms != Terms::RightMoving;
    let integral = |branch| -> Result<IntegralResult> {
        eval(
            &phase_model(&point, scenario, branch)?,
            evaluator.method,
            &evaluator.quadrature,
        )
    };
    let plus = if want_plus { Some(integral(Branch::Plus)?) } else { None };
    let minus = if want_minus { Some(integral(Branch::Minus)?) } else { None };

    let zero = Complex::new(0.0, 0.0);
    let i_plus = plus.map_or(zero, |r| r.value);
    let r_i_minus = minus.map_or(zero, |r| r.value) * scenario.reflection();

    let amplitude =
        drive_constant(scenario) * transverse_factor(scenario) * cis(-3.0 * scenario.omega() * t);
    let low_accuracy = plus.is_some_and(|r| r.low_accuracy) || minus.is_some_and(|r| r.low_accuracy);
    Ok(CorrectionField {
        e1: amplitude * (i_plus + r_i_minus),
        b1: amplitude * (i_plus - r_i_minus) / 3.0,
        coupling: constants.lambda_coupling,
        method: evaluator.method,
        low_accuracy,
        plus,
        minus,
    })
}

/// `|ΔE_x|/ℰ₀` in the closed form quoted for general units:
///
/// ```text
/// (4π/45)(r₀/R)²(w₀/λ_L)(1 − e^{−3(R/w₀)²}) √(λ_L/(2√2 ρ)) (𝒫/𝒫ₑ)
/// ```
///
/// evaluated with SI inputs. This expression is smaller than the one-sided
/// magnitude of [`correction_at`] by exactly `π λ_L / (4 w₀)`; see
/// [`field_ratio`] for the value implied by the field itself.
pub fn dimensionless_ratio(scenario: &BeamScenario, constants: &PhysicalConstants, rho: f64) -> Result<f64> {
    let rho = require_positive("rho", rho)?;
    let (radius, waist, wavelength) = (scenario.radius(), scenario.waist(), scenario.wavelength());
    let fill = -(-3.0 * (radius / waist).powi(2)).exp_m1();
    let power = scenario.power_si(&constants.units);
    Ok(4.0 * PI / 45.0
        * (constants.r0 / radius).powi(2)
        * (waist / wavelength)
        * fill
        * (wavelength / (2.0 * core::f64::consts::SQRT_2 * rho)).sqrt()
        * (power / constants.p_e))
}

/// One-sided `|ΔE_x|/ℰ₀` of the asymptotic field: a single conical wave
/// in support, `λ|C|(w₀²/4)(1 − e^{−3(R/w₀)²}) √(π/(√2 kρ)) / ℰ₀`.
pub fn field_ratio(scenario: &BeamScenario, constants: &PhysicalConstants, rho: f64) -> Result<f64> {
    let rho = require_positive("rho", rho)?;
    let a = scenario.amplitude();
    let drive_over_amplitude = 16.0 * scenario.reflection().norm() * scenario.omega().powi(2) * a * a;
    Ok(constants.lambda_coupling
        * drive_over_amplitude
        * transverse_factor(scenario)
        * asymptotic_modulus(scenario.k(), rho))
}

/// Propagation directions and frequency of the generated waves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGeometry {
    /// Unit vectors `(√8 e_ρ ± e_z)/3`, components in `(e_ρ, e_φ, e_z)`.
    pub directions: [[f64; 3]; 2],
    /// Opening semi-angle arccos(1/3), radians.
    pub semi_angle: f64,
    /// Harmonic order of the generated waves.
    pub harmonic: u32,
    /// Angular frequency `harmonic · ω`, m⁻¹.
    pub frequency: f64,
}

pub fn cone_geometry(scenario: &BeamScenario) -> ConeGeometry {
    let radial = 8f64.sqrt() / 3.0;
    let axial = 1.0 / 3.0;
    ConeGeometry {
        directions: [[radial, 0.0, axial], [radial, 0.0, -axial]],
        semi_angle: axial.acos(),
        harmonic: 3,
        frequency: 3.0 * scenario.omega(),
    }
}
