//! The line integrals
//!
//! ```text
//! I±(ρ, z) = ∫₀ᴸ dz' e^{±ikz'} e^{3ik s} / s,   s = [ρ² + (z − z')²]^{1/2}
//! ```
//!
//! evaluated either by phase-partitioned Gauss–Kronrod quadrature or by the
//! leading stationary-phase term.
//!
//! Writing `σ = ±1` and `e = σ(z' − z)`, the phase is
//! `k w(z') = kσz + k g(e)` with `g(e) = e + 3(ρ² + e²)^{1/2}`. `g` is
//! strictly convex with its minimum `√8 ρ` at `e* = −ρ/√8`, which is the
//! stationary point `z'₀ = z − σρ/√8`. The numeric path factors out
//! `e^{ik(σz + √8ρ)}` and integrates `e^{ik h(e)}/s` with `h = g − √8ρ ≥ 0`,
//! computed in a cancellation-free form. Because `h` is monotone on each
//! side of `e*` it can be inverted in closed form, which gives a partition
//! into segments of phase increment at most π.

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI, SQRT_2};


use crate::background::cis;
use crate::error::{require_positive, Error, Result};
use crate::quadrature::{kronrod, refine, Segment, GK21};
use crate::Complex;

/// √8, the stationary value of the phase per unit `kρ`.
pub const SQRT_8: f64 = 2.0 * SQRT_2;

/// Default cap on the number of quadrature segments.
pub const DEFAULT_MAX_SEGMENTS: usize = 1 << 22;

/// Which of the two integrals: `e^{+ikz'}` or `e^{−ikz'}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Geometry of one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseModel {
    /// Distance from the axis, m. Must be positive.
    pub rho: f64,
    /// Observation coordinate along the axis, m.
    pub z: f64,
    /// Wavenumber, m⁻¹.
    pub k: f64,
    /// Integration length L, m.
    pub length: f64,
    pub branch: Branch,
}

impl PhaseModel {
    pub fn new(rho: f64, z: f64, k: f64, length: f64, branch: Branch) -> Result<Self> {
        let rho = require_positive("rho", rho)?;
        let k = require_positive("k", k)?;
        if !z.is_finite() {
            return Err(Error::domain("z", z, "must be finite"));
        }
        if !(length.is_finite() && length >= 0.0) {
            return Err(Error::domain("length", length, "must be finite and >= 0"));
        }
        Ok(PhaseModel {
            rho,
            z,
            k,
            length,
            branch,
        })
    }

    fn sigma(&self) -> f64 {
        self.branch.sign()
    }

    /// Fresnel width `√(ρ/k)` of the stationary-phase zone.
    pub fn fresnel_width(&self) -> f64 {
        (self.rho / self.k).sqrt()
    }

    /// `kρ`.
    pub fn k_rho(&self) -> f64 {
        self.k * self.rho
    }
}

/// Phase `w` and its first two `z'` derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseValue {
    /// `w(z') = σz' + 3s`, m.
    pub w: f64,
    /// `dw/dz'`, dimensionless.
    pub dw: f64,
    /// `d²w/dz'²`, m⁻¹.
    pub d2w: f64,
}

pub fn phase_function(model: &PhaseModel, z_prime: f64) -> PhaseValue {
    let d = z_prime - model.z;
    let s = model.rho.hypot(d);
    PhaseValue {
        w: model.sigma() * z_prime + 3.0 * s,
        dw: model.sigma() + 3.0 * d / s,
        d2w: 3.0 * model.rho * model.rho / (s * s * s),
    }
}

/// Location of the stationary point and whether it lies in `(0, L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub position: f64,
    pub in_support: bool,
}

pub fn stationary_point(model: &PhaseModel) -> StationaryPoint {
    let position = model.z - model.sigma() * model.rho / SQRT_8;
    StationaryPoint {
        position,
        in_support: position > 0.0 && position < model.length,
    }
}

/// `√(π/(√2 kρ))`, the modulus of the stationary-phase contribution.
pub fn asymptotic_modulus(k: f64, rho: f64) -> f64 {
    (PI / (SQRT_2 * k * rho)).sqrt()
}

/// How an [`IntegralResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Numeric,
    Asymptotic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Numeric => "numeric",
            Method::Asymptotic => "asymptotic",
        }
    }
}

/// Value of `I±` with provenance and diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: Complex,
    pub method: Method,
    /// Absolute error estimate. For the numeric path this is the summed
    /// Gauss–Kronrod estimate; for the asymptotic path it is
    /// `(kρ)^{-1/2} √(π/(√2 kρ))`.
    pub error_estimate: f64,
    pub stationary_point: Option<f64>,
    pub in_support: bool,
    /// Stationary point within three Fresnel widths of an endpoint
    /// (asymptotic results only).
    pub low_accuracy: bool,
    /// Quadrature segments used (0 for asymptotic results).
    pub segments: usize,
}

/// Settings for [`eval_numeric_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Relative tolerance, in `(1e-14, 1e-2)`.
    pub tol: f64,
    pub max_segments: usize,
}

impl QuadratureOptions {
    pub fn new(tol: f64) -> Self {
        QuadratureOptions {
            tol,
            max_segments: DEFAULT_MAX_SEGMENTS,
        }
    }
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self::new(1e-9)
    }
}

/// `h(e) = g(e) − √8ρ`, written as `(e − e*)² [(e + e*)/(s + s*) + 3]/(s + s*)`
/// so that it stays accurate at the double zero.
fn excess_phase(rho: f64, e: f64) -> f64 {
    let e_star = -rho / SQRT_8;
    let s_star = 3.0 * rho / SQRT_8;
    let s = rho.hypot(e);
    let d = e - e_star;
    let den = s + s_star;
    d * d * ((e + e_star) / den + 3.0) / den
}

/// Inverse of `h` on the branch left (`e < e*`) or right of the minimum.
fn invert_excess_phase(rho: f64, h: f64, right: bool) -> f64 {
    let a = h + SQRT_8 * rho;
    let root = 3.0 * (h * (h + 2.0 * SQRT_8 * rho)).sqrt();
    if right {
        (root - a) / 8.0
    } else {
        (-a - root) / 8.0
    }
}

/// Splits `[inner, outer]` (monotone side of `h`) into pieces of phase
/// increment at most π. `inner` is the end closer to `e*`.
fn push_partition(
    rho: f64,
    k: f64,
    inner: f64,
    outer: f64,
    right: bool,
    breaks: &mut Vec<f64>,
    budget: usize,
) -> Result<()> {
    let h_in = excess_phase(rho, inner);
    let h_out = excess_phase(rho, outer);
    let pieces = (k * (h_out - h_in).abs() / PI).ceil().max(1.0);
    if pieces > budget as f64 {
        return Err(Error::SegmentBudget {
            required: pieces as u64,
            budget: budget as u64,
        });
    }
    let n = pieces as usize;
    let step = (h_out - h_in) / n as f64;
    breaks.reserve(n + 1);
    breaks.push(inner);
    for j in 1..n {
        breaks.push(invert_excess_phase(rho, h_in + step * j as f64, right));
    }
    breaks.push(outer);
    Ok(())
}

/// Numeric evaluation with the default segment budget.
pub fn eval_numeric(model: &PhaseModel, tol: f64) -> Result<IntegralResult> {
    eval_numeric_with(model, &QuadratureOptions::new(tol))
}

pub fn eval_numeric_with(model: &PhaseModel, options: &QuadratureOptions) -> Result<IntegralResult> {
    let tol = options.tol;
    if !(tol > 1e-14 && tol < 1e-2) {
        return Err(Error::domain("tol", tol, "must lie in (1e-14, 1e-2)"));
    }
    let sp = stationary_point(model);
    let mut result = IntegralResult {
        value: Complex::new(0.0, 0.0),
        method: Method::Numeric,
        error_estimate: 0.0,
        stationary_point: Some(sp.position),
        in_support: sp.in_support,
        low_accuracy: false,
        segments: 0,
    };
    if model.length == 0.0 {
        return Ok(result);
    }

    let (rho, k, sigma) = (model.rho, model.k, model.sigma());
    let (lo, hi) = if sigma > 0.0 {
        (-model.z, model.length - model.z)
    } else {
        (model.z - model.length, model.z)
    };
    let e_star = -rho / SQRT_8;

    // Each side is partitioned outward from e* so that the break sequence
    // stays monotone after the left side is reversed.
    let budget = options.max_segments.max(1);
    let mut left = Vec::new();
    if lo < e_star {
        push_partition(rho, k, hi.min(e_star), lo, false, &mut left, budget)?;
        left.reverse();
    }
    let mut right = Vec::new();
    if hi > e_star {
        push_partition(rho, k, lo.max(e_star), hi, true, &mut right, budget)?;
    }
    let initial = left.len().saturating_sub(1) + right.len().saturating_sub(1);
    if initial > budget {
        return Err(Error::SegmentBudget {
            required: initial as u64,
            budget: budget as u64,
        });
    }

    // Around a centre c the phase is k h(c) + k Δh with
    // Δh = x (1 + 3 (e + c)/(s + s_c)) for e = c + x, free of cancellation.
    let local = |c: f64| {
        let s_c = rho.hypot(c);
        let rotation = cis(k * excess_phase(rho, c));
        move |x: f64| {
            let e = c + x;
            let s = rho.hypot(e);
            rotation * cis(k * x * (1.0 + 3.0 * (e + c) / (s + s_c))) / s
        }
    };
    let phase = |a: f64, b: f64| k * excess_phase(rho, a).max(excess_phase(rho, b));
    let segments: Vec<Segment> = [left, right]
        .iter()
        .flat_map(|breaks| breaks.windows(2))
        .filter(|w| w[1] > w[0])
        .map(|w| Segment {
            a: w[0],
            b: w[1],
            estimate: kronrod(&GK21, &local, w[0], w[1]),
        })
        .collect();

    let refined = refine(&GK21, &local, &phase, segments, tol, 0.0, budget);
    let prefactor = cis(k * (sigma * model.z + SQRT_8 * rho));
    let value = prefactor * refined.value;
    if !refined.converged {
        return Err(Error::NotConverged {
            value,
            error_estimate: refined.error,
            tolerance: tol,
        });
    }
    result.value = value;
    result.error_estimate = refined.error;
    result.segments = initial;
    Ok(result)
}

/// Leading stationary-phase term:
/// `√(π/(√2 kρ)) e^{±ikz + i√8 kρ + iπ/4}` when the stationary point lies in
/// `(0, L)`, exactly zero otherwise.
pub fn eval_asymptotic(model: &PhaseModel) -> IntegralResult {
    let sp = stationary_point(model);
    let modulus = asymptotic_modulus(model.k, model.rho);
    let value = if sp.in_support {
        let phase = model.k * (model.sigma() * model.z + SQRT_8 * model.rho) + FRAC_PI_4;
        cis(phase) * modulus
    } else {
        Complex::new(0.0, 0.0)
    };
    let edge = 3.0 * model.fresnel_width();
    IntegralResult {
        value,
        method: Method::Asymptotic,
        error_estimate: modulus / model.k_rho().sqrt(),
        stationary_point: Some(sp.position),
        in_support: sp.in_support,
        low_accuracy: sp.position.abs() < edge || (sp.position - model.length).abs() < edge,
        segments: 0,
    }
}

/// Dispatches on `method`.
pub fn eval(model: &PhaseModel, method: Method, options: &QuadratureOptions) -> Result<IntegralResult> {
    match method {
        Method::Numeric => eval_numeric_with(model, options),
        Method::Asymptotic => Ok(eval_asymptotic(model)),
    }
}
