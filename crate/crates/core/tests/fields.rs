//! Background fields and sources against finite-difference oracles.

use ehvac_core::background::{gaussian_profile, linear_field, BeamScenario, CylPoint};
use ehvac_core::sources::{delta_fields, standing_wave_sources};
use ehvac_core::{CVec3, Complex};

/// Collimation 1/(ωw₀) = 1e-4.
fn scenario(r: Complex) -> BeamScenario {
    BeamScenario::new(1.3, 0.05, 0.05, 2.0, 2.0e5, r).unwrap()
}

fn e_at(s: &BeamScenario, x: f64, y: f64, z: f64, t: f64) -> CVec3 {
    linear_field(CylPoint::from_cartesian(x, y, z), t, s).e
}

fn sources_at(s: &BeamScenario, x: f64, y: f64, z: f64, t: f64) -> (CVec3, CVec3) {
    let f = linear_field(CylPoint::from_cartesian(x, y, z), t, s);
    delta_fields(&f.e, &f.b)
}

const POINTS: [(f64, f64, f64, f64); 5] = [
    (0.0, 0.0, 0.1, 0.0),
    (0.01, -0.004, 0.73, 1.1e-5),
    (-0.02, 0.015, 1.37, -3.3e-5),
    (0.004, 0.03, 0.002, 2.0e-6),
    (0.03, 0.03, 1.999, 0.0),
];

#[test]
fn paraxial_b_matches_curl_of_e() {
    let s = scenario(Complex::from_polar(0.8, 1.1));
    let h = 1.0e-3 / s.k();
    for &(x, y, z, t) in &POINTS {
        let dz = (e_at(&s, x, y, z + h, t) - e_at(&s, x, y, z - h, t)) * (0.5 / h);
        let dy = (e_at(&s, x, y + h, z, t) - e_at(&s, x, y - h, z, t)) * (0.5 / h);
        let curl = CVec3::new(Complex::new(0.0, 0.0), dz.x(), -dy.x());
        let b_fd = curl * (Complex::new(0.0, 1.0) * s.omega()).inv();
        let b = linear_field(CylPoint::from_cartesian(x, y, z), t, &s).b;
        let scale = gaussian_profile(x.hypot(y), &s) * 1.8;
        assert!((b_fd - b).norm() <= 1e-2 * scale, "at ({x},{y},{z})");
    }
}

#[test]
fn current_matches_finite_differences() {
    let s = scenario(Complex::from_polar(1.0, -0.4));
    let om = s.omega();
    let h = 1.0e-3 / om;
    for &(x, y, z, t) in &POINTS {
        let dt = (sources_at(&s, x, y, z, t + h).0 - sources_at(&s, x, y, z, t - h).0) * (0.5 / h);
        let b = |x: f64, y: f64, z: f64| sources_at(&s, x, y, z, t).1;
        let dz_by = (b(x, y, z + h) - b(x, y, z - h)) * (0.5 / h);
        let dx_by = (b(x + h, y, z) - b(x - h, y, z)) * (0.5 / h);
        // ∇×(δB_y ŷ) = (−∂z δB_y, 0, ∂x δB_y)
        let curl = CVec3::new(-dz_by.y(), Complex::new(0.0, 0.0), dx_by.y());
        let j_fd = (dt - curl) * (1.0 / (4.0 * std::f64::consts::PI));
        let j = standing_wave_sources(CylPoint::from_cartesian(x, y, z), t, &s).j0;
        let u = gaussian_profile(x.hypot(y), &s);
        let scale = 16.0 * om * u.powi(3) * 2.0 / (4.0 * std::f64::consts::PI);
        assert!((j_fd - j).norm() <= 1e-3 * scale, "at ({x},{y},{z}): {}", (j_fd - j).norm() / scale);
    }
}

#[test]
fn source_divergence_is_transverse_order_only() {
    let s = scenario(Complex::from_polar(1.0, 0.0));
    let h = 1.0e-6;
    for &(x, y, z, t) in &POINTS {
        let de = |x: f64, y: f64, z: f64| sources_at(&s, x, y, z, t).0;
        let div = (de(x + h, y, z).x() - de(x - h, y, z).x()) / (2.0 * h)
            + (de(x, y + h, z).y() - de(x, y - h, z).y()) / (2.0 * h)
            + (de(x, y, z + h).z() - de(x, y, z - h).z()) / (2.0 * h);
        let here = de(x, y, z).x();
        // exact transverse remainder ∂ₓU³ = −6x/w₀² U³
        let analytic = here * (-6.0 * x / s.waist().powi(2));
        let scale = 8.0 * gaussian_profile(x.hypot(y), &s).powi(3) * 2.0;
        assert!((div - analytic).norm() <= 1e-5 * scale / s.waist());
        // relative to the order-ω terms it is suppressed by 1/(ω w₀)
        assert!(div.norm() <= 6.0 * s.paraxial_metric() * s.omega() * scale);
    }
}
