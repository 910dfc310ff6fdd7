//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed by a plain
//! `cargo test`. The process fails on any unexpected FAIL; criteria listed
//! in `KNOWN_FAILURES` still print FAIL but do not abort the workspace run.

use std::f64::consts::PI;
use std::fs;
use std::process::Command;
use std::time::Instant;

use ehvac::run::{is_monotone, SweepPoint, MONOTONE_NOISE, QUOTED_LIGO_PRESSURE_FACTOR};
use ehvac_core::correction::{cone_geometry, transverse_factor};
use ehvac_core::oscillatory::{asymptotic_modulus, eval_asymptotic, eval_numeric, SQRT_8};
use ehvac_core::pressure::{
    classical_force, cross_section_poynting, order_lambda_flux_average, poynting_correction_end,
    pressure_correction_factor, pressure_report,
};
use ehvac_core::sources::delta_fields;
use ehvac_core::{BeamScenario, Branch, CVec3, Complex, CylPoint, Evaluator, PhaseModel, PhysicalConstants};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criteria expected to fail, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    2,
    "the quoted critical power 6.7e7 W is not m_e^2 c^4 / hbar (6.356e7 W from CODATA)",
)];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn ligo() -> (BeamScenario, PhysicalConstants) {
    let k = PhysicalConstants::codata();
    let s = BeamScenario::from_si(7.5e5, 1e-6, 0.1, 0.1, 4000.0, Complex::new(1.0, 0.0), &k.units).unwrap();
    (s, k)
}

fn random_scenario(rng: &mut StdRng, k: &PhysicalConstants) -> BeamScenario {
    let radius = log_uniform(rng, 1e-3, 0.3);
    let waist = log_uniform(rng, 1e-3, 0.3);
    let length = radius * log_uniform(rng, 0.5, 1e4);
    let r = Complex::from_polar(rng.random_range(0.05..=1.0), rng.random_range(0.0..2.0 * PI));
    BeamScenario::from_si(
        log_uniform(rng, 1.0, 1e6),
        log_uniform(rng, 3e-7, 1e-5),
        waist,
        radius,
        length,
        r,
        &k.units,
    )
    .unwrap()
}

fn cone() -> Outcome {
    let k = PhysicalConstants::codata();
    let mut worst_angle: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    let mut exact_frequency = true;
    for wavelength in [1e-6, 1.064e-6, 5.32e-7] {
        let s = BeamScenario::from_si(1e3, wavelength, 0.01, 0.01, 1.0, Complex::new(1.0, 0.0), &k.units).unwrap();
        let c = cone_geometry(&s);
        worst_angle = worst_angle.max((c.semi_angle - (1.0f64 / 3.0).acos()).abs());
        for d in c.directions {
            let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            worst_norm = worst_norm.max((norm - 1.0).abs());
            worst_angle = worst_angle.max((d[2].abs().acos() - (1.0f64 / 3.0).acos()).abs());
        }
        exact_frequency &= c.harmonic == 3 && c.frequency == 3.0 * s.omega();
    }
    Outcome {
        pass: worst_angle <= 1e-12 && worst_norm <= 1e-15 && exact_frequency,
        detail: format!(
            "semi-angle error {worst_angle:.1e} rad, direction norm error {worst_norm:.1e}, frequency ratio exactly 3: {exact_frequency}"
        ),
    }
}

fn constants() -> Outcome {
    let k = PhysicalConstants::codata();
    let (dr, dp) = (rel(k.r0, 2.8e-15), rel(k.p_e, 6.7e7));
    Outcome {
        pass: dr <= 0.02 && dp <= 0.02,
        detail: format!(
            "r0 = {:.6e} m ({:.2}% off, {}), P_e = {:.6e} W ({:.2}% off, {})",
            k.r0,
            100.0 * dr,
            if dr <= 0.02 { "ok" } else { "out" },
            k.p_e,
            100.0 * dp,
            if dp <= 0.02 { "ok" } else { "out" }
        ),
    }
}

fn stationary_phase() -> Outcome {
    let start = Instant::now();
    let rho = 1e-3;
    let mut devs = Vec::new();
    let mut interior = true;
    let mut errors = Vec::new();
    for wavelength in [1e-5, 1e-6, 1e-7] {
        let k = 2.0 * PI / wavelength;
        let p = SweepPoint::new(k, k * rho, 8.0, None);
        let model = PhaseModel::new(p.rho, p.z, k, p.length, Branch::Plus).unwrap();
        let asym = eval_asymptotic(&model);
        interior &= asym.in_support && !asym.low_accuracy;
        match eval_numeric(&model, 1e-9) {
            Ok(n) => devs.push((k * rho, (n.value - asym.value).norm() / n.value.norm())),
            Err(e) => errors.push(e.to_string()),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let at_design = devs.iter().find(|d| (d.0 - 2.0 * PI * 1e3).abs() < 1e-6).map(|d| d.1);
    let monotone = is_monotone(&devs, MONOTONE_NOISE);
    let list: Vec<String> = devs.iter().map(|(kr, d)| format!("k rho {kr:.3e}: {d:.3e}")).collect();
    Outcome {
        pass: errors.is_empty() && interior && at_design.is_some_and(|d| d <= 0.05) && monotone && secs < 60.0,
        detail: format!(
            "{}; monotone {monotone}; interior support {interior}; {secs:.1} s{}",
            list.join(", "),
            if errors.is_empty() { String::new() } else { format!("; errors: {}", errors.join("; ")) }
        ),
    }
}

/// Adaptive Simpson with Richardson correction on `panels` equal panels, so
/// that a narrow peak cannot hide between the first three samples.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, panels: usize) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
    }
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (lo, hi) = (a + h * i as f64, if i + 1 == panels { b } else { a + h * (i + 1) as f64 });
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            step(f, lo, hi, fa, fm, fb, whole, eps / panels as f64, 40)
        })
        .sum()
}

fn transverse_identity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let waist = log_uniform(&mut rng, 1e-3, 1.0);
        let radius = waist * log_uniform(&mut rng, 1e-2, 30.0);
        let s = BeamScenario::new(1.0, waist, radius, 1.0, 1e6, Complex::new(1.0, 0.0)).unwrap();
        let ring = |r: f64| (-3.0 * (r / waist).powi(2)).exp() * r;
        let scale = radius.min(waist).powi(2);
        let oracle = 3.0 / (4.0 * PI) * 2.0 * PI * simpson(&ring, 0.0, radius, 1e-14 * scale, 64);
        worst = worst.max(rel(transverse_factor(&s), oracle));
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("worst relative difference {worst:.2e} over 100 (R, w0)"),
    }
}

fn random_vec(rng: &mut StdRng) -> CVec3 {
    let scale = log_uniform(rng, 1e-3, 1e3);
    let mut c = || Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale;
    CVec3::new(c(), c(), c())
}

fn source_algebra() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let (mut homogeneity, mut duality): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let (e, b) = (random_vec(&mut rng), random_vec(&mut rng));
        let s = Complex::from_polar(log_uniform(&mut rng, 0.1, 10.0), rng.random_range(0.0..2.0 * PI));
        let (de, db) = delta_fields(&e, &b);
        let (se, sb) = delta_fields(&(e * s), &(b * s));
        let s3 = s * s * s;
        homogeneity = homogeneity
            .max((se - de * s3).norm() / (de * s3).norm())
            .max((sb - db * s3).norm() / (db * s3).norm());
        let (dual_e, _) = delta_fields(&b, &-e);
        duality = duality.max((dual_e + db).norm() / db.norm());
    }
    Outcome {
        pass: homogeneity <= 1e-12 && duality <= 1e-12,
        detail: format!("cubic homogeneity {homogeneity:.2e}, duality {duality:.2e} over 1000 pairs"),
    }
}

fn pressure_consistency() -> Outcome {
    let k = PhysicalConstants::codata();
    let mut rng = StdRng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut exact = true;
    let mut count = 0;
    while count < 100 {
        let s = random_scenario(&mut rng, &k);
        let Ok(factor) = pressure_correction_factor(&s, &k) else { continue };
        let end = poynting_correction_end(&s, &k).unwrap();
        worst = worst.max(rel(factor * classical_force(&s, &k), end));
        let report = pressure_report(&s, &k).unwrap();
        exact &= report.correction_origin == s.reflection().norm_sqr() * report.correction_end;
        count += 1;
    }
    Outcome {
        pass: worst <= 1e-9 && exact,
        detail: format!("factor x 2P/c vs closed form: worst {worst:.2e}; origin = |r|^2 end exactly: {exact}"),
    }
}

fn assembly() -> Outcome {
    let start = Instant::now();
    let k = PhysicalConstants::codata();
    let mut rng = StdRng::seed_from_u64(7);
    let mut scenarios = vec![ligo().0];
    while scenarios.len() < 6 {
        let s = random_scenario(&mut rng, &k);
        if s.length() > s.radius() / SQRT_8 {
            scenarios.push(s);
        }
    }
    let mut worst: f64 = 0.0;
    let mut errors = Vec::new();
    for s in &scenarios {
        match cross_section_poynting(s, &k, &Evaluator::asymptotic(), 1e-12) {
            Ok(f) => worst = worst.max(rel(f, poynting_correction_end(s, &k).unwrap())),
            Err(e) => errors.push(e.to_string()),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: errors.is_empty() && worst <= 1e-9 && secs < 10.0,
        detail: format!(
            "worst relative difference {worst:.2e} over {} scenarios; {secs:.2} s{}",
            scenarios.len(),
            if errors.is_empty() { String::new() } else { format!("; errors: {}", errors.join("; ")) }
        ),
    }
}

fn time_average() -> Outcome {
    let k = PhysicalConstants::codata();
    let s = BeamScenario::from_si(1e3, 1e-6, 1e-3, 1e-3, 8e-3, Complex::from_polar(0.8, 0.4), &k.units).unwrap();
    let mut worst: f64 = 0.0;
    for (rho, z) in [(2e-4, 2e-3), (5e-4, 4e-3), (1e-3, 7e-3), (3e-4, 1e-4)] {
        for samples in [64, 96, 128] {
            let (mean, peak) =
                order_lambda_flux_average(CylPoint::new(rho, 0.3, z), &s, &k, &Evaluator::asymptotic(), samples).unwrap();
            worst = worst.max(mean.abs() / peak);
        }
    }
    Outcome {
        pass: worst <= 1e-10,
        detail: format!("worst |mean|/peak {worst:.2e} (64, 96, 128 samples per period)"),
    }
}

fn ligo_preset() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut codes = Vec::new();
    let start = Instant::now();
    for d in &dirs {
        let status = Command::new(env!("CARGO_BIN_EXE_ehvac"))
            .args(["preset", "ligo", "--out"])
            .arg(d.path())
            .output()
            .unwrap()
            .status;
        codes.push(status.code());
    }
    let secs = start.elapsed().as_secs_f64();
    let read = |i: usize, name: &str| fs::read(dirs[i].path().join(name)).unwrap_or_default();
    let identical = ["report.json", "field.csv"].iter().all(|n| !read(0, n).is_empty() && read(0, n) == read(1, n));
    let report: serde_json::Value = serde_json::from_slice(&read(0, "report.json")).unwrap_or_default();
    let summary = &report["summary"];
    let factor = summary["pressure_correction_factor"].as_f64();
    let ratio = summary["ratio_at_radius_closed_form"].as_f64();
    let quoted = summary["pressure_correction_factor_quoted"].as_f64();
    let (s, k) = ligo();
    let faithful = factor == pressure_correction_factor(&s, &k).ok();
    Outcome {
        pass: codes.iter().all(|c| *c == Some(0))
            && identical
            && faithful
            && ratio.is_some_and(f64::is_finite)
            && quoted == Some(QUOTED_LIGO_PRESSURE_FACTOR)
            && secs < 5.0,
        detail: format!(
            "factor {} vs quoted order {:.0e}; ratio at R {}; bit-identical {identical}; {secs:.2} s",
            factor.map_or("missing".into(), |f| format!("{f:.4e}")),
            QUOTED_LIGO_PRESSURE_FACTOR,
            ratio.map_or("missing".into(), |r| format!("{r:.4e}")),
        ),
    }
}

fn shadow() -> Outcome {
    let start = Instant::now();
    let k = 2.0 * PI / 1e-6;
    let mut worst: f64 = 0.0;
    let mut errors = Vec::new();
    for k_rho in [1e4, 3e4, 1e5] {
        let rho = k_rho / k;
        for widths in [3.0, 5.0, 10.0] {
            let probe = PhaseModel::new(rho, 0.0, k, 8.0 * rho, Branch::Plus).unwrap();
            let z = rho / SQRT_8 - widths * probe.fresnel_width();
            let model = PhaseModel::new(rho, z, k, 8.0 * rho, Branch::Plus).unwrap();
            // a 10% bound needs no more; deep-shadow sums cancel to ~1e-9 of
            // their terms, where double rounding sets the floor
            match eval_numeric(&model, 1e-6) {
                Ok(n) => worst = worst.max(n.value.norm() / asymptotic_modulus(k, rho)),
                Err(e) => errors.push(e.to_string()),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: errors.is_empty() && worst <= 0.1 && secs < 30.0,
        detail: format!(
            "worst |I+|/modulus {worst:.3e} at >= 3 Fresnel widths, k rho in [1e4, 1e5]; {secs:.2} s{}",
            if errors.is_empty() { String::new() } else { format!("; errors: {}", errors.join("; ")) }
        ),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "cone geometry", cone),
        (2, "derived constants", constants),
        (3, "stationary-phase validation", stationary_phase),
        (4, "transverse-factor identity", transverse_identity),
        (5, "source algebra", source_algebra),
        (6, "pressure consistency", pressure_consistency),
        (7, "field/pressure assembly", assembly),
        (8, "time average of cross terms", time_average),
        (9, "ligo preset", ligo_preset),
        (10, "shadow suppression", shadow),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, name, check) in criteria {
        let outcome = check();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict} {name}: {}", outcome.detail);
        match (outcome.pass, known) {
            (true, _) => passed += 1,
            (false, Some((_, why))) => println!("             known failure: {why}"),
            (false, None) => unexpected += 1,
        }
    }
    println!("acceptance: {passed}/10 pass, {unexpected} unexpected failure(s)");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
