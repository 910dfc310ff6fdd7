//! Command execution. Every command produces an [`Outcome`]: a JSON report
//! plus zero or more tables. Grid points are evaluated in parallel and
//! collected in grid order, so repeated runs are byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use ehvac_core::correction::{self, correction_at, CorrectionField, Evaluator, Terms};
use ehvac_core::oscillatory::{self, eval, eval_asymptotic, eval_numeric_with, Branch, IntegralResult, Method};
use ehvac_core::pressure::{self, PressureReport};
use ehvac_core::units::Quantity;
use ehvac_core::{BeamScenario, Complex, CylPoint, Error as CoreError, PhaseModel, PhysicalConstants};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, Mode, OutputConfig, ScenarioConfig};
use crate::error::CliError;
use crate::numfmt::to_json;
use crate::table::{Cell, Table};

/// Order of magnitude quoted in the literature for the relative pressure
/// correction of the 4 km interferometer arm.
pub const QUOTED_LIGO_PRESSURE_FACTOR: f64 = 1e-33;

/// Allowed growth between consecutive validation deviations before the
/// sweep is flagged as non-monotone.
pub const MONOTONE_NOISE: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Field,
    Pressure,
    Integrals,
    Validate,
    Preset(String),
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::Field => "field".into(),
            Command::Pressure => "pressure".into(),
            Command::Integrals => "integrals".into(),
            Command::Validate => "validate".into(),
            Command::Preset(name) => format!("preset {name}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsEcho {
    pub alpha: f64,
    pub electron_rest_energy_j: f64,
    pub electron_mass_per_m: f64,
    pub hbar_j_s: f64,
    pub c_m_per_s: f64,
    pub lambda_coupling_m4: f64,
    pub classical_electron_radius_m: f64,
    pub critical_power_w: f64,
}

impl From<&PhysicalConstants> for ConstantsEcho {
    fn from(k: &PhysicalConstants) -> Self {
        ConstantsEcho {
            alpha: k.alpha,
            electron_rest_energy_j: k.electron_rest_energy_si,
            electron_mass_per_m: k.electron_mass,
            hbar_j_s: k.hbar_si,
            c_m_per_s: k.c_si,
            lambda_coupling_m4: k.lambda_coupling,
            classical_electron_radius_m: k.r0,
            critical_power_w: k.p_e,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub wavelength_m: f64,
    pub wavenumber_per_m: f64,
    pub power_w: f64,
    pub amplitude_sqrt_w_per_m: f64,
    pub paraxial_metric: f64,
    pub fresnel_width_at_radius_m: f64,
    /// Closed-form `|ΔE_x|/ℰ₀` at `ρ = R`.
    pub ratio_at_radius_closed_form: f64,
    /// One-sided `|ΔE_x|/ℰ₀` at `ρ = R` from the asymptotic field.
    pub ratio_at_radius_from_field: f64,
    pub cone_semi_angle_rad: f64,
    pub cone_semi_angle_deg: f64,
    pub harmonic: u32,
    pub generated_wavelength_m: f64,
    pub classical_force_n: f64,
    pub correction_force_end_n: Option<f64>,
    pub correction_force_origin_n: Option<f64>,
    pub pressure_correction_factor: Option<f64>,
    pub pressure_correction_factor_quoted: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssembledForce {
    pub method: &'static str,
    pub correction_force_end_n: f64,
    pub relative_difference_to_closed_form: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PressureSection {
    pub classical_force_n: f64,
    pub correction_force_end_n: f64,
    pub correction_force_origin_n: f64,
    pub pressure_correction_factor: f64,
    pub assembled: Vec<AssembledForce>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSection {
    pub points: usize,
    pub monotone: bool,
    pub noise_allowance: f64,
    pub max_relative_deviation: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub rho_m: f64,
    pub z_m: f64,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<&'static str>,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: &'static str,
    pub scenario: ScenarioConfig,
    pub constants: ConstantsEcho,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pressure: Option<PressureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    pub warnings: Vec<String>,
    pub failures: Vec<Failure>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub tables: Vec<Table>,
}

impl Outcome {
    pub fn is_partial(&self) -> bool {
        !self.report.failures.is_empty()
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().chain(&self.report.tables).find(|t| t.name == name)
    }

    /// Writes the tables and `report.json` into `dir` and returns the paths
    /// written. With [`Format::Json`] the tables are embedded in the report.
    pub fn write(&mut self, dir: &Path, format: Format) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        match format {
            Format::Csv => {
                for table in &self.tables {
                    let name = format!("{}.csv", table.name);
                    let path = dir.join(&name);
                    fs::write(&path, table.to_csv())?;
                    self.report.outputs.push(name);
                    written.push(path);
                }
            }
            Format::Json => self.report.tables.append(&mut self.tables),
        }
        self.report.outputs.push("report.json".into());
        let path = dir.join("report.json");
        fs::write(&path, to_json(&self.report)?)?;
        written.push(path);
        Ok(written)
    }
}

/// Shared state of one run.
struct Context {
    cfg: ScenarioConfig,
    scenario: BeamScenario,
    constants: PhysicalConstants,
}

impl Context {
    fn evaluator(&self, method: Method) -> Evaluator {
        Evaluator {
            method,
            quadrature: self.cfg.quadrature(),
            terms: Terms::Both,
        }
    }

    fn amplitude_si(&self, natural: Complex) -> Complex {
        natural * self.constants.units.to_si(Quantity::FieldAmplitude, 1.0)
    }

    fn grid_points(&self) -> Result<Vec<(f64, f64)>, CliError> {
        let grid = self.cfg.grid()?;
        let zs = grid.z_m.values();
        Ok(grid
            .rho_m
            .values()
            .into_iter()
            .flat_map(|rho| zs.iter().map(move |&z| (rho, z)))
            .collect())
    }
}

/// Runs `command` on a configuration that has already had command-line
/// overrides applied. Nothing is written to disk.
pub fn execute(command: &Command, cfg: ScenarioConfig, format: Format) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let constants = PhysicalConstants::codata();
    let scenario = cfg.scenario(&constants)?;
    let mut echo = cfg.clone();
    echo.output = OutputConfig {
        dir: None,
        format: Some(format),
    };
    let ctx = Context {
        cfg,
        scenario,
        constants,
    };

    let (summary, mut warnings) = summarize(&ctx)?;
    let mut report = Report {
        command: command.label(),
        status: "ok",
        scenario: echo,
        constants: ConstantsEcho::from(&ctx.constants),
        summary,
        pressure: None,
        validation: None,
        warnings: Vec::new(),
        failures: Vec::new(),
        outputs: Vec::new(),
        tables: Vec::new(),
    };

    let tables = match command {
        Command::Field | Command::Preset(_) => field(&ctx, &mut report, &mut warnings)?,
        Command::Integrals => integrals(&ctx, &mut report, &mut warnings)?,
        Command::Pressure => {
            pressure_command(&ctx, &mut report, &mut warnings)?;
            Vec::new()
        }
        Command::Validate => validate(&ctx, &mut report, &mut warnings)?,
    };

    if !report.failures.is_empty() {
        report.status = "partial";
    }
    report.warnings = warnings;
    Ok(Outcome { report, tables })
}

fn summarize(ctx: &Context) -> Result<(Summary, Vec<String>), CliError> {
    let (s, k) = (&ctx.scenario, &ctx.constants);
    let mut warnings = Vec::new();
    if !s.is_paraxial(ctx.cfg.paraxial_threshold) {
        warnings.push(format!(
            "beam is not paraxial: 1/(k w0) = {:e} exceeds threshold {:e}",
            s.paraxial_metric(),
            ctx.cfg.paraxial_threshold
        ));
    }
    let report = match pressure::pressure_report(s, k) {
        Ok(r) => Some(r),
        Err(e @ CoreError::UnsupportedGeometry { .. }) => {
            warnings.push(format!("pressure correction not evaluated: {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let cone = correction::cone_geometry(s);
    let summary = Summary {
        wavelength_m: s.wavelength(),
        wavenumber_per_m: s.k(),
        power_w: s.power_si(&k.units),
        amplitude_sqrt_w_per_m: k.units.to_si(Quantity::FieldAmplitude, s.amplitude()),
        paraxial_metric: s.paraxial_metric(),
        fresnel_width_at_radius_m: (s.radius() / s.k()).sqrt(),
        ratio_at_radius_closed_form: correction::dimensionless_ratio(s, k, s.radius())?,
        ratio_at_radius_from_field: correction::field_ratio(s, k, s.radius())?,
        cone_semi_angle_rad: cone.semi_angle,
        cone_semi_angle_deg: cone.semi_angle.to_degrees(),
        harmonic: cone.harmonic,
        generated_wavelength_m: 2.0 * std::f64::consts::PI / cone.frequency,
        classical_force_n: pressure::classical_force(s, k),
        correction_force_end_n: report.map(|r| r.correction_end),
        correction_force_origin_n: report.map(|r| r.correction_origin),
        pressure_correction_factor: report.map(|r| r.dimensionless_factor),
        pressure_correction_factor_quoted: QUOTED_LIGO_PRESSURE_FACTOR,
    };
    Ok((summary, warnings))
}

/// Splits a per-point error into a recorded failure (non-convergence) or a
/// fatal error.
fn classify(err: CoreError, failure: impl FnOnce(String) -> Failure) -> Result<Failure, CliError> {
    if err.is_convergence() {
        Ok(failure(err.to_string()))
    } else {
        Err(err.into())
    }
}

fn fresnel_warning(warnings: &mut Vec<String>, count: usize) {
    if count > 0 {
        warnings.push(format!(
            "{count} value(s) flagged low_accuracy: stationary point within 3 Fresnel widths of an end of the source region"
        ));
    }
}

fn relative(diff: f64, reference: f64) -> Cell {
    if reference > 0.0 {
        Cell::Num(diff / reference)
    } else {
        Cell::Missing
    }
}

const FIELD_COLUMNS: &[&str] = &["rho_m", "z_m", "re_dEx", "im_dEx", "re_dBy", "im_dBy", "method", "low_accuracy"];

const FIELD_DEVIATION_COLUMNS: &[&str] = &[
    "rho_m",
    "z_m",
    "abs_dev_dEx_sqrt_w_per_m",
    "rel_dev_dEx",
    "abs_dev_dBy_sqrt_w_per_m",
    "rel_dev_dBy",
    "low_accuracy",
];

fn field(ctx: &Context, report: &mut Report, warnings: &mut Vec<String>) -> Result<Vec<Table>, CliError> {
    let t = ctx.constants.units.to_natural(Quantity::Time, ctx.cfg.grid()?.t_s);
    let methods = ctx.cfg.mode.methods();
    let tasks: Vec<(f64, f64, Method)> = ctx
        .grid_points()?
        .into_iter()
        .flat_map(|(rho, z)| methods.iter().map(move |&m| (rho, z, m)))
        .collect();
    let results: Vec<Result<CorrectionField, CoreError>> = tasks
        .par_iter()
        .map(|&(rho, z, m)| correction_at(CylPoint::new(rho, 0.0, z), t, &ctx.scenario, &ctx.constants, &ctx.evaluator(m)))
        .collect();

    let mut table = Table::new("field", FIELD_COLUMNS);
    let mut low = 0;
    for (&(rho, z, m), result) in tasks.iter().zip(&results) {
        match result {
            Ok(f) => {
                let (de, db) = (ctx.amplitude_si(f.delta_ex()), ctx.amplitude_si(f.delta_by()));
                low += usize::from(f.low_accuracy);
                table.push(vec![
                    rho.into(),
                    z.into(),
                    de.re.into(),
                    de.im.into(),
                    db.re.into(),
                    db.im.into(),
                    m.as_str().into(),
                    f.low_accuracy.into(),
                ]);
            }
            Err(e) => report.failures.push(classify(e.clone(), |message| Failure {
                rho_m: rho,
                z_m: z,
                method: m.as_str(),
                branch: None,
                message,
            })?),
        }
    }
    fresnel_warning(warnings, low);

    let mut tables = vec![table];
    if ctx.cfg.mode == Mode::Both {
        let mut dev = Table::new("field_deviation", FIELD_DEVIATION_COLUMNS);
        for (pair, task) in results.chunks(2).zip(tasks.chunks(2)) {
            if let [Ok(n), Ok(a)] = pair {
                let (rho, z, _) = task[0];
                let dex = ctx.amplitude_si(n.delta_ex() - a.delta_ex()).norm();
                let dby = ctx.amplitude_si(n.delta_by() - a.delta_by()).norm();
                dev.push(vec![
                    rho.into(),
                    z.into(),
                    dex.into(),
                    relative(dex, ctx.amplitude_si(n.delta_ex()).norm()),
                    dby.into(),
                    relative(dby, ctx.amplitude_si(n.delta_by()).norm()),
                    a.low_accuracy.into(),
                ]);
            }
        }
        tables.push(dev);
    }
    Ok(tables)
}

const INTEGRAL_COLUMNS: &[&str] = &[
    "rho_m",
    "z_m",
    "branch",
    "method",
    "re_I",
    "im_I",
    "error_estimate",
    "stationary_point_m",
    "in_support",
    "low_accuracy",
    "segments",
];

const INTEGRAL_DEVIATION_COLUMNS: &[&str] = &["rho_m", "z_m", "branch", "abs_dev", "rel_dev", "in_support", "low_accuracy"];

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Plus => "plus",
        Branch::Minus => "minus",
    }
}

fn integrals(ctx: &Context, report: &mut Report, warnings: &mut Vec<String>) -> Result<Vec<Table>, CliError> {
    let methods = ctx.cfg.mode.methods();
    let opts = ctx.cfg.quadrature();
    let (k, length) = (ctx.scenario.k(), ctx.scenario.length());
    let tasks: Vec<(f64, f64, Branch, Method)> = ctx
        .grid_points()?
        .into_iter()
        .flat_map(|(rho, z)| {
            [Branch::Plus, Branch::Minus]
                .into_iter()
                .flat_map(move |b| methods.iter().map(move |&m| (rho, z, b, m)))
        })
        .collect();
    let results: Vec<Result<IntegralResult, CoreError>> = tasks
        .par_iter()
        .map(|&(rho, z, b, m)| eval(&PhaseModel::new(rho, z, k, length, b)?, m, &opts))
        .collect();

    let mut table = Table::new("integrals", INTEGRAL_COLUMNS);
    let mut low = 0;
    for (&(rho, z, b, m), result) in tasks.iter().zip(&results) {
        match result {
            Ok(r) => {
                low += usize::from(r.low_accuracy);
                table.push(vec![
                    rho.into(),
                    z.into(),
                    branch_name(b).into(),
                    m.as_str().into(),
                    r.value.re.into(),
                    r.value.im.into(),
                    r.error_estimate.into(),
                    r.stationary_point.into(),
                    r.in_support.into(),
                    r.low_accuracy.into(),
                    Cell::Int(r.segments as u64),
                ]);
            }
            Err(e) => report.failures.push(classify(e.clone(), |message| Failure {
                rho_m: rho,
                z_m: z,
                method: m.as_str(),
                branch: Some(branch_name(b)),
                message,
            })?),
        }
    }
    fresnel_warning(warnings, low);

    let mut tables = vec![table];
    if ctx.cfg.mode == Mode::Both {
        let mut dev = Table::new("integrals_deviation", INTEGRAL_DEVIATION_COLUMNS);
        for (pair, task) in results.chunks(2).zip(tasks.chunks(2)) {
            if let [Ok(n), Ok(a)] = pair {
                let (rho, z, b, _) = task[0];
                let diff = (n.value - a.value).norm();
                dev.push(vec![
                    rho.into(),
                    z.into(),
                    branch_name(b).into(),
                    diff.into(),
                    relative(diff, n.value.norm()),
                    a.in_support.into(),
                    a.low_accuracy.into(),
                ]);
            }
        }
        tables.push(dev);
    }
    Ok(tables)
}

/// The closed form is a far-zone result, so the cross-section assembly always
/// uses the asymptotic field. A numeric assembly would nest an adaptive
/// radial quadrature around one oscillatory integral per node.
fn pressure_command(ctx: &Context, report: &mut Report, warnings: &mut Vec<String>) -> Result<(), CliError> {
    let closed: PressureReport = pressure::pressure_report(&ctx.scenario, &ctx.constants)?;
    if ctx.cfg.mode != Mode::Asymptotic {
        warnings.push("pressure: cross-section assembly uses the asymptotic field regardless of mode".into());
    }
    let force = pressure::cross_section_poynting(
        &ctx.scenario,
        &ctx.constants,
        &ctx.evaluator(Method::Asymptotic),
        ctx.cfg.tolerance,
    )?;
    report.pressure = Some(PressureSection {
        classical_force_n: closed.classical_force,
        correction_force_end_n: closed.correction_end,
        correction_force_origin_n: closed.correction_origin,
        pressure_correction_factor: closed.dimensionless_factor,
        assembled: vec![AssembledForce {
            method: Method::Asymptotic.as_str(),
            correction_force_end_n: force,
            relative_difference_to_closed_form: (force - closed.correction_end).abs() / closed.correction_end.abs(),
        }],
    });
    Ok(())
}

const VALIDATION_COLUMNS: &[&str] = &[
    "k_rho",
    "rho_m",
    "z_m",
    "length_m",
    "re_numeric",
    "im_numeric",
    "re_asymptotic",
    "im_asymptotic",
    "deviation",
    "deviation_kind",
    "in_support",
    "segments",
];

/// One entry of the asymptotic-versus-numeric sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepPoint {
    pub k_rho: f64,
    pub rho: f64,
    pub z: f64,
    pub length: f64,
}

impl SweepPoint {
    /// Geometry for a given `kρ`: the stationary point of `I₊` sits at
    /// mid-length unless `z_over_rho` pins the observation point.
    pub fn new(k: f64, k_rho: f64, length_over_rho: f64, z_over_rho: Option<f64>) -> Self {
        let rho = k_rho / k;
        let length = length_over_rho * rho;
        let z = z_over_rho.map_or(0.5 * length + rho / oscillatory::SQRT_8, |f| f * rho);
        SweepPoint { k_rho, rho, z, length }
    }
}

/// Relative deviation in support, `|I_num|` in the shadow (where the
/// asymptotic value is exactly zero).
pub fn sweep_deviation(numeric: &IntegralResult, asymptotic: &IntegralResult) -> (f64, &'static str) {
    if asymptotic.in_support {
        ((numeric.value - asymptotic.value).norm() / numeric.value.norm(), "relative")
    } else {
        (numeric.value.norm(), "absolute_modulus")
    }
}

/// True when no deviation grows by more than `noise` relative to the one
/// before it, in order of increasing `kρ`.
pub fn is_monotone(deviations: &[(f64, f64)], noise: f64) -> bool {
    let mut sorted = deviations.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    sorted.windows(2).all(|w| w[1].1 <= (1.0 + noise) * w[0].1)
}

fn validate(ctx: &Context, report: &mut Report, warnings: &mut Vec<String>) -> Result<Vec<Table>, CliError> {
    let v = &ctx.cfg.validate;
    let k = ctx.scenario.k();
    let opts = ctx.cfg.quadrature();
    let points: Vec<SweepPoint> = v
        .k_rho
        .iter()
        .map(|&kr| SweepPoint::new(k, kr, v.length_over_rho, v.z_over_rho))
        .collect();
    let results: Vec<Result<(IntegralResult, IntegralResult), CoreError>> = points
        .par_iter()
        .map(|p| {
            let model = PhaseModel::new(p.rho, p.z, k, p.length, Branch::Plus)?;
            Ok((eval_numeric_with(&model, &opts)?, eval_asymptotic(&model)))
        })
        .collect();

    let mut table = Table::new("validation", VALIDATION_COLUMNS);
    let mut relative_devs = Vec::new();
    for (p, result) in points.iter().zip(&results) {
        match result {
            Ok((n, a)) => {
                let (dev, kind) = sweep_deviation(n, a);
                if kind == "relative" {
                    relative_devs.push((p.k_rho, dev));
                }
                table.push(vec![
                    p.k_rho.into(),
                    p.rho.into(),
                    p.z.into(),
                    p.length.into(),
                    n.value.re.into(),
                    n.value.im.into(),
                    a.value.re.into(),
                    a.value.im.into(),
                    dev.into(),
                    kind.into(),
                    a.in_support.into(),
                    Cell::Int(n.segments as u64),
                ]);
            }
            Err(e) => report.failures.push(classify(e.clone(), |message| Failure {
                rho_m: p.rho,
                z_m: p.z,
                method: Method::Numeric.as_str(),
                branch: Some("plus"),
                message,
            })?),
        }
    }
    let monotone = is_monotone(&relative_devs, MONOTONE_NOISE);
    if !monotone {
        warnings.push("validation deviations do not decrease with k rho".into());
    }
    report.validation = Some(ValidationSection {
        points: points.len(),
        monotone,
        noise_allowance: MONOTONE_NOISE,
        max_relative_deviation: relative_devs.iter().map(|d| d.1).reduce(f64::max),
    });
    Ok(vec![table])
}
