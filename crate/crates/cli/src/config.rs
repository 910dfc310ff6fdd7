//! Scenario configuration: one JSON document, unknown keys rejected.

use std::path::Path;

use ehvac_core::oscillatory::{Method, QuadratureOptions, DEFAULT_MAX_SEGMENTS};
use ehvac_core::units::Quantity;
use ehvac_core::{BeamScenario, Complex, PhysicalConstants};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Numeric,
    #[default]
    Asymptotic,
    Both,
}

impl Mode {
    pub fn methods(self) -> &'static [Method] {
        match self {
            Mode::Numeric => &[Method::Numeric],
            Mode::Asymptotic => &[Method::Asymptotic],
            Mode::Both => &[Method::Numeric, Method::Asymptotic],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    #[default]
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reflection {
    pub modulus: f64,
    #[serde(default)]
    pub phase_rad: f64,
}

/// Beam parameters in SI. Exactly one of `power_w` and
/// `amplitude_sqrt_w_per_m` must be given; they are related by
/// `P = π R² ℰ₀²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude_sqrt_w_per_m: Option<f64>,
    pub wavelength_m: f64,
    pub waist_m: f64,
    pub radius_m: f64,
    pub length_m: f64,
    pub reflection: Reflection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    /// Evenly spaced values; a single point sits at `start`.
    pub fn values(&self) -> Vec<f64> {
        if self.count <= 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub rho_m: Range,
    pub z_m: Range,
    #[serde(default)]
    pub t_s: f64,
}

/// Settings of the `validate` sweep. Each entry of `k_rho` sets
/// `ρ = kρ/k`; the integration length is `length_over_rho · ρ` and the
/// observation point defaults to the one placing the stationary point of
/// `I₊` at mid-length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateConfig {
    #[serde(default = "default_k_rho")]
    pub k_rho: Vec<f64>,
    #[serde(default = "default_length_over_rho")]
    pub length_over_rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_over_rho: Option<f64>,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        ValidateConfig {
            k_rho: default_k_rho(),
            length_over_rho: default_length_over_rho(),
            z_over_rho: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub beam: BeamConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_max_segments")]
    pub max_segments: usize,
    #[serde(default = "default_paraxial_threshold")]
    pub paraxial_threshold: f64,
    #[serde(default)]
    pub validate: ValidateConfig,
    #[serde(default, skip_serializing_if = "is_default_output")]
    pub output: OutputConfig,
}

fn default_k_rho() -> Vec<f64> {
    vec![1.0e2, 1.0e3, 1.0e4]
}

fn default_length_over_rho() -> f64 {
    8.0
}

fn default_tolerance() -> f64 {
    1e-9
}

fn default_max_segments() -> usize {
    DEFAULT_MAX_SEGMENTS
}

fn default_paraxial_threshold() -> f64 {
    ehvac_core::background::DEFAULT_PARAXIAL_THRESHOLD
}

fn is_default_output(o: &OutputConfig) -> bool {
    o == &OutputConfig::default()
}

fn positive(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::invalid(field, format!("must be > 0 (got {v})")))
    }
}

fn finite(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::invalid(field, format!("must be finite (got {v})")))
    }
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Field-level validation of every constraint the runner relies on.
    pub fn validate(&self) -> Result<(), CliError> {
        let b = &self.beam;
        match (b.power_w, b.amplitude_sqrt_w_per_m) {
            (Some(p), None) => positive("beam.power_w", p)?,
            (None, Some(a)) => positive("beam.amplitude_sqrt_w_per_m", a)?,
            _ => {
                return Err(CliError::invalid(
                    "beam",
                    "exactly one of power_w and amplitude_sqrt_w_per_m is required",
                ))
            }
        }
        positive("beam.wavelength_m", b.wavelength_m)?;
        positive("beam.waist_m", b.waist_m)?;
        positive("beam.radius_m", b.radius_m)?;
        positive("beam.length_m", b.length_m)?;
        let m = b.reflection.modulus;
        if !(m.is_finite() && (0.0..=1.0).contains(&m)) {
            return Err(CliError::invalid(
                "beam.reflection.modulus",
                format!("must lie in [0, 1] (got {m})"),
            ));
        }
        finite("beam.reflection.phase_rad", b.reflection.phase_rad)?;

        if let Some(grid) = &self.grid {
            for (name, range) in [("grid.rho_m", &grid.rho_m), ("grid.z_m", &grid.z_m)] {
                if range.count < 1 {
                    return Err(CliError::invalid(format!("{name}.count"), "must be >= 1"));
                }
                finite(&format!("{name}.start"), range.start)?;
                finite(&format!("{name}.stop"), range.stop)?;
            }
            positive("grid.rho_m.start", grid.rho_m.start)?;
            if grid.rho_m.count > 1 {
                positive("grid.rho_m.stop", grid.rho_m.stop)?;
            }
            finite("grid.t_s", grid.t_s)?;
        }

        if !(self.tolerance > 1e-14 && self.tolerance < 1e-2) {
            return Err(CliError::invalid(
                "tolerance",
                format!("must lie in (1e-14, 1e-2) (got {})", self.tolerance),
            ));
        }
        if self.max_segments < 1 {
            return Err(CliError::invalid("max_segments", "must be >= 1"));
        }
        positive("paraxial_threshold", self.paraxial_threshold)?;

        let v = &self.validate;
        if v.k_rho.is_empty() {
            return Err(CliError::invalid("validate.k_rho", "sweep list is empty"));
        }
        for (i, &kr) in v.k_rho.iter().enumerate() {
            positive(&format!("validate.k_rho[{i}]"), kr)?;
        }
        positive("validate.length_over_rho", v.length_over_rho)?;
        if let Some(z) = v.z_over_rho {
            finite("validate.z_over_rho", z)?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<&GridConfig, CliError> {
        self.grid
            .as_ref()
            .ok_or_else(|| CliError::invalid("grid", "required for this command"))
    }

    pub fn reflection(&self) -> Complex {
        Complex::from_polar(self.beam.reflection.modulus, self.beam.reflection.phase_rad)
    }

    /// Natural-unit scenario for the core library.
    pub fn scenario(&self, constants: &PhysicalConstants) -> Result<BeamScenario, CliError> {
        let b = &self.beam;
        let units = &constants.units;
        let scenario = match (b.power_w, b.amplitude_sqrt_w_per_m) {
            (Some(p), _) => BeamScenario::from_si(
                p,
                b.wavelength_m,
                b.waist_m,
                b.radius_m,
                b.length_m,
                self.reflection(),
                units,
            )?,
            (None, Some(a)) => BeamScenario::new(
                units.to_natural(Quantity::FieldAmplitude, a),
                b.waist_m,
                b.radius_m,
                b.length_m,
                2.0 * std::f64::consts::PI / b.wavelength_m,
                self.reflection(),
            )?,
            (None, None) => {
                return Err(CliError::invalid("beam", "power_w or amplitude_sqrt_w_per_m is required"))
            }
        };
        Ok(scenario)
    }

    pub fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions {
            tol: self.tolerance,
            max_segments: self.max_segments,
        }
    }
}

/// Built-in named scenarios.
pub mod presets {
    use super::*;

    pub const NAMES: &[&str] = &["ligo"];

    /// 750 kW circulating power at 1000 nm, R = w₀ = 10 cm, |r| = 1, 4 km arm.
    pub fn ligo() -> ScenarioConfig {
        ScenarioConfig {
            beam: BeamConfig {
                power_w: Some(7.5e5),
                amplitude_sqrt_w_per_m: None,
                wavelength_m: 1.0e-6,
                waist_m: 0.1,
                radius_m: 0.1,
                length_m: 4000.0,
                reflection: Reflection {
                    modulus: 1.0,
                    phase_rad: 0.0,
                },
            },
            grid: Some(GridConfig {
                rho_m: Range {
                    start: 0.01,
                    stop: 0.1,
                    count: 10,
                },
                z_m: Range {
                    start: 0.0,
                    stop: 4000.0,
                    count: 3,
                },
                t_s: 0.0,
            }),
            mode: Mode::Asymptotic,
            tolerance: default_tolerance(),
            max_segments: default_max_segments(),
            paraxial_threshold: default_paraxial_threshold(),
            validate: ValidateConfig::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn by_name(name: &str) -> Option<ScenarioConfig> {
        match name {
            "ligo" => Some(ligo()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "beam": {
            "power_w": 1000.0, "wavelength_m": 1e-6, "waist_m": 0.01,
            "radius_m": 0.01, "length_m": 1.0,
            "reflection": {"modulus": 1.0}
        }
    }"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = ScenarioConfig::from_json(MINIMAL).unwrap();
        c.validate().unwrap();
        assert_eq!(c.mode, Mode::Asymptotic);
        assert_eq!(c.tolerance, 1e-9);
        assert_eq!(c.validate.k_rho, vec![1e2, 1e3, 1e4]);
    }

    #[test]
    fn unknown_keys_rejected() {
        let typo = MINIMAL.replace("\"waist_m\"", "\"waste_m\": 1.0, \"waist_m\"");
        let err = ScenarioConfig::from_json(&typo).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("waste_m"));
    }

    #[test]
    fn field_level_messages() {
        let mut c = ScenarioConfig::from_json(MINIMAL).unwrap();
        c.beam.radius_m = -1.0;
        let err = c.validate().unwrap_err();
        assert!(err.to_string().contains("beam.radius_m"), "{err}");
        assert_eq!(err.exit_code(), 2);

        let mut c = ScenarioConfig::from_json(MINIMAL).unwrap();
        c.validate.k_rho.clear();
        assert!(c.validate().unwrap_err().to_string().contains("validate.k_rho"));

        let mut c = ScenarioConfig::from_json(MINIMAL).unwrap();
        c.beam.amplitude_sqrt_w_per_m = Some(1.0);
        assert!(c.validate().is_err());

        let mut c = ScenarioConfig::from_json(MINIMAL).unwrap();
        c.grid = Some(GridConfig {
            rho_m: Range { start: 0.0, stop: 0.1, count: 3 },
            z_m: Range { start: 0.0, stop: 1.0, count: 1 },
            t_s: 0.0,
        });
        assert!(c.validate().unwrap_err().to_string().contains("grid.rho_m.start"));
    }

    #[test]
    fn range_values() {
        let r = Range { start: 1.0, stop: 2.0, count: 3 };
        assert_eq!(r.values(), vec![1.0, 1.5, 2.0]);
        let single = Range { start: 0.3, stop: 9.0, count: 1 };
        assert_eq!(single.values(), vec![0.3]);
    }

    #[test]
    fn amplitude_and_power_inputs_agree() {
        let k = PhysicalConstants::codata();
        let by_power = ScenarioConfig::from_json(MINIMAL).unwrap();
        let mut by_amp = by_power.clone();
        let amp = (1000.0 / (std::f64::consts::PI * 1e-4)).sqrt();
        by_amp.beam.power_w = None;
        by_amp.beam.amplitude_sqrt_w_per_m = Some(amp);
        let a = by_power.scenario(&k).unwrap().amplitude();
        let b = by_amp.scenario(&k).unwrap().amplitude();
        assert!((a - b).abs() < 1e-14 * a);
    }

    #[test]
    fn ligo_preset_is_valid() {
        presets::ligo().validate().unwrap();
    }
}
