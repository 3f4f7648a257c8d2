//! TOML analysis configuration.
//!
//! ```toml
//! [plant]
//! kind = "cyclic"
//! m = 5
//! k = 20.0
//!
//! [options]
//! grid_points = 4096
//!
//! [simulate]
//! horizon = 200.0
//! perturbation = { kind = "allpass", eps = 0.05, dc_block = 0.01 }
//! ```
//!
//! Coefficient lists are lowest degree first.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::{RationalTF, GAIN_TIE_TOL};
use crate::models::{
    cyclic_network, maglev, maglev_compensator, repressilator_checked, CyclicSpec, MaglevSpec,
    MaglevVariant, RepressilatorSpec, TauC,
};
use crate::peaks::PeakOptions;
use crate::rir::{RirOptions, TOL_STRICT};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub plant: PlantConfig,
    #[serde(default)]
    pub options: OptionsConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulate: Option<SimulateConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MaglevForm {
    #[default]
    Full,
    Reduced,
    /// Full model times the phase-lead compensator.
    Compensated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PlantConfig {
    Explicit {
        num: Vec<f64>,
        den: Vec<f64>,
    },
    Cyclic {
        m: u32,
        k: f64,
    },
    Maglev {
        p: f64,
        tau: f64,
        k: f64,
        #[serde(default)]
        form: MaglevForm,
        /// Compensator time constant; defaults to `1/(p²τ)`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tau_c: Option<f64>,
    },
    Repressilator(RepressilatorConfig),
}

/// Repressilator parameters with per-field defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RepressilatorConfig {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub k: f64,
    pub tau: f64,
    pub pade_order: u32,
}

impl Default for RepressilatorConfig {
    fn default() -> Self {
        let s = RepressilatorSpec::default();
        RepressilatorConfig {
            alpha1: s.alpha1,
            alpha2: s.alpha2,
            alpha3: s.alpha3,
            k: s.k,
            tau: s.tau,
            pade_order: s.pade_order,
        }
    }
}

impl From<RepressilatorConfig> for RepressilatorSpec {
    fn from(c: RepressilatorConfig) -> Self {
        RepressilatorSpec {
            alpha1: c.alpha1,
            alpha2: c.alpha2,
            alpha3: c.alpha3,
            k: c.k,
            tau: c.tau,
            pade_order: c.pade_order,
        }
    }
}

impl PlantConfig {
    pub fn family(&self) -> &'static str {
        match self {
            PlantConfig::Explicit { .. } => "explicit",
            PlantConfig::Cyclic { .. } => "cyclic",
            PlantConfig::Maglev { .. } => "maglev",
            PlantConfig::Repressilator(_) => "repressilator",
        }
    }

    /// The plant and any construction notes.
    pub fn build(&self) -> Result<(RationalTF, Vec<String>)> {
        match self {
            PlantConfig::Explicit { num, den } => Ok((
                RationalTF::from_coeffs(num.clone(), den.clone())?,
                Vec::new(),
            )),
            PlantConfig::Cyclic { m, k } => {
                Ok((cyclic_network(&CyclicSpec { m: *m, k: *k })?, Vec::new()))
            }
            PlantConfig::Maglev {
                p,
                tau,
                k,
                form,
                tau_c,
            } => {
                let spec = MaglevSpec {
                    p: *p,
                    tau: *tau,
                    k: *k,
                };
                let g = match form {
                    MaglevForm::Full => maglev(&spec, MaglevVariant::FullThirdOrder)?,
                    MaglevForm::Reduced => maglev(&spec, MaglevVariant::ReducedSecondOrder)?,
                    MaglevForm::Compensated => {
                        let tc = tau_c.map_or(TauC::Auto, TauC::Value);
                        maglev(&spec, MaglevVariant::FullThirdOrder)?
                            .mul(&maglev_compensator(&spec, tc)?)
                    }
                };
                Ok((g, Vec::new()))
            }
            PlantConfig::Repressilator(c) => repressilator_checked(&(*c).into()),
        }
    }

    /// Copy with one named parameter replaced.
    pub fn with_param(&self, name: &str, value: f64) -> Result<PlantConfig> {
        let mut out = self.clone();
        let unknown = || {
            Error::Config(format!(
                "plant kind '{}' has no parameter '{name}'",
                self.family()
            ))
        };
        match &mut out {
            PlantConfig::Explicit { .. } => return Err(unknown()),
            PlantConfig::Cyclic { m, k } => match name {
                "m" => {
                    if value.fract() != 0.0 || value < 1.0 {
                        return Err(Error::Config(format!(
                            "m must be a positive integer, got {value}"
                        )));
                    }
                    *m = value as u32;
                }
                "k" => *k = value,
                _ => return Err(unknown()),
            },
            PlantConfig::Maglev {
                p, tau, k, tau_c, ..
            } => match name {
                "p" => *p = value,
                "tau" => *tau = value,
                "k" => *k = value,
                "tau_c" => *tau_c = Some(value),
                _ => return Err(unknown()),
            },
            PlantConfig::Repressilator(c) => match name {
                "tau" => c.tau = value,
                "k" => c.k = value,
                "alpha1" => c.alpha1 = value,
                "alpha2" => c.alpha2 = value,
                "alpha3" => c.alpha3 = value,
                _ => return Err(unknown()),
            },
        }
        Ok(out)
    }

    pub fn is_integer_param(&self, name: &str) -> bool {
        matches!(self, PlantConfig::Cyclic { .. }) && name == "m"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptionsConfig {
    pub grid_points: usize,
    pub rel_floor: f64,
    pub tol_strict: f64,
    pub gain_tie: f64,
}

impl Default for OptionsConfig {
    fn default() -> Self {
        let p = PeakOptions::default();
        OptionsConfig {
            grid_points: p.grid_points,
            rel_floor: p.rel_floor,
            tol_strict: TOL_STRICT,
            gain_tie: GAIN_TIE_TOL,
        }
    }
}

impl OptionsConfig {
    pub fn rir_options(&self) -> RirOptions {
        RirOptions {
            peaks: PeakOptions {
                grid_points: self.grid_points,
                rel_floor: self.rel_floor,
            },
            tol_strict: self.tol_strict,
            gain_tie: self.gain_tie,
        }
    }
}

/// File names, relative to the output directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub report: String,
    pub freq_csv: String,
    pub time_csv: String,
    pub sweep: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            report: "report.json".into(),
            freq_csv: "freq_response.csv".into(),
            time_csv: "timeseries.csv".into(),
            sweep: "sweep".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    #[default]
    Impulse,
    /// Uniform random initial state, zero input.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub perturbation: PerturbationConfig,
    pub horizon: f64,
    /// Defaults to a fraction of the fastest closed-loop time constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    pub input: InputKind,
    pub seed: u64,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        SimulateConfig {
            perturbation: PerturbationConfig::None,
            horizon: 100.0,
            dt: None,
            input: InputKind::Impulse,
            seed: 0,
        }
    }
}

/// Perturbation closed around the plant for simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PerturbationConfig {
    #[default]
    None,
    /// The all-pass perturbation of the `index`-th peak (0 is global), or
    /// of the certificate when `index` is absent, scaled by `1 + eps` and
    /// optionally DC-blocked by `s/(s + dc_block)`.
    Allpass {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index: Option<usize>,
        #[serde(default)]
        eps: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dc_block: Option<f64>,
    },
    Explicit {
        num: Vec<f64>,
        den: Vec<f64>,
    },
}

impl AnalysisConfig {
    pub fn new(plant: PlantConfig) -> Self {
        AnalysisConfig {
            plant,
            options: OptionsConfig::default(),
            output: OutputConfig::default(),
            simulate: None,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: AnalysisConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let o = &self.options;
        if o.grid_points < 64 {
            return Err(Error::Config(format!(
                "grid_points must be at least 64, got {}",
                o.grid_points
            )));
        }
        for (name, v) in [
            ("rel_floor", o.rel_floor),
            ("tol_strict", o.tol_strict),
            ("gain_tie", o.gain_tie),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if let Some(sim) = &self.simulate {
            if !(sim.horizon > 0.0 && sim.horizon.is_finite()) {
                return Err(Error::Config(format!(
                    "horizon must be positive, got {}",
                    sim.horizon
                )));
            }
            if let Some(dt) = sim.dt {
                if !(dt > 0.0 && dt < sim.horizon) {
                    return Err(Error::Config(format!(
                        "dt must lie in (0, horizon), got {dt}"
                    )));
                }
            }
        }
        Ok(())
    }
}
