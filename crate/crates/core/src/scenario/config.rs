use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::criteria::QuadratureAngles;
use crate::error::{Error, Result};
use crate::gaussian::{BeamsplitterParams, GaussianTwoModeState, LossParams, Mode};

pub const SCENARIO_SCHEMA: &str = "twinbeams-scenario/1";

/// A state preparation (source plus linear-optics pipeline) and what to
/// compute on it.
///
/// ```toml
/// schema = "twinbeams-scenario/1"
///
/// [source]
/// kind = "tmsv"
/// r = 3.0
///
/// [[pipeline]]
/// op = "loss"
/// eta1 = 0.4
/// eta2 = 0.4
///
/// [analysis.sampling]
/// n = 1000000
/// seed = 7
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    pub source: Source,
    #[serde(default)]
    pub pipeline: Vec<Step>,
    #[serde(default)]
    pub analysis: Analysis,
    #[serde(default)]
    pub outputs: Outputs,
    /// Directory that relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Source {
    Vacuum,
    Thermal {
        f1: f64,
        f2: f64,
    },
    Tmsv {
        r: f64,
    },
    Sms {
        mode: Mode,
        s: f64,
        theta: f64,
    },
    /// A state stored as `{"mean": [...], "cov": [[...]]}` JSON.
    StateFile {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    Beamsplitter {
        theta: f64,
        #[serde(default)]
        phi: f64,
    },
    Phase {
        phi1: f64,
        phi2: f64,
    },
    Loss {
        eta1: f64,
        eta2: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    #[serde(default)]
    pub theta_plus: f64,
    #[serde(default = "default_theta_minus")]
    pub theta_minus: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
}

fn default_theta_minus() -> f64 {
    FRAC_PI_2
}

impl Default for Analysis {
    fn default() -> Self {
        Self {
            theta_plus: 0.0,
            theta_minus: FRAC_PI_2,
            sampling: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch: Option<PathBuf>,
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Validation {
        field: field.into(),
        message: message.into(),
    }
}

fn check_finite(field: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(field_error(field, format!("must be finite, got {v}")))
    }
}

impl Scenario {
    pub fn new(source: Source) -> Self {
        Self {
            schema: SCENARIO_SCHEMA.to_string(),
            source,
            pipeline: Vec::new(),
            analysis: Analysis::default(),
            outputs: Outputs::default(),
            base_dir: None,
        }
    }

    pub fn with_step(mut self, step: Step) -> Self {
        self.pipeline.push(step);
        self
    }

    pub fn with_sampling(mut self, n: usize, seed: u64) -> Self {
        self.analysis.sampling = Some(Sampling { n, seed });
        self
    }

    /// Parses and validates a scenario.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let scenario: Scenario =
            toml::from_str(text).map_err(|e| field_error("scenario", e.message().to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut scenario = Self::from_toml_str(&text)?;
        scenario.base_dir = path.parent().map(Path::to_path_buf);
        Ok(scenario)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| field_error("scenario", e.to_string()))
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        match &self.base_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    pub fn angles(&self) -> QuadratureAngles {
        QuadratureAngles {
            theta_plus: self.analysis.theta_plus,
            theta_minus: self.analysis.theta_minus,
        }
    }

    /// Checks every parameter against its operation's preconditions and
    /// names the offending field on failure.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCENARIO_SCHEMA {
            return Err(field_error(
                "schema",
                format!("expected {SCENARIO_SCHEMA:?}, got {:?}", self.schema),
            ));
        }
        match &self.source {
            Source::Vacuum | Source::StateFile { .. } => {}
            Source::Thermal { f1, f2 } => {
                for (name, f) in [("source.f1", *f1), ("source.f2", *f2)] {
                    check_finite(name, f)?;
                    if f < 1.0 {
                        return Err(field_error(
                            name,
                            format!("Fano factor must be >= 1, got {f}"),
                        ));
                    }
                }
            }
            Source::Tmsv { r } => {
                check_finite("source.r", *r)?;
                if *r < 0.0 {
                    return Err(field_error("source.r", format!("must be >= 0, got {r}")));
                }
            }
            Source::Sms { s, theta, .. } => {
                check_finite("source.s", *s)?;
                check_finite("source.theta", *theta)?;
                if s.abs() > 50.0 {
                    return Err(field_error(
                        "source.s",
                        format!("|s| must be <= 50, got {s}"),
                    ));
                }
            }
        }
        for (i, step) in self.pipeline.iter().enumerate() {
            match step {
                Step::Beamsplitter { theta, phi } => {
                    check_finite(&format!("pipeline[{i}].theta"), *theta)?;
                    check_finite(&format!("pipeline[{i}].phi"), *phi)?;
                }
                Step::Phase { phi1, phi2 } => {
                    check_finite(&format!("pipeline[{i}].phi1"), *phi1)?;
                    check_finite(&format!("pipeline[{i}].phi2"), *phi2)?;
                }
                Step::Loss { eta1, eta2 } => {
                    for (name, eta) in [("eta1", *eta1), ("eta2", *eta2)] {
                        if !(0.0..=1.0).contains(&eta) {
                            return Err(field_error(
                                format!("pipeline[{i}].{name}"),
                                format!("transmission must lie in [0, 1], got {eta}"),
                            ));
                        }
                    }
                }
            }
        }
        check_finite("analysis.theta_plus", self.analysis.theta_plus)?;
        check_finite("analysis.theta_minus", self.analysis.theta_minus)?;
        if let Some(sampling) = &self.analysis.sampling {
            if sampling.n < 200 {
                return Err(field_error(
                    "analysis.sampling.n",
                    format!(
                        "at least 200 samples are needed for estimation, got {}",
                        sampling.n
                    ),
                ));
            }
        }
        Ok(())
    }

    pub fn source_label(&self) -> String {
        let source = match &self.source {
            Source::Vacuum => "vacuum".to_string(),
            Source::Thermal { f1, f2 } => format!("thermal({f1}, {f2})"),
            Source::Tmsv { r } => format!("tmsv({r})"),
            Source::Sms { mode, s, theta } => format!("sms({}, {s}, {theta})", u8::from(*mode)),
            Source::StateFile { path } => format!("state_file({})", path.display()),
        };
        self.pipeline.iter().fold(source, |acc, step| {
            let op = match step {
                Step::Beamsplitter { theta, phi } => format!("beamsplitter({theta}, {phi})"),
                Step::Phase { phi1, phi2 } => format!("phase({phi1}, {phi2})"),
                Step::Loss { eta1, eta2 } => format!("loss({eta1}, {eta2})"),
            };
            format!("{acc} -> {op}")
        })
    }

    /// Prepares the source and runs it through the pipeline.
    pub fn build_state(&self) -> Result<GaussianTwoModeState> {
        self.validate()?;
        let mut state = match &self.source {
            Source::Vacuum => GaussianTwoModeState::vacuum(),
            Source::Thermal { f1, f2 } => GaussianTwoModeState::thermal(*f1, *f2)?,
            Source::Tmsv { r } => GaussianTwoModeState::two_mode_squeezed(*r)?,
            Source::Sms { mode, s, theta } => {
                GaussianTwoModeState::single_mode_squeezed(*mode, *s, *theta)?
            }
            Source::StateFile { path } => {
                let path = self.resolve(path);
                let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                GaussianTwoModeState::from_json(&text)?
            }
        };
        for step in &self.pipeline {
            state = match *step {
                Step::Beamsplitter { theta, phi } => {
                    state.apply_beamsplitter(BeamsplitterParams::new(theta, phi))
                }
                Step::Phase { phi1, phi2 } => state.apply_phase(phi1, phi2),
                Step::Loss { eta1, eta2 } => state.apply_loss(LossParams::new(eta1, eta2)?),
            };
        }
        Ok(state)
    }

    /// Sets the numeric parameter at a dotted path such as `source.r`,
    /// `pipeline.0.eta1` or `analysis.theta_plus`.
    pub fn with_param(&self, path: &str, value: f64) -> Result<Scenario> {
        let mut tree = toml::Value::try_from(self).map_err(|e| field_error(path, e.to_string()))?;
        let mut node = &mut tree;
        for key in path.split('.') {
            node = match node {
                toml::Value::Table(t) => t.get_mut(key),
                toml::Value::Array(a) => key.parse::<usize>().ok().and_then(|i| a.get_mut(i)),
                _ => None,
            }
            .ok_or_else(|| field_error(path, "unknown parameter"))?;
        }
        match node {
            toml::Value::Float(v) => *v = value,
            _ => return Err(field_error(path, "not a numeric parameter")),
        }
        let mut updated: Scenario = tree
            .try_into()
            .map_err(|e: toml::de::Error| field_error(path, e.message().to_string()))?;
        updated.base_dir = self.base_dir.clone();
        updated.validate()?;
        Ok(updated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TMSV_LOSS: &str = r#"
schema = "twinbeams-scenario/1"

[source]
kind = "tmsv"
r = 3.0

[[pipeline]]
op = "loss"
eta1 = 0.4
eta2 = 0.4
"#;

    #[test]
    fn parses_and_builds() {
        let s = Scenario::from_toml_str(TMSV_LOSS).unwrap();
        assert_eq!(s.pipeline.len(), 1);
        assert_eq!(s.angles(), QuadratureAngles::default());
        let state = s.build_state().unwrap();
        assert!((state.cov()[(0, 0)] - (0.4 * 6.0f64.cosh() + 0.6)).abs() < 1e-9);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let text = TMSV_LOSS.replace("r = 3.0", "r = 3.0\nsqueeze = 1");
        let err = Scenario::from_toml_str(&text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("squeeze"), "{err}");
        let text = TMSV_LOSS.replace("op = \"loss\"", "op = \"amplifier\"");
        assert!(Scenario::from_toml_str(&text)
            .unwrap_err()
            .to_string()
            .contains("amplifier"));
    }

    #[test]
    fn out_of_range_names_the_field() {
        let text = TMSV_LOSS.replace("eta2 = 0.4", "eta2 = 1.5");
        let err = Scenario::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().starts_with("pipeline[0].eta2"), "{err}");
        let text = TMSV_LOSS.replace("r = 3.0", "r = -1.0");
        let err = Scenario::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().starts_with("source.r"), "{err}");
        let text = TMSV_LOSS.replace("twinbeams-scenario/1", "twinbeams-scenario/0");
        assert!(Scenario::from_toml_str(&text)
            .unwrap_err()
            .to_string()
            .starts_with("schema"));
    }

    #[test]
    fn set_param_by_path() {
        let s = Scenario::from_toml_str(TMSV_LOSS).unwrap();
        let t = s.with_param("pipeline.0.eta1", 0.9).unwrap();
        assert_eq!(
            t.pipeline[0],
            Step::Loss {
                eta1: 0.9,
                eta2: 0.4
            }
        );
        let t = s.with_param("source.r", 0.25).unwrap();
        assert_eq!(t.source, Source::Tmsv { r: 0.25 });
        assert!(s.with_param("source.f1", 2.0).is_err());
        assert!(s.with_param("pipeline.3.eta1", 0.1).is_err());
        assert!(s.with_param("schema", 1.0).is_err());
        let err = s.with_param("pipeline.0.eta1", 2.0).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn toml_round_trip() {
        let s = Scenario::new(Source::Sms {
            mode: Mode::Two,
            s: 0.3,
            theta: 0.1,
        })
        .with_step(Step::Beamsplitter {
            theta: 0.5,
            phi: 0.0,
        })
        .with_sampling(1000, 3);
        let text = s.to_toml_string().unwrap();
        assert_eq!(Scenario::from_toml_str(&text).unwrap(), s);
    }
}
