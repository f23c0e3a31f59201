//! Run configuration: a JSON file, command-line flags, or both (flags win).

use std::path::{Path, PathBuf};

use evaplab_core::lattice::Boundary;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    PageCurve,
    Paradox,
    NocommVerify,
    LatticeDecay,
    HaarVerify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::PageCurve => "page-curve",
            Command::Paradox => "paradox",
            Command::NocommVerify => "nocomm-verify",
            Command::LatticeDecay => "lattice-decay",
            Command::HaarVerify => "haar-verify",
        }
    }
}

fn empty_object() -> Value {
    Value::Object(Map::new())
}

fn default_output_dir() -> PathBuf {
    PathBuf::from(".")
}

fn default_theta() -> f64 {
    evaplab_core::paradox::DEFAULT_THETA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default = "empty_object")]
    pub params: Value,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_theta")]
    pub theta: f64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            params: empty_object(),
            seed: 0,
            output_dir: default_output_dir(),
            theta: default_theta(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        parse_at(&text, "config")
    }

    /// Typed command parameters; errors name the offending field.
    pub fn params<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        decode(self.params.clone(), "params")
    }

    /// Overlays flag values onto `params`.
    pub fn merge_params(&mut self, overrides: Map<String, Value>) -> Result<(), CliError> {
        let Value::Object(map) = &mut self.params else {
            return Err(CliError::Usage("params: expected a JSON object".into()));
        };
        map.extend(overrides);
        Ok(())
    }
}

fn parse_at<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| pointer_error(what, e))
}

fn decode<T: DeserializeOwned>(value: Value, what: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| pointer_error(what, e))
}

fn pointer_error<E: std::fmt::Display>(what: &str, e: serde_path_to_error::Error<E>) -> CliError {
    let path = e.path().to_string();
    if path == "." {
        CliError::Usage(format!("{what}: {}", e.inner()))
    } else {
        CliError::Usage(format!("{what}.{path}: {}", e.inner()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PageCurveParams {
    pub s_bh: f64,
    pub s_matter: f64,
    pub steps: usize,
    /// Switches to Monte-Carlo mode on `n_evap` qubits.
    pub n_evap: Option<usize>,
    pub n_matter_ref: usize,
    pub trials: usize,
}

impl Default for PageCurveParams {
    fn default() -> Self {
        PageCurveParams {
            s_bh: 10.0,
            s_matter: 0.0,
            steps: 100,
            n_evap: None,
            n_matter_ref: 0,
            trials: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParadoxParams {
    pub theorem: String,
    pub s_bh: f64,
    pub s_matter: f64,
    pub mu: f64,
    pub epsilon: f64,
    pub eta: f64,
    pub log_dim_b: Option<f64>,
    pub steps: usize,
    pub stretched_horizon: bool,
}

impl Default for ParadoxParams {
    fn default() -> Self {
        let t = evaplab_core::paradox::TheoremParams::default();
        ParadoxParams {
            theorem: "t1".into(),
            s_bh: t.s_bh,
            s_matter: t.s_matter,
            mu: t.mu,
            epsilon: t.epsilon,
            eta: t.eta,
            log_dim_b: t.log_dim_b,
            steps: 200,
            stretched_horizon: t.stretched_horizon,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Eq2,
    Eq6,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NocommParams {
    pub samples: usize,
    pub check: Check,
}

impl Default for NocommParams {
    fn default() -> Self {
        NocommParams {
            samples: 500,
            check: Check::Eq6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LatticeParams {
    pub n_sites: usize,
    pub mass: f64,
    pub self_freq: f64,
    pub coupling: f64,
    pub boundary: Boundary,
    pub block_size: usize,
    pub d_max: usize,
}

impl Default for LatticeParams {
    fn default() -> Self {
        LatticeParams {
            n_sites: 60,
            mass: 1.0,
            self_freq: 1.0,
            coupling: 1.0,
            boundary: Boundary::Open,
            block_size: 1,
            d_max: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HaarParams {
    pub bloch_samples: usize,
    pub unitary_dim: usize,
    pub unitary_samples: usize,
}

impl Default for HaarParams {
    fn default() -> Self {
        HaarParams {
            bloch_samples: 10_000,
            unitary_dim: 8,
            unitary_samples: 1000,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c: RunConfig = parse_at(r#"{"command":"paradox"}"#, "config").unwrap();
        assert_eq!(c.command, Command::Paradox);
        assert_eq!(c.seed, 0);
        assert_eq!(c.theta, 0.01);
        let p: ParadoxParams = c.params().unwrap();
        assert_eq!(p, ParadoxParams::default());
    }

    #[test]
    fn errors_point_at_the_field() {
        let c: RunConfig =
            parse_at(r#"{"command":"paradox","params":{"s_bh":"big"}}"#, "config").unwrap();
        let err = c.params::<ParadoxParams>().unwrap_err().to_string();
        assert!(err.contains("params.s_bh"), "{err}");
        let err = parse_at::<RunConfig>(r#"{"command":"paradox","sede":1}"#, "config")
            .unwrap_err()
            .to_string();
        assert!(err.contains("sede"), "{err}");
        assert!(parse_at::<RunConfig>("", "config").is_err());
        assert!(parse_at::<RunConfig>(r#"{"command":"dance"}"#, "config").is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let mut c: RunConfig =
            parse_at(r#"{"command":"lattice-decay","params":{"n_sites":20,"d_max":4}}"#, "config").unwrap();
        let mut o = Map::new();
        o.insert("d_max".into(), Value::from(6));
        c.merge_params(o).unwrap();
        let p: LatticeParams = c.params().unwrap();
        assert_eq!((p.n_sites, p.d_max), (20, 6));
    }
}
