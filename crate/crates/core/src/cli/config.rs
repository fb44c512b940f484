use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Float,
    Rational,
}

/// Every tunable parameter. Each subcommand reads the subset it needs and
/// falls back to its own defaults for the rest.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega2: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Frequencies for checks that sweep several values.
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub omegas: Option<Vec<f64>>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nmax: Option<u32>,
    /// Overrides the default tolerance of the main check.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub l: Option<i64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub truncations: Option<Vec<u32>>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub target: Option<f64>,
    /// Expected value of the headline quantity, checked against `--tol`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub expect: Option<f64>,
    /// Complex amplitude `re,im`.
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub a: Option<Vec<f64>>,
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub b: Option<Vec<f64>>,
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub times: Option<Vec<f64>>,
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub levels: Option<Vec<u32>>,
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub base: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub system: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub ic: Option<Vec<f64>>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rtol: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub atol: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t_probe: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub window: Option<f64>,
    /// Ansatz point `A,B,C`.
    #[arg(long, global = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub abc: Option<Vec<f64>>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub count: Option<usize>,
    /// Artifact path (trajectory CSV or certificate JSON).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub out: Option<PathBuf>,
}

impl Params {
    /// `self` over `base`: any field set here wins.
    pub fn overlay(&self, base: &Params) -> Params {
        let mut merged = to_object(base);
        for (k, v) in to_object(self) {
            if !v.is_null() {
                merged.insert(k, v);
            }
        }
        serde_json::from_value(Value::Object(merged)).expect("merged params deserialize")
    }

    pub fn from_file(path: &Path) -> Result<Params> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidParameter(format!("config {}: {e}", path.display())))
    }
}

fn to_object(p: &Params) -> Map<String, Value> {
    match serde_json::to_value(p).expect("params serialize") {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

/// A fully resolved invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: String,
    pub params: Params,
    pub report: Option<PathBuf>,
}

impl RunConfig {
    /// Canonical form: sorted keys, unset parameters omitted.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("config serializes");
        strip_nulls(&mut v);
        serde_json::to_string(&v).expect("value serializes")
    }

    pub fn from_json(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(e.to_string()))
    }
}

pub(crate) fn strip_nulls(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.retain(|_, x| !x.is_null());
            m.values_mut().for_each(strip_nulls);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_nulls),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = Params {
            omega1: Some(3.0),
            omega2: Some(1.0),
            ..Default::default()
        };
        let flags = Params {
            omega1: Some(5.0),
            nmax: Some(4),
            ..Default::default()
        };
        let m = flags.overlay(&file);
        assert_eq!((m.omega1, m.omega2, m.nmax), (Some(5.0), Some(1.0), Some(4)));
    }

    #[test]
    fn canonical_round_trip() {
        let cfg = RunConfig {
            subcommand: "classical run".into(),
            params: Params {
                ic: Some(vec![1.0, 0.0, 0.1, -2.5e-7]),
                mode: Some(Mode::Rational),
                ..Default::default()
            },
            report: Some("r.json".into()),
        };
        let text = cfg.canonical_json();
        let back = RunConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.canonical_json(), text);
    }

    #[test]
    fn unknown_config_keys_rejected() {
        assert!(serde_json::from_str::<Params>(r#"{"omega3": 1}"#).is_err());
    }
}
