use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::fsutil::write_atomic;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Identifier of the claim this check verifies.
    pub anchor: String,
    pub value: Value,
    /// `None` for informational records, which always pass.
    pub tolerance: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub subcommand: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Non-finite floats have no JSON number form; they are recorded as strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(x.to_string())
    }
}

impl Report {
    pub fn new(subcommand: &str) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            inputs: Value::Object(Default::default()),
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).expect("input serializes");
        self.inputs.as_object_mut().unwrap().insert(key.to_string(), v);
    }

    fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// `value ≤ tol`.
    pub fn at_most(&mut self, name: impl Into<String>, anchor: &str, value: f64, tol: f64) {
        let pass = value <= tol;
        self.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            value: num(value),
            tolerance: Some(tol),
            pass,
        });
    }

    /// `value ≥ tol`.
    pub fn at_least(&mut self, name: impl Into<String>, anchor: &str, value: f64, tol: f64) {
        let pass = value >= tol;
        self.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            value: num(value),
            tolerance: Some(tol),
            pass,
        });
    }

    /// A pass/fail predicate with its witnessing value.
    pub fn holds(&mut self, name: impl Into<String>, anchor: &str, value: impl Serialize, pass: bool) {
        let value = serde_json::to_value(value).expect("value serializes");
        self.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            value,
            tolerance: None,
            pass,
        });
    }

    pub fn info(&mut self, name: impl Into<String>, anchor: &str, value: impl Serialize) {
        self.holds(name, anchor, value, true);
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_pass_is_conjunction() {
        let mut r = Report::new("x");
        r.at_most("a", "anchor", 1e-13, 1e-12);
        assert!(r.pass);
        r.at_most("b", "anchor", 1.0, 1e-12);
        assert!(!r.pass);
    }

    #[test]
    fn keys_are_sorted() {
        let mut r = Report::new("x");
        r.input("zeta", 1);
        r.input("alpha", 2);
        r.at_most("c", "anchor", 0.0, 1.0);
        let s = r.to_json();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        let top: Vec<usize> = ["checks", "inputs", "pass", "subcommand", "version"]
            .iter()
            .map(|k| s.find(&format!("\n  \"{k}\"")).unwrap())
            .collect();
        assert!(top.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn infinities_survive() {
        assert_eq!(num(f64::INFINITY), Value::from("inf"));
        assert_eq!(num(0.1), Value::from(0.1));
    }
}
