//! Structured results of the checkers in [`crate::verify`].

use serde::Serialize;
use serde_json::Value;

/// One inequality or identity tested by a checker.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub description: String,
    /// The bound or expected value, as exact text.
    pub bound: String,
    pub observed: String,
    pub pass: bool,
}

/// The outcome of one checker run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Echo of the inputs as a JSON object.
    pub inputs: Value,
    pub assertions: Vec<Assertion>,
    pub witness: Option<Value>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str, inputs: Value) -> Self {
        CheckReport { name: name.to_string(), inputs, assertions: Vec::new(), witness: None, notes: Vec::new() }
    }

    /// True when every assertion holds.
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn assert(
        &mut self,
        description: impl Into<String>,
        bound: impl ToString,
        observed: impl ToString,
        pass: bool,
    ) {
        self.assertions.push(Assertion {
            description: description.into(),
            bound: bound.to_string(),
            observed: observed.to_string(),
            pass,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Descriptions of the failed assertions.
    pub fn failures(&self) -> Vec<&str> {
        self.assertions.iter().filter(|a| !a.pass).map(|a| a.description.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_all_assertions_pass() {
        let mut r = CheckReport::new("demo", serde_json::json!({"n_max": 2}));
        assert!(r.passed());
        r.assert("n=0: 1 <= 2", 1, 2, true);
        assert!(r.passed());
        r.assert("n=1: 3 <= 2", 3, 2, false);
        assert!(!r.passed());
        assert_eq!(r.failures(), vec!["n=1: 3 <= 2"]);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["assertions"][1]["pass"], false);
        assert_eq!(json["inputs"]["n_max"], 2);
    }
}
