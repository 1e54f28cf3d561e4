use serde::{Deserialize, Serialize};

use jjconf::CheckReport;

/// One failing basis tuple; `indices` are one based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCounterexample {
    pub indices: Vec<usize>,
    pub residual: String,
    pub law: String,
}

/// Pass/fail of a named sub-condition, e.g. `U4` or `omega-cocycle`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub object: String,
    pub property: String,
    pub passed: bool,
    pub counterexamples: Vec<JsonCounterexample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<Condition>,
    pub millis: u64,
}

impl Verdict {
    pub fn from_report(object: &str, property: &str, report: &CheckReport) -> Self {
        Verdict {
            object: object.into(),
            property: property.into(),
            passed: report.passed(),
            counterexamples: report
                .counterexamples()
                .iter()
                .map(|c| JsonCounterexample {
                    indices: c.indices.iter().map(|i| i + 1).collect(),
                    residual: c.render_residual(),
                    law: c.law.clone(),
                })
                .collect(),
            conditions: Vec::new(),
            millis: 0,
        }
    }

    pub fn human(&self) -> String {
        let mut out = format!(
            "{} {}: {}\n",
            self.object,
            self.property,
            if self.passed { "passed" } else { "FAILED" }
        );
        for c in &self.conditions {
            out.push_str(&format!("  {}: {}\n", c.name, if c.passed { "pass" } else { "fail" }));
        }
        for c in &self.counterexamples {
            let idx: Vec<String> = c.indices.iter().map(usize::to_string).collect();
            out.push_str(&format!("  {} at ({}): {}\n", c.law, idx.join(","), c.residual));
        }
        out
    }
}
