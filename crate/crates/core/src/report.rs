//! Verification records and the JSON envelope emitted by the CLI.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    NumericPass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExactPass => "exact-pass",
            Status::NumericPass => "numeric-pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub paper_ref: String,
    pub status: Status,
    pub witness: Value,
}

impl ClaimResult {
    pub fn exact(claim: impl Into<String>, anchor: &str, ok: bool, witness: Value) -> Self {
        ClaimResult {
            claim: claim.into(),
            paper_ref: anchor.to_string(),
            status: if ok { Status::ExactPass } else { Status::Fail },
            witness,
        }
    }

    pub fn numeric(claim: impl Into<String>, anchor: &str, ok: bool, witness: Value) -> Self {
        ClaimResult {
            claim: claim.into(),
            paper_ref: anchor.to_string(),
            status: if ok { Status::NumericPass } else { Status::Fail },
            witness,
        }
    }

    pub fn not_applicable(claim: impl Into<String>, anchor: &str, why: &str) -> Self {
        ClaimResult {
            claim: claim.into(),
            paper_ref: anchor.to_string(),
            status: Status::NotApplicable,
            witness: Value::String(why.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        !self.status.is_fail()
    }
}

pub fn all_pass(results: &[ClaimResult]) -> bool {
    results.iter().all(|r| r.passed())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Vec<ClaimResult>,
    pub timing: Value,
}

impl ReportEnvelope {
    pub fn new(command: &str, inputs: Value, results: Vec<ClaimResult>, seconds: f64) -> Self {
        ReportEnvelope {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            results,
            timing: serde_json::json!({ "wall_seconds": seconds }),
        }
    }

    pub fn all_pass(&self) -> bool {
        all_pass(&self.results)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# {} (tpsgeo {})\n\n", self.command, self.tool_version));
        s.push_str(&format!("inputs: `{}`\n\n", self.inputs));
        s.push_str("| claim | ref | status | witness |\n|---|---|---|---|\n");
        for r in &self.results {
            let mut w = r.witness.to_string();
            if w.len() > 120 {
                w.truncate(117);
                w.push_str("...");
            }
            s.push_str(&format!(
                "| {} | {} | {} | `{}` |\n",
                r.claim.replace('|', "\\|"),
                r.paper_ref,
                r.status.as_str(),
                w.replace('|', "\\|")
            ));
        }
        let fails = self.results.iter().filter(|r| r.status.is_fail()).count();
        s.push_str(&format!(
            "\n{} results, {} failed, {}\n",
            self.results.len(),
            fails,
            self.timing
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serializes_kebab() {
        let r = ClaimResult::exact("x", "plumbing", true, Value::Null);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "exact-pass");
        let f = ClaimResult::numeric("y", "plumbing", false, Value::from(1.0));
        assert_eq!(serde_json::to_value(&f).unwrap()["status"], "fail");
        let n = ClaimResult::not_applicable("z", "plumbing", "skip");
        assert_eq!(serde_json::to_value(&n).unwrap()["status"], "not-applicable");
    }

    #[test]
    fn markdown_has_table_rows() {
        let env = ReportEnvelope::new(
            "demo",
            Value::Null,
            vec![ClaimResult::exact("a|b", "plumbing", true, Value::Null)],
            0.0,
        );
        let md = env.to_markdown();
        assert!(md.contains("| a\\|b | plumbing | exact-pass |"));
    }
}
