//! Check outcomes and the JSON run report emitted by the CLI.

use serde::Serialize;

/// Version stamped into every run report so downstream parsers can
/// detect shape changes.
pub const REPORT_SCHEMA: u32 = 1;

/// Outcome of one named check.
///
/// Exact checks verify properties with finitary proofs: a failure means
/// a bug or a broken precondition. Empirical checks sample properties
/// whose general proofs need infinite structures; failures are expected
/// on small playgrounds and always carry witnesses. `Error` marks a
/// check that could not run at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    ExactPass,
    ExactFail,
    EmpiricalPass,
    EmpiricalFail,
    Error,
}

impl CheckStatus {
    pub fn exact(ok: bool) -> CheckStatus {
        if ok {
            CheckStatus::ExactPass
        } else {
            CheckStatus::ExactFail
        }
    }

    pub fn empirical(ok: bool) -> CheckStatus {
        if ok {
            CheckStatus::EmpiricalPass
        } else {
            CheckStatus::EmpiricalFail
        }
    }

    pub fn passed(self) -> bool {
        matches!(self, CheckStatus::ExactPass | CheckStatus::EmpiricalPass)
    }

    /// Whether this status should gate a run (nonzero exit): an exact
    /// failure or a check that errored out.
    pub fn is_exact_failure(self) -> bool {
        matches!(self, CheckStatus::ExactFail | CheckStatus::Error)
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::ExactPass => "exact-pass",
            CheckStatus::ExactFail => "exact-fail",
            CheckStatus::EmpiricalPass => "empirical-pass",
            CheckStatus::EmpiricalFail => "empirical-fail",
            CheckStatus::Error => "error",
        }
    }
}

/// One verifier's findings.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: CheckStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<serde_json::Value>,
}

impl CheckReport {
    pub fn new(check: &str, status: CheckStatus, detail: String) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            status,
            detail,
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<serde_json::Value>) -> CheckReport {
        self.witnesses = witnesses;
        self
    }
}

/// Everything one invocation computed, in emission order.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub playground: Option<String>,
    pub parameters: serde_json::Value,
    /// Plain-language account of what the command verifies; present only
    /// when the caller asked for one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
    pub checks: Vec<CheckReport>,
    /// Wall-clock time; excluded from determinism comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, playground: Option<String>, parameters: serde_json::Value) -> Self {
        RunReport {
            schema: REPORT_SCHEMA,
            command: command.to_string(),
            playground,
            parameters,
            explanation: None,
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
    }

    /// False exactly when some check failed exactly or errored out.
    pub fn all_exact_ok(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_exact_failure())
    }

    /// Human-readable rendering of the same data the JSON carries.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.command);
        if let Some(p) = &self.playground {
            out.push_str(&format!(" [{p}]"));
        }
        out.push('\n');
        if let Some(e) = &self.explanation {
            for line in e.lines() {
                out.push_str(&format!("  | {line}\n"));
            }
        }
        for c in &self.checks {
            out.push_str(&format!("  {:<28} {:<14} {}\n", c.check, c.status.label(), c.detail));
            for w in &c.witnesses {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("  elapsed {ms} ms\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_serialize_in_kebab_case() {
        let s = serde_json::to_string(&CheckStatus::EmpiricalFail).unwrap();
        assert_eq!(s, "\"empirical-fail\"");
        assert_eq!(CheckStatus::ExactPass.label(), "exact-pass");
        assert_eq!(
            serde_json::to_string(&CheckStatus::Error).unwrap(),
            "\"error\""
        );
    }

    #[test]
    fn errored_checks_gate_like_exact_failures() {
        let mut run = RunReport::new("group", None, serde_json::json!({}));
        run.push(CheckReport::new(
            "load",
            CheckStatus::Error,
            "no such file".into(),
        ));
        assert!(!run.all_exact_ok());
    }

    #[test]
    fn exact_failures_gate_the_run() {
        let mut run = RunReport::new("verify", Some("pureset:4".into()), serde_json::json!({}));
        run.push(CheckReport::new("a", CheckStatus::ExactPass, "ok".into()));
        run.push(CheckReport::new(
            "b",
            CheckStatus::EmpiricalFail,
            "2 witnesses".into(),
        ));
        assert!(run.all_exact_ok());
        run.push(CheckReport::new("c", CheckStatus::ExactFail, "broken".into()));
        assert!(!run.all_exact_ok());
        let text = run.render_text();
        assert!(text.contains("empirical-fail"));
        assert!(text.contains("pureset:4"));
    }
}
