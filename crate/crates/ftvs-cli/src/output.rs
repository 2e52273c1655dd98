//! Run reports: the JSON document a run emits and its text rendering.

use serde::{Deserialize, Serialize};

use ftvs_core::{CheckReport, Verdict};

use crate::scenario::Scenario;

pub const SCHEMA_VERSION: u32 = 1;

/// Everything one invocation produced. `config` echoes the scenario with
/// every default filled in, so a report is reproducible on its own.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub scenario: String,
    pub overall_pass: bool,
    pub config: Scenario,
    pub checks: Vec<CheckRecord>,
}

/// One scenario check entry: its reports plus bookkeeping. `elapsed_ms`
/// is the only field that varies between identical runs.
#[derive(Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub label: String,
    pub kind: String,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub reports: Vec<CheckReport>,
}

impl RunReport {
    pub fn new(scenario: Scenario, checks: Vec<CheckRecord>) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            scenario: scenario.name.clone(),
            overall_pass: checks.iter().all(|c| c.passed),
            config: scenario,
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        for record in &self.checks {
            out.push_str(&format!(
                "[{}] {} ({:.1} ms)\n",
                if record.passed { "PASS" } else { "FAIL" },
                record.label,
                record.elapsed_ms,
            ));
            for report in &record.reports {
                let verdict = match report.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Unknown => "unknown",
                };
                out.push_str(&format!(
                    "    {}: {} (max violation {:.3e}, tolerance {:.3e})\n",
                    report.name, verdict, report.max_violation, report.tolerance,
                ));
                if let Some(w) = &report.witness {
                    out.push_str(&format!("      witness at {:?}: {}\n", w.point, w.detail));
                }
                for note in &report.notes {
                    out.push_str(&format!("      note: {note}\n"));
                }
            }
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall_pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}
