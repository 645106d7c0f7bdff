//! Suite files and run reports.
//!
//! A suite is a JSON document `{"scenarios": [ScenarioSpec, ...]}`. Running it
//! produces a [`RunReport`] whose entries are sorted by scenario name, so the
//! report bytes depend only on the suite and the seeds.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenarios::{run_trials, Expected, ScenarioName, ScenarioSpec, TrialStats};

/// Environment variable that replaces every entry's seed when set.
pub const SEED_ENV: &str = "CURVEDKIT_SEED";

/// Version tag of the report layout.
pub const REPORT_SCHEMA: &str = "curvedkit-report/1";

/// The suite shipped with the crate: every positive scenario plus the counterexamples.
pub const BUNDLED_SUITE: &str = include_str!("../suites/default.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub scenarios: Vec<ScenarioSpec>,
    /// Where the report goes; stdout if unset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
}

impl SuiteConfig {
    /// Parses and validates a suite. Errors name the line and column, or the
    /// offending entry.
    pub fn parse(text: &str) -> Result<SuiteConfig> {
        let config: SuiteConfig = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        for (i, s) in config.scenarios.iter().enumerate() {
            s.validate()
                .map_err(|e| Error::InvalidSpec(format!("scenarios[{i}]: {e}")))?;
        }
        Ok(config)
    }

    pub fn bundled() -> SuiteConfig {
        SuiteConfig::parse(BUNDLED_SUITE).expect("bundled suite parses")
    }
}

/// Reads [`SEED_ENV`]; `Ok(None)` when unset or empty.
pub fn seed_override_from_env() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidSpec(format!("{SEED_ENV}=`{s}` is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Replaces every entry's seed.
    pub seed: Option<u64>,
    /// Records wall time in the report (which makes it nondeterministic).
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: ScenarioName,
    pub params: std::collections::BTreeMap<String, f64>,
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
    pub expected: Expected,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<TrialStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub curvedkit: String,
    pub schema: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub versions: Versions,
    pub entries: Vec<ReportEntry>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl RunReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Process exit code: 0 if every entry passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass {
            0
        } else {
            1
        }
    }
}

/// Runs one entry; failures of the run itself are recorded, not returned.
pub fn run_entry(spec: &ScenarioSpec, opts: RunOptions) -> ReportEntry {
    let mut spec = spec.clone();
    if let Some(seed) = opts.seed {
        spec.seed = seed;
    }
    let start = opts.timings.then(Instant::now);
    let result = run_trials(&spec);
    let expected = spec.expected();
    let (pass, stats, error) = match result {
        Ok(s) => (expected.matches(&s), Some(s), None),
        Err(e) => (false, None, Some(e.to_string())),
    };
    ReportEntry {
        name: spec.name,
        params: spec.params.clone(),
        n: spec.n,
        seed: spec.seed,
        tol: spec.tol,
        expected,
        pass,
        stats,
        error,
        wall_time_s: start.map(|t| t.elapsed().as_secs_f64()),
    }
}

pub fn run_suite(config: &SuiteConfig, opts: RunOptions) -> RunReport {
    let start = opts.timings.then(Instant::now);
    let mut order: Vec<usize> = (0..config.scenarios.len()).collect();
    order.sort_by_key(|&i| (config.scenarios[i].name.as_str(), i));
    let entries: Vec<ReportEntry> = order
        .into_iter()
        .map(|i| run_entry(&config.scenarios[i], opts))
        .collect();
    let passed = entries.iter().filter(|e| e.pass).count();
    let failed = entries.len() - passed;
    RunReport {
        versions: Versions {
            curvedkit: env!("CARGO_PKG_VERSION").to_string(),
            schema: REPORT_SCHEMA.to_string(),
        },
        entries,
        passed,
        failed,
        all_pass: failed == 0,
        wall_time_s: start.map(|t| t.elapsed().as_secs_f64()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_passes() {
        let report = run_suite(
            &SuiteConfig::parse(r#"{"scenarios": []}"#).unwrap(),
            RunOptions::default(),
        );
        assert!(report.entries.is_empty());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = SuiteConfig::parse("{\n  \"scenarios\": [{\"name\": \"thm9\"}]\n}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = SuiteConfig::parse(r#"{"scenarios": [{"name": "thm3", "params": {"q": 1}}]}"#).unwrap_err();
        assert!(e.to_string().contains("scenarios[0]"), "{e}");
        assert!(SuiteConfig::parse(r#"{"scenarios": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn wrong_expectation_fails() {
        let config =
            SuiteConfig::parse(r#"{"scenarios": [{"name": "thm6d", "n": 40, "expected": "central_always"}]}"#).unwrap();
        let report = run_suite(&config, RunOptions::default());
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn report_is_sorted_and_deterministic() {
        let config = SuiteConfig::parse(
            r#"{"scenarios": [{"name": "thm5", "n": 30, "seed": 2}, {"name": "thm3", "n": 30, "seed": 2}]}"#,
        )
        .unwrap();
        let a = run_suite(&config, RunOptions::default());
        assert_eq!(a.entries[0].name, ScenarioName::Thm3);
        assert_eq!(a.to_json(), run_suite(&config, RunOptions::default()).to_json());
        let b = run_suite(
            &config,
            RunOptions {
                seed: Some(9),
                timings: false,
            },
        );
        assert!(b.entries.iter().all(|e| e.seed == 9));
    }

    #[test]
    fn bundled_suite_parses() {
        let s = SuiteConfig::bundled();
        assert!(s.scenarios.len() >= ScenarioName::ALL.len());
    }
}
