use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use telres_core::oracle::{registered_checks, run_checks, HarnessReport, InequalityCheck};

use crate::{CliError, Result};

/// Registered checks followed by `extra` (used to inject faulty checks in tests).
pub fn run_audit(
    trials: u64,
    seed: u64,
    extra: Vec<Box<dyn InequalityCheck>>,
) -> Result<HarnessReport> {
    let mut checks = registered_checks();
    checks.extend(extra);
    Ok(run_checks(&checks, trials, seed)?)
}

pub fn render_summary(report: &HarnessReport) -> String {
    let width = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut s = format!(
        "audit: {} trials per check, seed {}\n",
        report.trials, report.seed
    );
    let _ = writeln!(
        s,
        "{:<width$}  {:>8}  {:>8}  worst_slack",
        "check", "trials", "failures"
    );
    for c in &report.checks {
        let _ = writeln!(
            s,
            "{:<width$}  {:>8}  {:>8}  {:e}",
            c.name, c.trials, c.failures, c.worst_slack
        );
    }
    let _ = writeln!(
        s,
        "{}: {} violation(s)",
        if report.passed() { "PASS" } else { "FAIL" },
        report.total_failures()
    );
    s
}

/// One line per violated check naming the inequality and the instance.
pub fn render_violations(report: &HarnessReport) -> String {
    let mut s = String::new();
    for c in report.checks.iter().filter(|c| c.failures > 0) {
        let _ = write!(
            s,
            "{} violated in {}/{} trials",
            c.name, c.failures, c.trials
        );
        if let Some(f) = &c.first_failure {
            let _ = write!(
                s,
                "; first at trial {} (seed {}, stream {:#x}), slack {:e}: {}",
                f.trial, f.seed, f.stream, f.slack, f.detail
            );
        }
        s.push('\n');
    }
    s.trim_end().to_string()
}

pub fn cmd_audit(
    trials: u64,
    seed: u64,
    extra: Vec<Box<dyn InequalityCheck>>,
    out: &mut dyn Write,
) -> Result<()> {
    let report = run_audit(trials, seed, extra)?;
    out.write_all(render_summary(&report).as_bytes())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::AuditViolation(render_violations(&report)))
    }
}
