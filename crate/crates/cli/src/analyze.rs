use std::io::Write;
use std::path::Path;

use telres_core::criteria::{analyze, CriterionReport, DemboVariant, EtaMode, ReportOptions};
use telres_core::states::parse_state;
use telres_core::DensityMatrix;

use crate::format::fmt_report;
use crate::{CliError, Result};

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub dembo: DemboVariant,
    pub json: bool,
    pub full_precision: bool,
    /// Provided (η_low, η_high) for the Dembo split; exact when `None`.
    pub eta: Option<(f64, f64)>,
}

impl AnalyzeOptions {
    pub fn report_options(&self) -> ReportOptions {
        ReportOptions {
            dembo_variant: self.dembo,
            eta_mode: match self.eta {
                None => EtaMode::Exact,
                Some((eta_low, eta_high)) => EtaMode::Provided { eta_low, eta_high },
            },
        }
    }
}

pub fn load_state(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(parse_state(&text)?)
}

pub fn analyze_file(path: &Path, opts: &AnalyzeOptions) -> Result<CriterionReport> {
    let rho = load_state(path)?;
    Ok(analyze(&rho, &opts.report_options())?)
}

pub fn cmd_analyze(path: &Path, opts: &AnalyzeOptions, out: &mut dyn Write) -> Result<()> {
    let report = analyze_file(path, opts)?;
    let text = if opts.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        render_report(&report, opts.full_precision)
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

pub fn render_report(r: &CriterionReport, full: bool) -> String {
    let f = |x: f64| fmt_report(x, full);
    let mut lines: Vec<(String, String)> = vec![
        ("d".into(), r.d.to_string()),
        ("threshold 1/d".into(), f(1.0 / r.d as f64)),
        ("is_npt".into(), r.is_npt.to_string()),
        ("min_pt_eigenvalue".into(), f(r.min_pt_eigenvalue)),
        ("lambda_max".into(), f(r.lambda_max)),
        (
            "singlet_fraction".into(),
            format!(
                "{} ({})",
                f(r.singlet_fraction_lower),
                if r.singlet_fraction_exact {
                    "exact"
                } else {
                    "lower bound"
                }
            ),
        ),
    ];
    if let (Some(v), Some(a)) = (r.f_opt_locc, r.filter_a_star) {
        lines.push(("f_opt_locc".into(), format!("{} (a* = {})", f(v), f(a))));
    }
    lines.extend([
        ("dembo_lower".into(), f(r.dembo_lower)),
        ("dembo_upper_paper".into(), f(r.dembo_upper_paper)),
        ("dembo_upper_quarter".into(), f(r.dembo_upper_quarter)),
        (
            "dembo_variant".into(),
            match r.dembo_variant {
                DemboVariant::Paper => "paper".into(),
                DemboVariant::Quarter => "quarter".into(),
            },
        ),
        ("fidelity_upper".into(), f(r.fidelity_upper)),
        (
            "verdict".into(),
            format!("{} ({})", r.verdict, r.verdict.describe()),
        ),
    ]);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    lines
        .into_iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
