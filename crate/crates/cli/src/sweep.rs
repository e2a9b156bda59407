use std::path::Path;

use clap::ValueEnum;
use rayon::prelude::*;
use telres_core::criteria::{analyze, CriterionReport, DemboVariant, EtaMode, ReportOptions};
use telres_core::states::{
    noisy_singlet, rho2, rho3, rho_alpha, sigma_family, RHO2_RANGE, RHO3_RANGE,
};
use telres_core::{c64, DensityMatrix};

use crate::format::fmt_csv;
use crate::{csv_writer, CliError, Result};

pub const DEFAULT_NOISY_D: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// b=0.2, d=0.4, e=0.4 with coherence f = t·(0.25+0.1i), t ∈ [0, 1].
    Sigma,
    Rho2,
    Rho3,
    #[value(name = "rho_alpha")]
    RhoAlpha,
    #[value(name = "noisy_singlet")]
    NoisySinglet,
}

impl Family {
    pub fn parameter_name(self) -> &'static str {
        match self {
            Family::Sigma => "t",
            Family::Rho2 | Family::Rho3 => "a",
            Family::RhoAlpha => "alpha",
            Family::NoisySinglet => "p",
        }
    }

    /// Closed parameter interval; `rho_alpha` excludes its lower end.
    pub fn domain(self) -> (f64, f64) {
        match self {
            Family::Sigma => (0.0, 1.0),
            Family::Rho2 => RHO2_RANGE,
            Family::Rho3 => RHO3_RANGE,
            Family::RhoAlpha => (4.0, 5.0),
            Family::NoisySinglet => (0.0, 1.0),
        }
    }

    pub fn state(self, x: f64, d: usize) -> telres_core::Result<DensityMatrix> {
        match self {
            Family::Sigma => sigma_family(0.2, 0.4, 0.4, c64(0.25, 0.1) * x),
            Family::Rho2 => rho2(x),
            Family::Rho3 => rho3(x),
            Family::RhoAlpha => rho_alpha(x),
            Family::NoisySinglet => noisy_singlet(x, d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    IsNpt,
    MinPtEigenvalue,
    LambdaMax,
    SingletFractionLower,
    FOptLocc,
    FilterAStar,
    DemboLower,
    DemboUpperPaper,
    DemboUpperQuarter,
    FidelityUpper,
    Verdict,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Quantity::IsNpt,
        Quantity::MinPtEigenvalue,
        Quantity::LambdaMax,
        Quantity::SingletFractionLower,
        Quantity::FOptLocc,
        Quantity::FilterAStar,
        Quantity::DemboLower,
        Quantity::DemboUpperPaper,
        Quantity::DemboUpperQuarter,
        Quantity::FidelityUpper,
        Quantity::Verdict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::IsNpt => "is_npt",
            Quantity::MinPtEigenvalue => "min_pt_eigenvalue",
            Quantity::LambdaMax => "lambda_max",
            Quantity::SingletFractionLower => "singlet_fraction_lower",
            Quantity::FOptLocc => "f_opt_locc",
            Quantity::FilterAStar => "filter_a_star",
            Quantity::DemboLower => "dembo_lower",
            Quantity::DemboUpperPaper => "dembo_upper_paper",
            Quantity::DemboUpperQuarter => "dembo_upper_quarter",
            Quantity::FidelityUpper => "fidelity_upper",
            Quantity::Verdict => "verdict",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|q| q.name() == s)
    }

    /// CSV cell; two-qubit-only fields are `NA` elsewhere.
    pub fn cell(self, r: &CriterionReport) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), fmt_csv);
        match self {
            Quantity::IsNpt => r.is_npt.to_string(),
            Quantity::MinPtEigenvalue => fmt_csv(r.min_pt_eigenvalue),
            Quantity::LambdaMax => fmt_csv(r.lambda_max),
            Quantity::SingletFractionLower => fmt_csv(r.singlet_fraction_lower),
            Quantity::FOptLocc => opt(r.f_opt_locc),
            Quantity::FilterAStar => opt(r.filter_a_star),
            Quantity::DemboLower => fmt_csv(r.dembo_lower),
            Quantity::DemboUpperPaper => fmt_csv(r.dembo_upper_paper),
            Quantity::DemboUpperQuarter => fmt_csv(r.dembo_upper_quarter),
            Quantity::FidelityUpper => fmt_csv(r.fidelity_upper),
            Quantity::Verdict => r.verdict.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub quantities: Vec<Quantity>,
    /// Local dimension, used by `noisy_singlet` only.
    pub d: usize,
}

impl SweepSpec {
    pub fn new(
        family: Family,
        lo: f64,
        hi: f64,
        steps: usize,
        quantities: &str,
        d: Option<usize>,
    ) -> Result<Self> {
        let quantities = quantities
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                Quantity::parse(s).ok_or_else(|| {
                    let known: Vec<_> = Quantity::ALL.iter().map(|q| q.name()).collect();
                    CliError::InvalidSpec(format!(
                        "unknown quantity {s:?} (known: {})",
                        known.join(", ")
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if quantities.is_empty() {
            return Err(CliError::InvalidSpec("quantity list is empty".into()));
        }
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(CliError::InvalidSpec(format!(
                "need from < to, got {lo} >= {hi}"
            )));
        }
        if steps < 2 {
            return Err(CliError::InvalidSpec(format!(
                "need steps >= 2, got {steps}"
            )));
        }
        let (dlo, dhi) = family.domain();
        let lo_ok = if family == Family::RhoAlpha {
            lo > dlo
        } else {
            lo >= dlo
        };
        if !lo_ok || hi > dhi {
            return Err(CliError::InvalidSpec(format!(
                "range [{lo}, {hi}] outside the {} domain [{dlo}, {dhi}]",
                family.parameter_name()
            )));
        }
        let d = match (family, d) {
            (Family::NoisySinglet, d) => d.unwrap_or(DEFAULT_NOISY_D),
            (_, None) => 0,
            (_, Some(_)) => {
                return Err(CliError::InvalidSpec(
                    "--d applies to noisy_singlet only".into(),
                ))
            }
        };
        if family == Family::NoisySinglet && d < 2 {
            return Err(CliError::InvalidSpec(format!("need d >= 2, got {d}")));
        }
        Ok(Self {
            family,
            lo,
            hi,
            steps,
            quantities,
            d,
        })
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == n {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * k as f64 / n as f64
                }
            })
            .collect()
    }

    pub fn header(&self) -> Vec<&'static str> {
        std::iter::once(self.family.parameter_name())
            .chain(self.quantities.iter().map(|q| q.name()))
            .collect()
    }
}

/// Evaluate every grid point (in parallel) and return rows in grid order.
pub fn run_sweep(spec: &SweepSpec, variant: DemboVariant) -> Result<Vec<Vec<String>>> {
    let opts = ReportOptions {
        dembo_variant: variant,
        eta_mode: EtaMode::Exact,
    };
    spec.grid()
        .into_par_iter()
        .map(|x| {
            let rho = spec.family.state(x, spec.d)?;
            let report = analyze(&rho, &opts)?;
            Ok(std::iter::once(fmt_csv(x))
                .chain(spec.quantities.iter().map(|q| q.cell(&report)))
                .collect())
        })
        .collect()
}

pub fn cmd_sweep(spec: &SweepSpec, variant: DemboVariant, output: &Path) -> Result<()> {
    let rows = run_sweep(spec, variant)?;
    let mut w = csv_writer(output)?;
    w.write_record(spec.header())?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().map_err(|e| CliError::io(output, e))
}
