use serde::Serialize;

use super::{
    dembo::{DemboDecomposition, DemboVariant, EtaMode},
    fraction::{fidelity_from_fraction, singlet_fraction_lower_bound},
    is_npt, min_pt_eigenvalue,
    spa::optimize_filter,
    NPT_TOL,
};
use crate::error::Result;
use crate::states::DensityMatrix;

/// Values must clear 1/d by this much before a criterion fires.
pub const VERDICT_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    UsefulByLambdaMax,
    UsefulByDembo,
    UsefulBySingletFraction,
    SeparableByTheorem2,
    Inconclusive,
}

impl Verdict {
    pub fn is_useful(self) -> bool {
        matches!(
            self,
            Verdict::UsefulByLambdaMax | Verdict::UsefulByDembo | Verdict::UsefulBySingletFraction
        )
    }

    pub fn describe(self) -> &'static str {
        match self {
            Verdict::UsefulByLambdaMax => "useful: NPT and lambda_max > 1/d",
            Verdict::UsefulByDembo => "useful: NPT and Dembo upper bound > 1/d",
            Verdict::UsefulBySingletFraction => "useful: singlet fraction > 1/d",
            Verdict::SeparableByTheorem2 => "separable: PPT and lambda_max <= 1/d",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Variant consulted by the Dembo criterion.
    pub dembo_variant: DemboVariant,
    pub eta_mode: EtaMode,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub d: usize,
    pub is_npt: bool,
    pub min_pt_eigenvalue: f64,
    pub lambda_max: f64,
    /// Best singlet fraction found; exact only when `singlet_fraction_exact`.
    pub singlet_fraction_lower: f64,
    pub singlet_fraction_exact: bool,
    /// Filter-optimised value over diag(a, 1), two qubits only.
    pub f_opt_locc: Option<f64>,
    pub filter_a_star: Option<f64>,
    pub dembo_lower: f64,
    pub dembo_upper_paper: f64,
    pub dembo_upper_quarter: f64,
    pub dembo_variant: DemboVariant,
    pub fidelity_upper: f64,
    pub verdict: Verdict,
}

impl CriterionReport {
    pub fn dembo_upper_selected(&self) -> f64 {
        match self.dembo_variant {
            DemboVariant::Paper => self.dembo_upper_paper,
            DemboVariant::Quarter => self.dembo_upper_quarter,
        }
    }
}

pub fn verdict(rho: &DensityMatrix) -> CriterionReport {
    analyze(rho, &ReportOptions::default()).expect("validated states analyse without error")
}

pub fn analyze(rho: &DensityMatrix, opts: &ReportOptions) -> Result<CriterionReport> {
    let d = rho.d();
    let threshold = 1.0 / d as f64;
    let npt = is_npt(rho);
    let min_pt = min_pt_eigenvalue(rho);
    let lambda_max = rho.lambda_max();
    let (sf, sf_exact) = singlet_fraction_lower_bound(rho)?;

    let filter = if d == 2 {
        Some(optimize_filter(rho)?)
    } else {
        None
    };

    let dec = DemboDecomposition::split(rho.matrix(), opts.eta_mode)?;
    let bb = dec.b_norm_sq();
    let dembo_lower = super::dembo_lower_from_parts(dec.c, dec.eta_low, bb);
    let dembo_upper_paper =
        super::dembo_upper_from_parts(dec.c, dec.eta_high, bb, DemboVariant::Paper);
    let dembo_upper_quarter =
        super::dembo_upper_from_parts(dec.c, dec.eta_high, bb, DemboVariant::Quarter);
    let dembo_selected = match opts.dembo_variant {
        DemboVariant::Paper => dembo_upper_paper,
        DemboVariant::Quarter => dembo_upper_quarter,
    };

    let fidelity_upper = fidelity_from_fraction(lambda_max.clamp(0.0, 1.0), d)?;

    let above = |x: f64| x > threshold + VERDICT_MARGIN;
    let borderline = !npt && (-NPT_TOL..0.0).contains(&min_pt);
    let verdict = if npt && above(lambda_max) {
        Verdict::UsefulByLambdaMax
    } else if npt && above(dembo_selected) {
        Verdict::UsefulByDembo
    } else if above(sf) {
        Verdict::UsefulBySingletFraction
    } else if !npt && !borderline && lambda_max <= threshold + VERDICT_MARGIN {
        Verdict::SeparableByTheorem2
    } else {
        Verdict::Inconclusive
    };

    Ok(CriterionReport {
        d,
        is_npt: npt,
        min_pt_eigenvalue: min_pt,
        lambda_max,
        singlet_fraction_lower: sf,
        singlet_fraction_exact: sf_exact,
        f_opt_locc: filter.map(|o| o.f_star),
        filter_a_star: filter.map(|o| o.a_star),
        dembo_lower,
        dembo_upper_paper,
        dembo_upper_quarter,
        dembo_variant: opts.dembo_variant,
        fidelity_upper,
        verdict,
    })
}
