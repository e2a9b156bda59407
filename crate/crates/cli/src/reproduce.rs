use std::path::Path;

use clap::ValueEnum;
use telres_core::criteria::{
    basis_overlaps, dembo_bounds, dembo_upper_from_parts, f_opt_locc_pt, f_opt_locc_spa,
    fef_2qubit, is_npt, optimize_filter, sigma_filter_threshold, verdict, DemboDecomposition,
    DemboVariant, EtaMode, FilterOperator,
};
use telres_core::linalg::lambda_max;
use telres_core::oracle::wootters_concurrence;
use telres_core::states::{
    qutrit_me_basis, rho1, rho2_matrix, rho3, rho_alpha, sigma_example, RHO2_RANGE, RHO3_RANGE,
};

use crate::format::fmt_csv;
use crate::{csv_writer, CliError, Result};

pub const FIGURE_POINTS: usize = 200;
pub const FIG1_RANGE: (f64, f64) = (0.78, 1.0);
pub const RHO3_GRID_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Target {
    Fig1,
    Fig2,
    Fig3,
    ExSigma1,
    ExRho1,
    ExRho3,
    ExRhoAlpha,
}

impl Target {
    pub const ALL: [Target; 7] = [
        Target::Fig1,
        Target::Fig2,
        Target::Fig3,
        Target::ExSigma1,
        Target::ExRho1,
        Target::ExRho3,
        Target::ExRhoAlpha,
    ];
}

/// Evenly spaced points on [lo, hi] including both ends.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if k + 1 == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Relation {
    /// |computed − expected| ≤ tolerance
    Close(f64),
    /// computed ≤ expected
    AtMost,
    /// computed > expected
    Above,
}

/// One expected-vs-computed comparison.
#[derive(Debug, Clone)]
pub struct ExampleRow {
    pub quantity: String,
    pub relation: Relation,
    pub expected: f64,
    pub computed: f64,
}

impl ExampleRow {
    fn new(quantity: impl Into<String>, relation: Relation, expected: f64, computed: f64) -> Self {
        Self {
            quantity: quantity.into(),
            relation,
            expected,
            computed,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Close(tol) => (self.computed - self.expected).abs() <= tol,
            Relation::AtMost => self.computed <= self.expected,
            Relation::Above => self.computed > self.expected,
        }
    }

    fn record(&self) -> [String; 6] {
        let (rel, tol) = match self.relation {
            Relation::Close(t) => ("=", fmt_csv(t)),
            Relation::AtMost => ("<=", fmt_csv(0.0)),
            Relation::Above => (">", fmt_csv(0.0)),
        };
        [
            self.quantity.clone(),
            rel.to_string(),
            fmt_csv(self.expected),
            fmt_csv(self.computed),
            tol,
            if self.holds() { "ok" } else { "not_reproduced" }.to_string(),
        ]
    }
}

pub const EXAMPLE_HEADER: [&str; 6] = [
    "quantity",
    "relation",
    "expected",
    "computed",
    "tolerance",
    "status",
];

fn bool_value(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Filter-optimised fraction of the σ example along a.
pub fn fig1_series() -> Vec<(f64, f64)> {
    let sigma = sigma_example();
    linspace(FIG1_RANGE.0, FIG1_RANGE.1, FIGURE_POINTS)
        .into_iter()
        .map(|a| {
            let filt = FilterOperator::new(a).expect("grid inside [0, 1]");
            (a, f_opt_locc_spa(&sigma, &filt).expect("two-qubit state"))
        })
        .collect()
}

/// Best phased-basis overlap of the literal qutrit matrix along a.
pub fn fig2_series() -> Vec<(f64, f64)> {
    let basis = qutrit_me_basis();
    linspace(RHO2_RANGE.0, RHO2_RANGE.1, FIGURE_POINTS)
        .into_iter()
        .map(|a| {
            let o = basis_overlaps(&rho2_matrix(a), &basis).expect("9x9 matrix");
            (a, o.into_iter().fold(f64::NEG_INFINITY, f64::max))
        })
        .collect()
}

/// Largest eigenvalue of the literal qutrit matrix along a.
pub fn fig3_series() -> Vec<(f64, f64)> {
    linspace(RHO2_RANGE.0, RHO2_RANGE.1, FIGURE_POINTS)
        .into_iter()
        .map(|a| (a, lambda_max(&rho2_matrix(a)).expect("Hermitian matrix")))
        .collect()
}

pub fn fig1_closed_form(a: f64) -> f64 {
    (2.6 - 2.0 * a * a - 0.5 * a) / 2.0
}

pub fn fig2_closed_form(a: f64) -> f64 {
    (1.22 - a) / 3.0
}

pub fn fig3_closed_form(a: f64) -> f64 {
    0.25 + 0.5 * (0.4436 - 2.0 * a + 4.0 * a * a).sqrt()
}

pub fn rho3_lambda_max_closed_form(a: f64) -> f64 {
    0.125 * (2.0 + (16.0 * a * a - 16.0 * a + 4.0144).sqrt())
}

pub fn ex_sigma1() -> Result<Vec<ExampleRow>> {
    let sigma = sigma_example();
    let spa = |a: f64| f_opt_locc_spa(&sigma, &FilterOperator::new(a)?);
    let pt = |a: f64| f_opt_locc_pt(&sigma, &FilterOperator::new(a)?);
    let peak = fig1_series()
        .into_iter()
        .map(|(_, f)| f)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(vec![
        ExampleRow::new(
            "f_opt_spa(a=0.78)",
            Relation::Close(1e-9),
            fig1_closed_form(0.78),
            spa(0.78)?,
        ),
        ExampleRow::new(
            "f_opt_spa(a=1)",
            Relation::Close(1e-9),
            fig1_closed_form(1.0),
            spa(1.0)?,
        ),
        ExampleRow::new("max f_opt_spa on [0.78,1]", Relation::AtMost, 0.5, peak),
        ExampleRow::new(
            "f_opt_pt(a=0.78)",
            Relation::Close(1e-9),
            fig1_closed_form(0.78),
            pt(0.78)?,
        ),
        ExampleRow::new(
            "f_opt_pt(a=1)",
            Relation::Close(1e-9),
            fig1_closed_form(1.0),
            pt(1.0)?,
        ),
        ExampleRow::new(
            "filter threshold a (Re f=0.25, e=0.4)",
            Relation::Close(1e-4),
            0.7781,
            sigma_filter_threshold(0.25, 0.4),
        ),
        ExampleRow::new(
            "concurrence = 2|f|",
            Relation::Close(1e-9),
            2.0 * 0.0725f64.sqrt(),
            wootters_concurrence(&sigma)?,
        ),
        ExampleRow::new(
            "is_npt",
            Relation::Close(0.0),
            1.0,
            bool_value(is_npt(&sigma)),
        ),
    ])
}

pub fn ex_rho1() -> Result<Vec<ExampleRow>> {
    let rho = rho1();
    let mut spectrum = rho.spectrum().to_vec();
    spectrum.sort_by(|a, b| b.total_cmp(a));
    let reference = [0.5858, 0.4142, 0.0, 0.0];
    let mut rows: Vec<ExampleRow> = spectrum
        .iter()
        .zip(reference)
        .enumerate()
        .map(|(k, (&got, want))| {
            ExampleRow::new(format!("eigenvalue[{k}]"), Relation::Close(5e-4), want, got)
        })
        .collect();
    let report = verdict(&rho);
    rows.extend([
        ExampleRow::new(
            "lambda_max",
            Relation::Close(1e-9),
            2.0 - 2f64.sqrt(),
            rho.lambda_max(),
        ),
        ExampleRow::new(
            "singlet fraction",
            Relation::Close(1e-6),
            0.5,
            fef_2qubit(&rho)?,
        ),
        ExampleRow::new(
            "is_npt",
            Relation::Close(0.0),
            1.0,
            bool_value(is_npt(&rho)),
        ),
        ExampleRow::new("lambda_max > 1/2", Relation::Above, 0.5, rho.lambda_max()),
        ExampleRow::new(
            "filter-optimised fraction > 1/2",
            Relation::Above,
            0.5,
            optimize_filter(&rho)?.f_star,
        ),
        ExampleRow::new(
            "verdict useful",
            Relation::Close(0.0),
            1.0,
            bool_value(report.verdict.is_useful()),
        ),
    ]);
    Ok(rows)
}

pub fn ex_rho3() -> Result<Vec<ExampleRow>> {
    let inspection_eta = EtaMode::Provided {
        eta_low: 0.0,
        eta_high: 0.325,
    };
    let at65 = rho3(0.65)?;
    let at55 = rho3(0.55)?;
    let grid = linspace(RHO3_RANGE.0, RHO3_RANGE.1, RHO3_GRID_POINTS);
    let mut worst_closed: f64 = 0.0;
    let mut peak = f64::NEG_INFINITY;
    for &a in &grid {
        let l = rho3(a)?.lambda_max();
        worst_closed = worst_closed.max((l - rho3_lambda_max_closed_form(a)).abs());
        peak = peak.max(l);
    }
    Ok(vec![
        ExampleRow::new(
            "dembo_upper_paper(a=0.65, eta=0.325)",
            Relation::Close(1e-3),
            0.357,
            dembo_bounds(&at65, DemboVariant::Paper, inspection_eta)?.upper,
        ),
        ExampleRow::new(
            "dembo_upper_paper(a=0.55, eta=0.325)",
            Relation::Above,
            1.0 / 3.0,
            dembo_bounds(&at55, DemboVariant::Paper, inspection_eta)?.upper,
        ),
        ExampleRow::new(
            "dembo_upper_paper(a=0.55, exact eta)",
            Relation::Above,
            1.0 / 3.0,
            dembo_bounds(&at55, DemboVariant::Paper, EtaMode::Exact)?.upper,
        ),
        ExampleRow::new(
            "lambda_max(a=0.5)",
            Relation::Close(1e-9),
            0.265,
            rho3(0.5)?.lambda_max(),
        ),
        ExampleRow::new(
            "max |lambda_max - closed form| on grid",
            Relation::Close(1e-9),
            0.0,
            worst_closed,
        ),
        ExampleRow::new("max lambda_max on grid", Relation::AtMost, 1.0 / 3.0, peak),
    ])
}

pub fn ex_rho_alpha() -> Result<Vec<ExampleRow>> {
    let (c, eta, bb) = (2.0 / 21.0, 5.0 / 21.0, 8.0 / 441.0);
    let dec = DemboDecomposition::split(rho_alpha(5.0)?.matrix(), EtaMode::Exact)?;
    let paper = dembo_upper_from_parts(c, eta, bb, DemboVariant::Paper);
    let quarter = dembo_upper_from_parts(c, eta, bb, DemboVariant::Quarter);
    let mut rows = vec![
        ExampleRow::new("c", Relation::Close(1e-12), c, dec.c),
        ExampleRow::new("eta_high", Relation::Close(1e-12), eta, dec.eta_high),
        ExampleRow::new("b^dagger b", Relation::Close(1e-12), bb, dec.b_norm_sq()),
        ExampleRow::new(
            "dembo_upper_paper (reference)",
            Relation::Close(5e-5),
            0.3135,
            paper,
        ),
        ExampleRow::new("dembo_upper_paper", Relation::Close(5e-5), 0.3350, paper),
        ExampleRow::new(
            "dembo_upper_quarter",
            Relation::Close(5e-5),
            0.3191,
            quarter,
        ),
    ];
    for alpha in [4.1, 4.5, 5.0] {
        rows.push(ExampleRow::new(
            format!("lambda_max(alpha={alpha})"),
            Relation::Close(1e-10),
            2.0 / 7.0,
            rho_alpha(alpha)?.lambda_max(),
        ));
    }
    Ok(rows)
}

pub fn example_rows(target: Target) -> Result<Option<Vec<ExampleRow>>> {
    Ok(Some(match target {
        Target::ExSigma1 => ex_sigma1()?,
        Target::ExRho1 => ex_rho1()?,
        Target::ExRho3 => ex_rho3()?,
        Target::ExRhoAlpha => ex_rho_alpha()?,
        Target::Fig1 | Target::Fig2 | Target::Fig3 => return Ok(None),
    }))
}

pub fn cmd_reproduce(target: Target, output: &Path) -> Result<()> {
    let mut w = csv_writer(output)?;
    let series = match target {
        Target::Fig1 => Some((["a", "F_opt"], fig1_series())),
        Target::Fig2 => Some((["a", "F_basis"], fig2_series())),
        Target::Fig3 => Some((["a", "lambda_max"], fig3_series())),
        _ => None,
    };
    if let Some((header, points)) = series {
        w.write_record(header)?;
        for (x, y) in points {
            w.write_record([fmt_csv(x), fmt_csv(y)])?;
        }
    } else {
        w.write_record(EXAMPLE_HEADER)?;
        for row in example_rows(target)?.unwrap_or_default() {
            w.write_record(row.record())?;
        }
    }
    w.flush().map_err(|e| CliError::io(output, e))
}
