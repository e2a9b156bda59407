//! Dembo-type bounds on the largest eigenvalue from the bordered split
//! R = [[R_sub, b], [b†, c]] that peels off the last row and column.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::states::DensityMatrix;

/// Denominator under (c − η)² in the upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DemboVariant {
    /// (c − η)²/2, as used for the worked qutrit examples.
    #[default]
    Paper,
    /// (c − η)²/4, the classical bound.
    Quarter,
}

impl DemboVariant {
    fn divisor(self) -> f64 {
        match self {
            DemboVariant::Paper => 2.0,
            DemboVariant::Quarter => 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum EtaMode {
    /// η values are the extreme eigenvalues of R_sub.
    #[default]
    Exact,
    /// Caller-supplied bounds, e.g. values read off by inspection.
    Provided { eta_low: f64, eta_high: f64 },
}

#[derive(Debug, Clone)]
pub struct DemboDecomposition {
    pub r_sub: ComplexMatrix,
    pub b: Vec<Complex64>,
    pub c: f64,
    pub eta_low: f64,
    pub eta_high: f64,
}

impl DemboDecomposition {
    pub fn split(m: &ComplexMatrix, eta_mode: EtaMode) -> Result<Self> {
        let n = m.dim();
        if n < 2 {
            return Err(Error::DimensionMismatch { left: n, right: 2 });
        }
        let defect = m.hermiticity_defect();
        if defect > crate::linalg::HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let r_sub = m.leading_submatrix(n - 1);
        let b = (0..n - 1).map(|i| m[(i, n - 1)]).collect();
        let c = m[(n - 1, n - 1)].re;
        let (eta_low, eta_high) = match eta_mode {
            EtaMode::Exact => {
                let e = hermitian_eigen(&r_sub)?;
                (e.min(), e.max())
            }
            EtaMode::Provided { eta_low, eta_high } => (eta_low, eta_high),
        };
        Ok(Self {
            r_sub,
            b,
            c,
            eta_low,
            eta_high,
        })
    }

    /// b†b
    pub fn b_norm_sq(&self) -> f64 {
        self.b.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn reassemble(&self) -> ComplexMatrix {
        let k = self.r_sub.dim();
        let mut m = ComplexMatrix::zeros(k + 1);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self.r_sub[(i, j)];
            }
            m[(i, k)] = self.b[i];
            m[(k, i)] = self.b[i].conj();
        }
        m[(k, k)] = Complex64::new(self.c, 0.0);
        m
    }

    pub fn bounds(&self, variant: DemboVariant) -> DemboBounds {
        let bb = self.b_norm_sq();
        DemboBounds {
            lower: dembo_lower_from_parts(self.c, self.eta_low, bb),
            upper: dembo_upper_from_parts(self.c, self.eta_high, bb, variant),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DemboBounds {
    pub lower: f64,
    pub upper: f64,
}

/// (c + η₁)/2 + √((c − η₁)²/4 + b†b)
pub fn dembo_lower_from_parts(c: f64, eta_low: f64, b_norm_sq: f64) -> f64 {
    (c + eta_low) / 2.0 + ((c - eta_low).powi(2) / 4.0 + b_norm_sq).sqrt()
}

/// (c + η)/2 + √((c − η)²/k + b†b), k = 2 or 4 by variant.
pub fn dembo_upper_from_parts(c: f64, eta_high: f64, b_norm_sq: f64, variant: DemboVariant) -> f64 {
    (c + eta_high) / 2.0 + ((c - eta_high).powi(2) / variant.divisor() + b_norm_sq).sqrt()
}

pub fn dembo_bounds_matrix(
    m: &ComplexMatrix,
    variant: DemboVariant,
    eta_mode: EtaMode,
) -> Result<DemboBounds> {
    Ok(DemboDecomposition::split(m, eta_mode)?.bounds(variant))
}

pub fn dembo_bounds(
    rho: &DensityMatrix,
    variant: DemboVariant,
    eta_mode: EtaMode,
) -> Result<DemboBounds> {
    dembo_bounds_matrix(rho.matrix(), variant, eta_mode)
}
