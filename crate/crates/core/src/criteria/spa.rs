//! Structural physical approximation of the two-qubit partial transpose and
//! the filtered (LOCC-optimal) singlet fraction built on it.

use num_complex::Complex64;
use serde::Serialize;

use super::{partial_transpose, Subsystem};
use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::states::{phi_plus, DensityMatrix};

fn require_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.d() != 2 {
        return Err(Error::DimensionUnsupported {
            d: rho.d(),
            required: "d = 2",
        });
    }
    Ok(())
}

/// Entry map of the SPA of the partial transpose for a 4×4 two-qubit
/// operator, written out element by element.
pub fn spa_pt_2qubit_matrix(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    let e = |i: usize, j: usize| rho[(i - 1, j - 1)];
    let ninth = 1.0 / 9.0;
    let diag = |i: usize| (c64(2.0, 0.0) + e(i, i)) * ninth;
    let upper: [((usize, usize), Complex64); 6] = [
        ((1, 2), e(1, 2).conj() * ninth),
        ((1, 3), e(1, 3) * ninth),
        ((1, 4), e(2, 3) * ninth),
        ((2, 3), e(1, 4) * ninth),
        ((2, 4), e(2, 4) * ninth),
        ((3, 4), e(3, 4).conj() * ninth),
    ];
    let mut out = ComplexMatrix::zeros(4);
    for i in 1..=4 {
        out[(i - 1, i - 1)] = diag(i);
    }
    for ((i, j), z) in upper {
        out[(i - 1, j - 1)] = z;
        out[(j - 1, i - 1)] = z.conj();
    }
    Ok(out)
}

/// SPA-PT of a two-qubit state; the result is itself a state.
pub fn spa_pt_2qubit(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_qubits(rho)?;
    DensityMatrix::new(spa_pt_2qubit_matrix(rho.matrix())?, 2)
}

/// Local filter A = diag(a, 1) on the first qubit, 0 ≤ a ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilterOperator {
    a: f64,
}

impl FilterOperator {
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::OutOfRange {
                name: "a",
                value: a,
                range: "[0, 1]",
            });
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&[self.a, 1.0])
    }
}

/// X = (A ⊗ I₂)|φ⁺⟩⟨φ⁺|(A† ⊗ I₂), a rank-one PSD operator with
/// trace (1 + a²)/2.
pub fn x_opt(filter: &FilterOperator) -> ComplexMatrix {
    let psi = phi_plus(2).expect("d = 2").projector();
    let a = filter.matrix().tensor(&ComplexMatrix::identity(2));
    &(&a * &psi) * &a.adjoint()
}

/// 9·Tr(X ρ̃) − 2, with ρ̃ the SPA-PT of ρ.
///
/// Equals Tr(X ρ^Γ) only when Tr X = 1; in general the two differ by
/// 2(Tr X − 1), i.e. by a² − 1 for the diag(a, 1) filter.
pub fn spa_trace_identity(x: &ComplexMatrix, rho: &DensityMatrix) -> Result<f64> {
    require_qubits(rho)?;
    let spa = spa_pt_2qubit_matrix(rho.matrix())?;
    Ok(9.0 * x.trace_product(&spa)?.re - 2.0)
}

/// 1/2 − Tr(X ρ^Γ)
pub fn f_opt_locc_pt(rho: &DensityMatrix, filter: &FilterOperator) -> Result<f64> {
    require_qubits(rho)?;
    let pt = partial_transpose(rho, Subsystem::Second);
    Ok(0.5 - x_opt(filter).trace_product(&pt)?.re)
}

/// 5/2 − 9·Tr(X ρ̃)
pub fn f_opt_locc_spa(rho: &DensityMatrix, filter: &FilterOperator) -> Result<f64> {
    require_qubits(rho)?;
    let spa = spa_pt_2qubit_matrix(rho.matrix())?;
    Ok(2.5 - 9.0 * x_opt(filter).trace_product(&spa)?.re)
}

/// Smallest filter parameter at which Tr(X σ̃) ≥ 2/9 for the σ family:
/// (−Re f + √(Re(f)² − 2e + 4)) / 2.
pub fn sigma_filter_threshold(re_f: f64, e: f64) -> f64 {
    (-re_f + (re_f * re_f - 2.0 * e + 4.0).sqrt()) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilterOptimum {
    pub a_star: f64,
    pub f_star: f64,
}

const GOLDEN_TOL: f64 = 1e-8;

/// Maximises [`f_opt_locc_pt`] over a ∈ [0, 1] by golden-section search.
///
/// The objective is a concave quadratic in a (its a² coefficient is
/// −ρ₀₀/2), so the search is exact up to the bracket width; both
/// endpoints are compared as well.
pub fn optimize_filter(rho: &DensityMatrix) -> Result<FilterOptimum> {
    require_qubits(rho)?;
    let pt = partial_transpose(rho, Subsystem::Second);
    let objective = |a: f64| -> f64 {
        let x = x_opt(&FilterOperator { a });
        0.5 - x.trace_product(&pt).expect("4x4 operands").re
    };

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    let best = [
        (mid, objective(mid)),
        (0.0, objective(0.0)),
        (1.0, objective(1.0)),
    ]
    .into_iter()
    .fold((f64::NAN, f64::NEG_INFINITY), |acc, c| {
        if c.1 > acc.1 {
            c
        } else {
            acc
        }
    });
    Ok(FilterOptimum {
        a_star: best.0,
        f_star: best.1,
    })
}
