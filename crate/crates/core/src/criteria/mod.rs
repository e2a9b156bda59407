//! Teleportation-usefulness criteria.
//!
//! All functions here are pure; they take validated [`DensityMatrix`]
//! values and never mutate them.

mod dembo;
mod fraction;
mod report;
mod spa;

pub use dembo::{
    dembo_bounds, dembo_bounds_matrix, dembo_lower_from_parts, dembo_upper_from_parts, DemboBounds,
    DemboDecomposition, DemboVariant, EtaMode,
};
pub use fraction::{
    basis_overlaps, fef_2qubit, fef_2qubit_matrix, fidelity_from_fraction, magic_basis,
    max_eigenvalue, singlet_fraction_basis, singlet_fraction_lower_bound,
};
pub use report::{analyze, verdict, CriterionReport, ReportOptions, Verdict, VERDICT_MARGIN};
pub use spa::{
    f_opt_locc_pt, f_opt_locc_spa, optimize_filter, sigma_filter_threshold, spa_pt_2qubit,
    spa_pt_2qubit_matrix, spa_trace_identity, x_opt, FilterOperator, FilterOptimum,
};

use crate::linalg::{lambda_min, ComplexMatrix};
use crate::states::DensityMatrix;

/// λ_min(ρ^Γ) below this counts as a negative partial transpose.
pub const NPT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Transposes the indices of one subsystem of a d⊗d operator.
pub fn partial_transpose_matrix(m: &ComplexMatrix, d: usize, which: Subsystem) -> ComplexMatrix {
    assert_eq!(m.dim(), d * d, "operator is not on C^d ⊗ C^d");
    let mut out = ComplexMatrix::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    // ⟨ij|M^Γ|kl⟩
                    let src = match which {
                        Subsystem::Second => m[(i * d + l, k * d + j)],
                        Subsystem::First => m[(k * d + j, i * d + l)],
                    };
                    out[(i * d + j, k * d + l)] = src;
                }
            }
        }
    }
    out
}

pub fn partial_transpose(rho: &DensityMatrix, which: Subsystem) -> ComplexMatrix {
    partial_transpose_matrix(rho.matrix(), rho.d(), which)
}

/// λ_min of the partial transpose on the second subsystem.
pub fn min_pt_eigenvalue(rho: &DensityMatrix) -> f64 {
    lambda_min(&partial_transpose(rho, Subsystem::Second))
        .expect("partial transpose of a Hermitian matrix is Hermitian")
}

pub fn is_npt(rho: &DensityMatrix) -> bool {
    min_pt_eigenvalue(rho) < -NPT_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, hermitian_eigenvalues};
    use crate::states::{noisy_singlet, rho1, rho2};

    #[test]
    fn product_state_stays_positive() {
        let ra = ComplexMatrix::new(
            2,
            vec![c64(0.7, 0.0), c64(0.1, 0.2), c64(0.1, -0.2), c64(0.3, 0.0)],
        )
        .unwrap();
        let rb = ComplexMatrix::new(
            2,
            vec![c64(0.4, 0.0), c64(0.0, 0.3), c64(0.0, -0.3), c64(0.6, 0.0)],
        )
        .unwrap();
        let rho = DensityMatrix::product(&ra, &rb).unwrap();
        let pt = partial_transpose(&rho, Subsystem::Second);
        assert!(pt.max_abs_diff(&ra.tensor(&rb.transpose())).unwrap() < 1e-15);
        assert!(!is_npt(&rho));
        let pt_a = partial_transpose(&rho, Subsystem::First);
        assert!(pt_a.max_abs_diff(&ra.transpose().tensor(&rb)).unwrap() < 1e-15);
    }

    #[test]
    fn rho1_is_npt() {
        let r = rho1();
        assert!(min_pt_eigenvalue(&r) < 0.0);
        assert!(is_npt(&r));
    }

    #[test]
    fn bell_and_rho2_are_npt() {
        assert!(is_npt(&noisy_singlet(1.0, 2).unwrap()));
        assert!(is_npt(&rho2(0.36).unwrap()));
        for a in [0.35, 0.36, 0.368] {
            assert!(is_npt(&rho2(a).unwrap()), "a = {a}");
        }
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity() {
        let r = rho1();
        for which in [Subsystem::First, Subsystem::Second] {
            let pt = partial_transpose(&r, which);
            assert!((pt.trace().re - 1.0).abs() < 1e-15);
            assert!(pt.is_hermitian(1e-15));
        }
        // Transposing either side gives the same spectrum.
        let a = hermitian_eigenvalues(&partial_transpose(&r, Subsystem::First)).unwrap();
        let b = hermitian_eigenvalues(&partial_transpose(&r, Subsystem::Second)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
