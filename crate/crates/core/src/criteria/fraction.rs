//! Singlet-fraction routes: maximum over a supplied maximally entangled
//! basis (a lower bound for any d) and the exact two-qubit value.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{c64, lambda_max, ComplexMatrix};
use crate::states::{
    generalized_bell_basis, qutrit_me_basis, DensityMatrix, MaximallyEntangledVector,
};

/// ⟨B_i|M|B_i⟩ for every vector of the basis, in order.
pub fn basis_overlaps(m: &ComplexMatrix, basis: &[MaximallyEntangledVector]) -> Result<Vec<f64>> {
    basis
        .iter()
        .map(|b| {
            if b.amplitudes().len() != m.dim() {
                return Err(Error::DimensionMismatch {
                    left: m.dim(),
                    right: b.amplitudes().len(),
                });
            }
            Ok(m.expectation(b.amplitudes())?.re)
        })
        .collect()
}

/// max_i ⟨B_i|ρ|B_i⟩, a lower bound on the fully entangled fraction.
pub fn singlet_fraction_basis(
    rho: &DensityMatrix,
    basis: &[MaximallyEntangledVector],
) -> Result<f64> {
    Ok(basis_overlaps(rho.matrix(), basis)?
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Columns: |φ⁺⟩, i|φ⁻⟩, i|ψ⁺⟩, |ψ⁻⟩.
pub fn magic_basis() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    let z = c64(0.0, 0.0);
    let r = |x: f64| c64(x, 0.0);
    let i = |x: f64| c64(0.0, x);
    #[rustfmt::skip]
    let entries = vec![
        r(h), i(h),  z,     z,
        z,    z,     i(h),  r(h),
        z,    z,     i(h),  r(-h),
        r(h), i(-h), z,     z,
    ];
    ComplexMatrix::new(4, entries).unwrap()
}

/// Exact fully entangled fraction of a 4×4 Hermitian operator.
///
/// Up to a global phase the maximally entangled two-qubit vectors are the
/// real unit vectors in the magic basis, so the maximum overlap is the top
/// eigenvalue of Re(M†ρM).
pub fn fef_2qubit_matrix(m: &ComplexMatrix) -> Result<f64> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: 4,
        });
    }
    let q = magic_basis();
    let in_magic = &(&q.adjoint() * m) * &q;
    lambda_max(&in_magic.real_part())
}

pub fn fef_2qubit(rho: &DensityMatrix) -> Result<f64> {
    if rho.d() != 2 {
        return Err(Error::DimensionUnsupported {
            d: rho.d(),
            required: "d = 2",
        });
    }
    fef_2qubit_matrix(rho.matrix())
}

pub fn max_eigenvalue(rho: &DensityMatrix) -> f64 {
    rho.lambda_max()
}

/// Best available singlet-fraction value and whether it is exact.
///
/// d = 2 is exact; for d ≥ 3 the value is a maximum over the generalised
/// Bell basis (plus the phased qutrit basis when d = 3).
pub fn singlet_fraction_lower_bound(rho: &DensityMatrix) -> Result<(f64, bool)> {
    if rho.d() == 2 {
        return Ok((fef_2qubit(rho)?, true));
    }
    let mut best = singlet_fraction_basis(rho, &generalized_bell_basis(rho.d())?)?;
    if rho.d() == 3 {
        best = best.max(singlet_fraction_basis(rho, &qutrit_me_basis())?);
    }
    Ok((best, false))
}

/// Standard-teleportation fidelity (dF + 1)/(d + 1).
pub fn fidelity_from_fraction(f: f64, d: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::OutOfRange {
            name: "F",
            value: f,
            range: "[0, 1]",
        });
    }
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    let d = d as f64;
    Ok((d * f + 1.0) / (d + 1.0))
}
