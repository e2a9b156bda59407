//! Validated density matrices and the catalog of named states.

use std::f64::consts::{FRAC_PI_3, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c64, hermitian_eigen, ComplexMatrix, HERMITIAN_TOL};

pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const UNIT_NORM_TOL: f64 = 1e-12;
pub const REDUCED_STATE_TOL: f64 = 1e-10;

/// A bipartite d⊗d quantum state: Hermitian, unit trace and positive
/// semidefinite, each within the module tolerances.
///
/// The spectrum is computed once during validation and kept alongside the
/// matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    d: usize,
    spectrum: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::OutOfRange {
                name: "d",
                value: d as f64,
                range: "d >= 2",
            });
        }
        if mat.dim() != d * d {
            return Err(Error::NotAState(format!(
                "matrix dimension {} is not d² = {}",
                mat.dim(),
                d * d
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotAState(format!(
                "not Hermitian: max |M_ij - conj(M_ji)| = {defect:e}"
            )));
        }
        let tr = mat.trace();
        if (tr - c64(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::NotAState(format!(
                "trace is {}{:+}i, not 1",
                tr.re, tr.im
            )));
        }
        let spectrum = hermitian_eigen(&mat)?.eigenvalues;
        let lmin = spectrum[0];
        if lmin < -PSD_TOL {
            return Err(Error::NotAState(format!(
                "not positive semidefinite: minimum eigenvalue {lmin:e}"
            )));
        }
        let lmax = *spectrum.last().unwrap();
        if lmax > 1.0 + PSD_TOL {
            return Err(Error::NotAState(format!(
                "maximum eigenvalue {lmax} exceeds 1"
            )));
        }
        Ok(Self { mat, d, spectrum })
    }

    /// |ψ⟩⟨ψ| for a normalised vector of length d².
    pub fn from_pure(psi: &[Complex64], d: usize) -> Result<Self> {
        let norm = linalg::vector_norm(psi);
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotAState(format!(
                "pure-state vector has norm {norm}"
            )));
        }
        Self::new(ComplexMatrix::projector(psi), d)
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        let n = d * d;
        Self::new(ComplexMatrix::identity(n).scale_real(1.0 / n as f64), d)
    }

    /// ρ_A ⊗ ρ_B for two single-party states of equal dimension.
    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        if rho_a.dim() != rho_b.dim() {
            return Err(Error::DimensionMismatch {
                left: rho_a.dim(),
                right: rho_b.dim(),
            });
        }
        Self::new(rho_a.tensor(rho_b), rho_a.dim())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Local dimension d.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Eigenvalues, ascending.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn lambda_max(&self) -> f64 {
        *self.spectrum.last().unwrap()
    }

    pub fn lambda_min(&self) -> f64 {
        self.spectrum[0]
    }

    /// Partial trace over subsystem B.
    pub fn reduced_first(&self) -> ComplexMatrix {
        reduce(&self.mat, self.d, true)
    }

    /// Partial trace over subsystem A.
    pub fn reduced_second(&self) -> ComplexMatrix {
        reduce(&self.mat, self.d, false)
    }
}

fn reduce(m: &ComplexMatrix, d: usize, keep_first: bool) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(d);
    for i in 0..d {
        for k in 0..d {
            let mut acc = Complex64::default();
            for j in 0..d {
                acc += if keep_first {
                    m[(i * d + j, k * d + j)]
                } else {
                    m[(j * d + i, j * d + k)]
                };
            }
            out[(i, k)] = acc;
        }
    }
    out
}

/// Unit vector in C^d ⊗ C^d whose reductions are both I/d.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximallyEntangledVector {
    d: usize,
    amps: Vec<Complex64>,
}

impl MaximallyEntangledVector {
    pub fn new(amps: Vec<Complex64>, d: usize) -> Result<Self> {
        if amps.len() != d * d {
            return Err(Error::InvalidLength {
                expected: d * d,
                got: amps.len(),
            });
        }
        let norm = linalg::vector_norm(&amps);
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotAState(format!("vector norm {norm} is not 1")));
        }
        let proj = ComplexMatrix::projector(&amps);
        let target = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
        for (keep_first, side) in [(true, "A"), (false, "B")] {
            let dev = reduce(&proj, d, keep_first).max_abs_diff(&target)?;
            if dev > REDUCED_STATE_TOL {
                return Err(Error::NotAState(format!(
                    "reduced state on {side} deviates from I/d by {dev:e}"
                )));
            }
        }
        Ok(Self { d, amps })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.amps)
    }
}

/// (1/√d) Σ_i |ii⟩
pub fn phi_plus(d: usize) -> Result<MaximallyEntangledVector> {
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    let mut amps = vec![Complex64::default(); d * d];
    let w = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        amps[i * d + i] = c64(w, 0.0);
    }
    MaximallyEntangledVector::new(amps, d)
}

/// The two-qubit singlet (|01⟩ − |10⟩)/√2.
pub fn singlet() -> DensityMatrix {
    let h = 1.0 / SQRT_2;
    let psi = [c64(0.0, 0.0), c64(h, 0.0), c64(-h, 0.0), c64(0.0, 0.0)];
    DensityMatrix::from_pure(&psi, 2).expect("singlet is a pure state")
}

/// |φ_d⁺⟩⟨φ_d⁺|
pub fn phi_plus_state(d: usize) -> Result<DensityMatrix> {
    DensityMatrix::new(phi_plus(d)?.projector(), d)
}

/// Two-qubit state supported on span{|01⟩, |10⟩, |11⟩} with populations
/// b, d, e and coherence f between |01⟩ and |10⟩.
pub fn sigma_family(b: f64, d: f64, e: f64, f: Complex64) -> Result<DensityMatrix> {
    if b < 0.0 || d < 0.0 || e < 0.0 {
        return Err(Error::NotAState(format!(
            "populations must be non-negative (b={b}, d={d}, e={e})"
        )));
    }
    if (b + d + e - 1.0).abs() > TRACE_TOL {
        return Err(Error::NotAState(format!(
            "b + d + e = {} is not 1",
            b + d + e
        )));
    }
    if f.norm_sqr() > b * d + PSD_TOL {
        return Err(Error::NotAState(format!(
            "|f|² = {} exceeds b·d = {}",
            f.norm_sqr(),
            b * d
        )));
    }
    let mut m = ComplexMatrix::zeros(4);
    m[(1, 1)] = c64(b, 0.0);
    m[(1, 2)] = f;
    m[(2, 1)] = f.conj();
    m[(2, 2)] = c64(d, 0.0);
    m[(3, 3)] = c64(e, 0.0);
    DensityMatrix::new(m, 2)
}

/// The worked instance b=0.2, d=0.4, e=0.4, f=0.25+0.1i.
pub fn sigma_example() -> DensityMatrix {
    sigma_family(0.2, 0.4, 0.4, c64(0.25, 0.1)).expect("valid parameters")
}

/// Two-qubit state with unit-trace block on |01⟩,|10⟩ and weight √2−1 on |11⟩.
pub fn rho1() -> DensityMatrix {
    let r2 = SQRT_2;
    let mut m = ComplexMatrix::zeros(4);
    m[(1, 1)] = c64((3.0 - 2.0 * r2) / 2.0, 0.0);
    m[(1, 2)] = c64((1.0 - r2) / 2.0, 0.0);
    m[(2, 1)] = c64((1.0 - r2) / 2.0, 0.0);
    m[(2, 2)] = c64(0.5, 0.0);
    m[(3, 3)] = c64(r2 - 1.0, 0.0);
    DensityMatrix::new(m, 2).expect("rho1 is a valid state")
}

pub const RHO2_RANGE: (f64, f64) = (0.35, 0.369);
pub const RHO2_COUPLING: f64 = -0.22;

/// The literal qutrit matrix for parameter `a`, without state validation.
///
/// Positivity only holds for a ≤ 1/4 + √(0.0141) ≈ 0.368743, slightly short
/// of the nominal interval's upper end.
pub fn rho2_matrix(a: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(9);
    m[(0, 0)] = c64((1.0 - a) / 2.0, 0.0);
    m[(0, 8)] = c64(RHO2_COUPLING, 0.0);
    m[(8, 0)] = c64(RHO2_COUPLING, 0.0);
    m[(4, 4)] = c64(0.5 - a, 0.0);
    m[(4, 5)] = c64(RHO2_COUPLING, 0.0);
    m[(5, 4)] = c64(RHO2_COUPLING, 0.0);
    m[(5, 5)] = c64(a, 0.0);
    m[(8, 8)] = c64(a / 2.0, 0.0);
    m
}

/// Largest `a` for which [`rho2_matrix`] is positive semidefinite.
pub fn rho2_psd_limit() -> f64 {
    0.25 + (0.25 * 0.25 - RHO2_COUPLING * RHO2_COUPLING).sqrt()
}

pub fn rho2(a: f64) -> Result<DensityMatrix> {
    check_closed(a, RHO2_RANGE, "a", "[0.35, 0.369]")?;
    DensityMatrix::new(rho2_matrix(a), 3).map_err(|e| match e {
        Error::NotAState(msg) => Error::NotAState(format!(
            "rho2({a}) is not positive semidefinite (requires a <= {:.6}): {msg}",
            rho2_psd_limit()
        )),
        other => other,
    })
}

pub const RHO3_RANGE: (f64, f64) = (0.5, 0.65);
pub const RHO3_COUPLING: f64 = 0.015;

pub fn rho3(a: f64) -> Result<DensityMatrix> {
    check_closed(a, RHO3_RANGE, "a", "[0.5, 0.65]")?;
    let mut m = ComplexMatrix::zeros(9);
    m[(0, 0)] = c64(a / 2.0, 0.0);
    m[(1, 1)] = c64(a / 2.0, 0.0);
    m[(7, 7)] = c64((1.0 - a) / 2.0, 0.0);
    m[(8, 8)] = c64((1.0 - a) / 2.0, 0.0);
    m[(0, 8)] = c64(RHO3_COUPLING, 0.0);
    m[(8, 0)] = c64(RHO3_COUPLING, 0.0);
    DensityMatrix::new(m, 3)
}

/// 2/7 |φ₃⁺⟩⟨φ₃⁺| + α/7 σ₊ + (5−α)/7 σ₋ for 4 < α ≤ 5.
pub fn rho_alpha(alpha: f64) -> Result<DensityMatrix> {
    if !(alpha > 4.0 && alpha <= 5.0) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            range: "(4, 5]",
        });
    }
    let phi = phi_plus(3)?.projector();
    let idx = |i: usize, j: usize| i * 3 + j;
    let sigma = |pairs: [(usize, usize); 3]| {
        let mut diag = [0.0; 9];
        for (i, j) in pairs {
            diag[idx(i, j)] = 1.0 / 3.0;
        }
        ComplexMatrix::from_diagonal(&diag)
    };
    let sigma_plus = sigma([(0, 1), (1, 2), (2, 0)]);
    let sigma_minus = sigma([(1, 0), (2, 1), (0, 2)]);
    let m = &(&phi.scale_real(2.0 / 7.0) + &sigma_plus.scale_real(alpha / 7.0))
        + &sigma_minus.scale_real((5.0 - alpha) / 7.0);
    DensityMatrix::new(m, 3)
}

/// p |φ_d⁺⟩⟨φ_d⁺| + (1 − p) I/d²
pub fn noisy_singlet(p: f64, d: usize) -> Result<DensityMatrix> {
    check_closed(p, (0.0, 1.0), "p", "[0, 1]")?;
    let n = d * d;
    let phi = phi_plus(d)?.projector();
    let noise = ComplexMatrix::identity(n).scale_real((1.0 - p) / n as f64);
    DensityMatrix::new(&phi.scale_real(p) + &noise, d)
}

/// Nine maximally entangled two-qutrit vectors: each is an equal-weight
/// sum of |j, j+s⟩ over a cyclic shift s, with the third term carrying
/// the phase −e^{iπ/3}.
pub fn qutrit_me_basis() -> Vec<MaximallyEntangledVector> {
    // (first, second, phased) product kets |ij⟩ for B_0 … B_8.
    const TERMS: [[(usize, usize); 3]; 9] = [
        [(0, 0), (2, 2), (1, 1)],
        [(0, 1), (2, 0), (1, 2)],
        [(0, 2), (2, 1), (1, 0)],
        [(1, 1), (0, 0), (2, 2)],
        [(1, 2), (0, 1), (2, 0)],
        [(1, 0), (0, 2), (2, 1)],
        [(1, 1), (2, 2), (0, 0)],
        [(2, 0), (1, 2), (0, 1)],
        [(2, 1), (1, 0), (0, 2)],
    ];
    let w = 1.0 / 3f64.sqrt();
    let phase = -Complex64::from_polar(1.0, FRAC_PI_3);
    TERMS
        .iter()
        .map(|terms| {
            let mut amps = vec![Complex64::default(); 9];
            amps[terms[0].0 * 3 + terms[0].1] += c64(w, 0.0);
            amps[terms[1].0 * 3 + terms[1].1] += c64(w, 0.0);
            amps[terms[2].0 * 3 + terms[2].1] += phase * w;
            MaximallyEntangledVector::new(amps, 3).expect("basis vector is maximally entangled")
        })
        .collect()
}

/// Generalised Bell basis (X^s Z^t ⊗ I)|φ_d⁺⟩ for any d ≥ 2.
pub fn generalized_bell_basis(d: usize) -> Result<Vec<MaximallyEntangledVector>> {
    let phi = phi_plus(d)?;
    let omega =
        |k: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64);
    let mut out = Vec::with_capacity(d * d);
    for shift in 0..d {
        for clock in 0..d {
            let mut amps = vec![Complex64::default(); d * d];
            for i in 0..d {
                // Z^t|i⟩ = ω^{ti}|i⟩, then X^s|i⟩ = |i+s⟩.
                let a = (i + shift) % d;
                amps[a * d + i] = phi.amplitudes()[i * d + i] * omega((clock * i) % d);
            }
            out.push(MaximallyEntangledVector::new(amps, d)?);
        }
    }
    Ok(out)
}

fn check_closed(
    x: f64,
    (lo, hi): (f64, f64),
    name: &'static str,
    range: &'static str,
) -> Result<()> {
    if x.is_nan() || x < lo || x > hi {
        return Err(Error::OutOfRange {
            name,
            value: x,
            range,
        });
    }
    Ok(())
}

/// On-disk density-matrix document: `{"d": int, "entries": [[re, im], ...]}`
/// with d⁴ row-major pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub d: usize,
    pub entries: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self {
            d: rho.d(),
            entries: rho
                .matrix()
                .entries()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
        }
    }

    pub fn into_state(self) -> Result<DensityMatrix> {
        let n = self.d * self.d;
        if self.entries.len() != n * n {
            return Err(Error::Parse(format!(
                "expected d⁴ = {} entries, found {}",
                n * n,
                self.entries.len()
            )));
        }
        let entries = self.entries.iter().map(|[re, im]| c64(*re, *im)).collect();
        DensityMatrix::new(ComplexMatrix::new(n, entries)?, self.d)
    }
}

pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let doc: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_state()
}

pub fn render_state(rho: &DensityMatrix) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(rho)).expect("plain numeric document")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner;

    #[test]
    fn phi_plus_amplitudes() {
        let v = phi_plus(2).unwrap();
        let h = 1.0 / SQRT_2;
        assert_eq!(
            v.amplitudes(),
            &[c64(h, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(h, 0.0)]
        );

        let v3 = phi_plus(3).unwrap();
        for (k, z) in v3.amplitudes().iter().enumerate() {
            let expect = if [0, 4, 8].contains(&k) {
                1.0 / 3f64.sqrt()
            } else {
                0.0
            };
            assert!((z.re - expect).abs() < 1e-15 && z.im == 0.0);
        }
        assert!(phi_plus(1).is_err());
    }

    #[test]
    fn phi_plus_reduced_state_by_direct_sum() {
        let v = phi_plus(3).unwrap();
        let a = v.amplitudes();
        // (ρ_A)_{ik} = Σ_j ψ_{ij} conj(ψ_{kj})
        for i in 0..3 {
            for k in 0..3 {
                let s: Complex64 = (0..3).map(|j| a[i * 3 + j] * a[k * 3 + j].conj()).sum();
                let expect = if i == k { 1.0 / 3.0 } else { 0.0 };
                assert!((s - c64(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn sigma_example_entries() {
        let s = sigma_example();
        let m = s.matrix();
        assert_eq!(m[(1, 1)], c64(0.2, 0.0));
        assert_eq!(m[(1, 2)], c64(0.25, 0.1));
        assert_eq!(m[(2, 1)], c64(0.25, -0.1));
        assert_eq!(m[(2, 2)], c64(0.4, 0.0));
        assert_eq!(m[(3, 3)], c64(0.4, 0.0));
        assert_eq!(m[(0, 0)], c64(0.0, 0.0));
    }

    #[test]
    fn sigma_family_edges() {
        // f = 0: diagonal
        let s = sigma_family(0.3, 0.3, 0.4, c64(0.0, 0.0)).unwrap();
        assert_eq!(s.spectrum(), &[0.0, 0.3, 0.3, 0.4]);
        // b = d = 1/2, f = 1/2: (|01⟩+|10⟩)/√2
        let bell = sigma_family(0.5, 0.5, 0.0, c64(0.5, 0.0)).unwrap();
        assert!((bell.lambda_max() - 1.0).abs() < 1e-12);
        assert!(matches!(
            sigma_family(0.2, 0.4, 0.4, c64(0.3, 0.0)),
            Err(Error::NotAState(_))
        ));
        assert!(matches!(
            sigma_family(0.2, 0.4, 0.5, c64(0.0, 0.0)),
            Err(Error::NotAState(_))
        ));
        assert!(matches!(
            sigma_family(-0.1, 0.6, 0.5, c64(0.0, 0.0)),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn rho1_spectrum_and_trace() {
        let r = rho1();
        let tr = (3.0 - 2.0 * SQRT_2) / 2.0 + 0.5 + (SQRT_2 - 1.0);
        assert!((tr - 1.0).abs() < 1e-15);
        let expect = [0.0, 0.0, SQRT_2 - 1.0, 2.0 - SQRT_2];
        for (got, want) in r.spectrum().iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        // four-figure reference values
        for (got, want) in r.spectrum().iter().zip([0.0, 0.0, 0.4142, 0.5858]) {
            assert!((got - want).abs() < 5e-4);
        }
    }

    #[test]
    fn rho2_closed_form_and_domain() {
        for a in [0.35, 0.355, 0.36, 0.365, 0.368] {
            let r = rho2(a).unwrap();
            let closed = 0.25 + 0.5 * (0.4436 - 2.0 * a + 4.0 * a * a).sqrt();
            assert!((r.lambda_max() - closed).abs() < 1e-12);
        }
        // 1/4 + √0.2336/2
        assert!((rho2(0.35).unwrap().lambda_max() - 0.4916609).abs() < 1e-6);
        let limit = rho2_psd_limit();
        assert!((limit - 0.368743).abs() < 1e-6);
        // Upper end of the nominal interval is not positive semidefinite.
        assert!(matches!(rho2(0.369), Err(Error::NotAState(_))));
        assert!(matches!(rho2(0.34), Err(Error::OutOfRange { .. })));
        // trace identity of the matrix
        let a = 0.369;
        assert!((rho2_matrix(a).trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rho3_spectrum() {
        let r = rho3(0.5).unwrap();
        let want = [0.0, 0.0, 0.0, 0.0, 0.0, 0.235, 0.25, 0.25, 0.265];
        for (got, w) in r.spectrum().iter().zip(want) {
            assert!((got - w).abs() < 1e-12, "{got} vs {w}");
        }
        for a in [0.5_f64, 0.55, 0.6, 0.65] {
            let closed = 0.125 * (2.0 + (16.0 * a * a - 16.0 * a + 4.0144).sqrt());
            assert!((rho3(a).unwrap().lambda_max() - closed).abs() < 1e-12);
        }
        assert!(rho3(0.7).is_err());
    }

    #[test]
    fn rho_alpha_structure() {
        for alpha in [4.1, 4.5, 5.0] {
            let r = rho_alpha(alpha).unwrap();
            assert!((r.matrix()[(1, 1)].re - alpha / 21.0).abs() < 1e-15);
            assert!((r.lambda_max() - 2.0 / 7.0).abs() < 1e-12);
        }
        assert!(rho_alpha(4.0).is_err());
        assert!(rho_alpha(5.01).is_err());
    }

    #[test]
    fn noisy_singlet_limits() {
        for d in [2, 3, 4] {
            let mm = noisy_singlet(0.0, d).unwrap();
            assert!((mm.lambda_max() - 1.0 / (d * d) as f64).abs() < 1e-14);
        }
        assert!(noisy_singlet(1.1, 2).is_err());
        assert!(noisy_singlet(0.5, 1).is_err());
    }

    #[test]
    fn qutrit_basis_orthonormal() {
        let basis = qutrit_me_basis();
        assert_eq!(basis.len(), 9);
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let ip = inner(u.amplitudes(), v.amplitudes());
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c64(expect, 0.0)).norm() < 1e-12, "<B{i}|B{j}> = {ip}");
            }
        }
    }

    #[test]
    fn generalized_bell_basis_orthonormal() {
        for d in [2, 3, 4] {
            let basis = generalized_bell_basis(d).unwrap();
            assert_eq!(basis.len(), d * d);
            for (i, u) in basis.iter().enumerate() {
                for (j, v) in basis.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (inner(u.amplitudes(), v.amplitudes()) - c64(expect, 0.0)).norm() < 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_product_vector_as_maximally_entangled() {
        let mut amps = vec![c64(0.0, 0.0); 4];
        amps[0] = c64(1.0, 0.0);
        assert!(matches!(
            MaximallyEntangledVector::new(amps, 2),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn validation_names_the_violation() {
        let bad_trace = ComplexMatrix::identity(4).scale_real(0.3);
        let err = DensityMatrix::new(bad_trace, 2).unwrap_err().to_string();
        assert!(err.contains("trace"), "{err}");

        let not_psd = ComplexMatrix::from_diagonal(&[1.2, -0.2, 0.0, 0.0]);
        let err = DensityMatrix::new(not_psd, 2).unwrap_err().to_string();
        assert!(err.contains("positive semidefinite"), "{err}");

        let mut not_herm = ComplexMatrix::identity(4).scale_real(0.25);
        not_herm[(0, 1)] = c64(0.1, 0.0);
        let err = DensityMatrix::new(not_herm, 2).unwrap_err().to_string();
        assert!(err.contains("Hermitian"), "{err}");

        let err = DensityMatrix::new(ComplexMatrix::identity(3).scale_real(1.0 / 3.0), 2)
            .unwrap_err()
            .to_string();
        assert!(err.contains("d²"), "{err}");
    }

    #[test]
    fn state_file_round_trip_and_errors() {
        let r = rho1();
        let text = render_state(&r);
        let back = parse_state(&text).unwrap();
        assert_eq!(back.matrix(), r.matrix());

        assert!(matches!(parse_state("{\"d\": 2}"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state("{\"d\": 2, \"entries\": [[1, 0]]}"),
            Err(Error::Parse(_))
        ));
        let mut doc = StateFile::from_state(&r);
        doc.entries[5][0] += 0.1;
        let err = doc.into_state().unwrap_err();
        assert!(matches!(err, Error::NotAState(_)));
    }
}
