//! Dense complex matrices and a Hermitian eigensolver sized for bipartite
//! states up to 4⊗4 (dimension 16).
//!
//! Basis ordering is subsystem-A-major throughout: the product state
//! |i_A i_B⟩ sits at index `i_A * d_B + i_B`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `max |M_ij - conj(M_ji)|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Jacobi stops once the off-diagonal Frobenius mass falls below this
/// fraction of the matrix's Frobenius norm.
pub const JACOBI_OFF_TOL: f64 = 1e-14;

pub const JACOBI_MAX_SWEEPS: usize = 100;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Wraps `entries` (row-major, length `dim²`) without reordering them.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::default(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| c64(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = c64(x, 0.0);
        }
        m
    }

    /// |u⟩⟨v|
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        let n = u.len();
        let mut data = Vec::with_capacity(n * n);
        for ui in u {
            for vj in v {
                data.push(ui * vj.conj());
            }
        }
        Ok(Self { dim: n, data })
    }

    /// |v⟩⟨v|
    pub fn projector(v: &[Complex64]) -> Self {
        Self::outer(v, v).expect("same vector on both sides")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Entry-wise real part, as a complex matrix.
    pub fn real_part(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| c64(z.re, 0.0)).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c64(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    /// max |M_ij - conj(M_ji)|
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// ⟨v|M|v⟩
    pub fn expectation(&self, v: &[Complex64]) -> Result<Complex64> {
        let mv = self.mat_vec(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
    }

    /// Kronecker product `self ⊗ other`, with `self` as the major index.
    pub fn tensor(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut m = Self::zeros(n);
        for ia in 0..na {
            for ja in 0..na {
                let a = self[(ia, ja)];
                if a == Complex64::default() {
                    continue;
                }
                for ib in 0..nb {
                    for jb in 0..nb {
                        m[(ia * nb + ib, ja * nb + jb)] = a * other[(ib, jb)];
                    }
                }
            }
        }
        m
    }

    /// Tr(self · other) as Σ_ij A_ij B_ji, without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut acc = Complex64::default();
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i * n + j] * other.data[j * n + i];
            }
        }
        Ok(acc)
    }

    /// Leading principal submatrix of order `k`.
    pub fn leading_submatrix(&self, k: usize) -> Self {
        assert!(k <= self.dim, "submatrix order exceeds dimension");
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::default() {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(m)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for the
/// fallible form.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
            .expect("dimension mismatch in matrix product")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Full spectrum of a Hermitian matrix, ascending, with matching
/// orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Eigenvector belonging to the largest eigenvalue.
    pub fn top_vector(&self) -> &[Complex64] {
        self.eigenvectors.last().expect("non-empty spectrum")
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Equal eigenvalues keep the order of the diagonal position they
/// converged to.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let n = m.dim();
    if n == 0 {
        return Ok(EigenDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: Vec::new(),
        });
    }

    // Work on the exactly Hermitian part so that rounding asymmetry in the
    // input cannot stall convergence.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = c64(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    let threshold = JACOBI_OFF_TOL * scale;
    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                rotated |= jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort: ties stay in diagonal order.
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.eigenvalues)
}

pub fn lambda_max(m: &ComplexMatrix) -> Result<f64> {
    hermitian_eigen(m).map(|e| e.max())
}

pub fn lambda_min(m: &ComplexMatrix) -> Result<f64> {
    hermitian_eigen(m).map(|e| e.min())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates a[p][q] with the unitary G = diag-phase · real rotation,
/// updating a ← G†aG and v ← vG. Returns false when the entry is already
/// negligible against the diagonal.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) -> bool {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return false;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Entry too small to change either diagonal in floating point.
    if app.abs() + 100.0 * g == app.abs() && aqq.abs() + 100.0 * g == aqq.abs() {
        a[(p, q)] = Complex64::default();
        a[(q, p)] = Complex64::default();
        return false;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = [[c, s], [-s·conj(phase), c·conj(phase)]] on the (p, q) plane.
    let g_pp = c64(c, 0.0);
    let g_pq = c64(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    a[(p, q)] = Complex64::default();
    a[(q, p)] = Complex64::default();
    a[(p, p)] = c64(a[(p, p)].re, 0.0);
    a[(q, q)] = c64(a[(q, q)].re, 0.0);
    true
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        vec![c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0)],
    )
    .unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ⟨u|v⟩
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual_ok(m: &ComplexMatrix, e: &EigenDecomposition) {
        let scale = m.frobenius_norm().max(1.0);
        for (lam, vec) in e.eigenvalues.iter().zip(&e.eigenvectors) {
            let mv = m.mat_vec(vec).unwrap();
            let r: f64 = mv
                .iter()
                .zip(vec)
                .map(|(a, b)| (a - b * lam).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(r <= 1e-10 * scale, "residual {r}");
        }
        for (i, u) in e.eigenvectors.iter().enumerate() {
            for (j, w) in e.eigenvectors.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((inner(u, w) - c64(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn identity_spectrum() {
        let e = hermitian_eigen(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0; 4]);
        residual_ok(&ComplexMatrix::identity(4), &e);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::new(
            2,
            vec![c64(1.0, 0.0), c64(0.0, 1.0), c64(0.0, 1.0), c64(1.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::new(
            2,
            vec![c64(2.0, 0.0), c64(0.0, 1.0), c64(0.0, -1.0), c64(2.0, 0.0)],
        )
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-14);
        residual_ok(&m, &e);
    }

    #[test]
    fn ascending_and_stable_on_ties() {
        let m = ComplexMatrix::from_diagonal(&[3.0, 1.0, 1.0, 2.0]);
        let e = hermitian_eigen(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 2.0, 3.0]);
        // Degenerate pair keeps diagonal order: e_1 before e_2.
        assert_eq!(e.eigenvectors[0][1], c64(1.0, 0.0));
        assert_eq!(e.eigenvectors[1][2], c64(1.0, 0.0));
    }

    #[test]
    fn deterministic_on_repeat() {
        let m = ComplexMatrix::new(
            3,
            vec![
                c64(1.0, 0.0),
                c64(0.3, 0.2),
                c64(-0.1, 0.4),
                c64(0.3, -0.2),
                c64(0.5, 0.0),
                c64(0.2, 0.0),
                c64(-0.1, -0.4),
                c64(0.2, 0.0),
                c64(-0.7, 0.0),
            ],
        )
        .unwrap();
        let a = hermitian_eigen(&m).unwrap();
        let b = hermitian_eigen(&m).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
        residual_ok(&m, &a);
    }

    #[test]
    fn kronecker_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.tensor(&i2), ComplexMatrix::identity(4));

        let x = pauli_x();
        let lhs = &x.tensor(&i2) * &i2.tensor(&x);
        assert_eq!(lhs, x.tensor(&x));
        // σ_x ⊗ σ_x flips both bits: |00⟩ ↔ |11⟩, |01⟩ ↔ |10⟩.
        for (i, j) in [(0, 3), (1, 2), (2, 1), (3, 0)] {
            assert_eq!(lhs[(i, j)], c64(1.0, 0.0));
        }
    }

    #[test]
    fn tensor_index_is_a_major() {
        let a = ComplexMatrix::from_diagonal(&[1.0, 2.0]);
        let b = ComplexMatrix::from_diagonal(&[10.0, 20.0, 30.0]);
        let ab = a.tensor(&b);
        assert_eq!(ab.dim(), 6);
        let idx = |i: usize, j: usize| i * 3 + j;
        assert_eq!(ab[(idx(1, 2), idx(1, 2))], c64(60.0, 0.0));
        assert_eq!(ab[(idx(0, 1), idx(0, 1))], c64(20.0, 0.0));
    }

    #[test]
    fn trace_product_matches_full_product() {
        let a = ComplexMatrix::new(
            2,
            vec![c64(1.0, 0.5), c64(2.0, 0.0), c64(0.0, -1.0), c64(3.0, 0.0)],
        )
        .unwrap();
        let b = ComplexMatrix::new(
            2,
            vec![c64(0.2, 0.0), c64(1.0, 1.0), c64(-1.0, 0.0), c64(0.0, 2.0)],
        )
        .unwrap();
        let direct = (&a * &b).trace();
        assert!((a.trace_product(&b).unwrap() - direct).norm() < 1e-15);
        assert!(matches!(
            a.trace_product(&ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn new_checks_length() {
        assert!(matches!(
            ComplexMatrix::new(2, vec![c64(0.0, 0.0); 3]),
            Err(Error::InvalidLength {
                expected: 4,
                got: 3
            })
        ));
    }
}
