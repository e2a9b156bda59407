//! Brute-force verifiers used to audit the criteria from first principles.
//!
//! Randomness comes from ChaCha8 streams keyed by `(seed, stream)`, so a
//! trial's instance depends only on the seed and its index, never on the
//! order in which trials are evaluated.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{
    dembo_bounds_matrix, fef_2qubit, partial_transpose_matrix, singlet_fraction_basis,
    DemboVariant, EtaMode, Subsystem,
};
use crate::error::{Error, Result};
use crate::linalg::{c64, hermitian_eigen, lambda_max, pauli_y, ComplexMatrix};
use crate::states::{phi_plus, qutrit_me_basis, DensityMatrix};

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im)
}

pub fn ginibre(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let entries = (0..n * n).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(n, entries).unwrap()
}

/// Haar-random unitary: Gram–Schmidt on the columns of a complex Gaussian
/// matrix. Normalising each column against a positive real diagonal of R
/// fixes the phases, which is what makes the distribution Haar.
pub fn haar_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        // Two passes of modified Gram–Schmidt for orthogonality to 1e-15.
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .map(|(q, v)| q.conj() * v)
                    .sum();
                let qk = cols[k].clone();
                for (v, q) in cols[j].iter_mut().zip(&qk) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Full-rank generic state G G† / Tr(G G†).
pub fn random_density_matrix(rng: &mut impl Rng, d: usize) -> DensityMatrix {
    let g = ginibre(rng, d * d);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(hermitize(&m.scale_real(1.0 / tr)), d).expect("G G† is a state")
}

/// Mixture of `rank` random pure states, rank-deficient when rank < d².
pub fn random_low_rank_state(rng: &mut impl Rng, d: usize, rank: usize) -> DensityMatrix {
    let n = d * d;
    let weights: Vec<f64> = (0..rank).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(n);
    for w in weights {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        m = &m + &ComplexMatrix::projector(&v).scale_real(w / total);
    }
    let tr = m.trace().re;
    DensityMatrix::new(hermitize(&m.scale_real(1.0 / tr)), d).expect("projector mixture is a state")
}

/// Alternates full-rank and rank-deficient instances.
pub fn random_state_mixed_ranks(rng: &mut impl Rng, d: usize) -> DensityMatrix {
    if rng.random::<bool>() {
        random_density_matrix(rng, d)
    } else {
        let rank = rng.random_range(1..d * d);
        random_low_rank_state(rng, d, rank)
    }
}

/// (G + G†)/2
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    hermitize(&(&g + &g.adjoint()).scale_real(0.5))
}

/// G G† (unnormalised)
pub fn random_psd(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    hermitize(&(&g * &g.adjoint()))
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale_real(0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingBudget {
    pub n_unitaries: usize,
    pub seed: u64,
}

impl SamplingBudget {
    pub fn new(n_unitaries: usize, seed: u64) -> Result<Self> {
        if n_unitaries == 0 {
            return Err(Error::OutOfRange {
                name: "n_unitaries",
                value: 0.0,
                range: ">= 1",
            });
        }
        Ok(Self { n_unitaries, seed })
    }
}

/// Maximum of ⟨φ_d⁺|(U_A ⊗ U_B)† ρ (U_A ⊗ U_B)|φ_d⁺⟩ over sampled local
/// unitaries. The first sample is always the identity pair; the rest are
/// Haar draws from one sequential stream, so a smaller budget with the
/// same seed evaluates a prefix of a larger one.
pub fn sampled_singlet_fraction(rho: &DensityMatrix, budget: SamplingBudget) -> f64 {
    let d = rho.d();
    let phi = phi_plus(d).expect("d >= 2");
    let mut best = rho.matrix().expectation(phi.amplitudes()).unwrap().re;
    let mut rng = stream_rng(budget.seed, 0);
    let scale = 1.0 / (d as f64).sqrt();
    let mut v = vec![Complex64::default(); d * d];
    for _ in 1..budget.n_unitaries {
        let ua = haar_unitary(&mut rng, d);
        let ub = haar_unitary(&mut rng, d);
        // (U_A ⊗ U_B)|φ⁺⟩ = (1/√d) Σ_{ij} (U_A U_Bᵀ)_{ij} |ij⟩
        let w = &ua * &ub.transpose();
        for i in 0..d {
            for j in 0..d {
                v[i * d + j] = w[(i, j)] * scale;
            }
        }
        let f = rho.matrix().expectation(&v).unwrap().re;
        if f > best {
            best = f;
        }
    }
    best
}

/// Wootters concurrence max(0, s₁ − s₂ − s₃ − s₄), where s_i are the
/// descending square roots of the eigenvalues of ρ ρ̃ with
/// ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y). They are computed as the singular values
/// of √ρ √ρ̃, i.e. the square roots of the spectrum of √ρ ρ̃ √ρ.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.d() != 2 {
        return Err(Error::DimensionUnsupported {
            d: rho.d(),
            required: "d = 2",
        });
    }
    let yy = pauli_y().tensor(&pauli_y());
    let flipped = &(&yy * &rho.matrix().conj()) * &yy;
    let sqrt_rho = psd_sqrt(rho.matrix())?;
    let h = hermitize(&(&(&sqrt_rho * &flipped) * &sqrt_rho));
    let mut s: Vec<f64> = hermitian_eigen(&h)?
        .eigenvalues
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = hermitian_eigen(m)?;
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (lam, v) in e.eigenvalues.iter().zip(&e.eigenvectors) {
        let p = ComplexMatrix::projector(v).scale_real(lam.max(0.0).sqrt());
        out = &out + &p;
    }
    Ok(out)
}

/// Signed margin of one inequality on one random instance: non-negative
/// means satisfied.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub slack: f64,
    pub detail: String,
}

/// A randomised inequality the harness evaluates once per trial.
pub trait InequalityCheck: Sync {
    fn name(&self) -> &str;
    /// Violations are slacks below `-tolerance()`.
    fn tolerance(&self) -> f64 {
        1e-9
    }
    fn evaluate(&self, rng: &mut ChaCha8Rng) -> CheckOutcome;
}

/// λ_min(A) Tr B ≤ Re Tr(AB) ≤ λ_max(A) Tr B for Hermitian A, PSD B.
pub struct TraceSandwich;
/// λ_max(A) + λ_min(B) ≤ λ_max(A+B) ≤ λ_max(A) + λ_max(B).
pub struct WeylMaxEigenvalue;
/// 1/d² ≤ λ_max(ρ) ≤ 1.
pub struct MaxEigenvalueRange;
/// λ_max(ρ) ≥ F(ρ) with the exact two-qubit fraction.
pub struct EigenvalueDominatesFractionQubits;
/// λ_max(ρ) ≥ max_i ⟨B_i|ρ|B_i⟩ over the phased qutrit basis.
pub struct EigenvalueDominatesFractionQutrits;
/// lower ≤ λ_max ≤ upper for the /4 Dembo bound with exact η.
pub struct DemboSandwich;

fn random_dim(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(2..=9)
}

impl InequalityCheck for TraceSandwich {
    fn name(&self) -> &str {
        "trace-sandwich"
    }

    fn evaluate(&self, rng: &mut ChaCha8Rng) -> CheckOutcome {
        let n = random_dim(rng);
        let a = random_hermitian(rng, n);
        let b = random_psd(rng, n);
        let ea = hermitian_eigen(&a).unwrap();
        let tr_b = b.trace().re;
        let tr_ab = a.trace_product(&b).unwrap().re;
        let lo = tr_ab - ea.min() * tr_b;
        let hi = ea.max() * tr_b - tr_ab;
        CheckOutcome {
            slack: lo.min(hi),
            detail: format!(
                "n={n} λmin(A)TrB={:.6e} TrAB={tr_ab:.6e} λmax(A)TrB={:.6e}",
                ea.min() * tr_b,
                ea.max() * tr_b
            ),
        }
    }
}

impl InequalityCheck for WeylMaxEigenvalue {
    fn name(&self) -> &str {
        "weyl-max-eigenvalue"
    }

    fn evaluate(&self, rng: &mut ChaCha8Rng) -> CheckOutcome {
        let n = random_dim(rng);
        let a = random_hermitian(rng, n);
        let b = random_hermitian(rng, n);
        let ea = hermitian_eigen(&a).unwrap();
        let eb = hermitian_eigen(&b).unwrap();
        let sum = lambda_max(&(&a + &b)).unwrap();
        let lo = sum - (ea.max() + eb.min());
        let hi = ea.max() + eb.max() - sum;
        CheckOutcome {
            slack: lo.min(hi),
            detail: format!(
                "n={n} λmax(A+B)={sum:.6e} bounds=[{:.6e}, {:.6e}]",
                ea.max() + eb.min(),
                ea.max() + eb.max()
            ),
        }
    }
}

impl InequalityCheck for MaxEigenvalueRange {
    fn name(&self) -> &str {
        "max-eigenvalue-range"
    }

    fn tolerance(&self) -> f64 {
        1e-10
    }

    fn evaluate(&self, rng: &mut ChaCha8Rng) -> CheckOutcome {
        let d = rng.random_range(2..=3);
        let rho = random_state_mixed_ranks(rng, d);
        let lam = rho.lambda_max();
        let floor = 1.0 / (d * d) as f64;
        CheckOutcome {
            slack: (lam - floor).min(1.0 - lam),
            detail: format!("d={d} λmax={lam:.6e}"),
        }
    }
}

impl InequalityCheck for EigenvalueDominatesFractionQubits {
    fn name(&self) -> &str {
        "lambda-max-vs-fraction-d2"
    }

    fn evaluate(&self, rng: &mut ChaCha8Rng) -> CheckOutcome {
        let rho = random_state_mixed_ranks(rng, 2);
        let f = fef_2qubit(&rho).unwrap();
        CheckOutcome {
            slack: rho.lambda_max() - f,
            detail: format!("λmax={:.6e} F={f:.6e}", rho.lambda_max()),
        }
    }
}

impl InequalityCheck for EigenvalueDominatesFractionQutrits {
    fn name(&self) -> &str {
        "lambda-max-vs-fraction-d3"
    }

    fn evaluate(&self, rng: &mut ChaCha8Rng) -> CheckOutcome {
        let rho = random_state_mixed_ranks(rng, 3);
        let f = singlet_fraction_basis(&rho, &qutrit_me_basis()).unwrap();
        CheckOutcome {
            slack: rho.lambda_max() - f,
            detail: format!("λmax={:.6e} F_basis={f:.6e}", rho.lambda_max()),
        }
    }
}

impl InequalityCheck for DemboSandwich {
    fn name(&self) -> &str {
        "dembo-quarter-sandwich"
    }

    fn evaluate(&self, rng: &mut ChaCha8Rng) -> CheckOutcome {
        let d = if rng.random::<bool>() { 2 } else { 3 };
        let rho = random_state_mixed_ranks(rng, d);
        let b = dembo_bounds_matrix(rho.matrix(), DemboVariant::Quarter, EtaMode::Exact).unwrap();
        let lam = rho.lambda_max();
        CheckOutcome {
            slack: (lam - b.lower).min(b.upper - lam),
            detail: format!(
                "d={d} lower={:.6e} λmax={lam:.6e} upper={:.6e}",
                b.lower, b.upper
            ),
        }
    }
}

pub fn registered_checks() -> Vec<Box<dyn InequalityCheck>> {
    vec![
        Box::new(TraceSandwich),
        Box::new(WeylMaxEigenvalue),
        Box::new(MaxEigenvalueRange),
        Box::new(EigenvalueDominatesFractionQubits),
        Box::new(EigenvalueDominatesFractionQutrits),
        Box::new(DemboSandwich),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureInstance {
    pub trial: u64,
    pub seed: u64,
    pub stream: u64,
    pub slack: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub trials: u64,
    pub failures: u64,
    /// Smallest slack observed (most negative = worst).
    pub worst_slack: f64,
    pub first_failure: Option<FailureInstance>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<CheckSummary>,
}

impl HarnessReport {
    pub fn total_failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_failures() == 0
    }
}

/// Stream id for (check, trial): check index in the high 32 bits.
pub fn trial_stream(check_index: usize, trial: u64) -> u64 {
    ((check_index as u64) << 32) | trial
}

pub fn run_checks(
    checks: &[Box<dyn InequalityCheck>],
    trials: u64,
    seed: u64,
) -> Result<HarnessReport> {
    if trials == 0 {
        return Err(Error::OutOfRange {
            name: "trials",
            value: 0.0,
            range: ">= 1",
        });
    }
    let summaries = checks
        .iter()
        .enumerate()
        .map(|(ci, check)| {
            let outcomes: Vec<(u64, CheckOutcome)> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = stream_rng(seed, trial_stream(ci, t));
                    (t, check.evaluate(&mut rng))
                })
                .collect();
            let tol = check.tolerance();
            let mut failures = 0;
            let mut worst = f64::INFINITY;
            let mut first = None;
            for (t, o) in outcomes {
                worst = worst.min(o.slack);
                if o.slack < -tol || o.slack.is_nan() {
                    failures += 1;
                    if first.is_none() {
                        first = Some(FailureInstance {
                            trial: t,
                            seed,
                            stream: trial_stream(ci, t),
                            slack: o.slack,
                            detail: o.detail,
                        });
                    }
                }
            }
            CheckSummary {
                name: check.name().to_string(),
                trials,
                failures,
                worst_slack: worst,
                first_failure: first,
            }
        })
        .collect();
    Ok(HarnessReport {
        seed,
        trials,
        checks: summaries,
    })
}

pub fn inequality_harness(trials: u64, seed: u64) -> Result<HarnessReport> {
    run_checks(&registered_checks(), trials, seed)
}

/// Partial-transpose involution on an arbitrary operator, exposed for
/// property tests.
pub fn partial_transpose_twice(m: &ComplexMatrix, d: usize) -> ComplexMatrix {
    let once = partial_transpose_matrix(m, d, Subsystem::Second);
    partial_transpose_matrix(&once, d, Subsystem::Second)
}
