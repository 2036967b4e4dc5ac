//! Majorization of spectra and its consequences for ensembles.
//!
//! `σ ≺ λ` ("λ majorizes σ") when every prefix sum of `σ↓` is at most the
//! matching prefix sum of `λ↓` and the totals agree. Vectors of different
//! length are zero-padded before comparison.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, PSD_TOL, ZERO_TOL};
use crate::states::{pad_spectrum, DensityOperator, Ensemble, PureStateSet};
use crate::transform::{deterministic_pi, pi_search, Certificate, SearchOptions, TransformProblem};
use crate::Verdict;

/// Default absolute tolerance for prefix and total comparisons.
pub const MAJORIZATION_TOL: f64 = 1e-9;

/// Non-negative spectrum or probability vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SpectrumVector {
    values: Vec<f64>,
}

impl SpectrumVector {
    /// Entries in `[-1e-12, 0)` are clipped to zero; anything more negative is rejected.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Shape("empty spectrum".into()));
        }
        let mut out = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("entry {i} is not finite")));
            }
            if v < -ZERO_TOL {
                return Err(Error::InvalidArgument(format!("entry {i} is negative ({v})")));
            }
            out.push(v.max(0.0));
        }
        Ok(Self { values: out })
    }

    pub fn uniform(n: usize) -> Self {
        Self { values: vec![1.0 / n as f64; n] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sorted_desc(&self) -> Vec<f64> {
        sorted_desc(&self.values)
    }
}

fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Outcome of a majorization test `σ ≺ λ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MajorizationReport {
    pub holds: bool,
    /// Length of the first prefix with `Σσ↓ > Σλ↓ + tol` (1-based).
    pub violated_prefix: Option<usize>,
    /// `Σσ − Σλ` when the totals disagree beyond `tol`.
    pub total_mismatch: Option<f64>,
    /// `max_k (Σ_{r≤k} σ↓_r − Σ_{r≤k} λ↓_r)`; non-positive up to `tol` when the test passes.
    pub worst_gap: f64,
    pub tol: f64,
}

/// `σ ≺ λ` for arbitrary real vectors (negative entries allowed).
pub fn majorizes_values(lambda: &[f64], sigma: &[f64], tol: f64) -> MajorizationReport {
    let n = lambda.len().max(sigma.len());
    let l = sorted_desc(&pad_spectrum(lambda.to_vec(), n));
    let s = sorted_desc(&pad_spectrum(sigma.to_vec(), n));
    let (mut pl, mut ps) = (0.0, 0.0);
    let mut violated = None;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..n {
        pl += l[k];
        ps += s[k];
        worst = worst.max(ps - pl);
        if violated.is_none() && ps > pl + tol {
            violated = Some(k + 1);
        }
    }
    let diff = ps - pl;
    let total_mismatch = (diff.abs() > tol).then_some(diff);
    MajorizationReport {
        holds: violated.is_none() && total_mismatch.is_none(),
        violated_prefix: violated,
        total_mismatch,
        worst_gap: if n == 0 { 0.0 } else { worst },
        tol,
    }
}

/// `σ ≺ λ`: is `λ` at least as pure as `σ`?
pub fn majorizes(lambda: &SpectrumVector, sigma: &SpectrumVector, tol: f64) -> MajorizationReport {
    majorizes_values(&lambda.values, &sigma.values, tol)
}

/// Non-negative square matrix with unit row and column sums.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DoublyStochasticMatrix {
    entries: Vec<Vec<f64>>,
}

impl DoublyStochasticMatrix {
    pub fn identity(n: usize) -> Self {
        Self { entries: (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect() }
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.entries.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Worst of: most negative entry, and largest row or column sum deviation from 1.
    pub fn validate(&self, tol: f64) -> Verdict {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut row = 0.0;
            let mut col = 0.0;
            for j in 0..n {
                worst = worst.max(-self.entries[i][j]);
                row += self.entries[i][j];
                col += self.entries[j][i];
            }
            worst = worst.max((row - 1.0).abs()).max((col - 1.0).abs());
        }
        Verdict::at_most(worst, tol)
    }

    // x ← T x with T = t·1 + (1 − t)·P_{jk}; rows j and k mix.
    fn t_transform(&mut self, j: usize, k: usize, t: f64) {
        let n = self.dim();
        for c in 0..n {
            let (a, b) = (self.entries[j][c], self.entries[k][c]);
            self.entries[j][c] = t * a + (1.0 - t) * b;
            self.entries[k][c] = (1.0 - t) * a + t * b;
        }
    }
}

/// Doubly stochastic `S` with `S λ↓ = σ↓`, built from at most `n − 1` T-transforms.
///
/// Both vectors are zero-padded to a common length and sorted decreasingly; the
/// returned matrix acts on those sorted coordinates.
pub fn ds_witness(lambda: &SpectrumVector, sigma: &SpectrumVector, tol: f64) -> Result<DoublyStochasticMatrix> {
    let report = majorizes(lambda, sigma, tol);
    if !report.holds {
        return Err(Error::NotMajorized { prefix: report.violated_prefix.unwrap_or(0) });
    }
    let n = lambda.len().max(sigma.len());
    let mut x = sorted_desc(&pad_spectrum(lambda.values.clone(), n));
    let target = sorted_desc(&pad_spectrum(sigma.values.clone(), n));
    let mut s = DoublyStochasticMatrix::identity(n);
    let eps = ZERO_TOL;
    for _ in 0..n {
        let Some(k) = (0..n).find(|&k| x[k] < target[k] - eps) else { break };
        let Some(j) = (0..k).rev().find(|&j| x[j] > target[j] + eps) else { break };
        let delta = (x[j] - target[j]).min(target[k] - x[k]);
        let one_minus_t = delta / (x[j] - x[k]);
        let t = 1.0 - one_minus_t;
        let (xj, xk) = (x[j], x[k]);
        x[j] = t * xj + one_minus_t * xk;
        x[k] = one_minus_t * xj + t * xk;
        s.t_transform(j, k, t);
    }
    Ok(s)
}

/// If `σ ≺ (1/n, …, 1/n)` then `σ` must itself be uniform. Returns `false` only
/// when the premise holds and the conclusion fails.
pub fn uniform_fixed_point(sigma: &SpectrumVector, n: usize, tol: f64) -> bool {
    let uniform = SpectrumVector::uniform(n);
    if !majorizes(&uniform, sigma, tol).holds {
        return true;
    }
    let padded = pad_spectrum(sigma.values.clone(), n);
    padded.iter().all(|v| (v - 1.0 / n as f64).abs() <= tol)
}

/// `λ(A ∘ B) ≺ λ(B)` for a correlation matrix `A` and Hermitian `B`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HadamardMajorization {
    pub product_spectrum: Vec<f64>,
    pub b_spectrum: Vec<f64>,
    pub majorization: MajorizationReport,
}

pub fn bapat_sunder_check(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<HadamardMajorization> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!("A is {0}x{0}, B is {1}x{1}", a.dim(), b.dim())));
    }
    if let Some((j, d)) = a.real_diagonal().into_iter().enumerate().find(|(_, d)| (d - 1.0).abs() > tol) {
        return Err(Error::Hypothesis(format!("A must have unit diagonal; entry {j} is {d}")));
    }
    let min = a.min_eigenvalue()?;
    if min < -tol.max(PSD_TOL) {
        return Err(Error::Hypothesis(format!("A must be positive semidefinite; minimum eigenvalue {min:.3e}")));
    }
    let product_spectrum = a.hadamard(b)?.eigenvalues()?;
    let b_spectrum = b.eigenvalues()?;
    let majorization = majorizes_values(&b_spectrum, &product_spectrum, tol);
    Ok(HadamardMajorization { product_spectrum, b_spectrum, majorization })
}

/// `−Σ λ log₂ λ` over the positive entries.
pub fn entropy_bits(values: &[f64]) -> f64 {
    let h: f64 = values.iter().filter(|&&v| v > 0.0).map(|&v| -v * v.log2()).sum();
    h.max(0.0)
}

pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    Ok(entropy_bits(&rho.spectrum()?))
}

/// Everything computed on the way to `λ(ρ₁(q)) ≺ λ(ρ₂(q))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleMajorizationReport {
    /// Whether a deterministic transformation exists.
    pub hypothesis_met: bool,
    pub certificate: Certificate,
    pub priors: Vec<f64>,
    /// Spectra of `ρ₁(q)` and `ρ₂(q)`, zero-padded to `max(N, D)`.
    pub initial_spectrum: Vec<f64>,
    pub final_spectrum: Vec<f64>,
    pub majorization: MajorizationReport,
    /// `‖Q∘Γ₁ − Π∘(Q∘Γ₂)‖_F`.
    pub gram_identity: Verdict,
    /// Largest gap between the spectra of `ρ(q)` and `Q ∘ Γ`, initial side.
    pub initial_spectrum_equivalence: Verdict,
    pub final_spectrum_equivalence: Verdict,
    pub initial_entropy: f64,
    pub final_entropy: f64,
}

impl EnsembleMajorizationReport {
    /// The hypothesis holds and so does the majorization.
    pub fn confirmed(&self) -> bool {
        self.hypothesis_met && self.majorization.holds
    }
}

fn spectrum_gap(rho: &DensityOperator, qg: &HermitianMatrix, len: usize, tol: f64) -> Result<(Vec<f64>, Verdict)> {
    let a = pad_spectrum(rho.spectrum()?, len);
    let b = pad_spectrum(qg.eigenvalues()?, len);
    let gap = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok((a, Verdict::at_most(gap, tol)))
}

/// For a deterministic problem and priors `q`, compare the ensemble spectra
/// before and after and check the Gram-side identity behind the comparison.
///
/// Negative outcomes, including an infeasible transformation, are report fields.
pub fn theorem3_check(prob: &TransformProblem, q: &[f64], tol: f64) -> Result<EnsembleMajorizationReport> {
    if !prob.is_deterministic() {
        return Err(Error::InvalidArgument("ensemble majorization needs p = (1, …, 1)".into()));
    }
    let e1 = Ensemble::new(prob.initial().clone(), q.to_vec())?;
    let e2 = Ensemble::new(prob.targets().clone(), q.to_vec())?;
    let certificate = deterministic_pi(prob, tol)?;
    let len = prob.len().max(prob.initial().dim());

    let qg1 = e1.weighted_gram();
    let qg2 = e2.weighted_gram();
    let rhs = certificate.pi.hadamard(&qg2)?;
    let residual = qg1.sub(&rhs)?.frobenius_norm();
    let recon = crate::linalg::recon_tol(qg1.as_matrix());
    let gram_identity = Verdict::at_most(residual, recon.max(tol));

    let rho1 = e1.density();
    let rho2 = e2.density();
    let (initial_spectrum, initial_spectrum_equivalence) = spectrum_gap(&rho1, &qg1, len, tol)?;
    let (final_spectrum, final_spectrum_equivalence) = spectrum_gap(&rho2, &qg2, len, tol)?;
    let majorization = majorizes_values(&final_spectrum, &initial_spectrum, tol);

    Ok(EnsembleMajorizationReport {
        hypothesis_met: certificate.feasible,
        certificate,
        priors: q.to_vec(),
        initial_entropy: entropy_bits(&initial_spectrum),
        final_entropy: entropy_bits(&final_spectrum),
        initial_spectrum,
        final_spectrum,
        majorization,
        gram_identity,
        initial_spectrum_equivalence,
        final_spectrum_equivalence,
    })
}

/// Ky Fan partial sum `μ_k = Σ_{r≤k} λ↓_r` of the ensemble density operator,
/// for `1 ≤ k ≤ max(N, D)`.
pub fn monotones(e: &Ensemble, k: usize) -> Result<f64> {
    let profile = monotone_profile(e)?;
    if k == 0 || k > profile.len() {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={}", profile.len())));
    }
    Ok(profile[k - 1])
}

/// `(μ_1, …, μ_{max(N, D)})`.
pub fn monotone_profile(e: &Ensemble) -> Result<Vec<f64>> {
    let len = e.states().len().max(e.states().dim());
    let spectrum = pad_spectrum(e.density().spectrum()?, len);
    let mut acc = 0.0;
    Ok(spectrum
        .into_iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect())
}

/// One draw of the converse probe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConverseTrial {
    pub seed: u64,
    /// Majorization held for every tested prior.
    pub majorization_holds: bool,
    pub deterministic_feasible: bool,
    pub search_found: bool,
    pub search_residual: f64,
}

/// Exploration data on whether ensemble majorization for every prior implies a
/// deterministic transformation. Nothing here is asserted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConverseProbe {
    pub trials: Vec<ConverseTrial>,
    /// Trials where majorization held for all tested priors but neither the closed
    /// form nor the search produced a certificate.
    pub open_cases: Vec<u64>,
}

/// Draw random pairs of sets whose targets are pulled toward a common vector,
/// test majorization on `priors_per_trial` random priors plus the uniform one,
/// and run the certificate search on the pairs that pass.
pub fn converse_probe(seed: u64, trials: usize, n: usize, dim: usize, priors_per_trial: usize) -> Result<ConverseProbe> {
    use crate::random;
    let mut out = Vec::with_capacity(trials);
    let mut open_cases = Vec::new();
    let options = SearchOptions { max_iterations: 2_000, ..SearchOptions::default() };
    for t in 0..trials {
        let trial_seed = random::derive_seed(seed, t as u64);
        let mut rng = random::rng(trial_seed);
        let initial = random::random_state_set(&mut rng, n, dim);
        let anchor = random::random_state(&mut rng, dim);
        let pull = random::uniform(&mut rng, 0.0, 2.0);
        let targets = PureStateSet::normalized(
            initial
                .states()
                .iter()
                .map(|s| s.iter().zip(&anchor).map(|(a, b)| a + b * pull).collect())
                .collect(),
        )?;
        let prob = TransformProblem::deterministic(initial.clone(), targets.clone())?;
        let mut priors = vec![vec![1.0 / n as f64; n]];
        priors.extend((0..priors_per_trial).map(|_| random::random_probability(&mut rng, n)));
        let mut holds = true;
        for q in &priors {
            let a = Ensemble::new(initial.clone(), q.clone())?.density().spectrum()?;
            let b = Ensemble::new(targets.clone(), q.clone())?.density().spectrum()?;
            holds &= majorizes_values(&b, &a, MAJORIZATION_TOL).holds;
        }
        let deterministic_feasible = deterministic_pi(&prob, PSD_TOL)?.feasible;
        let (search_found, search_residual) = if holds && !deterministic_feasible {
            let s = pi_search(&prob, &options)?;
            (s.certificate.is_some(), s.residual)
        } else {
            (deterministic_feasible, 0.0)
        };
        if holds && !search_found {
            open_cases.push(trial_seed);
        }
        out.push(ConverseTrial {
            seed: trial_seed,
            majorization_holds: holds,
            deterministic_feasible,
            search_found,
            search_residual,
        });
    }
    Ok(ConverseProbe { trials: out, open_cases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn sv(v: &[f64]) -> SpectrumVector {
        SpectrumVector::new(v.to_vec()).unwrap()
    }

    fn pair(overlap: f64) -> PureStateSet {
        let s = (1.0 - overlap * overlap).sqrt();
        PureStateSet::from_real(&[vec![1.0, 0.0], vec![overlap, s]]).unwrap()
    }

    // sum of the k largest entries, by enumerating all k-subsets
    fn brute_prefix(v: &[f64], k: usize) -> f64 {
        let n = v.len();
        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                let s: f64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).sum();
                best = best.max(s);
            }
        }
        best
    }

    #[test]
    fn worked_examples() {
        assert!(majorizes(&sv(&[1.0, 0.0]), &sv(&[0.5, 0.5]), 1e-9).holds);
        let r = majorizes(&sv(&[0.5, 0.5]), &sv(&[0.6, 0.4]), 1e-9);
        assert!(!r.holds);
        assert_eq!(r.violated_prefix, Some(1));
        assert!(majorizes(&sv(&[0.5, 0.3, 0.2]), &sv(&[0.4, 0.35, 0.25]), 1e-9).holds);
    }

    #[test]
    fn total_mismatch_and_padding() {
        let r = majorizes(&sv(&[0.5, 0.5]), &sv(&[0.5, 0.4]), 1e-9);
        assert!(!r.holds);
        assert!(r.violated_prefix.is_none());
        assert!((r.total_mismatch.unwrap() + 0.1).abs() < 1e-12);
        assert!(majorizes(&sv(&[1.0]), &sv(&[0.5, 0.5]), 1e-9).holds);
        assert!(!majorizes(&sv(&[0.5, 0.5]), &sv(&[1.0]), 1e-9).holds);
    }

    #[test]
    fn agrees_with_subset_oracle() {
        let mut rng = random::rng(1);
        for _ in 0..500 {
            let n = random::index(&mut rng, 1, 6);
            let a = random::random_probability(&mut rng, n);
            let b = random::random_probability(&mut rng, n);
            let oracle = (1..=n).all(|k| brute_prefix(&b, k) <= brute_prefix(&a, k) + 1e-9);
            assert_eq!(majorizes_values(&a, &b, 1e-9).holds, oracle);
        }
    }

    #[test]
    fn witness_examples() {
        let s = ds_witness(&sv(&[1.0, 0.0]), &sv(&[0.5, 0.5]), 1e-9).unwrap();
        for row in s.entries() {
            for v in row {
                assert!((v - 0.5).abs() < 1e-12);
            }
        }
        let id = ds_witness(&sv(&[0.7, 0.2, 0.1]), &sv(&[0.7, 0.2, 0.1]), 1e-9).unwrap();
        assert_eq!(id, DoublyStochasticMatrix::identity(3));
        assert!(matches!(
            ds_witness(&sv(&[0.5, 0.5]), &sv(&[0.6, 0.4]), 1e-9),
            Err(Error::NotMajorized { prefix: 1 })
        ));
    }

    #[test]
    fn witness_maps_sorted_vectors() {
        let mut rng = random::rng(2);
        for _ in 0..200 {
            let n = random::index(&mut rng, 1, 8);
            let lambda = random::random_probability(&mut rng, n);
            // σ = D λ for a random doubly stochastic D (mixture of permutations)
            let mut sigma = vec![0.0; n];
            let w = random::random_probability(&mut rng, 3);
            for wk in w {
                let shift = random::index(&mut rng, 0, n - 1);
                for i in 0..n {
                    sigma[(i + shift) % n] += wk * lambda[i];
                }
            }
            let s = ds_witness(&sv(&lambda), &sv(&sigma), 1e-9).unwrap();
            assert!(s.validate(1e-9).passed);
            let mapped = s.apply(&sorted_desc(&lambda));
            let want = sorted_desc(&sigma);
            for (a, b) in mapped.iter().zip(&want) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn uniform_is_a_fixed_point() {
        assert!(uniform_fixed_point(&SpectrumVector::uniform(4), 4, 1e-9));
        assert!(uniform_fixed_point(&sv(&[0.6, 0.4]), 2, 1e-9));
    }

    #[test]
    fn hadamard_majorization() {
        let mut rng = random::rng(3);
        let b = random::random_hermitian(&mut rng, 4);
        let ones = HermitianMatrix::symmetrize(&crate::linalg::ComplexMatrix::ones(4, 4));
        let same = bapat_sunder_check(&ones, &b, 1e-9).unwrap();
        assert!(same.majorization.holds);
        assert!(same.majorization.worst_gap.abs() < 1e-9);
        assert!(bapat_sunder_check(&HermitianMatrix::identity(4), &b, 1e-9).unwrap().majorization.holds);
        for _ in 0..50 {
            let a = random::random_correlation(&mut rng, 4, 2);
            let b = random::random_hermitian(&mut rng, 4);
            assert!(bapat_sunder_check(&a, &b, 1e-9).unwrap().majorization.holds);
        }
        let bad = HermitianMatrix::from_diagonal(&[2.0, 1.0, 1.0, 1.0]);
        assert!(matches!(bapat_sunder_check(&bad, &b, 1e-9), Err(Error::Hypothesis(_))));
        let indefinite = HermitianMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let b2 = HermitianMatrix::identity(2);
        assert!(matches!(bapat_sunder_check(&indefinite, &b2, 1e-9), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn entropy_values() {
        let pure = DensityOperator::pure(&pair(0.3).states()[0]).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
        assert!((von_neumann_entropy(&DensityOperator::maximally_mixed(2)).unwrap() - 1.0).abs() < 1e-12);
        assert!((entropy_bits(&[0.75, 0.25]) - 0.811_278_124_459_132_9).abs() < 1e-12);
    }

    #[test]
    fn two_state_pipeline() {
        let prob = TransformProblem::deterministic(pair(0.5), pair(0.9)).unwrap();
        let r = theorem3_check(&prob, &[0.5, 0.5], 1e-9).unwrap();
        assert!(r.hypothesis_met && r.confirmed());
        assert!((r.initial_spectrum[0] - 0.75).abs() < 1e-12);
        assert!((r.initial_spectrum[1] - 0.25).abs() < 1e-12);
        assert!((r.final_spectrum[0] - 0.95).abs() < 1e-12);
        assert!((r.final_spectrum[1] - 0.05).abs() < 1e-12);
        assert!(r.gram_identity.passed);
        assert!(r.initial_spectrum_equivalence.passed && r.final_spectrum_equivalence.passed);
        assert!(r.final_entropy <= r.initial_entropy);

        let same = TransformProblem::deterministic(pair(0.4), pair(0.4)).unwrap();
        let r = theorem3_check(&same, &[0.3, 0.7], 1e-9).unwrap();
        assert!(r.confirmed());
        assert!(r.majorization.worst_gap.abs() < 1e-12);

        let reverse = TransformProblem::deterministic(pair(0.9), pair(0.5)).unwrap();
        let r = theorem3_check(&reverse, &[0.5, 0.5], 1e-9).unwrap();
        assert!(!r.hypothesis_met);
        assert!(!r.confirmed());
    }

    #[test]
    fn monotone_values() {
        for g in [0.0, 0.3, 0.8] {
            let e = Ensemble::uniform(pair(g));
            assert!((monotones(&e, 1).unwrap() - (1.0 + g) / 2.0).abs() < 1e-12);
            assert!((monotones(&e, 2).unwrap() - 1.0).abs() < 1e-12);
        }
        let e = Ensemble::uniform(PureStateSet::basis(3, 3).unwrap());
        assert!((monotones(&e, 1).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!(monotones(&e, 0).is_err());
        assert!(monotones(&e, 4).is_err());
    }

    #[test]
    fn probe_runs() {
        let p = converse_probe(7, 5, 2, 2, 3).unwrap();
        assert_eq!(p.trials.len(), 5);
    }
}
