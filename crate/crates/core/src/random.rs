//! Seeded random instances: states, unitaries, density operators and channels.
//!
//! Every generator takes the RNG explicitly so property suites replay from a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::channel::{KrausOperator, KrausSet};
use crate::linalg::{self, inverse, map_spectrum, ComplexMatrix, HermitianMatrix, C64, ZERO};
use crate::states::{DensityOperator, PureStateSet};
use crate::transform::{PiMatrix, TransformProblem};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic per-trial seed derived from a root seed (splitmix64 step).
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian(rng: &mut Rand) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector(rng: &mut Rand, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| gaussian(rng)).collect()
}

pub fn gaussian_matrix(rng: &mut Rand, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Uniformly distributed unit vector.
pub fn random_state(rng: &mut Rand, dim: usize) -> Vec<C64> {
    loop {
        let v = gaussian_vector(rng, dim);
        let n = linalg::norm(&v);
        if n > 1e-8 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

pub fn random_state_set(rng: &mut Rand, n: usize, dim: usize) -> PureStateSet {
    PureStateSet::new((0..n).map(|_| random_state(rng, dim)).collect()).expect("unit vectors")
}

/// Random set with smallest Gram eigenvalue above `1e-3`. Requires `n <= dim`.
pub fn random_independent_set(rng: &mut Rand, n: usize, dim: usize) -> PureStateSet {
    assert!(n <= dim, "cannot draw {n} independent states in dimension {dim}");
    loop {
        let s = random_state_set(rng, n, dim);
        if s.independence_witness().is_ok_and(|w| w > 1e-3) {
            return s;
        }
    }
}

/// Haar-distributed unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(rng: &mut Rand, dim: usize) -> ComplexMatrix {
    loop {
        if let Some(q) = orthonormalize_columns(&gaussian_matrix(rng, dim, dim)) {
            return q;
        }
    }
}

/// Modified Gram-Schmidt on the columns; `None` if they are numerically dependent.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let mut cols: Vec<Vec<C64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    for j in 0..cols.len() {
        for _ in 0..2 {
            for k in 0..j {
                let (head, tail) = cols.split_at_mut(j);
                let proj = linalg::inner(&head[k], &tail[0]);
                for (x, y) in tail[0].iter_mut().zip(&head[k]) {
                    *x -= proj * y;
                }
            }
        }
        let n = linalg::norm(&cols[j]);
        if n < 1e-10 {
            return None;
        }
        for x in cols[j].iter_mut() {
            *x /= n;
        }
    }
    ComplexMatrix::from_columns(&cols).ok()
}

pub fn random_hermitian(rng: &mut Rand, dim: usize) -> HermitianMatrix {
    let g = gaussian_matrix(rng, dim, dim);
    HermitianMatrix::symmetrize(&(&g + &g.adjoint()).scale_real(0.5))
}

/// `G G†` with `G` of shape `dim × rank`.
pub fn random_psd(rng: &mut Rand, dim: usize, rank: usize) -> HermitianMatrix {
    let g = gaussian_matrix(rng, dim, rank.max(1));
    HermitianMatrix::symmetrize(&(&g * &g.adjoint()))
}

/// PSD with unit diagonal: the Gram matrix of `n` random unit vectors in dimension `rank`.
pub fn random_correlation(rng: &mut Rand, n: usize, rank: usize) -> HermitianMatrix {
    random_state_set(rng, n, rank.max(1)).gram_matrix().into_hermitian()
}

/// Random density operator of the given rank.
pub fn random_density(rng: &mut Rand, dim: usize, rank: usize) -> DensityOperator {
    let p = random_psd(rng, dim, rank);
    let t = p.trace();
    DensityOperator::new(p.scale(1.0 / t), 1e-9).expect("normalized PSD")
}

/// Flat Dirichlet sample.
pub fn random_probability(rng: &mut Rand, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

pub fn uniform(rng: &mut Rand, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn index(rng: &mut Rand, lo: usize, hi_inclusive: usize) -> usize {
    rng.random_range(lo..=hi_inclusive)
}

/// Random trace-preserving channel with `m` Kraus operators, read off as blocks of
/// a random isometry `C^{d_in} → C^{m d_out}`. Generically not unital.
pub fn random_channel(rng: &mut Rand, d_in: usize, d_out: usize, m: usize) -> KrausSet {
    assert!(m * d_out >= d_in, "isometry needs m * d_out >= d_in");
    let u = random_unitary(rng, m * d_out);
    let ops = (0..m)
        .map(|k| {
            let a = ComplexMatrix::from_fn(d_out, d_in, |i, j| u[(k * d_out + i, j)]);
            KrausOperator::new(format!("k{k}"), a)
        })
        .collect();
    KrausSet::new(ops).expect("blocks share shape")
}

/// Mixture of `m` Haar unitaries with random weights.
pub fn random_unitary_mixture(rng: &mut Rand, dim: usize, m: usize) -> KrausSet {
    let weights = random_probability(rng, m);
    let unitaries: Vec<ComplexMatrix> = (0..m).map(|_| random_unitary(rng, dim)).collect();
    crate::channel::random_unitary_channel(&weights, &unitaries, 1e-9).expect("valid mixture")
}

/// Kraus operators `A_k = √E_k` for a random POVM `{E_k}`. All operators are
/// Hermitian, so the channel is unital.
pub fn random_sqrt_povm_channel(rng: &mut Rand, dim: usize, m: usize) -> KrausSet {
    let parts: Vec<HermitianMatrix> = (0..m).map(|_| random_psd(rng, dim, dim)).collect();
    let mut total = HermitianMatrix::zeros(dim);
    for p in &parts {
        total = total.add(p).expect("same dim");
    }
    let inv_sqrt = map_spectrum(&total, |l| 1.0 / l.sqrt()).expect("eig");
    let ops = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let e = p.congruence(inv_sqrt.as_matrix()).expect("same dim");
            let a = crate::linalg::psd_sqrt(&e).expect("eig").into_matrix();
            KrausOperator::new(format!("k{k}"), a)
        })
        .collect();
    KrausSet::new(ops).expect("same shape")
}

/// Selective operation steering each `initial[j]` to `c_kj · targets[j]` through
/// `A_k = Ψ₂ diag(c_k) Ψ₁⁺ + B_k (1 − Ψ₁Ψ₁⁺)`, scaled so that `Σ A†A ≤ 1`.
///
/// Built with the pseudo-inverse of the initial-state matrix, not with reciprocal
/// vectors, so it serves as an independent route for checking the Kraus construction.
/// Returns the operators and the realized coefficient matrix `C = {c_kj}`.
pub fn random_selective_operation(
    rng: &mut Rand,
    initial: &PureStateSet,
    targets: &PureStateSet,
    m: usize,
) -> (Vec<ComplexMatrix>, ComplexMatrix) {
    let n = initial.len();
    let psi1 = initial.as_columns();
    let psi2 = targets.as_columns();
    let gram_inv = inverse(&(&psi1.adjoint() * &psi1)).expect("independent initial set");
    let pinv = &gram_inv * &psi1.adjoint();
    let proj_perp = &ComplexMatrix::identity(initial.dim()) - &(&psi1 * &pinv);
    let coeffs = gaussian_matrix(rng, m, n);
    let mut ops: Vec<ComplexMatrix> = (0..m)
        .map(|k| {
            let diag = ComplexMatrix::from_fn(n, n, |i, j| if i == j { coeffs[(k, j)] } else { ZERO });
            let main = &(&psi2 * &diag) * &pinv;
            let extra = &gaussian_matrix(rng, targets.dim(), initial.dim()).scale_real(0.5) * &proj_perp;
            &main + &extra
        })
        .collect();
    let mut es = ComplexMatrix::zeros(initial.dim(), initial.dim());
    for a in &ops {
        es = &es + &(&a.adjoint() * a);
    }
    let lmax = HermitianMatrix::symmetrize(&es).eig().expect("eig").max_eigenvalue();
    let s = uniform(rng, 0.5, 1.0) / lmax.sqrt();
    for a in ops.iter_mut() {
        *a = a.scale_real(s);
    }
    (ops, coeffs.scale_real(s))
}

/// Deterministic problem feasible by construction: `Γ₁ = Π ∘ Γ₂` for a random
/// correlation matrix `Π` of the given rank, so `Γ₁` is a valid Gram matrix.
/// Both sets live in dimension `n`.
pub fn random_deterministic_instance(rng: &mut Rand, n: usize, rank: usize) -> (TransformProblem, PiMatrix) {
    let targets = random_state_set(rng, n, n);
    let pi = random_correlation(rng, n, rank);
    let g1 = pi.hadamard(targets.gram_matrix().as_hermitian()).expect("same size");
    let initial = PureStateSet::from_gram(&g1).expect("Schur product of Gram matrices is a Gram matrix");
    let prob = TransformProblem::deterministic(initial, targets).expect("same size and dimension");
    (prob, PiMatrix::new(pi))
}

/// Random certificate for fixed initial and target sets: a random PSD `Π₀` scaled
/// by `u · s*`, where `s*` is the largest `s` with `Γ₁ − s Π₀∘Γ₂ ⪰ 0` and `u` is
/// drawn from `[0.3, 1]`. Needs a linearly independent initial set.
pub fn random_feasible_certificate(rng: &mut Rand, initial: &PureStateSet, targets: &PureStateSet) -> PiMatrix {
    let n = initial.len();
    let rank = index(rng, 1, n);
    let pi0 = random_psd(rng, n, rank);
    let x = pi0.hadamard(targets.gram_matrix().as_hermitian()).expect("same size");
    let w = map_spectrum(initial.gram_matrix().as_hermitian(), |l| 1.0 / l.sqrt()).expect("eig");
    let whitened = x.congruence(w.as_matrix()).expect("same size");
    let s_max = 1.0 / whitened.eig().expect("eig").max_eigenvalue();
    PiMatrix::new(pi0.scale(uniform(rng, 0.3, 1.0) * s_max))
}

/// Transformation problem with its forward-generated certificate; `p = diag Π`.
pub fn random_feasible_instance(rng: &mut Rand, n: usize, dim: usize) -> (TransformProblem, PiMatrix) {
    let initial = random_independent_set(rng, n, dim);
    let targets = random_state_set(rng, n, dim);
    let pi = random_feasible_certificate(rng, &initial, &targets);
    let p = pi.real_diagonal().into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let prob = TransformProblem::new(initial, targets, p).expect("valid by construction");
    (prob, pi)
}
