//! Pure-state sets, Gram matrices, reciprocal vectors and ensemble density operators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, factor_psd, inverse, psd_check, ComplexMatrix, HermitianMatrix, C64, PSD_TOL, RECON_FACTOR, ZERO};

/// Default threshold on the smallest Gram eigenvalue below which a set counts as dependent.
pub const INDEPENDENCE_TOL: f64 = 1e-10;

/// Ordered list of unit vectors in a common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PureStateSet {
    dim: usize,
    states: Vec<Vec<C64>>,
}

impl PureStateSet {
    /// Validates shapes, finiteness and unit norm (within `1e-10 * dim`).
    pub fn new(states: Vec<Vec<C64>>) -> Result<Self> {
        let dim = Self::check_shape(&states)?;
        let tol = RECON_FACTOR * dim as f64;
        for (index, s) in states.iter().enumerate() {
            let norm = linalg::norm(s);
            if (norm - 1.0).abs() > tol {
                return Err(Error::NotNormalized { index, norm });
            }
        }
        Ok(Self { dim, states })
    }

    /// Normalizes each vector; fails only on zero or malformed vectors.
    pub fn normalized(states: Vec<Vec<C64>>) -> Result<Self> {
        let dim = Self::check_shape(&states)?;
        let mut out = Vec::with_capacity(states.len());
        for (index, s) in states.into_iter().enumerate() {
            let norm = linalg::norm(&s);
            if norm < linalg::ZERO_TOL {
                return Err(Error::NotNormalized { index, norm });
            }
            out.push(s.into_iter().map(|z| z / norm).collect());
        }
        Ok(Self { dim, states: out })
    }

    pub fn from_real(states: &[Vec<f64>]) -> Result<Self> {
        Self::normalized(
            states
                .iter()
                .map(|s| s.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Standard basis vectors `e_0 .. e_{n-1}` of dimension `dim`.
    pub fn basis(n: usize, dim: usize) -> Result<Self> {
        if n > dim {
            return Err(Error::InvalidArgument(format!("{n} orthonormal vectors do not fit in dimension {dim}")));
        }
        Self::new((0..n).map(|j| basis_vector(dim, j)).collect())
    }

    /// States realizing a given Gram matrix, as the columns of a factor `C` with `C†C = Γ`.
    /// The result lives in dimension `N`.
    pub fn from_gram(gram: &HermitianMatrix) -> Result<Self> {
        let c = factor_psd(gram, gram.dim(), PSD_TOL)?;
        Self::normalized((0..c.cols()).map(|j| c.column(j)).collect())
    }

    fn check_shape(states: &[Vec<C64>]) -> Result<usize> {
        let dim = states.first().map_or(0, Vec::len);
        if states.is_empty() || dim == 0 {
            return Err(Error::Shape("a state set needs at least one non-empty state".into()));
        }
        if let Some(j) = states.iter().position(|s| s.len() != dim) {
            return Err(Error::Shape(format!("state {j} has dimension {}, expected {dim}", states[j].len())));
        }
        for (row, s) in states.iter().enumerate() {
            if let Some(col) = s.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
        }
        Ok(dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, j: usize) -> &[C64] {
        &self.states[j]
    }

    pub fn states(&self) -> &[Vec<C64>] {
        &self.states
    }

    /// `D × N` matrix with the states as columns.
    pub fn as_columns(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.states).expect("validated on construction")
    }

    /// Elementwise tensor product `|ψ_j⟩ ⊗ |φ_j⟩`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Shape(format!("cannot pair {} states with {}", self.len(), other.len())));
        }
        Self::normalized(
            self.states
                .iter()
                .zip(&other.states)
                .map(|(a, b)| linalg::kron_vec(a, b))
                .collect(),
        )
    }

    /// `γ_{j'j} = ⟨ψ_{j'}|ψ_j⟩`.
    pub fn gram_matrix(&self) -> GramMatrix {
        let n = self.len();
        let m = ComplexMatrix::from_fn(n, n, |a, b| {
            if a == b {
                C64::new(1.0, 0.0)
            } else {
                linalg::inner(&self.states[a], &self.states[b])
            }
        });
        GramMatrix(HermitianMatrix::symmetrize(&m))
    }

    /// Smallest Gram eigenvalue; zero (up to rounding) exactly for dependent sets.
    pub fn independence_witness(&self) -> Result<f64> {
        self.gram_matrix().min_eigenvalue()
    }

    /// Gram criterion: independent iff the smallest Gram eigenvalue exceeds `tol`.
    pub fn linearly_independent(&self, tol: f64) -> bool {
        if self.len() > self.dim {
            return false;
        }
        self.independence_witness().map(|m| m > tol).unwrap_or(false)
    }

    /// Reciprocal vectors `ψ̃_j = Σ_{j'} (Γ⁻¹)_{j'j} ψ_{j'}`.
    ///
    /// They span the same subspace as the set, satisfy `⟨ψ̃_j|ψ_k⟩ = δ_jk`, and are
    /// not normalized.
    pub fn reciprocal_vectors(&self) -> Result<Vec<Vec<C64>>> {
        let min_eigenvalue = self.independence_witness()?;
        if self.len() > self.dim || min_eigenvalue <= INDEPENDENCE_TOL {
            return Err(Error::LinearlyDependent { min_eigenvalue });
        }
        let ginv = inverse(self.gram_matrix().as_matrix())?;
        let n = self.len();
        Ok((0..n)
            .map(|j| {
                let mut v = vec![ZERO; self.dim];
                for jp in 0..n {
                    let w = ginv[(jp, j)];
                    for (vi, si) in v.iter_mut().zip(&self.states[jp]) {
                        *vi += w * si;
                    }
                }
                v
            })
            .collect())
    }
}

// Serialized as a plain array of amplitude arrays.
impl Serialize for PureStateSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.states.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PureStateSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let states = Vec::<Vec<C64>>::deserialize(deserializer)?;
        PureStateSet::new(states).map_err(serde::de::Error::custom)
    }
}

pub fn basis_vector(dim: usize, j: usize) -> Vec<C64> {
    let mut v = vec![ZERO; dim];
    v[j] = C64::new(1.0, 0.0);
    v
}

/// Gram matrix of a pure-state set: Hermitian, PSD, unit diagonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct GramMatrix(HermitianMatrix);

impl GramMatrix {
    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.0
    }
}

impl std::ops::Deref for GramMatrix {
    type Target = HermitianMatrix;

    fn deref(&self) -> &HermitianMatrix {
        &self.0
    }
}

/// Hermitian, PSD, unit-trace operator.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityOperator(HermitianMatrix);

impl DensityOperator {
    /// Checks positivity and unit trace within `tol`.
    pub fn new(h: HermitianMatrix, tol: f64) -> Result<Self> {
        let trace = h.trace();
        if (trace - 1.0).abs() > tol {
            return Err(Error::NotDensity(format!("trace {trace:.12} differs from 1")));
        }
        let psd = psd_check(&h, tol)?;
        if !psd.is_psd {
            return Err(Error::NotDensity(format!("minimum eigenvalue {:.3e} is negative", psd.min_eigenvalue)));
        }
        Ok(Self(h))
    }

    /// Wraps a matrix that is a density operator by construction.
    pub(crate) fn from_trusted(h: HermitianMatrix) -> Self {
        Self(h)
    }

    pub fn pure(state: &[C64]) -> Result<Self> {
        let n = linalg::norm(state);
        if (n - 1.0).abs() > RECON_FACTOR * state.len() as f64 {
            return Err(Error::NotNormalized { index: 0, norm: n });
        }
        Ok(Self(HermitianMatrix::symmetrize(&ComplexMatrix::outer(state, state))))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(HermitianMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        self.0.as_matrix()
    }

    /// Eigenvalues, descending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        self.0.eigenvalues()
    }

    /// Fidelity with a pure state, `⟨φ|ρ|φ⟩`.
    pub fn fidelity_with(&self, state: &[C64]) -> Result<f64> {
        let rv = self.0.mul_vec(state)?;
        Ok(linalg::inner(state, &rv).re)
    }
}

impl<'de> Deserialize<'de> for DensityOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let h = HermitianMatrix::deserialize(deserializer)?;
        DensityOperator::new(h, PSD_TOL).map_err(serde::de::Error::custom)
    }
}

/// Pure states with prior probabilities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ensemble {
    states: PureStateSet,
    priors: Vec<f64>,
}

impl Ensemble {
    /// Priors must be non-negative, one per state, summing to 1 within `1e-10 * N`.
    /// Zero priors are allowed and keep their slot.
    pub fn new(states: PureStateSet, priors: Vec<f64>) -> Result<Self> {
        if priors.len() != states.len() {
            return Err(Error::Shape(format!("{} priors for {} states", priors.len(), states.len())));
        }
        if let Some(j) = priors.iter().position(|&q| !(q >= 0.0) || !q.is_finite()) {
            return Err(Error::InvalidArgument(format!("prior {j} is {} (must be non-negative)", priors[j])));
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > RECON_FACTOR * priors.len() as f64 {
            return Err(Error::InvalidArgument(format!("priors sum to {total}, expected 1")));
        }
        Ok(Self { states, priors })
    }

    pub fn uniform(states: PureStateSet) -> Self {
        let n = states.len();
        Self { states, priors: vec![1.0 / n as f64; n] }
    }

    pub fn states(&self) -> &PureStateSet {
        &self.states
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// `Q = {√(q_j q_{j'})}`.
    pub fn q_matrix(&self) -> HermitianMatrix {
        let n = self.priors.len();
        HermitianMatrix::symmetrize(&ComplexMatrix::from_fn(n, n, |a, b| {
            C64::new((self.priors[a] * self.priors[b]).sqrt(), 0.0)
        }))
    }

    /// `ρ(q) = Σ_j q_j |ψ_j⟩⟨ψ_j|`.
    pub fn density(&self) -> DensityOperator {
        let d = self.states.dim();
        let mut m = ComplexMatrix::zeros(d, d);
        for (q, s) in self.priors.iter().zip(self.states.states()) {
            if *q == 0.0 {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    m[(a, b)] += s[a] * s[b].conj() * *q;
                }
            }
        }
        DensityOperator::from_trusted(HermitianMatrix::symmetrize(&m))
    }

    /// `Q ∘ Γ`, which shares its nonzero spectrum with [`Ensemble::density`].
    pub fn weighted_gram(&self) -> HermitianMatrix {
        self.q_matrix()
            .hadamard(self.states.gram_matrix().as_hermitian())
            .expect("Q and Γ share the ensemble size")
    }
}

pub fn ensemble_density(e: &Ensemble) -> DensityOperator {
    e.density()
}

pub fn weighted_gram(e: &Ensemble) -> HermitianMatrix {
    e.weighted_gram()
}

pub fn gram_matrix(s: &PureStateSet) -> GramMatrix {
    s.gram_matrix()
}

pub fn linearly_independent(s: &PureStateSet, tol: f64) -> bool {
    s.linearly_independent(tol)
}

pub fn reciprocal_vectors(s: &PureStateSet) -> Result<Vec<Vec<C64>>> {
    s.reciprocal_vectors()
}

/// Zero-pad to `len` entries (never truncates).
pub fn pad_spectrum(mut values: Vec<f64>, len: usize) -> Vec<f64> {
    if values.len() < len {
        values.resize(len, 0.0);
    }
    values
}
