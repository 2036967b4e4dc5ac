//! Quantum operations in Kraus form.
//!
//! A [`KrausSet`] is a list of equally shaped operators, each tagged with an
//! outcome label. Operators sharing a label form one outcome `r` with POVM
//! element `E_r = Σ_{k∈r} A_k† A_k`. Trace preservation and unitality are
//! computed properties, never assumed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, HermitianMatrix, C64, ZERO_TOL};
use crate::states::DensityOperator;
use crate::Verdict;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KrausOperator {
    pub label: String,
    pub matrix: ComplexMatrix,
}

impl KrausOperator {
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Self { label: label.into(), matrix }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct KrausSet {
    operators: Vec<KrausOperator>,
}

impl KrausSet {
    pub fn new(operators: Vec<KrausOperator>) -> Result<Self> {
        let first = operators.first().ok_or_else(|| Error::Shape("a Kraus set needs at least one operator".into()))?;
        let shape = first.matrix.shape();
        if let Some(bad) = operators.iter().find(|op| op.matrix.shape() != shape) {
            return Err(Error::Shape(format!(
                "operator `{}` is {}x{}, expected {}x{}",
                bad.label,
                bad.matrix.rows(),
                bad.matrix.cols(),
                shape.0,
                shape.1
            )));
        }
        Ok(Self { operators })
    }

    /// Unlabelled operators get labels `k0, k1, …`.
    pub fn from_matrices(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(
            matrices
                .into_iter()
                .enumerate()
                .map(|(k, m)| KrausOperator::new(format!("k{k}"), m))
                .collect(),
        )
    }

    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::from_matrices(vec![u])
    }

    pub fn operators(&self) -> &[KrausOperator] {
        &self.operators
    }

    pub fn matrices(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.operators.iter().map(|op| &op.matrix)
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn input_dim(&self) -> usize {
        self.operators[0].matrix.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.operators[0].matrix.rows()
    }

    /// Distinct labels in order of first appearance.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for op in &self.operators {
            if !out.contains(&op.label.as_str()) {
                out.push(&op.label);
            }
        }
        out
    }

    /// Operators belonging to outcome `label`.
    pub fn outcome(&self, label: &str) -> Result<Vec<&ComplexMatrix>> {
        let ops: Vec<_> = self.operators.iter().filter(|op| op.label == label).map(|op| &op.matrix).collect();
        if ops.is_empty() {
            return Err(Error::UnknownOutcome(label.to_string()));
        }
        Ok(ops)
    }

    /// Concatenate two sets acting on the same spaces.
    pub fn join(&self, other: &KrausSet) -> Result<KrausSet> {
        let mut ops = self.operators.clone();
        ops.extend(other.operators.iter().cloned());
        KrausSet::new(ops)
    }

    /// `Σ_k A_k† A_k` over all operators.
    pub fn completeness(&self) -> HermitianMatrix {
        sum_adjoint_products(self.matrices(), true)
    }

    /// `Σ_k A_k A_k†` over all operators.
    pub fn output_sum(&self) -> HermitianMatrix {
        sum_adjoint_products(self.matrices(), false)
    }

    /// POVM element `E_r = Σ_{k∈r} A_k† A_k`.
    pub fn povm_element(&self, label: &str) -> Result<HermitianMatrix> {
        Ok(sum_adjoint_products(self.outcome(label)?.into_iter(), true))
    }

    /// `‖Σ A†A − 1‖_F ≤ tol`.
    pub fn is_trace_preserving(&self, tol: f64) -> Verdict {
        let defect = self
            .completeness()
            .sub(&HermitianMatrix::identity(self.input_dim()))
            .expect("completeness is square on the input space")
            .frobenius_norm();
        Verdict::at_most(defect, tol)
    }

    /// `‖Σ A A† − 1‖_F ≤ tol`, plus the operational check on the maximally mixed state.
    pub fn is_unital(&self, tol: f64) -> UnitalReport {
        let d = self.input_dim();
        if self.output_dim() != d {
            return UnitalReport { applicable: false, passed: false, defect: None, operational_defect: None, tol };
        }
        let defect = self
            .output_sum()
            .sub(&HermitianMatrix::identity(d))
            .expect("square")
            .frobenius_norm();
        let mixed = DensityOperator::maximally_mixed(d);
        let out = self.apply_map(mixed.as_hermitian()).expect("dimensions agree");
        let operational = out.sub(mixed.as_hermitian()).expect("square").frobenius_norm();
        UnitalReport {
            applicable: true,
            passed: defect <= tol,
            defect: Some(defect),
            operational_defect: Some(operational),
            tol,
        }
    }

    /// `Σ_k A_k ρ A_k†` without any completeness check.
    pub fn apply_map(&self, rho: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.apply_subset(self.matrices(), rho)
    }

    fn apply_subset<'a>(
        &self,
        ops: impl Iterator<Item = &'a ComplexMatrix>,
        rho: &HermitianMatrix,
    ) -> Result<HermitianMatrix> {
        if rho.dim() != self.input_dim() {
            return Err(Error::Shape(format!(
                "state has dimension {}, operation expects {}",
                rho.dim(),
                self.input_dim()
            )));
        }
        let d = self.output_dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for a in ops {
            acc = &acc + &(&(a * rho.as_matrix()) * &a.adjoint());
        }
        Ok(HermitianMatrix::symmetrize(&acc))
    }

    /// Trace-preserving evolution `ρ → Σ_k A_k ρ A_k†`.
    pub fn apply_channel(&self, rho: &DensityOperator, tol: f64) -> Result<DensityOperator> {
        let tp = self.is_trace_preserving(tol);
        if !tp.passed {
            return Err(Error::NotTracePreserving { defect: tp.witness });
        }
        Ok(DensityOperator::from_trusted(self.apply_map(rho.as_hermitian())?))
    }

    /// `p_r(ρ) = Tr ρ E_r`.
    pub fn outcome_probability(&self, label: &str, rho: &DensityOperator) -> Result<f64> {
        let e = self.povm_element(label)?;
        if rho.dim() != e.dim() {
            return Err(Error::Shape(format!("state has dimension {}, operation expects {}", rho.dim(), e.dim())));
        }
        Ok(rho.as_matrix().matmul(e.as_matrix())?.trace().re)
    }

    /// `ρ_r = Σ_{k∈r} A_k ρ A_k† / p_r(ρ)`.
    pub fn post_measurement_state(&self, label: &str, rho: &DensityOperator) -> Result<DensityOperator> {
        let ops = self.outcome(label)?;
        let unnormalized = self.apply_subset(ops.into_iter(), rho.as_hermitian())?;
        let p = unnormalized.trace();
        if p <= ZERO_TOL {
            return Err(Error::NullOutcome { probability: p });
        }
        Ok(DensityOperator::from_trusted(unnormalized.scale(1.0 / p)))
    }

    /// Transfer matrix between eigenbases of `rho1` and `rho2 = apply_channel(rho1)`.
    /// `rho2` must match the channel output entrywise within `tol`.
    pub fn transfer_matrix(&self, rho1: &DensityOperator, rho2: &DensityOperator, tol: f64) -> Result<TransferMatrix> {
        let expected = self.apply_map(rho1.as_hermitian())?;
        if expected.dim() != rho2.dim() {
            return Err(Error::Shape("output state dimension does not match the operation".into()));
        }
        let gap = expected.max_abs_diff(rho2.as_matrix());
        if gap > tol {
            return Err(Error::InvalidArgument(format!(
                "second state is not the image of the first (max deviation {gap:.3e})"
            )));
        }
        self.transfer_matrix_of(rho1.as_hermitian(), rho2.as_hermitian())
    }

    /// Transfer matrix with the output computed internally.
    pub fn transfer_matrix_for(&self, rho1: &DensityOperator) -> Result<TransferMatrix> {
        let rho2 = self.apply_map(rho1.as_hermitian())?;
        self.transfer_matrix_of(rho1.as_hermitian(), &rho2)
    }

    fn transfer_matrix_of(&self, rho1: &HermitianMatrix, rho2: &HermitianMatrix) -> Result<TransferMatrix> {
        // Jacobi returns a full unitary, so kernel directions are already part of each basis.
        let e1 = rho1.eig()?;
        let e2 = rho2.eig()?;
        let (d_in, d_out) = (self.input_dim(), self.output_dim());
        let mut entries = vec![vec![0.0; d_in]; d_out];
        for a in self.matrices() {
            let img = a * &e1.eigenvectors;
            let proj = &e2.eigenvectors.adjoint() * &img;
            for (rp, row) in entries.iter_mut().enumerate() {
                for (r, s) in row.iter_mut().enumerate() {
                    *s += proj[(rp, r)].norm_sqr();
                }
            }
        }
        let sums_over_outputs = (0..d_in).map(|r| entries.iter().map(|row| row[r]).sum()).collect();
        let sums_over_inputs = entries.iter().map(|row| row.iter().sum()).collect();
        Ok(TransferMatrix {
            entries,
            input_spectrum: e1.eigenvalues,
            output_spectrum: e2.eigenvalues,
            sums_over_outputs,
            sums_over_inputs,
        })
    }
}

impl<'de> Deserialize<'de> for KrausSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ops = Vec::<KrausOperator>::deserialize(deserializer)?;
        KrausSet::new(ops).map_err(serde::de::Error::custom)
    }
}

fn sum_adjoint_products<'a>(ops: impl Iterator<Item = &'a ComplexMatrix>, adjoint_first: bool) -> HermitianMatrix {
    let mut acc: Option<ComplexMatrix> = None;
    for a in ops {
        let term = if adjoint_first { &a.adjoint() * a } else { a * &a.adjoint() };
        acc = Some(match acc {
            Some(s) => &s + &term,
            None => term,
        });
    }
    HermitianMatrix::symmetrize(&acc.expect("at least one operator"))
}

/// Unitality verdict. Only meaningful for square operators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitalReport {
    pub applicable: bool,
    pub passed: bool,
    /// `‖Σ A A† − 1‖_F`.
    pub defect: Option<f64>,
    /// `‖E(1/D) − 1/D‖_F`, which equals `defect / D` for trace-preserving sets.
    pub operational_defect: Option<f64>,
    pub tol: f64,
}

/// `S_{r'r} = Σ_k |⟨φ²_{r'}|A_k|φ¹_r⟩|²` with rows indexed by output eigenvectors
/// and columns by input eigenvectors, so that `λ(ρ₂) = S λ(ρ₁)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferMatrix {
    pub entries: Vec<Vec<f64>>,
    /// Eigenvalues of the input state, in the column order of `entries`.
    pub input_spectrum: Vec<f64>,
    /// Eigenvalues of the output state, in the row order of `entries`.
    pub output_spectrum: Vec<f64>,
    /// `Σ_{r'} S_{r'r}` for each input eigenvector `r`; all 1 for trace-preserving sets.
    pub sums_over_outputs: Vec<f64>,
    /// `Σ_r S_{r'r}` for each output eigenvector `r'`; all 1 for unital sets.
    pub sums_over_inputs: Vec<f64>,
}

impl TransferMatrix {
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.entries.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `max |λ(ρ₂) − S λ(ρ₁)|`.
    pub fn spectrum_residual(&self) -> f64 {
        self.apply(&self.input_spectrum)
            .iter()
            .zip(&self.output_spectrum)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn trace_sums_verdict(&self, tol: f64) -> Verdict {
        Verdict::at_most(max_dev_from_one(&self.sums_over_outputs), tol)
    }

    pub fn unital_sums_verdict(&self, tol: f64) -> Verdict {
        Verdict::at_most(max_dev_from_one(&self.sums_over_inputs), tol)
    }

    pub fn is_doubly_stochastic(&self, tol: f64) -> bool {
        self.entries.len() == self.input_spectrum.len()
            && self.trace_sums_verdict(tol).passed
            && self.unital_sums_verdict(tol).passed
    }
}

fn max_dev_from_one(v: &[f64]) -> f64 {
    v.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max)
}

/// `A_k = √p_k U_k`, a trace-preserving and unital mixture of unitaries.
pub fn random_unitary_channel(weights: &[f64], unitaries: &[ComplexMatrix], tol: f64) -> Result<KrausSet> {
    if weights.len() != unitaries.len() || weights.is_empty() {
        return Err(Error::Shape(format!("{} weights for {} unitaries", weights.len(), unitaries.len())));
    }
    if let Some(k) = weights.iter().position(|&w| !(w >= 0.0)) {
        return Err(Error::InvalidArgument(format!("weight {k} is negative")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(Error::InvalidArgument(format!("weights sum to {total}, expected 1")));
    }
    let mut ops = Vec::with_capacity(weights.len());
    for (index, (w, u)) in weights.iter().zip(unitaries).enumerate() {
        if !u.is_square() {
            return Err(Error::NotUnitary { index, defect: f64::INFINITY });
        }
        let defect = (&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(u.rows()));
        if defect > tol {
            return Err(Error::NotUnitary { index, defect });
        }
        ops.push(KrausOperator::new(format!("k{index}"), u.scale_real(w.sqrt())));
    }
    KrausSet::new(ops)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).expect("2x2")
}

pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[vec![C64::new(0.0, 0.0), -i], vec![i, C64::new(0.0, 0.0)]]).expect("2x2")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).expect("2x2")
}

/// Qubit depolarizing channel `ρ → (1 − p) ρ + p 1/2`.
pub fn depolarizing_qubit(p: f64) -> Result<KrausSet> {
    if !(0.0..=4.0 / 3.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("depolarizing parameter {p} outside [0, 4/3]")));
    }
    let w = (p / 4.0).sqrt();
    KrausSet::from_matrices(vec![
        ComplexMatrix::identity(2).scale_real((1.0 - 3.0 * p / 4.0).sqrt()),
        pauli_x().scale_real(w),
        pauli_y().scale_real(w),
        pauli_z().scale_real(w),
    ])
}

/// Von Neumann measurement in the standard basis followed by preparation of `target`:
/// `A_k = |target⟩⟨e_k|`.
pub fn measure_and_reprepare(target: &[C64]) -> Result<KrausSet> {
    let d = target.len();
    if (linalg::norm(target) - 1.0).abs() > 1e-10 * d as f64 {
        return Err(Error::NotNormalized { index: 0, norm: linalg::norm(target) });
    }
    KrausSet::from_matrices(
        (0..d)
            .map(|k| ComplexMatrix::outer(target, &crate::states::basis_vector(d, k)))
            .collect(),
    )
}

pub fn povm_element(k: &KrausSet, label: &str) -> Result<HermitianMatrix> {
    k.povm_element(label)
}

pub fn outcome_probability(k: &KrausSet, label: &str, rho: &DensityOperator) -> Result<f64> {
    k.outcome_probability(label, rho)
}

pub fn post_measurement_state(k: &KrausSet, label: &str, rho: &DensityOperator) -> Result<DensityOperator> {
    k.post_measurement_state(label, rho)
}

pub fn apply_channel(k: &KrausSet, rho: &DensityOperator, tol: f64) -> Result<DensityOperator> {
    k.apply_channel(rho, tol)
}

pub fn is_trace_preserving(k: &KrausSet, tol: f64) -> Verdict {
    k.is_trace_preserving(tol)
}

pub fn is_unital(k: &KrausSet, tol: f64) -> UnitalReport {
    k.is_unital(tol)
}

pub fn transfer_matrix(k: &KrausSet, rho1: &DensityOperator, rho2: &DensityOperator, tol: f64) -> Result<TransferMatrix> {
    k.transfer_matrix(rho1, rho2, tol)
}
