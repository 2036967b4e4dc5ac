//! Probabilistic and deterministic transformations between pure-state sets.
//!
//! A transformation `|ψ_j¹⟩ → |ψ_j²⟩` succeeding with probabilities `p` is
//! certified by a matrix `Π` with
//!
//! - (1.a) `Π ⪰ 0`,
//! - (1.b) `diag(Π) = p`,
//! - (1.c) `Γ₁ − Π ∘ Γ₂ ⪰ 0`.
//!
//! The conditions are necessary in general and sufficient when the initial
//! states are linearly independent. [`verify_pi`] evaluates them,
//! [`kraus_from_pi`] turns a passing certificate into Kraus operators, and
//! [`pi_search`] looks for a certificate when no closed form applies.

mod search;

use serde::{Deserialize, Serialize};

use crate::channel::{KrausOperator, KrausSet};
use crate::error::{Error, Result};
use crate::linalg::{self, factor_psd, psd_sqrt, ComplexMatrix, HermitianMatrix, C64, ZERO, ZERO_TOL};
use crate::states::{basis_vector, GramMatrix, PureStateSet, INDEPENDENCE_TOL};
use crate::Verdict;

pub use search::{complete_psd, pi_search, SearchOptions, SearchOutcome};

/// Initial states, target states and per-state success probabilities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformProblem {
    initial: PureStateSet,
    targets: PureStateSet,
    probabilities: Vec<f64>,
}

impl TransformProblem {
    /// Both sets must have the same size and live in the same space; every
    /// probability must lie in `[0, 1]`.
    pub fn new(initial: PureStateSet, targets: PureStateSet, probabilities: Vec<f64>) -> Result<Self> {
        if initial.len() != targets.len() {
            return Err(Error::Shape(format!(
                "{} initial states but {} targets",
                initial.len(),
                targets.len()
            )));
        }
        if initial.dim() != targets.dim() {
            return Err(Error::Shape(format!(
                "initial states live in dimension {}, targets in {}",
                initial.dim(),
                targets.dim()
            )));
        }
        if probabilities.len() != initial.len() {
            return Err(Error::Shape(format!(
                "{} probabilities for {} states",
                probabilities.len(),
                initial.len()
            )));
        }
        if let Some(j) = probabilities.iter().position(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidArgument(format!("probability {j} is {} (outside [0, 1])", probabilities[j])));
        }
        Ok(Self { initial, targets, probabilities })
    }

    /// `p = (1, …, 1)`.
    pub fn deterministic(initial: PureStateSet, targets: PureStateSet) -> Result<Self> {
        let n = initial.len();
        Self::new(initial, targets, vec![1.0; n])
    }

    /// Discrimination problem: targets are the first `N` standard basis vectors.
    pub fn discrimination(initial: PureStateSet, probabilities: Vec<f64>) -> Result<Self> {
        let targets = PureStateSet::basis(initial.len(), initial.dim())?;
        Self::new(initial, targets, probabilities)
    }

    /// Deterministic cloning `|ψ_j⟩|0⟩ → |ψ_j⟩|ψ_j⟩` in the doubled space.
    pub fn cloning(states: &PureStateSet) -> Result<Self> {
        let blank = PureStateSet::new(vec![basis_vector(states.dim(), 0); states.len()])?;
        Self::deterministic(states.tensor(&blank)?, states.tensor(states)?)
    }

    pub fn initial(&self) -> &PureStateSet {
        &self.initial
    }

    pub fn targets(&self) -> &PureStateSet {
        &self.targets
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.initial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.initial.is_empty()
    }

    pub fn is_deterministic(&self) -> bool {
        self.probabilities.iter().all(|&p| p >= 1.0 - ZERO_TOL)
    }
}

/// Candidate certificate matrix `Π`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiMatrix(HermitianMatrix);

impl PiMatrix {
    pub fn new(h: HermitianMatrix) -> Self {
        Self(h)
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        Ok(Self(HermitianMatrix::from_rows(rows)?))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Ok(Self(HermitianMatrix::from_real_rows(rows)?))
    }

    /// `Π = C†C`.
    pub fn from_coefficients(c: &ComplexMatrix) -> Self {
        Self(HermitianMatrix::symmetrize(&(&c.adjoint() * c)))
    }

    /// `π_{j'j} = c*_{j'} c_j`.
    pub fn rank_one(c: &[C64]) -> Self {
        let n = c.len();
        Self(HermitianMatrix::symmetrize(&ComplexMatrix::from_fn(n, n, |a, b| c[a].conj() * c[b])))
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

impl std::ops::Deref for PiMatrix {
    type Target = HermitianMatrix;

    fn deref(&self) -> &HermitianMatrix {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sufficiency {
    /// Initial states are linearly independent: passing conditions guarantee a realization.
    Sufficient,
    /// Initial states are dependent: the conditions are only known to be necessary.
    NecessaryOnly,
}

/// Extra information attached to a negative or inconclusive certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// A deterministic problem where `γ²_{j'j} = 0` but `γ¹_{j'j} ≠ 0`; no `Π` can
    /// satisfy `Γ₁ = Π ∘ Γ₂`.
    ForcedEntry { row: usize, col: usize, initial_overlap: f64 },
    /// The search ran out of iterations. Not a proof of infeasibility.
    NotFound { iterations: usize, residual: f64 },
}

/// Verdicts on (1.a)–(1.c) for one candidate `Π`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub pi: PiMatrix,
    /// (1.a); witness is the minimum eigenvalue of `Π`.
    pub positivity: Verdict,
    /// (1.b); witness is `max_j |π_jj − p_j|`.
    pub diagonal: Verdict,
    /// (1.c); witness is the minimum eigenvalue of `Γ₁ − Π ∘ Γ₂`.
    pub dominance: Verdict,
    pub feasible: bool,
    pub sufficiency: Sufficiency,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
}

impl Certificate {
    /// Name of the first failing condition, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.positivity.passed {
            Some("(1.a) positivity")
        } else if !self.diagonal.passed {
            Some("(1.b) diagonal")
        } else if !self.dominance.passed {
            Some("(1.c) dominance")
        } else {
            None
        }
    }
}

pub(crate) fn evaluate(
    gamma1: &HermitianMatrix,
    gamma2: &HermitianMatrix,
    p: &[f64],
    pi: &PiMatrix,
    tol: f64,
    sufficiency: Sufficiency,
) -> Result<Certificate> {
    let n = gamma1.dim();
    if pi.dim() != n || gamma2.dim() != n || p.len() != n {
        return Err(Error::Shape(format!("certificate is {}x{}, problem has {n} states", pi.dim(), pi.dim())));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {tol}")));
    }
    let positivity = Verdict::non_negative(pi.min_eigenvalue()?, tol);
    let max_dev = pi
        .real_diagonal()
        .iter()
        .zip(p)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let diagonal = Verdict::at_most(max_dev, tol);
    let residual = gamma1.sub(&pi.hadamard(gamma2)?)?;
    let dominance = Verdict::non_negative(residual.min_eigenvalue()?, tol);
    Ok(Certificate {
        pi: pi.clone(),
        positivity,
        diagonal,
        dominance,
        feasible: positivity.passed && diagonal.passed && dominance.passed,
        sufficiency,
        obstruction: None,
    })
}

fn sufficiency_of(initial: &PureStateSet) -> Sufficiency {
    if initial.linearly_independent(INDEPENDENCE_TOL) {
        Sufficiency::Sufficient
    } else {
        Sufficiency::NecessaryOnly
    }
}

/// Evaluate (1.a)–(1.c) for `pi`. Failures are verdicts; only shape errors are `Err`.
pub fn verify_pi(prob: &TransformProblem, pi: &PiMatrix, tol: f64) -> Result<Certificate> {
    evaluate(
        prob.initial.gram_matrix().as_hermitian(),
        prob.targets.gram_matrix().as_hermitian(),
        &prob.probabilities,
        pi,
        tol,
        sufficiency_of(&prob.initial),
    )
}

/// Kraus realization of a certified transformation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformRealization {
    /// `A_{kS}`, one per nonzero row of the factor `C`.
    pub success: Vec<ComplexMatrix>,
    /// `A_F = √(1 − E_S)`.
    pub failure: ComplexMatrix,
    /// Coefficients `c_{kj}` with `A_{kS}|ψ_j¹⟩ = c_{kj}|ψ_j²⟩`.
    pub coefficients: ComplexMatrix,
}

pub const SUCCESS_LABEL: &str = "success";
pub const FAILURE_LABEL: &str = "failure";

impl TransformRealization {
    /// Success operators under label `success`, the failure operator under `failure`.
    pub fn kraus_set(&self) -> KrausSet {
        let mut ops: Vec<KrausOperator> = self
            .success
            .iter()
            .map(|a| KrausOperator::new(SUCCESS_LABEL, a.clone()))
            .collect();
        ops.push(KrausOperator::new(FAILURE_LABEL, self.failure.clone()));
        KrausSet::new(ops).expect("all operators act on the same space")
    }

    /// `E_S = Σ_k A_{kS}† A_{kS}`.
    pub fn success_element(&self) -> HermitianMatrix {
        let d = self.failure.cols();
        let mut acc = ComplexMatrix::zeros(d, d);
        for a in &self.success {
            acc = &acc + &(&a.adjoint() * a);
        }
        HermitianMatrix::symmetrize(&acc)
    }
}

/// `A_k = Σ_j c_{kj} / ⟨ψ̃_j|ψ_j⟩ · |ψ_j²⟩⟨ψ̃_j|` for each row `k` of `c`.
pub(crate) fn success_operators(
    c: &ComplexMatrix,
    duals: &[Vec<C64>],
    initial: &PureStateSet,
    targets: &PureStateSet,
) -> Vec<ComplexMatrix> {
    let n = initial.len();
    let norms: Vec<C64> = (0..n).map(|j| linalg::inner(&duals[j], initial.state(j))).collect();
    (0..c.rows())
        .map(|k| {
            let mut a = ComplexMatrix::zeros(targets.dim(), initial.dim());
            for j in 0..n {
                let w = c[(k, j)] / norms[j];
                if w == ZERO {
                    continue;
                }
                a = &a + &ComplexMatrix::outer(targets.state(j), &duals[j]).scale(w);
            }
            a
        })
        .collect()
}

fn failure_operator(success: &[ComplexMatrix], dim: usize) -> Result<ComplexMatrix> {
    let mut es = ComplexMatrix::zeros(dim, dim);
    for a in success {
        es = &es + &(&a.adjoint() * a);
    }
    let rest = HermitianMatrix::identity(dim).sub(&HermitianMatrix::symmetrize(&es))?;
    Ok(psd_sqrt(&rest)?.into_matrix())
}

/// Build Kraus operators for a certified transformation.
///
/// Factors `Π = C†C`, forms the success operators from the reciprocal vectors
/// of the initial set, and completes them with `A_F = √(1 − E_S)` so the pair
/// is trace-preserving.
pub fn kraus_from_pi(prob: &TransformProblem, pi: &PiMatrix, tol: f64) -> Result<TransformRealization> {
    let duals = prob.initial.reciprocal_vectors()?;
    let cert = verify_pi(prob, pi, tol)?;
    if let Some(condition) = cert.first_failure() {
        let witness = match condition {
            "(1.b) diagonal" => format!("max diagonal deviation {:.3e}", cert.diagonal.witness),
            "(1.a) positivity" => format!("minimum eigenvalue {:.3e}", cert.positivity.witness),
            _ => format!("minimum eigenvalue {:.3e}", cert.dominance.witness),
        };
        return Err(Error::ConditionFailed { condition, detail: witness });
    }
    let full = factor_psd(pi, pi.dim(), tol)?;
    let keep: Vec<usize> = (0..full.rows())
        .filter(|&k| full.row(k).iter().any(|z| z.norm() > 1e-14))
        .collect();
    let keep = if keep.is_empty() { vec![0] } else { keep };
    let c = ComplexMatrix::from_fn(keep.len(), full.cols(), |k, j| full[(keep[k], j)]);
    let success = success_operators(&c, &duals, &prob.initial, &prob.targets);
    let failure = failure_operator(&success, prob.initial.dim())?;
    Ok(TransformRealization { success, failure, coefficients: c })
}

/// Coefficients `c_{kj} = ⟨ψ_j²|A_k|ψ_j¹⟩` of a selective operation that maps each
/// initial state onto the span of its target.
pub fn extract_coefficients(ops: &[ComplexMatrix], prob: &TransformProblem) -> Result<ComplexMatrix> {
    let n = prob.len();
    let mut c = ComplexMatrix::zeros(ops.len().max(1), n);
    for (k, a) in ops.iter().enumerate() {
        for j in 0..n {
            let img = a.mul_vec(prob.initial.state(j))?;
            c[(k, j)] = linalg::inner(prob.targets.state(j), &img);
        }
    }
    Ok(c)
}

/// Closed-form certificate for a deterministic problem.
///
/// `Γ₁ − Π ∘ Γ₂` has zero trace when `p = 1`, so it must vanish and
/// `π_{j'j} = γ¹_{j'j} / γ²_{j'j}` wherever `γ²_{j'j} ≠ 0`. Entries with both
/// overlaps zero are unconstrained and are filled by a PSD completion search;
/// an entry with `γ² = 0 ≠ γ¹` makes the problem infeasible.
pub fn deterministic_pi(prob: &TransformProblem, tol: f64) -> Result<Certificate> {
    if !prob.is_deterministic() {
        return Err(Error::InvalidArgument("deterministic analysis needs p = (1, …, 1)".into()));
    }
    let g1 = prob.initial.gram_matrix();
    let g2 = prob.targets.gram_matrix();
    let (pi, free, conflict) = forced_pi(&g1, &g2);
    let mut cert = verify_pi(prob, &pi, tol)?;
    if let Some((row, col)) = conflict {
        cert.feasible = false;
        cert.obstruction = Some(Obstruction::ForcedEntry { row, col, initial_overlap: g1[(row, col)].norm() });
        return Ok(cert);
    }
    if cert.feasible || free.iter().all(|f| !f) {
        return Ok(cert);
    }
    let opts = SearchOptions { tol, ..SearchOptions::default() };
    let (completed, iterations, residual) = complete_psd(&pi, &free, &opts)?;
    let completed_cert = verify_pi(prob, &completed, tol)?;
    if completed_cert.feasible {
        return Ok(completed_cert);
    }
    cert.obstruction = Some(Obstruction::NotFound { iterations, residual });
    Ok(cert)
}

/// `Π = Γ₁ ∘ Γ₂^{∘−1}` on the support of `Γ₂`, zero elsewhere. Also returns the mask
/// of unconstrained entries and the first forced conflict.
pub(crate) fn forced_pi(g1: &GramMatrix, g2: &GramMatrix) -> (PiMatrix, Vec<bool>, Option<(usize, usize)>) {
    let n = g1.dim();
    let mut free = vec![false; n * n];
    let mut conflict = None;
    let m = ComplexMatrix::from_fn(n, n, |a, b| {
        let z2 = g2[(a, b)];
        if z2.norm() >= ZERO_TOL {
            g1[(a, b)] / z2
        } else {
            if g1[(a, b)].norm() >= ZERO_TOL {
                if conflict.is_none() {
                    conflict = Some((a.min(b), a.max(b)));
                }
            } else {
                free[a * n + b] = true;
            }
            ZERO
        }
    });
    (PiMatrix(HermitianMatrix::symmetrize(&m)), free, conflict)
}

/// Discrimination feasibility: `Γ₁ − Δ(p) ⪰ 0`, certified by `π_{j'j} = √(p_{j'} p_j)`.
pub fn usd_feasible(initial: &PureStateSet, p: &[f64], tol: f64) -> Result<Certificate> {
    if p.len() != initial.len() {
        return Err(Error::Shape(format!("{} probabilities for {} states", p.len(), initial.len())));
    }
    if let Some(j) = p.iter().position(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::InvalidArgument(format!("probability {j} is {} (outside [0, 1])", p[j])));
    }
    let c: Vec<C64> = p.iter().map(|&x| C64::new(x.sqrt(), 0.0)).collect();
    let pi = PiMatrix::rank_one(&c);
    evaluate(
        initial.gram_matrix().as_hermitian(),
        &HermitianMatrix::identity(initial.len()),
        p,
        &pi,
        tol,
        sufficiency_of(initial),
    )
}

/// Largest uniform discrimination probability: the minimum Gram eigenvalue, clamped to `[0, 1]`.
pub fn usd_max_uniform(initial: &PureStateSet) -> Result<f64> {
    Ok(initial.gram_matrix().min_eigenvalue()?.clamp(0.0, 1.0))
}

/// Same quantity by bisection on `p`, testing `Γ₁ − pI ≻ 0` with a Cholesky attempt.
pub fn usd_max_uniform_bisection(initial: &PureStateSet, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("bisection tolerance must be positive".into()));
    }
    let g = initial.gram_matrix();
    let n = g.dim();
    let feasible = |p: f64| linalg::cholesky(&g.sub(&HermitianMatrix::identity(n).scale(p)).expect("square")).is_some();
    // Γ₁ − I has a zero diagonal, so p = 1 is never strictly feasible; the
    // result is within `tol` of the boundary.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Certificate and (when feasible and constructible) the two-operator realization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankOneOutcome {
    pub phases: Vec<f64>,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<ComplexMatrix>,
}

/// Two-outcome realization with a single success operator.
///
/// Uses `c_j = √p_j e^{i θ_j}` and the rank-one `π_{j'j} = c*_{j'} c_j`. When the
/// certificate passes and the initial set is independent, builds
/// `A_S = Σ_j c_j / ⟨ψ̃_j|ψ_j⟩ |ψ_j²⟩⟨ψ̃_j|` and `A_F = √(1 − A_S†A_S)`.
pub fn rank_one_two_outcome(prob: &TransformProblem, phases: &[f64], tol: f64) -> Result<RankOneOutcome> {
    if phases.len() != prob.len() {
        return Err(Error::Shape(format!("{} phases for {} states", phases.len(), prob.len())));
    }
    let c: Vec<C64> = prob
        .probabilities
        .iter()
        .zip(phases)
        .map(|(&p, &t)| C64::from_polar(p.sqrt(), t))
        .collect();
    let pi = PiMatrix::rank_one(&c);
    let certificate = verify_pi(prob, &pi, tol)?;
    let (mut success, mut failure) = (None, None);
    if certificate.feasible && certificate.sufficiency == Sufficiency::Sufficient {
        let duals = prob.initial.reciprocal_vectors()?;
        let row = ComplexMatrix::from_fn(1, c.len(), |_, j| c[j]);
        let ops = success_operators(&row, &duals, &prob.initial, &prob.targets);
        failure = Some(failure_operator(&ops, prob.initial.dim())?);
        success = ops.into_iter().next();
    }
    Ok(RankOneOutcome { phases: phases.to_vec(), certificate, success, failure })
}

/// Random search over phases `θ_1..θ_{N-1}` (`θ_0 = 0`), keeping the choice with the
/// largest (1.c) witness. Zero phases are always tried first.
pub fn rank_one_phase_search(prob: &TransformProblem, trials: usize, seed: u64, tol: f64) -> Result<RankOneOutcome> {
    let n = prob.len();
    let mut best = rank_one_two_outcome(prob, &vec![0.0; n], tol)?;
    let mut rng = crate::random::rng(seed);
    for _ in 0..trials {
        if best.certificate.feasible {
            break;
        }
        let phases: Vec<f64> = (0..n)
            .map(|j| if j == 0 { 0.0 } else { crate::random::uniform(&mut rng, 0.0, std::f64::consts::TAU) })
            .collect();
        let out = rank_one_two_outcome(prob, &phases, tol)?;
        if out.certificate.dominance.witness > best.certificate.dominance.witness {
            best = out;
        }
    }
    Ok(best)
}
