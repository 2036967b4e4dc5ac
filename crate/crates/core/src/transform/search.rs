//! Heuristic search for a certificate `Π`.
//!
//! The feasible set `{Π : Π ⪰ 0, diag Π = p, Γ₁ − Π∘Γ₂ ⪰ 0}` is convex. Writing
//! `M(Π) = Π ⊕ (Γ₁ − Π∘Γ₂)`, it is the intersection of the PSD cone with the
//! affine family `{M(Π)}`. Both Euclidean projections are closed form: the cone
//! projection clips eigenvalues block by block, and the affine projection
//! decouples into one scalar least-squares problem per off-diagonal entry,
//! `π_{ab} = (x_{ab} + conj(γ²_{ab})(γ¹_{ab} − y_{ab})) / (1 + |γ²_{ab}|²)`.
//! Alternating between them converges to a feasible point when one exists.

use serde::Serialize;

use super::{evaluate, forced_pi, Certificate, PiMatrix, TransformProblem};
use crate::error::Result;
use crate::linalg::{ComplexMatrix, HermitianMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchOptions {
    pub max_iterations: usize,
    /// Stop once the worst negative eigenvalue of the iterate is above `-residual_target`.
    pub residual_target: f64,
    /// Tolerance handed to the final verification.
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { max_iterations: 10_000, residual_target: 1e-9, tol: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    /// Always a passing certificate when present.
    pub certificate: Option<Certificate>,
    pub iterations: usize,
    pub residual: f64,
}

/// Look for a `Π` passing (1.a)–(1.c).
///
/// Closed-form candidates are tried first (the rank-one `√p √pᵀ`, `Δ(p)`, and the
/// forced deterministic matrix). Deterministic problems then reduce to a PSD
/// completion over unconstrained entries; otherwise alternating projections run
/// from the best candidate. A returned certificate has always passed
/// verification at `options.tol`; `None` is not a proof of infeasibility.
pub fn pi_search(prob: &TransformProblem, options: &SearchOptions) -> Result<SearchOutcome> {
    let g1 = prob.initial().gram_matrix();
    let g2 = prob.targets().gram_matrix();
    let p = prob.probabilities();
    let n = prob.len();
    let sufficiency = super::sufficiency_of(prob.initial());
    let check = |pi: &PiMatrix| evaluate(&g1, &g2, p, pi, options.tol, sufficiency);

    let sqrt_p: Vec<C64> = p.iter().map(|&x| C64::new(x.sqrt(), 0.0)).collect();
    let (forced, free, conflict) = forced_pi(&g1, &g2);
    let mut forced_diag = forced.as_hermitian().clone().into_matrix();
    for j in 0..n {
        forced_diag[(j, j)] = C64::new(p[j], 0.0);
    }
    let candidates = [
        PiMatrix::rank_one(&sqrt_p),
        PiMatrix::new(HermitianMatrix::from_diagonal(p)),
        PiMatrix::new(HermitianMatrix::symmetrize(&forced_diag)),
    ];
    let mut best: Option<(f64, PiMatrix)> = None;
    for cand in candidates {
        let cert = check(&cand)?;
        if cert.feasible {
            return Ok(SearchOutcome { certificate: Some(cert), iterations: 0, residual: 0.0 });
        }
        let score = cert.positivity.witness.min(cert.dominance.witness) - cert.diagonal.witness;
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, cand));
        }
    }

    if prob.is_deterministic() {
        if conflict.is_some() {
            return Ok(SearchOutcome { certificate: None, iterations: 0, residual: f64::INFINITY });
        }
        let (pi, iterations, residual) = complete_psd(&forced, &free, options)?;
        let cert = check(&pi)?;
        return Ok(SearchOutcome { certificate: cert.feasible.then_some(cert), iterations, residual });
    }

    let mut pi = best.expect("three candidates").1.as_hermitian().clone().into_matrix();
    let mut residual = f64::INFINITY;
    for iteration in 1..=options.max_iterations {
        let current = HermitianMatrix::symmetrize(&pi);
        let e_pi = current.eig()?;
        let slack = g1.sub(&current.hadamard(&g2)?)?;
        let e_slack = slack.eig()?;
        residual = (-e_pi.min_eigenvalue()).max(-e_slack.min_eigenvalue()).max(0.0);
        if residual <= options.residual_target {
            let cert = check(&PiMatrix::new(current))?;
            if cert.feasible {
                return Ok(SearchOutcome { certificate: Some(cert), iterations: iteration, residual });
            }
        }
        let x = e_pi.reconstruct_with(|l| l.max(0.0));
        let y = e_slack.reconstruct_with(|l| l.max(0.0));
        pi = ComplexMatrix::from_fn(n, n, |a, b| {
            if a == b {
                C64::new(p[a], 0.0)
            } else {
                let gamma2 = g2[(a, b)];
                (x[(a, b)] + gamma2.conj() * (g1[(a, b)] - y[(a, b)])) / (1.0 + gamma2.norm_sqr())
            }
        });
    }
    Ok(SearchOutcome { certificate: None, iterations: options.max_iterations, residual })
}

/// PSD completion: alternate eigenvalue clipping with resetting every entry not
/// marked `free` to its value in `fixed`. Returns the last iterate, the iteration
/// count and the final negative-eigenvalue residual.
pub fn complete_psd(fixed: &PiMatrix, free: &[bool], options: &SearchOptions) -> Result<(PiMatrix, usize, f64)> {
    let n = fixed.dim();
    let target = fixed.as_matrix();
    let mut current = fixed.as_hermitian().clone();
    let mut residual = f64::INFINITY;
    for iteration in 1..=options.max_iterations {
        let eig = current.eig()?;
        residual = (-eig.min_eigenvalue()).max(0.0);
        if residual <= options.residual_target {
            return Ok((PiMatrix::new(current), iteration, residual));
        }
        let clipped = eig.reconstruct_with(|l| l.max(0.0));
        let next = ComplexMatrix::from_fn(n, n, |a, b| if free[a * n + b] { clipped[(a, b)] } else { target[(a, b)] });
        current = HermitianMatrix::symmetrize(&next);
    }
    Ok((PiMatrix::new(current), options.max_iterations, residual))
}
