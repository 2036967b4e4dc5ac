//! Randomized property suite behind `pureset selftest`.
//!
//! Each property runs on its own per-trial seed, derived from the root seed,
//! the property index and the trial index, so any failure can be replayed in
//! isolation with [`replay`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::channel::TransferMatrix;
use crate::error::{Error, Result};
use crate::linalg::{recon_tol, ComplexMatrix, PSD_TOL};
use crate::majorize::{
    bapat_sunder_check, ds_witness, entropy_bits, majorizes, majorizes_values, theorem3_check, SpectrumVector,
};
use crate::random::{self, derive_seed, Rand};
use crate::states::{pad_spectrum, DensityOperator, Ensemble, PureStateSet};
use crate::transform::{deterministic_pi, kraus_from_pi, pi_search, verify_pi, PiMatrix, SearchOptions, TransformProblem};

pub const DEFAULT_SEED: u64 = 0x5EED_2001;

/// A failing draw: a description plus the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub message: String,
    pub payload: Value,
}

impl From<Error> for Counterexample {
    fn from(e: Error) -> Self {
        Self { message: format!("unexpected error: {e}"), payload: Value::Null }
    }
}

type Check = fn(&mut Rand) -> std::result::Result<(), Counterexample>;

pub struct Property {
    pub module: &'static str,
    pub name: &'static str,
    check: Check,
}

impl Property {
    pub fn id(&self) -> String {
        format!("{}/{}", self.module, self.name)
    }

    /// Run one trial on `seed`.
    pub fn run(&self, seed: u64) -> std::result::Result<(), Counterexample> {
        (self.check)(&mut random::rng(seed))
    }
}

macro_rules! ensure {
    ($cond:expr, $payload:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Counterexample { message: format!($($msg)+), payload: $payload });
        }
    };
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { module: "linalg", name: "eig_reconstruction", check: eig_reconstruction },
        Property { module: "linalg", name: "psd_sqrt_squares", check: psd_sqrt_squares },
        Property { module: "states", name: "reciprocal_duality", check: reciprocal_duality },
        Property { module: "states", name: "ensemble_spectrum_equivalence", check: ensemble_spectrum_equivalence },
        Property { module: "transform", name: "kraus_round_trip", check: kraus_round_trip },
        Property { module: "transform", name: "necessity", check: necessity },
        Property { module: "transform", name: "deterministic_trace", check: deterministic_trace },
        Property { module: "transform", name: "search_soundness", check: search_soundness },
        Property { module: "channel", name: "unital_majorization", check: unital_majorization },
        Property { module: "channel", name: "nonunital_moves_uniform", check: nonunital_moves_uniform },
        Property { module: "channel", name: "transfer_sums", check: transfer_sums },
        Property { module: "majorize", name: "prefix_oracle", check: prefix_oracle },
        Property { module: "majorize", name: "witness_soundness", check: witness_soundness },
        Property { module: "majorize", name: "preorder", check: preorder },
        Property { module: "majorize", name: "hadamard_majorization", check: hadamard_majorization },
        Property { module: "majorize", name: "ensemble_majorization", check: ensemble_majorization },
        Property { module: "majorize", name: "no_cloning", check: no_cloning },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub trial: usize,
    #[serde(flatten)]
    pub counterexample: Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub module: String,
    pub property: String,
    pub trials: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub root_seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub results: Vec<PropertyResult>,
}

pub fn trial_seed(root: u64, property_index: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(root, property_index as u64), trial as u64)
}

fn run_trials(index: usize, prop: &Property, root: u64, trials: usize) -> PropertyResult {
    let mut failure = None;
    let mut run = 0;
    for t in 0..trials {
        run += 1;
        let seed = trial_seed(root, index, t);
        if let Err(counterexample) = prop.run(seed) {
            failure = Some(Failure { seed, trial: t, counterexample });
            break;
        }
    }
    PropertyResult {
        module: prop.module.into(),
        property: prop.name.into(),
        trials: run,
        passed: failure.is_none(),
        failure,
    }
}

/// Run every property for `trials` trials. Properties run on separate threads;
/// results come back in registry order.
pub fn selftest(root_seed: u64, trials: usize) -> Result<SelftestReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("selftest needs at least one trial".into()));
    }
    let props = properties();
    let results: Vec<PropertyResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = props
            .iter()
            .enumerate()
            .map(|(i, p)| scope.spawn(move || run_trials(i, p, root_seed, trials)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("property thread panicked")).collect()
    });
    Ok(SelftestReport { root_seed, trials, passed: results.iter().all(|r| r.passed), results })
}

/// Re-run a single property on a recorded trial seed. `id` is `module/name` or just `name`.
pub fn replay(id: &str, seed: u64) -> Result<PropertyResult> {
    let props = properties();
    let prop = props
        .iter()
        .find(|p| p.id() == id || p.name == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown property `{id}`")))?;
    let failure = prop.run(seed).err().map(|counterexample| Failure { seed, trial: 0, counterexample });
    Ok(PropertyResult {
        module: prop.module.into(),
        property: prop.name.into(),
        trials: 1,
        passed: failure.is_none(),
        failure,
    })
}

type Outcome = std::result::Result<(), Counterexample>;

fn eig_reconstruction(rng: &mut Rand) -> Outcome {
    let d = random::index(rng, 1, 8);
    let h = random::random_hermitian(rng, d);
    let e = h.eig()?;
    let err = e.reconstruct().as_matrix().max_abs_diff(h.as_matrix());
    let v = &e.eigenvectors;
    let unitarity = (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(d));
    ensure!(
        err <= recon_tol(h.as_matrix()) && unitarity <= 1e-10 * d as f64,
        to_json(&h),
        "reconstruction error {err:.3e}, unitarity defect {unitarity:.3e}"
    );
    Ok(())
}

fn psd_sqrt_squares(rng: &mut Rand) -> Outcome {
    let d = random::index(rng, 1, 8);
    let rank = random::index(rng, 1, d);
    let p = random::random_psd(rng, d, rank);
    let r = crate::linalg::psd_sqrt(&p)?;
    let err = (r.as_matrix() * r.as_matrix()).max_abs_diff(p.as_matrix());
    ensure!(err <= 1e-9 * p.max_abs().max(1.0), to_json(&p), "square-root defect {err:.3e}");
    Ok(())
}

fn reciprocal_duality(rng: &mut Rand) -> Outcome {
    let dim = random::index(rng, 1, 6);
    let n = random::index(rng, 1, dim);
    let set = random::random_independent_set(rng, n, dim);
    let duals = set.reciprocal_vectors()?;
    for (j, dual) in duals.iter().enumerate() {
        for k in 0..n {
            let v = crate::linalg::inner(dual, set.state(k));
            let want = if j == k { 1.0 } else { 0.0 };
            ensure!((v.re - want).abs() < 1e-8 && v.im.abs() < 1e-8, to_json(&set), "<dual {j}|state {k}> = {v}");
        }
    }
    Ok(())
}

fn ensemble_spectrum_equivalence(rng: &mut Rand) -> Outcome {
    let n = random::index(rng, 1, 6);
    let dim = random::index(rng, 1, 6);
    let set = random::random_state_set(rng, n, dim);
    let q = random::random_probability(rng, n);
    let e = Ensemble::new(set, q)?;
    let len = n.max(dim);
    let a = pad_spectrum(e.density().spectrum()?, len);
    let b = pad_spectrum(e.weighted_gram().eigenvalues()?, len);
    let gap = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    ensure!(gap <= 1e-9, to_json(&e), "spectra differ by {gap:.3e}");
    Ok(())
}

fn kraus_round_trip(rng: &mut Rand) -> Outcome {
    let dim = random::index(rng, 1, 6);
    let n = random::index(rng, 1, dim);
    let (prob, pi) = random::random_feasible_instance(rng, n, dim);
    let payload = json!({ "problem": to_json(&prob), "pi": to_json(&pi) });
    let real = kraus_from_pi(&prob, &pi, PSD_TOL)?;
    let set = real.kraus_set();
    ensure!(set.is_trace_preserving(1e-9).passed, payload, "realization is not trace-preserving");
    let es_max = real.success_element().eig()?.max_eigenvalue();
    ensure!(es_max <= 1.0 + 1e-9, payload, "E_S has eigenvalue {es_max}");
    for j in 0..n {
        let rho = DensityOperator::pure(prob.initial().state(j))?;
        let ps = set.outcome_probability(crate::transform::SUCCESS_LABEL, &rho)?;
        ensure!((ps - prob.probabilities()[j]).abs() <= 1e-8, payload, "state {j}: success {ps} vs p {}", prob.probabilities()[j]);
        if ps > 1e-6 {
            let post = set.post_measurement_state(crate::transform::SUCCESS_LABEL, &rho)?;
            let f = post.fidelity_with(prob.targets().state(j))?;
            ensure!(f >= 1.0 - 1e-8, payload, "state {j}: fidelity {f}");
        }
    }
    Ok(())
}

fn necessity(rng: &mut Rand) -> Outcome {
    let dim = random::index(rng, 1, 6);
    let n = random::index(rng, 1, dim);
    let m = random::index(rng, 1, 3);
    let initial = random::random_independent_set(rng, n, dim);
    let targets = random::random_state_set(rng, n, dim);
    let (ops, c) = random::random_selective_operation(rng, &initial, &targets, m);
    let p = (0..n).map(|j| (0..m).map(|k| c[(k, j)].norm_sqr()).sum::<f64>().min(1.0)).collect();
    let prob = TransformProblem::new(initial, targets, p)?;
    let measured = crate::transform::extract_coefficients(&ops, &prob)?;
    let cert = verify_pi(&prob, &PiMatrix::from_coefficients(&measured), 1e-8)?;
    ensure!(cert.feasible, json!({ "problem": to_json(&prob), "operators": to_json(&ops) }), "extracted certificate fails: {:?}", cert.first_failure());
    Ok(())
}

fn deterministic_trace(rng: &mut Rand) -> Outcome {
    let n = random::index(rng, 2, 6);
    let rank = random::index(rng, 1, n);
    let (prob, _) = random::random_deterministic_instance(rng, n, rank);
    let cert = deterministic_pi(&prob, PSD_TOL)?;
    let payload = to_json(&prob);
    ensure!(cert.feasible, payload, "constructed instance reported infeasible: {:?}", cert.first_failure());
    let g1 = prob.initial().gram_matrix();
    let g2 = prob.targets().gram_matrix();
    let resid = g1.sub(&cert.pi.hadamard(&g2)?)?.frobenius_norm();
    ensure!(resid <= 1e-9, payload, "‖Γ₁ − Π∘Γ₂‖_F = {resid:.3e}");
    Ok(())
}

fn search_soundness(rng: &mut Rand) -> Outcome {
    let dim = random::index(rng, 2, 4);
    let n = random::index(rng, 2, dim);
    let initial = random::random_independent_set(rng, n, dim);
    let targets = random::random_state_set(rng, n, dim);
    let p: Vec<f64> = (0..n).map(|_| random::uniform(rng, 0.0, 1.0)).collect();
    let prob = TransformProblem::new(initial, targets, p)?;
    let out = pi_search(&prob, &SearchOptions { max_iterations: 300, ..SearchOptions::default() })?;
    if let Some(cert) = out.certificate {
        let again = verify_pi(&prob, &cert.pi, PSD_TOL)?;
        ensure!(again.feasible, to_json(&prob), "search returned a certificate that fails verification");
    }
    Ok(())
}

fn unital_majorization(rng: &mut Rand) -> Outcome {
    let d = random::index(rng, 1, 8);
    let m = random::index(rng, 1, 4);
    let channel = if random::index(rng, 0, 1) == 0 {
        random::random_unitary_mixture(rng, d, m)
    } else {
        random::random_sqrt_povm_channel(rng, d, m)
    };
    let rank = random::index(rng, 1, d);
    let rho1 = random::random_density(rng, d, rank);
    let rho2 = channel.apply_channel(&rho1, PSD_TOL)?;
    let r = majorizes_values(&rho1.spectrum()?, &rho2.spectrum()?, 1e-9);
    let payload = json!({ "channel": to_json(&channel), "rho": to_json(&rho1) });
    ensure!(r.holds, payload, "λ(ρ₂) ≺ λ(ρ₁) fails at prefix {:?}", r.violated_prefix);
    ensure!(
        entropy_bits(&rho2.spectrum()?) >= entropy_bits(&rho1.spectrum()?) - 1e-9,
        payload,
        "entropy decreased under a unital channel"
    );
    Ok(())
}

fn nonunital_moves_uniform(rng: &mut Rand) -> Outcome {
    let d = random::index(rng, 2, 6);
    let m = random::index(rng, 1, 3);
    let channel = random::random_channel(rng, d, d, m.max(1));
    let mixed = DensityOperator::maximally_mixed(d);
    let out = channel.apply_channel(&mixed, PSD_TOL)?;
    let dist = out.as_hermitian().sub(mixed.as_hermitian())?.frobenius_norm();
    let report = channel.is_unital(1e-9);
    let payload = to_json(&channel);
    let expected = report.operational_defect.unwrap_or(f64::NAN);
    ensure!((dist - expected).abs() <= 1e-9, payload, "distance {dist:.3e} vs operational defect {expected:.3e}");
    ensure!(report.passed == (dist <= 1e-9), payload, "unitality verdict disagrees with distance {dist:.3e}");
    if !report.passed {
        let r = majorizes_values(&mixed.spectrum()?, &out.spectrum()?, 1e-9);
        ensure!(!r.holds, payload, "non-unital image of 1/D is still majorized by 1/D");
    }
    Ok(())
}

fn transfer_sums(rng: &mut Rand) -> Outcome {
    let d = random::index(rng, 1, 6);
    let m = random::index(rng, 1, 3);
    let channel = match random::index(rng, 0, 2) {
        0 => random::random_channel(rng, d, d, m.max(1)),
        1 => random::random_unitary_mixture(rng, d, m),
        _ => random::random_sqrt_povm_channel(rng, d, m),
    };
    let rho = random::random_density(rng, d, d);
    let s: TransferMatrix = channel.transfer_matrix_for(&rho)?;
    let payload = json!({ "channel": to_json(&channel), "rho": to_json(&rho) });
    ensure!(s.trace_sums_verdict(1e-9).passed, payload, "sums over outputs differ from 1");
    if channel.is_unital(1e-9).passed {
        ensure!(s.unital_sums_verdict(1e-9).passed, payload, "unital channel with sums over inputs ≠ 1");
    }
    ensure!(s.spectrum_residual() <= 1e-9, payload, "S λ(ρ₁) ≠ λ(ρ₂): {:.3e}", s.spectrum_residual());
    Ok(())
}

// sum of the k largest entries by enumerating every k-subset
pub(crate) fn subset_prefix(v: &[f64], k: usize) -> f64 {
    let n = v.len();
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).map(|i| v[i]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

fn prefix_oracle(rng: &mut Rand) -> Outcome {
    let n = random::index(rng, 1, 10);
    let a = random::random_probability(rng, n);
    // half the draws are pulled toward uniform, so both verdicts get exercised
    let b: Vec<f64> = if random::index(rng, 0, 1) == 0 {
        random::random_probability(rng, n)
    } else {
        let t = random::uniform(rng, 0.0, 1.0);
        a.iter().map(|x| (1.0 - t) * x + t / n as f64).collect()
    };
    let total_ok = (a.iter().sum::<f64>() - b.iter().sum::<f64>()).abs() <= 1e-9;
    let oracle = total_ok && (1..=n).all(|k| subset_prefix(&b, k) <= subset_prefix(&a, k) + 1e-9);
    let got = majorizes_values(&a, &b, 1e-9).holds;
    ensure!(got == oracle, json!({ "lambda": a, "sigma": b }), "predicate says {got}, oracle says {oracle}");
    Ok(())
}

fn witness_soundness(rng: &mut Rand) -> Outcome {
    let n = random::index(rng, 1, 10);
    let lambda = random::random_probability(rng, n);
    let mut sigma = vec![0.0; n];
    for w in random::random_probability(rng, 3) {
        let shift = random::index(rng, 0, n - 1);
        for i in 0..n {
            sigma[(i + shift) % n] += w * lambda[i];
        }
    }
    let payload = json!({ "lambda": lambda, "sigma": sigma });
    let l = SpectrumVector::new(lambda.clone())?;
    let s = SpectrumVector::new(sigma.clone())?;
    ensure!(majorizes(&l, &s, 1e-9).holds, payload, "mixture of permutations not majorized");
    let w = ds_witness(&l, &s, 1e-9)?;
    ensure!(w.validate(1e-9).passed, payload, "witness not doubly stochastic");
    let mapped = w.apply(&l.sorted_desc());
    let gap = mapped.iter().zip(s.sorted_desc()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure!(gap <= 1e-9, payload, "S λ↓ misses σ↓ by {gap:.3e}");
    Ok(())
}

fn preorder(rng: &mut Rand) -> Outcome {
    let n = random::index(rng, 1, 6);
    let a = random::random_probability(rng, n);
    ensure!(majorizes_values(&a, &a, 1e-9).holds, json!({ "v": a }), "not reflexive");
    // a chain a ≻ b ≻ c built by mixing toward uniform
    let u = vec![1.0 / n as f64; n];
    let mix = |v: &[f64], t: f64| v.iter().zip(&u).map(|(x, y)| (1.0 - t) * x + t * y).collect::<Vec<f64>>();
    let b = mix(&a, random::uniform(rng, 0.0, 1.0));
    let c = mix(&b, random::uniform(rng, 0.0, 1.0));
    let payload = json!({ "a": a, "b": b, "c": c });
    let ab = majorizes_values(&a, &b, 1e-9).holds;
    let bc = majorizes_values(&b, &c, 1e-9).holds;
    let ac = majorizes_values(&a, &c, 1e-9).holds;
    ensure!(!(ab && bc) || ac, payload, "transitivity fails");
    if ac {
        ensure!(entropy_bits(&c) >= entropy_bits(&a) - 1e-9, payload, "entropy not Schur-concave");
    }
    Ok(())
}

fn hadamard_majorization(rng: &mut Rand) -> Outcome {
    let n = random::index(rng, 1, 6);
    let rank = random::index(rng, 1, n);
    let a = random::random_correlation(rng, n, rank);
    let b = random::random_hermitian(rng, n);
    let r = bapat_sunder_check(&a, &b, 1e-9)?;
    ensure!(r.majorization.holds, json!({ "a": to_json(&a), "b": to_json(&b) }), "λ(A∘B) ≺ λ(B) fails");
    Ok(())
}

fn ensemble_majorization(rng: &mut Rand) -> Outcome {
    let n = random::index(rng, 2, 5);
    let rank = random::index(rng, 1, n);
    let (prob, _) = random::random_deterministic_instance(rng, n, rank);
    let q = random::random_probability(rng, n);
    let r = theorem3_check(&prob, &q, PSD_TOL)?;
    let payload = json!({ "problem": to_json(&prob), "priors": q });
    ensure!(r.hypothesis_met, payload, "constructed instance reported infeasible");
    ensure!(r.majorization.holds, payload, "λ(ρ₁) ≺ λ(ρ₂) fails at prefix {:?}", r.majorization.violated_prefix);
    ensure!(r.gram_identity.passed, payload, "Gram identity residual {:.3e}", r.gram_identity.witness);
    ensure!(
        r.initial_spectrum_equivalence.passed && r.final_spectrum_equivalence.passed,
        payload,
        "ρ(q) and Q∘Γ spectra disagree"
    );
    ensure!(r.final_entropy <= r.initial_entropy + 1e-9, payload, "entropy increased");
    Ok(())
}

fn no_cloning(rng: &mut Rand) -> Outcome {
    let d = random::index(rng, 2, 3);
    let set = random::random_state_set(rng, 2, d);
    let overlap = crate::linalg::inner(set.state(0), set.state(1)).norm();
    let prob = TransformProblem::cloning(&set)?;
    let cert = deterministic_pi(&prob, PSD_TOL)?;
    if overlap > 1e-6 && overlap < 1.0 - 1e-6 {
        ensure!(!cert.feasible, to_json(&set), "cloning reported feasible at overlap {overlap}");
    }
    let orth = PureStateSet::basis(2, d)?;
    ensure!(deterministic_pi(&TransformProblem::cloning(&orth)?, PSD_TOL)?.feasible, Value::Null, "orthogonal cloning infeasible");
    Ok(())
}
