//! Acceptance suite: one line per criterion, nonzero exit if any fails.

// Negated comparisons make NaN count as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::time::{Duration, Instant};

use common::{max_gap, oracle_eigenvalues, pad, reference_majorizes};
use pureset::channel::{measure_and_reprepare, KrausOperator, KrausSet};
use pureset::linalg::{inner, psd_sqrt, ComplexMatrix, HermitianMatrix};
use pureset::majorize::{bapat_sunder_check, ds_witness, majorizes, majorizes_values, theorem3_check, SpectrumVector};
use pureset::random::{self, Rand};
use pureset::states::{basis_vector, DensityOperator, Ensemble, PureStateSet};
use pureset::transform::{
    deterministic_pi, extract_coefficients, kraus_from_pi, verify_pi, PiMatrix, TransformProblem, SUCCESS_LABEL,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("USD uniform bound", Some(Duration::from_secs(1)), usd_uniform_bound),
        ("Kraus round trip", Some(Duration::from_secs(10)), kraus_round_trip),
        ("certificate necessity", None, certificate_necessity),
        ("deterministic trace argument", None, deterministic_trace),
        ("unital mixing, both directions", Some(Duration::from_secs(30)), unital_mixing),
        ("transfer matrix sums", None, transfer_sums),
        ("ensemble majorization pipeline", None, ensemble_pipeline),
        ("no-cloning", None, no_cloning),
        ("majorization oracle equivalence", None, majorization_oracle),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(detail), Some(b)) if elapsed > *b => Err(format!("{detail}; took {elapsed:.2?}, budget {b:.0?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn two_states(rng: &mut Rand, dim: usize) -> PureStateSet {
    random::random_state_set(rng, 2, dim)
}

/// Max uniform discrimination probability through the command-line path.
fn cli_max_uniform(dir: &std::path::Path, states: &PureStateSet) -> Result<f64, String> {
    let path = dir.join("usd.json");
    let body = serde_json::json!({ "version": 1, "kind": "usd", "states": states });
    std::fs::write(&path, body.to_string()).map_err(|e| e.to_string())?;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = ["pureset", "usd", "--max-uniform", "--json", path.to_str().unwrap()];
    let code = pureset::cli::run(args, &mut out, &mut err);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    let report: pureset::cli::Report = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    report.result["max_uniform_probability"].as_f64().ok_or_else(|| "missing value".into())
}

fn usd_uniform_bound() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = random::rng(101);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let dim = random::index(&mut rng, 2, 6);
        let set = two_states(&mut rng, dim);
        let want = 1.0 - inner(set.state(0), set.state(1)).norm();
        let got = cli_max_uniform(dir.path(), &set)?;
        worst = worst.max((got - want).abs());
    }
    check!(worst <= 1e-9, "two-state deviation {worst:.3e}");
    let mut worst3 = 0.0f64;
    for k in 0..20 {
        let s = 0.05 * k as f64;
        let g = HermitianMatrix::from_real_rows(&[vec![1.0, s, s], vec![s, 1.0, s], vec![s, s, 1.0]]).unwrap();
        let set = PureStateSet::from_gram(&g).map_err(|e| e.to_string())?;
        let got = cli_max_uniform(dir.path(), &set)?;
        let want = 1.0 - s;
        worst3 = worst3.max((got - want).abs());
    }
    check!(worst3 <= 1e-9, "three-state deviation {worst3:.3e}");
    Ok(format!("max deviation {worst:.1e} (pairs), {worst3:.1e} (symmetric triples)"))
}

fn kraus_round_trip() -> Outcome {
    let mut rng = random::rng(202);
    let (mut worst_p, mut worst_f, mut worst_es) = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for _ in 0..200 {
        let dim = random::index(&mut rng, 1, 8);
        let n = random::index(&mut rng, 1, dim);
        let (prob, pi) = random::random_feasible_instance(&mut rng, n, dim);
        let real = kraus_from_pi(&prob, &pi, 1e-9).map_err(|e| e.to_string())?;
        let set = real.kraus_set();
        let es = oracle_eigenvalues(&real.success_element())[0];
        worst_es = worst_es.max(es);
        for j in 0..n {
            let rho = DensityOperator::pure(prob.initial().state(j)).unwrap();
            let ps = set.outcome_probability(SUCCESS_LABEL, &rho).map_err(|e| e.to_string())?;
            worst_p = worst_p.max((ps - prob.probabilities()[j]).abs());
            if ps > 1e-12 {
                let post = set.post_measurement_state(SUCCESS_LABEL, &rho).map_err(|e| e.to_string())?;
                let f = post.fidelity_with(prob.targets().state(j)).map_err(|e| e.to_string())?;
                worst_f = worst_f.max(1.0 - f);
            }
        }
    }
    check!(worst_p <= 1e-8, "success probability off by {worst_p:.3e}");
    check!(worst_f <= 1e-8, "fidelity shortfall {worst_f:.3e}");
    check!(worst_es <= 1.0 + 1e-9, "E_S eigenvalue {worst_es}");
    Ok(format!("|Δp| ≤ {worst_p:.1e}, 1−F ≤ {worst_f:.1e}, max λ(E_S) = {worst_es:.6}"))
}

fn certificate_necessity() -> Outcome {
    let mut rng = random::rng(303);
    let mut worst = f64::INFINITY;
    for _ in 0..200 {
        let dim = random::index(&mut rng, 1, 6);
        let n = random::index(&mut rng, 1, dim);
        let m = random::index(&mut rng, 1, 3);
        let initial = random::random_independent_set(&mut rng, n, dim);
        let targets = random::random_state_set(&mut rng, n, dim);
        let (ops, _) = random::random_selective_operation(&mut rng, &initial, &targets, m);
        // complete to a valid operation with a failure branch
        let mut es = ComplexMatrix::zeros(dim, dim);
        for a in &ops {
            es = &es + &(&a.adjoint() * a);
        }
        let rest = HermitianMatrix::identity(dim).sub(&HermitianMatrix::symmetrize(&es)).unwrap();
        let fail = psd_sqrt(&rest).unwrap().into_matrix();
        let mut labelled: Vec<KrausOperator> = ops.iter().map(|a| KrausOperator::new("success", a.clone())).collect();
        labelled.push(KrausOperator::new("failure", fail));
        let set = KrausSet::new(labelled).unwrap();
        check!(set.is_trace_preserving(1e-9).passed, "generated operation is not trace-preserving");

        let success: Vec<ComplexMatrix> = set.outcome("success").unwrap().into_iter().cloned().collect();
        let placeholder = TransformProblem::new(initial.clone(), targets.clone(), vec![0.0; n]).unwrap();
        let c = extract_coefficients(&success, &placeholder).map_err(|e| e.to_string())?;
        let p: Vec<f64> = (0..n)
            .map(|j| (0..success.len()).map(|k| c[(k, j)].norm_sqr()).sum::<f64>().min(1.0))
            .collect();
        let prob = TransformProblem::new(initial, targets, p).unwrap();
        let cert = verify_pi(&prob, &PiMatrix::from_coefficients(&c), 1e-8).map_err(|e| e.to_string())?;
        check!(cert.feasible, "extracted certificate fails {:?}", cert.first_failure());
        worst = worst.min(cert.positivity.witness.min(cert.dominance.witness));
    }
    Ok(format!("200/200 certificates pass; smallest eigenvalue witness {worst:.1e}"))
}

fn pair(overlap: f64) -> PureStateSet {
    PureStateSet::from_real(&[vec![1.0, 0.0], vec![overlap, (1.0 - overlap * overlap).sqrt()]]).unwrap()
}

fn deterministic_trace() -> Outcome {
    let mut rng = random::rng(404);
    let mut instances: Vec<TransformProblem> =
        vec![TransformProblem::deterministic(pair(0.5), pair(0.9)).unwrap()];
    for _ in 0..200 {
        let n = random::index(&mut rng, 2, 6);
        let rank = random::index(&mut rng, 1, n);
        instances.push(random::random_deterministic_instance(&mut rng, n, rank).0);
    }
    let mut worst = 0.0f64;
    for prob in &instances {
        let cert = deterministic_pi(prob, 1e-9).map_err(|e| e.to_string())?;
        check!(cert.feasible, "constructed instance reported infeasible");
        let g2 = prob.targets().gram_matrix();
        let r = prob.initial().gram_matrix().sub(&cert.pi.hadamard(&g2).unwrap()).unwrap().frobenius_norm();
        worst = worst.max(r);
    }
    check!(worst <= 1e-9, "‖Γ₁ − Π∘Γ₂‖_F reached {worst:.3e}");
    let bad = deterministic_pi(&TransformProblem::deterministic(pair(0.9), pair(0.5)).unwrap(), 1e-9).unwrap();
    check!(!bad.feasible, "0.9 → 0.5 reported feasible");
    check!((bad.positivity.witness + 0.8).abs() <= 1e-9, "witness {}", bad.positivity.witness);
    Ok(format!(
        "{} feasible instances, residual ≤ {worst:.1e}; 0.9→0.5 witness {:.12}",
        instances.len(),
        bad.positivity.witness
    ))
}

fn unital_mixing() -> Outcome {
    let mut rng = random::rng(505);
    for t in 0..500 {
        let d = random::index(&mut rng, 1, 8);
        let m = random::index(&mut rng, 1, 4);
        let channel = if t % 2 == 0 {
            random::random_unitary_mixture(&mut rng, d, m)
        } else {
            random::random_sqrt_povm_channel(&mut rng, d, m)
        };
        check!(channel.is_unital(1e-9).passed, "generated channel is not unital");
        let rank = random::index(&mut rng, 1, d);
        let rho1 = random::random_density(&mut rng, d, rank);
        let rho2 = channel.apply_channel(&rho1, 1e-9).map_err(|e| e.to_string())?;
        let l1 = oracle_eigenvalues(rho1.as_hermitian());
        let l2 = oracle_eigenvalues(rho2.as_hermitian());
        check!(majorizes_values(&l1, &l2, 1e-9).holds, "draw {t}: λ(ρ₂) not majorized by λ(ρ₁)");
    }
    let mut min_dist = f64::INFINITY;
    let mut worst_consistency = 0.0f64;
    for t in 0..500 {
        let d = random::index(&mut rng, 2, 8);
        let m = random::index(&mut rng, 2, 4);
        let channel = random::random_channel(&mut rng, d, d, m);
        let report = channel.is_unital(1e-9);
        check!(!report.passed, "draw {t}: random isometry channel came out unital");
        let mixed = DensityOperator::maximally_mixed(d);
        let out = channel.apply_channel(&mixed, 1e-9).map_err(|e| e.to_string())?;
        let dist = out.as_hermitian().sub(mixed.as_hermitian()).unwrap().frobenius_norm();
        min_dist = min_dist.min(dist);
        worst_consistency = worst_consistency.max((dist - report.defect.unwrap() / d as f64).abs());
    }
    check!(min_dist > 0.0, "a non-unital channel fixed 1/D");
    check!(worst_consistency <= 1e-9, "‖ρ₂ − 1/D‖ vs defect/D off by {worst_consistency:.3e}");
    let d = 3;
    let mr = measure_and_reprepare(&basis_vector(d, 0)).unwrap();
    let mixed = DensityOperator::maximally_mixed(d);
    let out = mr.apply_channel(&mixed, 1e-9).unwrap();
    let r = majorizes_values(&mixed.spectrum().unwrap(), &out.spectrum().unwrap(), 1e-9);
    check!(!r.holds, "measure-and-reprepare output majorized by 1/D");
    Ok(format!(
        "500 unital draws hold; 500 non-unital draws move 1/D (min distance {min_dist:.2e}); reprepare violates at prefix {:?}",
        r.violated_prefix
    ))
}

fn transfer_sums() -> Outcome {
    let mut rng = random::rng(606);
    let (mut unital_count, mut other_count) = (0, 0);
    for t in 0..500 {
        let d = random::index(&mut rng, 1, 6);
        let m = random::index(&mut rng, 1, 3);
        let channel = match t % 3 {
            0 => random::random_channel(&mut rng, d, d, m + 1),
            1 => random::random_unitary_mixture(&mut rng, d, m),
            _ => random::random_sqrt_povm_channel(&mut rng, d, m),
        };
        let rho = random::random_density(&mut rng, d, d);
        let s = channel.transfer_matrix_for(&rho).map_err(|e| e.to_string())?;
        check!(s.trace_sums_verdict(1e-9).passed, "draw {t}: sums over outputs {:?}", s.sums_over_outputs);
        let unital = channel.is_unital(1e-9).passed;
        let col = s.unital_sums_verdict(1e-9).passed;
        check!(unital == col, "draw {t}: unital = {unital} but unit input sums = {col}");
        if unital {
            unital_count += 1;
        } else {
            other_count += 1;
        }
    }
    Ok(format!("{unital_count} unital and {other_count} non-unital draws agree"))
}

fn ensemble_pipeline() -> Outcome {
    let mut rng = random::rng(707);
    let mut worst_equiv = 0.0f64;
    for t in 0..300 {
        let n = random::index(&mut rng, 2, 6);
        let rank = random::index(&mut rng, 1, n);
        let (prob, _) = random::random_deterministic_instance(&mut rng, n, rank);
        let q = random::random_probability(&mut rng, n);
        let r = theorem3_check(&prob, &q, 1e-9).map_err(|e| e.to_string())?;
        check!(r.hypothesis_met, "draw {t}: instance reported infeasible");
        check!(r.majorization.holds, "draw {t}: λ(ρ₁) not majorized by λ(ρ₂)");
        for set in [prob.initial(), prob.targets()] {
            let e = Ensemble::new(set.clone(), q.clone()).unwrap();
            let len = n.max(set.dim());
            let a = pad(oracle_eigenvalues(e.density().as_hermitian()), len);
            let b = pad(oracle_eigenvalues(&e.weighted_gram()), len);
            worst_equiv = worst_equiv.max(max_gap(&a, &b));
        }
    }
    check!(worst_equiv <= 1e-9, "ρ(q) vs Q∘Γ spectra differ by {worst_equiv:.3e}");
    for t in 0..500 {
        let n = random::index(&mut rng, 1, 6);
        let rank = random::index(&mut rng, 1, n);
        let a = random::random_correlation(&mut rng, n, rank);
        let b = random::random_hermitian(&mut rng, n);
        let r = bapat_sunder_check(&a, &b, 1e-9).map_err(|e| e.to_string())?;
        let oracle = reference_majorizes(&oracle_eigenvalues(&b), &oracle_eigenvalues(&a.hadamard(&b).unwrap()), 1e-9);
        check!(r.majorization.holds && oracle, "Hadamard pair {t} fails");
    }
    Ok(format!("300 ensembles hold, spectra agree to {worst_equiv:.1e}; 500 Hadamard pairs hold"))
}

fn no_cloning() -> Outcome {
    let mut rng = random::rng(808);
    let mut max_offdiag = f64::INFINITY;
    for t in 0..100 {
        let d = random::index(&mut rng, 2, 3);
        let set = two_states(&mut rng, d);
        let g = inner(set.state(0), set.state(1)).norm();
        check!(g > 1e-6, "draw {t} is numerically orthogonal");
        let cert = deterministic_pi(&TransformProblem::cloning(&set).unwrap(), 1e-9).map_err(|e| e.to_string())?;
        check!(!cert.feasible, "draw {t}: cloning at overlap {g} reported feasible");
        max_offdiag = max_offdiag.min(cert.pi[(0, 1)].norm());
    }
    for t in 0..100 {
        let d = random::index(&mut rng, 2, 3);
        let u = random::random_unitary(&mut rng, d);
        let set = PureStateSet::new(vec![u.column(0), u.column(1)]).unwrap();
        let cert = deterministic_pi(&TransformProblem::cloning(&set).unwrap(), 1e-9).map_err(|e| e.to_string())?;
        check!(cert.feasible, "orthogonal draw {t} reported infeasible");
    }
    Ok(format!("100 non-orthogonal pairs infeasible (|π₀₁| ≥ {max_offdiag:.3}); 100 orthogonal pairs feasible"))
}

fn majorization_oracle() -> Outcome {
    let mut rng = random::rng(909);
    let (mut yes, mut no, mut witnesses) = (0, 0, 0);
    for t in 0..10_000 {
        let n = random::index(&mut rng, 1, 10);
        let lambda = random::random_probability(&mut rng, n);
        let sigma: Vec<f64> = match t % 4 {
            0 => random::random_probability(&mut rng, n),
            1 => {
                // mixture of cyclic shifts: always majorized
                let mut s = vec![0.0; n];
                for w in random::random_probability(&mut rng, 3) {
                    let shift = random::index(&mut rng, 0, n - 1);
                    for i in 0..n {
                        s[(i + shift) % n] += w * lambda[i];
                    }
                }
                s
            }
            2 => {
                let m = random::index(&mut rng, 1, 10);
                random::random_probability(&mut rng, m)
            }
            _ => {
                let tt = random::uniform(&mut rng, 0.0, 1.0);
                lambda.iter().map(|x| (1.0 - tt) * x + tt / n as f64).collect()
            }
        };
        let l = SpectrumVector::new(lambda.clone()).unwrap();
        let s = SpectrumVector::new(sigma.clone()).unwrap();
        let got = majorizes(&l, &s, 1e-9).holds;
        let want = reference_majorizes(&lambda, &sigma, 1e-9);
        check!(got == want, "pair {t} disagrees: λ = {lambda:?}, σ = {sigma:?}");
        if !got {
            no += 1;
            continue;
        }
        yes += 1;
        let w = ds_witness(&l, &s, 1e-9).map_err(|e| format!("pair {t}: {e}"))?;
        check!(w.validate(1e-9).passed, "pair {t}: witness not doubly stochastic");
        let len = w.dim();
        let mut ls = pad(lambda.clone(), len);
        let mut ss = pad(sigma.clone(), len);
        ls.sort_by(|a, b| b.total_cmp(a));
        ss.sort_by(|a, b| b.total_cmp(a));
        check!(max_gap(&w.apply(&ls), &ss) <= 1e-9, "pair {t}: S λ↓ ≠ σ↓");
        witnesses += 1;
    }
    Ok(format!("10000 pairs agree ({yes} majorized, {no} not); {witnesses} witnesses validate"))
}
