mod common;

use common::{max_gap, oracle_eigenvalues, reference_majorizes};
use proptest::prelude::*;
use pureset::linalg::{ComplexMatrix, HermitianMatrix, C64};
use pureset::majorize::{
    ds_witness, entropy_bits, majorizes, majorizes_values, monotone_profile, SpectrumVector,
};
use pureset::random;
use pureset::states::{Ensemble, PureStateSet};
use pureset::transform::{kraus_from_pi, verify_pi, PiMatrix, TransformProblem};

fn hermitian_strategy(max_dim: usize) -> impl Strategy<Value = HermitianMatrix> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), d * d).prop_map(move |v| {
            let m = ComplexMatrix::from_fn(d, d, |i, j| C64::new(v[i * d + j].0, v[i * d + j].1));
            HermitianMatrix::symmetrize(&(&m + &m.adjoint()).scale_real(0.5))
        })
    })
}

fn probability_strategy(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 1..=max_len).prop_filter_map("non-zero total", |v| {
        let s: f64 = v.iter().sum();
        (s > 1e-6).then(|| v.iter().map(|x| x / s).collect())
    })
}

fn permute_set(set: &PureStateSet, perm: &[usize]) -> PureStateSet {
    PureStateSet::new(perm.iter().map(|&i| set.state(i).to_vec()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn eigenvalues_match_nalgebra(h in hermitian_strategy(7)) {
        let ours = h.eigenvalues().unwrap();
        let theirs = oracle_eigenvalues(&h);
        let scale = h.max_abs().max(1.0);
        prop_assert!(max_gap(&ours, &theirs) <= 1e-10 * scale * h.dim() as f64);
    }

    #[test]
    fn schur_product_of_psd_is_psd(seed in any::<u64>(), d in 1usize..6) {
        let mut rng = random::rng(seed);
        let a = random::random_psd(&mut rng, d, d);
        let b = random::random_psd(&mut rng, d, 1);
        let min = a.hadamard(&b).unwrap().min_eigenvalue().unwrap();
        prop_assert!(min >= -1e-9 * a.max_abs().max(b.max_abs()).max(1.0));
    }

    #[test]
    fn majorization_agrees_with_reference(a in probability_strategy(10), b in probability_strategy(10)) {
        prop_assert_eq!(majorizes_values(&a, &b, 1e-9).holds, reference_majorizes(&a, &b, 1e-9));
        prop_assert!(majorizes_values(&a, &a, 1e-9).holds);
    }

    #[test]
    fn zero_padding_is_neutral(a in probability_strategy(6), b in probability_strategy(6), extra in 0usize..4) {
        let mut a2 = a.clone();
        a2.extend(std::iter::repeat_n(0.0, extra));
        prop_assert_eq!(majorizes_values(&a, &b, 1e-9).holds, majorizes_values(&a2, &b, 1e-9).holds);
    }

    #[test]
    fn witness_is_sound(lambda in probability_strategy(8), t in 0.0f64..1.0, seed in any::<u64>()) {
        let n = lambda.len();
        let mut rng = random::rng(seed);
        // a convex mix with a permuted copy of itself stays majorized
        let mut shifted = lambda.clone();
        shifted.rotate_left(random::index(&mut rng, 0, n - 1));
        let sigma: Vec<f64> = lambda.iter().zip(&shifted).map(|(x, y)| (1.0 - t) * x + t * y).collect();
        let l = SpectrumVector::new(lambda).unwrap();
        let s = SpectrumVector::new(sigma).unwrap();
        prop_assert!(majorizes(&l, &s, 1e-9).holds);
        let w = ds_witness(&l, &s, 1e-9).unwrap();
        prop_assert!(w.validate(1e-9).passed);
        prop_assert!(max_gap(&w.apply(&l.sorted_desc()), &s.sorted_desc()) <= 1e-9);
    }

    #[test]
    fn majorization_orders_entropy(a in probability_strategy(8), t in 0.0f64..1.0) {
        let n = a.len();
        let b: Vec<f64> = a.iter().map(|x| (1.0 - t) * x + t / n as f64).collect();
        prop_assert!(majorizes_values(&a, &b, 1e-9).holds);
        prop_assert!(entropy_bits(&b) >= entropy_bits(&a) - 1e-9);
        prop_assert!(entropy_bits(&b) <= (n as f64).log2() + 1e-9);
    }

    #[test]
    fn monotone_profile_is_concave(seed in any::<u64>(), n in 1usize..6, dim in 1usize..6) {
        let mut rng = random::rng(seed);
        let set = random::random_state_set(&mut rng, n, dim);
        let q = random::random_probability(&mut rng, n);
        let mu = monotone_profile(&Ensemble::new(set, q).unwrap()).unwrap();
        prop_assert!((mu[mu.len() - 1] - 1.0).abs() <= 1e-9);
        for k in 1..mu.len() {
            prop_assert!(mu[k] >= mu[k - 1] - 1e-12);
        }
        // increments are the sorted eigenvalues, so they never grow
        let steps: Vec<f64> = (0..mu.len()).map(|k| mu[k] - if k == 0 { 0.0 } else { mu[k - 1] }).collect();
        for k in 1..steps.len() {
            prop_assert!(steps[k] <= steps[k - 1] + 1e-12);
        }
    }

    #[test]
    fn certificate_is_relabeling_invariant(seed in any::<u64>(), dim in 2usize..5) {
        let mut rng = random::rng(seed);
        let n = random::index(&mut rng, 2, dim);
        let (prob, pi) = random::random_feasible_instance(&mut rng, n, dim);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.reverse();
        let p: Vec<f64> = perm.iter().map(|&i| prob.probabilities()[i]).collect();
        let permuted = TransformProblem::new(
            permute_set(prob.initial(), &perm),
            permute_set(prob.targets(), &perm),
            p,
        ).unwrap();
        let pi_perm = PiMatrix::new(HermitianMatrix::symmetrize(
            &ComplexMatrix::from_fn(n, n, |a, b| pi[(perm[a], perm[b])]),
        ));
        let a = verify_pi(&prob, &pi, 1e-9).unwrap();
        let b = verify_pi(&permuted, &pi_perm, 1e-9).unwrap();
        prop_assert_eq!(a.feasible, b.feasible);
        prop_assert!((a.dominance.witness - b.dominance.witness).abs() <= 1e-9);
    }

    #[test]
    fn certificate_is_unitarily_invariant(seed in any::<u64>(), dim in 2usize..5) {
        let mut rng = random::rng(seed);
        let n = random::index(&mut rng, 1, dim);
        let (prob, pi) = random::random_feasible_instance(&mut rng, n, dim);
        let u = random::random_unitary(&mut rng, dim);
        let rotate = |s: &PureStateSet| PureStateSet::new(
            s.states().iter().map(|v| u.mul_vec(v).unwrap()).collect()
        ).unwrap();
        let moved = TransformProblem::new(rotate(prob.initial()), prob.targets().clone(), prob.probabilities().to_vec()).unwrap();
        let a = verify_pi(&prob, &pi, 1e-9).unwrap();
        let b = verify_pi(&moved, &pi, 1e-9).unwrap();
        prop_assert_eq!(a.feasible, b.feasible);
        prop_assert!((a.positivity.witness - b.positivity.witness).abs() <= 1e-9);
        prop_assert!((a.dominance.witness - b.dominance.witness).abs() <= 1e-9);
    }

    #[test]
    fn kraus_operators_hit_their_targets(seed in any::<u64>(), dim in 1usize..6) {
        let mut rng = random::rng(seed);
        let n = random::index(&mut rng, 1, dim);
        let (prob, pi) = random::random_feasible_instance(&mut rng, n, dim);
        let real = kraus_from_pi(&prob, &pi, 1e-9).unwrap();
        prop_assert!(real.kraus_set().is_trace_preserving(1e-9).passed);
        for (k, a) in real.success.iter().enumerate() {
            for j in 0..n {
                let img = a.mul_vec(prob.initial().state(j)).unwrap();
                let c = real.coefficients[(k, j)];
                let err = img.iter().zip(prob.targets().state(j)).map(|(x, t)| (x - t * c).norm()).fold(0.0, f64::max);
                prop_assert!(err <= 1e-9);
            }
        }
    }
}
