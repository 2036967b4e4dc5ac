//! Probabilistic cloning: possible for independent states, impossible once the set is
//! linearly dependent.

use pureset::linalg::HermitianMatrix;
use pureset::states::PureStateSet;
use pureset::transform::{pi_search, SearchOptions, Sufficiency, TransformProblem};
use pureset::C64;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let independent = PureStateSet::from_gram(&HermitianMatrix::from_real_rows(&[vec![1.0, 0.4], vec![0.4, 1.0]])?)?;
    let mut prob = TransformProblem::cloning(&independent)?;
    // The best uniform rate for two states with overlap s is 1 / (1 + s).
    let rate = 1.0 / 1.4;
    prob = TransformProblem::new(prob.initial().clone(), prob.targets().clone(), vec![rate; 2])?;
    let found = pi_search(&prob, &SearchOptions::default())?;
    println!("independent pair, p = {rate:.6}: certificate found = {}", found.certificate.is_some());

    // |0>, |1> and (|0> + |1>)/sqrt 2 live in two dimensions.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let dependent = PureStateSet::new(vec![
        vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        vec![C64::new(h, 0.0), C64::new(h, 0.0)],
    ])?;
    let prob = TransformProblem::cloning(&dependent)?;
    let prob = TransformProblem::new(prob.initial().clone(), prob.targets().clone(), vec![0.05; 3])?;
    let outcome = pi_search(&prob, &SearchOptions { max_iterations: 2_000, ..SearchOptions::default() })?;
    println!(
        "dependent triple, p = 0.05: certificate found = {}, residual {:.3e}",
        outcome.certificate.is_some(),
        outcome.residual
    );
    if let Some(c) = outcome.certificate {
        assert_eq!(c.sufficiency, Sufficiency::NecessaryOnly);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
