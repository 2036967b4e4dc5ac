//! Build the success and failure operators from a certificate and check that the
//! resulting instrument actually performs the transformation.

use pureset::linalg::HermitianMatrix;
use pureset::states::{DensityOperator, PureStateSet};
use pureset::transform::{kraus_from_pi, PiMatrix, TransformProblem, SUCCESS_LABEL};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let initial = PureStateSet::from_gram(&HermitianMatrix::from_real_rows(&[vec![1.0, 0.2], vec![0.2, 1.0]])?)?;
    let targets = PureStateSet::from_gram(&HermitianMatrix::from_real_rows(&[vec![1.0, 0.6], vec![0.6, 1.0]])?)?;
    let p = vec![0.7, 0.5];
    let prob = TransformProblem::new(initial, targets, p.clone())?;

    let pi = PiMatrix::from_real_rows(&[vec![0.7, 0.3], vec![0.3, 0.5]])?;
    let real = kraus_from_pi(&prob, &pi, 1e-9)?;
    let kraus = real.kraus_set();
    println!("trace preserving: {}", kraus.is_trace_preserving(1e-9).passed);
    println!("largest eigenvalue of E_S: {:.6}", real.success_element().eigenvalues()?[0]);

    for (j, want) in p.iter().enumerate() {
        let rho = DensityOperator::pure(prob.initial().state(j))?;
        let prob_success = kraus.outcome_probability(SUCCESS_LABEL, &rho)?;
        let post = kraus.post_measurement_state(SUCCESS_LABEL, &rho)?;
        let fidelity = post.fidelity_with(prob.targets().state(j))?;
        println!("state {j}: success {prob_success:.12} (want {want}), fidelity {fidelity:.12}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
