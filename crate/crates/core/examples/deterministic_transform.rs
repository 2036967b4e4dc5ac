//! Deterministic transformations, where the certificate is forced entrywise.

use pureset::linalg::HermitianMatrix;
use pureset::states::PureStateSet;
use pureset::transform::{deterministic_pi, kraus_from_pi, Obstruction, TransformProblem};

fn pair(overlap: f64) -> Result<PureStateSet, pureset::Error> {
    PureStateSet::from_gram(&HermitianMatrix::from_real_rows(&[vec![1.0, overlap], vec![overlap, 1.0]])?)
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // Overlap 0.5 -> 0.9: the states move closer, which is allowed.
    let prob = TransformProblem::deterministic(pair(0.5)?, pair(0.9)?)?;
    let cert = deterministic_pi(&prob, 1e-9)?;
    println!("0.5 -> 0.9 feasible: {}", cert.feasible);
    println!("  pi_01 = {:.12}", cert.pi[(0, 1)].re);
    let real = kraus_from_pi(&prob, &cert.pi, 1e-9)?;
    let failure_weight = real.failure.frobenius_norm();
    println!("  success operators: {}, failure operator norm {failure_weight:.2e}", real.success.len());

    // The reverse direction would need pi_01 = 0.9 / 0.5 > 1.
    let back = TransformProblem::deterministic(pair(0.9)?, pair(0.5)?)?;
    let cert = deterministic_pi(&back, 1e-9)?;
    println!("0.9 -> 0.5 feasible: {} ({:?})", cert.feasible, cert.first_failure());
    println!("  positivity witness {:.3}", cert.positivity.witness);

    // Orthogonal targets from overlapping inputs leave no free choice at all.
    let ortho = TransformProblem::deterministic(pair(0.3)?, pair(0.0)?)?;
    let cert = deterministic_pi(&ortho, 1e-9)?;
    if let Some(Obstruction::ForcedEntry { row, col, initial_overlap }) = &cert.obstruction {
        println!("0.3 -> 0.0 forced entry at ({row}, {col}), initial overlap {initial_overlap}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
