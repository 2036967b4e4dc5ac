//! Unital channels can only mix a spectrum; non-unital ones can also sharpen it.

use pureset::channel::{depolarizing_qubit, measure_and_reprepare};
use pureset::majorize::{majorizes_values, MAJORIZATION_TOL};
use pureset::random;
use pureset::states::{basis_vector, DensityOperator};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = random::rng(7);
    let rho = random::random_density(&mut rng, 3, 3);
    let before = rho.spectrum()?;

    let mixer = random::random_unitary_mixture(&mut rng, 3, 4);
    let after = mixer.apply_channel(&rho, 1e-9)?.spectrum()?;
    let report = majorizes_values(&before, &after, MAJORIZATION_TOL);
    println!("random unitary mixture, unital = {}", mixer.is_unital(1e-9).passed);
    println!("  before {before:.4?}");
    println!("  after  {after:.4?}");
    println!("  output majorized by input: {}", report.holds);

    let dep = depolarizing_qubit(0.3)?;
    let plus = DensityOperator::maximally_mixed(2);
    let out = dep.apply_channel(&plus, 1e-9)?;
    println!("depolarizing keeps 1/2 fixed: {:.3?}", out.spectrum()?);

    // Resetting every input to |0> is trace preserving but not unital.
    let reset = measure_and_reprepare(&basis_vector(2, 0))?;
    let unital = reset.is_unital(1e-9);
    let out = reset.apply_channel(&plus, 1e-9)?.spectrum()?;
    println!("reset channel unital = {}, defect {:.3}", unital.passed, unital.defect.unwrap_or(f64::NAN));
    println!(
        "  maps 1/2 to {out:.3?}; majorized by input: {}",
        majorizes_values(&[0.5, 0.5], &out, MAJORIZATION_TOL).holds
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
