//! Check `sigma ≺ lambda` and build the doubly stochastic matrix mapping one to the other.

use pureset::majorize::{ds_witness, majorizes, monotone_profile, SpectrumVector};
use pureset::random;
use pureset::states::Ensemble;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = SpectrumVector::new(vec![0.6, 0.3, 0.1, 0.0])?;
    let sigma = SpectrumVector::new(vec![0.4, 0.3, 0.2, 0.1])?;

    let report = majorizes(&lambda, &sigma, 1e-9);
    println!("sigma majorized by lambda: {} (worst gap {:.3})", report.holds, report.worst_gap);

    let d = ds_witness(&lambda, &sigma, 1e-9)?;
    for row in d.entries() {
        println!("  {row:.4?}");
    }
    println!("  D lambda = {:.4?}", d.apply(&lambda.sorted_desc()));
    println!("  doubly stochastic: {}", d.validate(1e-9).passed);

    let back = majorizes(&sigma, &lambda, 1e-9);
    println!("reverse holds: {}, first violated prefix {:?}", back.holds, back.violated_prefix);
    if let Err(e) = ds_witness(&sigma, &lambda, 1e-9) {
        println!("  no witness: {e}");
    }

    let mut rng = random::rng(5);
    let e = Ensemble::new(random::random_state_set(&mut rng, 3, 3), vec![0.5, 0.3, 0.2])?;
    println!("Ky Fan profile of a random ensemble: {:.4?}", monotone_profile(&e)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
