//! Spectral transfer matrix of a channel for a given input state.

use pureset::random;

fn show(name: &str, k: &pureset::channel::KrausSet, rho: &pureset::states::DensityOperator) -> pureset::Result<()> {
    let s = k.transfer_matrix_for(rho)?;
    println!("{name}");
    for row in &s.entries {
        println!("  {row:.4?}");
    }
    println!("  column sums {:.6?}", s.sums_over_outputs);
    println!("  row sums    {:.6?}", s.sums_over_inputs);
    println!("  doubly stochastic: {}", s.is_doubly_stochastic(1e-9));
    println!("  |S lambda_in - lambda_out| = {:.2e}", s.spectrum_residual());
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = random::rng(11);
    let rho = random::random_density(&mut rng, 3, 3);
    show("unitary mixture", &random::random_unitary_mixture(&mut rng, 3, 3), &rho)?;
    show("generic channel", &random::random_channel(&mut rng, 3, 3, 3), &rho)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
