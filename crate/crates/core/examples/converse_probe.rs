//! Does majorization for every prior imply a deterministic transformation?
//! This only collects data.

use pureset::majorize::converse_probe;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let probe = converse_probe(31, 40, 3, 3, 5)?;
    let majorized = probe.trials.iter().filter(|t| t.majorization_holds).count();
    let closed = probe.trials.iter().filter(|t| t.deterministic_feasible).count();
    let searched = probe.trials.iter().filter(|t| t.search_found).count();
    println!("trials: {}", probe.trials.len());
    println!("majorized for all tested priors: {majorized}");
    println!("deterministic certificate (closed form): {closed}");
    println!("found by search: {searched}");
    println!("open cases: {:?}", probe.open_cases);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
