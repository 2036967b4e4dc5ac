//! Unambiguous discrimination of three equally overlapping states.
//!
//! With real overlaps `s`, the Gram matrix has smallest eigenvalue `1 - s`, which is
//! the best success probability achievable uniformly across the three states.

use pureset::linalg::HermitianMatrix;
use pureset::states::PureStateSet;
use pureset::transform::{usd_feasible, usd_max_uniform, usd_max_uniform_bisection};

fn triple(s: f64) -> Result<PureStateSet, pureset::Error> {
    let gram = HermitianMatrix::from_real_rows(&[vec![1.0, s, s], vec![s, 1.0, s], vec![s, s, 1.0]])?;
    PureStateSet::from_gram(&gram)
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>14} {:>14} {:>14}", "s", "1 - s", "closed form", "bisection");
    for s in [0.0, 0.2, 0.5, 0.8, 0.95] {
        let set = triple(s)?;
        let exact = usd_max_uniform(&set)?;
        let bisected = usd_max_uniform_bisection(&set, 1e-10)?;
        println!("{s:>6.2} {:>14.10} {exact:>14.10} {bisected:>14.10}", 1.0 - s);
        assert!((exact - (1.0 - s)).abs() < 1e-9);
    }

    let set = triple(0.5)?;
    let at = usd_feasible(&set, &[0.5; 3], 1e-9)?;
    let above = usd_feasible(&set, &[0.6; 3], 1e-9)?;
    println!("p = 0.5 feasible: {}", at.feasible);
    println!(
        "p = 0.6 feasible: {} (first failure {:?}, witness {:.3})",
        above.feasible,
        above.first_failure(),
        above.dominance.witness
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
