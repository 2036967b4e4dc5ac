//! If a deterministic transformation exists, the initial ensemble is at least as
//! mixed as the final one for every choice of priors.

use pureset::majorize::theorem3_check;
use pureset::random;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = random::rng(2024);
    let (prob, _) = random::random_deterministic_instance(&mut rng, 4, 2);
    for trial in 0..3 {
        let q = if trial == 0 { vec![0.25; 4] } else { random::random_probability(&mut rng, 4) };
        let r = theorem3_check(&prob, &q, 1e-9)?;
        println!("priors {q:.3?}");
        println!("  initial spectrum {:.4?}  entropy {:.4} bits", r.initial_spectrum, r.initial_entropy);
        println!("  final spectrum   {:.4?}  entropy {:.4} bits", r.final_spectrum, r.final_entropy);
        println!(
            "  hypothesis {}, majorized {}, Gram identity defect {:.1e}",
            r.hypothesis_met, r.majorization.holds, r.gram_identity.witness
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
