//! Looking for a certificate when nothing closed-form applies.
//!
//! Starting from a random feasible instance, scale every success probability up by
//! the same factor and record the largest factor at which the alternating projection
//! search and the rank-one phase search still produce a certificate.

use pureset::random;
use pureset::transform::{pi_search, rank_one_phase_search, SearchOptions, TransformProblem};

fn scaled(prob: &TransformProblem, t: f64) -> pureset::Result<Option<TransformProblem>> {
    let p: Vec<f64> = prob.probabilities().iter().map(|x| x * t).collect();
    if p.iter().any(|&x| x > 1.0) {
        return Ok(None);
    }
    TransformProblem::new(prob.initial().clone(), prob.targets().clone(), p).map(Some)
}

fn largest_factor(prob: &TransformProblem, works: impl Fn(&TransformProblem) -> pureset::Result<bool>) -> pureset::Result<f64> {
    let (mut lo, mut hi) = (1.0, 1.0);
    while let Some(p) = scaled(prob, hi * 2.0)? {
        if !works(&p)? {
            hi *= 2.0;
            break;
        }
        lo = hi * 2.0;
        hi = lo;
    }
    if lo == hi {
        return Ok(lo);
    }
    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        match scaled(prob, mid)? {
            Some(p) if works(&p)? => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(lo)
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // Convergence slows near the boundary, so the search column grows with the cap.
    let options = SearchOptions { max_iterations: 3_000, ..SearchOptions::default() };
    println!("{:>4} {:>14} {:>14}", "seed", "search", "rank-one");
    for seed in 0..5u64 {
        let mut rng = random::rng(seed);
        let (prob, _) = random::random_feasible_instance(&mut rng, 3, 3);
        let by_search = largest_factor(&prob, |p| Ok(pi_search(p, &options)?.certificate.is_some()))?;
        let by_phase = largest_factor(&prob, |p| Ok(rank_one_phase_search(p, 100, seed, 1e-9)?.certificate.feasible))?;
        println!("{seed:>4} {by_search:>14.4} {by_phase:>14.4}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
