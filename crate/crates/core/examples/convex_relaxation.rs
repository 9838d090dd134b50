//! Solves the convex relaxation for a planted clustering instance, rounds the
//! solution and checks it against the planted truth.
//!
//!     cargo run --release --example convex_relaxation

use planted::generate::{sample_assignment, sample_planted_graph};
use planted::sdp::{round_and_certify, solve_clustering, SolverOptions};
use planted::{PlantedParams, Seed};

fn main() -> planted::Result<()> {
    let params = PlantedParams::new(90, 3, 30, 0.7, 0.2)?;
    let seed = Seed::new(3);
    let truth = sample_assignment(&params, seed.derive(0));
    let g = sample_planted_graph(&params, &truth, seed.derive(1))?;

    let opts = SolverOptions::default();
    let sol = solve_clustering(&g, &params, &opts)?;
    println!(
        "iterations {} converged {} objective {:.2} feasibility gap {:.1e}",
        sol.iterations, sol.converged, sol.objective, sol.feasibility_gap
    );
    for (i, v) in sol.history.iter().enumerate().step_by((sol.history.len() / 8).max(1)) {
        println!("  step {i:>4}: {v:.3}");
    }
    let (rounded, exact) = round_and_certify(&sol.y_hat, &truth, opts.round_threshold);
    match rounded.assignment() {
        Some(a) => println!("rounded clusters {:?}", a.clusters().iter().map(Vec::len).collect::<Vec<_>>()),
        None => println!("solution could not be rounded"),
    }
    println!("exact recovery: {exact}");
    Ok(())
}
