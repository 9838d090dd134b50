//! Runs a small phase sweep and writes the CSV consumed by the plotting
//! scripts.
//!
//!     cargo run --release --example phase_sweep -- [out.csv] [config.json]

use planted::harness::{run_sweep, Algorithm, ClusterMap, ModelKind, SweepConfig};
use planted::sdp::SolverOptions;
use planted::{Noise, Seed};

fn main() -> planted::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = args.next().unwrap_or_else(|| "sweep.csv".into());
    let cfg = match args.next() {
        Some(path) => SweepConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => SweepConfig {
            model: ModelKind::Submatrix,
            n: 1000,
            alpha_grid: vec![0.1, 0.3, 0.5, 0.8],
            beta_grid: vec![0.2, 0.45, 0.7, 0.95],
            algorithms: vec![Algorithm::Thresholding, Algorithm::Element],
            trials: 20,
            master_seed: Seed::new(2024),
            cluster_map: ClusterMap::Single,
            noise: Noise::Gaussian,
            solver_opts: SolverOptions::default(),
            flip_if_needed: true,
            use_non_neighbors: false,
            record_timing: false,
        },
    };
    let rows = run_sweep(&cfg, &out)?;
    println!("{:>5} {:>5} {:>13} {:>12} {:>6}", "alpha", "beta", "algorithm", "regime", "rate");
    for r in &rows {
        let rate = r.success_rate.map_or("-".into(), |v| format!("{v:.2}"));
        println!("{:>5} {:>5} {:>13} {:>12} {:>6}", r.alpha, r.beta, r.algorithm, r.predicted_regime, rate);
    }
    println!("wrote {} rows to {out}", rows.len());
    Ok(())
}
