//! Row/column-sum thresholding and element-wise thresholding for submatrix
//! localization across a range of signal strengths.
//!
//!     cargo run --example submatrix_thresholding

use planted::harness::{run_trials, Algorithm, ModelParams, TrialConfig};
use planted::{Noise, SubmatrixParams};

fn main() -> planted::Result<()> {
    let n = 100;
    println!("{:>6} {:>14} {:>10}", "mu", "thresholding", "element");
    for mu in [0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 9.0] {
        let params = ModelParams::Submatrix(SubmatrixParams::square(n, 20, 2, mu, Noise::Gaussian)?);
        let rate = |alg| run_trials(&TrialConfig::new(params, alg, 20, 5)).map(|r| r.success_rate);
        println!("{mu:>6} {:>14.2} {:>10.2}", rate(Algorithm::Thresholding)?, rate(Algorithm::Element)?);
    }
    println!("element-wise thresholding needs mu^2 of order log n = {:.1}", (n as f64).ln());
    Ok(())
}
