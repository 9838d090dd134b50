//! The counting algorithm for planted clustering: degree-based isolation,
//! then common-neighbor links. Also runs the complement-graph variant.
//!
//!     cargo run --example counting

use planted::generate::{sample_assignment, sample_planted_graph};
use planted::simple::{common_neighbors, counting_algorithm, CountingThresholds, Recovery};
use planted::{assignments_equal_up_to_relabeling, PlantedParams, Seed};

fn main() -> planted::Result<()> {
    let params = PlantedParams::new(100, 2, 50, 0.95, 0.05)?;
    let t = CountingThresholds::new(&params, false);
    println!("degree threshold {:.2}, common-neighbor threshold {:.2}", t.degree_threshold, t.common_neighbor_threshold);

    let truth = sample_assignment(&params, Seed::new(1));
    let g = sample_planted_graph(&params, &truth, Seed::new(2))?;
    let clusters = truth.clusters();
    let (a, b, c) = (clusters[0][0], clusters[0][1], clusters[1][0]);
    println!("S within a cluster {}, across clusters {}", common_neighbors(&g, a, b)?, common_neighbors(&g, a, c)?);

    for non_neighbors in [false, true] {
        match counting_algorithm(&g, &params, non_neighbors)? {
            Recovery::Recovered(est) => {
                println!("non_neighbors={non_neighbors}: exact {}", assignments_equal_up_to_relabeling(&est, &truth)?)
            }
            Recovery::Inconsistent => println!("non_neighbors={non_neighbors}: inconsistent"),
        }
    }
    Ok(())
}
