//! Samples a planted clustering instance and a submatrix instance, prints a
//! summary of each and writes them as an edge list and a CSV matrix.
//!
//!     cargo run --example generate_instance -- [out_dir]

use std::fs::File;

use planted::generate::{sample_assignment, sample_bicluster, sample_planted_graph, sample_submatrix_instance};
use planted::io::{write_edge_list, write_matrix_csv};
use planted::{Noise, PlantedParams, Seed, SubmatrixParams};

fn main() -> planted::Result<()> {
    let out = std::env::args().nth(1).map(std::path::PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let seed = Seed::new(42);

    let params = PlantedParams::new(60, 3, 15, 0.7, 0.15)?;
    let truth = sample_assignment(&params, seed.derive(0));
    let graph = sample_planted_graph(&params, &truth, seed.derive(1))?;
    let inside: usize = graph.edges().iter().filter(|&&(i, j)| truth.same_cluster(i, j)).count();
    println!(
        "clustering: n={} r={} K={} p={} q={}: {} edges, {} inside clusters",
        params.n(),
        params.r(),
        params.k(),
        params.p(),
        params.q(),
        graph.edge_count(),
        inside
    );
    for (c, members) in truth.clusters().iter().enumerate() {
        println!("  cluster {}: {:?}", c + 1, members);
    }
    let edges = out.join("planted.edges");
    write_edge_list(&graph, File::create(&edges)?)?;

    let sub = SubmatrixParams::new(40, 30, 6, 5, 2, 2.0, Noise::Gaussian)?;
    let bic = sample_bicluster(&sub, seed.derive(2));
    let a = sample_submatrix_instance(&sub, &bic, seed.derive(3))?;
    println!("submatrix: {}x{} with r={} blocks of {}x{} at mu={}", a.rows(), a.cols(), sub.r(), sub.k_left(), sub.k_right(), sub.mu());
    println!("  row labels:    {:?}", bic.left_labels());
    println!("  column labels: {:?}", bic.right_labels());
    let csv = out.join("submatrix.csv");
    write_matrix_csv(&a, File::create(&csv)?)?;
    println!("wrote {} and {}", edges.display(), csv.display());
    Ok(())
}
