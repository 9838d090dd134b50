//! Exhaustive maximum likelihood recovery on small instances, with the size
//! of the hypothesis class it searches.
//!
//!     cargo run --example exact_mle

use planted::exact::{cluster_space_size, mle_clustering, mle_submatrix};
use planted::generate::{sample_assignment, sample_bicluster, sample_planted_graph, sample_submatrix_instance};
use planted::{assignments_equal_up_to_relabeling, bicluster_to_matrix, Noise, PlantedParams, Seed, SubmatrixParams};

fn main() -> planted::Result<()> {
    let params = PlantedParams::new(12, 2, 5, 0.9, 0.1)?;
    println!("|Y| for n=12 r=2 K=5: {}", cluster_space_size(12, 2, 5)?);
    let mut hits = 0;
    for t in 0..10 {
        let seed = Seed::new(7).derive(t);
        let truth = sample_assignment(&params, seed.derive(0));
        let g = sample_planted_graph(&params, &truth, seed.derive(1))?;
        let mle = mle_clustering(&g, params.r(), params.k())?;
        let ok = mle.unique && assignments_equal_up_to_relabeling(&mle.best, &truth)?;
        hits += ok as usize;
        println!("trial {t}: objective {:>3} unique {:<5} exact {ok}", mle.objective, mle.unique);
    }
    println!("clustering: {hits}/10 recovered exactly");

    let sub = SubmatrixParams::new(10, 10, 3, 3, 2, 2.5, Noise::Gaussian)?;
    let truth = sample_bicluster(&sub, Seed::new(8));
    let a = sample_submatrix_instance(&sub, &truth, Seed::new(9))?;
    let mle = mle_submatrix(&a, &sub)?;
    println!(
        "submatrix: searched {} hypotheses, objective {:.3}, exact {}",
        mle.enumerated,
        mle.objective,
        bicluster_to_matrix(&mle.best) == bicluster_to_matrix(&truth)
    );
    Ok(())
}
