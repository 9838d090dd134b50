//! Seeded samplers for both models and the named planted-clustering presets.
//!
//! Every sampler is a pure function of its arguments: the random stream is a
//! [`ChaCha8Rng`](rand_chacha::ChaCha8Rng) built from the [`Seed`], and edge
//! or entry draws consume it in row-major order.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    BiClusterAssignment, ClusterAssignment, Graph, Noise, PlantedParams, RealMatrix,
    SubmatrixParams,
};
use crate::seed::Seed;

/// Uniformly random planted clustering for `params`.
///
/// A uniform permutation of the nodes is cut into `r` runs of `K` followed by
/// the isolated remainder; every assignment has the same number of preimages,
/// so the result is uniform over the hypothesis class.
pub fn sample_assignment(params: &PlantedParams, seed: Seed) -> ClusterAssignment {
    let labels = random_labels(params.n(), params.r(), params.k(), &mut seed.rng());
    ClusterAssignment::new(labels, params.r(), params.k()).expect("labels are valid by construction")
}

fn random_labels(n: usize, r: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut labels = vec![0; n];
    for (pos, &node) in order.iter().take(r * k).enumerate() {
        labels[node] = pos / k + 1;
    }
    labels
}

/// Graph drawn from the planted clustering model given the planted truth.
/// Pair `{i, j}` (visited as `i < j`, row-major) is an edge with probability
/// `p` inside a cluster and `q` otherwise.
pub fn sample_planted_graph(
    params: &PlantedParams,
    truth: &ClusterAssignment,
    seed: Seed,
) -> Result<Graph> {
    check_truth(params, truth)?;
    let n = params.n();
    let mut rng = seed.rng();
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let prob = if truth.same_cluster(i, j) { params.p() } else { params.q() };
            if rng.random::<f64>() < prob {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok(g)
}

fn check_truth(params: &PlantedParams, truth: &ClusterAssignment) -> Result<()> {
    if truth.n() != params.n() || truth.r() != params.r() || truth.k() != params.k() {
        return Err(Error::DimensionMismatch(format!(
            "truth has (n, r, K) = ({}, {}, {}), params have ({}, {}, {})",
            truth.n(),
            truth.r(),
            truth.k(),
            params.n(),
            params.r(),
            params.k()
        )));
    }
    Ok(())
}

/// Uniformly random planted bi-clustering for `params`. Row and column
/// clusters are drawn independently, and row cluster `m` pairs with column
/// cluster `m`.
pub fn sample_bicluster(params: &SubmatrixParams, seed: Seed) -> BiClusterAssignment {
    let mut rng = seed.rng();
    let left = random_labels(params.n_left(), params.r(), params.k_left(), &mut rng);
    let right = random_labels(params.n_right(), params.r(), params.k_right(), &mut rng);
    BiClusterAssignment::new(left, right).expect("labels are valid by construction")
}

/// Observation `A = mu * Y* + noise` of the submatrix model, with i.i.d.
/// noise drawn row-major from the law in `params`.
pub fn sample_submatrix_instance(
    params: &SubmatrixParams,
    truth: &BiClusterAssignment,
    seed: Seed,
) -> Result<RealMatrix> {
    if !truth.fits(params) {
        return Err(Error::DimensionMismatch(
            "bicluster truth does not match submatrix params".into(),
        ));
    }
    let mut rng = seed.rng();
    let (mu, noise) = (params.mu(), params.noise());
    let (left, right) = (truth.left_labels(), truth.right_labels());
    Ok(RealMatrix::from_fn(params.n_left(), params.n_right(), |i, j| {
        let mean = if left[i] != 0 && left[i] == right[j] { mu } else { 0.0 };
        let delta = match noise {
            Noise::Gaussian => rng.sample::<f64, _>(StandardNormal),
            Noise::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            Noise::None => 0.0,
        };
        mean + delta
    }))
}

/// Named special cases of the planted clustering model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelPreset {
    /// `r` planted cliques: `p = 1`.
    RDisjointClique,
    /// A single dense community: `r = 1`.
    PlantedDensestSubgraph,
    /// Every node clustered: `rK = n`.
    PlantedPartition,
    /// Independent color classes: `p = 0` and `rK = n`.
    PlantedColoring,
    /// No constraint beyond the model's own.
    Custom,
}

/// Builds parameters for a preset. `p` may be omitted when the preset fixes
/// it; a supplied `p` that contradicts the preset is an error, as is any
/// violated structural constraint.
pub fn preset_params(
    kind: ModelPreset,
    n: usize,
    r: usize,
    k: usize,
    p: Option<f64>,
    q: f64,
) -> Result<PlantedParams> {
    let forced_p = match kind {
        ModelPreset::RDisjointClique => Some(1.0),
        ModelPreset::PlantedColoring => Some(0.0),
        _ => None,
    };
    let p = match (forced_p, p) {
        (Some(f), Some(given)) if f != given => {
            return Err(Error::InvalidParams(format!("{kind:?} requires p = {f}, got {given}")))
        }
        (Some(f), _) => f,
        (None, Some(given)) => given,
        (None, None) => {
            return Err(Error::InvalidParams(format!("{kind:?} needs an explicit p")))
        }
    };
    match kind {
        ModelPreset::PlantedDensestSubgraph if r != 1 => {
            return Err(Error::InvalidParams(format!("{kind:?} requires r = 1, got {r}")))
        }
        ModelPreset::PlantedPartition | ModelPreset::PlantedColoring if r * k != n => {
            return Err(Error::InvalidParams(format!(
                "{kind:?} requires r*K = n, got {}*{} != {n}",
                r, k
            )))
        }
        _ => {}
    }
    PlantedParams::new(n, r, k, p, q)
}
