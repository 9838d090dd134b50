//! Planted clustering and submatrix localization.
//!
//! The crate covers the full pipeline for both models:
//!
//! * [`model`]: parameters, planted assignments, graphs and dense matrices.
//! * [`generate`]: seeded instance samplers and the named model presets.
//! * [`regimes`]: Bernoulli KL divergence, recovery-condition calculators and
//!   the asymptotic impossible/hard/easy/simple classifier.
//! * [`exact`]: exhaustive maximum likelihood at desk scale.
//! * [`sdp`]: the trace-norm convex relaxation and its projections.
//! * [`simple`]: counting and thresholding algorithms.
//! * [`harness`]: seeded Monte Carlo trials, phase sweeps and the CLI.

pub mod error;
pub mod exact;
pub mod generate;
pub mod harness;
pub mod io;
pub mod model;
pub mod regimes;
pub mod sdp;
pub mod seed;
pub mod simple;

pub use error::{Error, Result};
pub use model::{
    assignment_to_cluster_matrix, assignments_equal_up_to_relabeling, bicluster_to_matrix,
    flip_graph, BiClusterAssignment, ClusterAssignment, Graph, Noise, PlantedParams, RealMatrix,
    SubmatrixParams,
};
pub use seed::Seed;
