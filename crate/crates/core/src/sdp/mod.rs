//! Convex relaxation of the maximum likelihood estimators: linear objective
//! over the trace-norm ball intersected with the unit box and a fixed-sum
//! hyperplane.
//!
//! For clustering the radius is `rK` and the total `rK^2`, matching the
//! cluster matrix with unit diagonal. For submatrix localization they are
//! `r sqrt(K_L K_R)` and `r K_L K_R`.

pub mod projection;
pub mod rounding;
pub mod solver;

pub use projection::{
    nuclear_norm, project_box_sum, project_l1_ball, project_trace_ball, project_trace_ball_svd,
    project_trace_ball_symmetric,
};
pub use rounding::{
    round_and_certify, round_and_certify_bicluster, round_bicluster_matrix, round_cluster_matrix,
    Rounded,
};
pub use solver::{feasibility_gap, solve_convex, ConvexSolution, SolverOptions, StepSize};

use crate::error::Result;
use crate::model::{Graph, PlantedParams, RealMatrix, SubmatrixParams};

/// Trace-norm radius and entry total of the clustering relaxation.
pub fn clustering_constraints(params: &PlantedParams) -> (f64, f64) {
    let (r, k) = (params.r() as f64, params.k() as f64);
    (r * k, r * k * k)
}

/// Trace-norm radius and entry total of the submatrix relaxation.
pub fn submatrix_constraints(params: &SubmatrixParams) -> (f64, f64) {
    let (r, kl, kr) = (params.r() as f64, params.k_left() as f64, params.k_right() as f64);
    (r * (kl * kr).sqrt(), r * kl * kr)
}

/// Solves the clustering relaxation on the adjacency matrix of `g`
/// (assumes `p > q`).
pub fn solve_clustering(g: &Graph, params: &PlantedParams, opts: &SolverOptions) -> Result<ConvexSolution> {
    let (radius, total) = clustering_constraints(params);
    solve_convex(&g.to_matrix(), radius, total, opts)
}

pub fn solve_submatrix(a: &RealMatrix, params: &SubmatrixParams, opts: &SolverOptions) -> Result<ConvexSolution> {
    let (radius, total) = submatrix_constraints(params);
    solve_convex(a, radius, total, opts)
}
