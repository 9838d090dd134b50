//! Exhaustive maximum-likelihood recovery at desk scale, used as an oracle.
//!
//! Both estimators maximize `sum_ij A_ij Y_ij` over the full hypothesis class
//! and report whether the maximizer is unique. Clustering objectives use the
//! zero-diagonal convention and count ordered pairs, so each in-cluster edge
//! contributes 2. The argmax does not depend on the diagonal convention since
//! the trace is the same for every hypothesis.

pub mod enumerate;
pub mod matching;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use enumerate::{
    cluster_space_size, enumerate_cluster_assignments, enumerate_cluster_assignments_with_budget,
    ClusterEnumerator, DEFAULT_BUDGET,
};
use enumerate::within_budget;
pub use matching::{max_weight_assignment, max_weight_assignment_unique, Assignment};

use crate::error::{Error, Result};
use crate::model::{BiClusterAssignment, ClusterAssignment, Graph, RealMatrix, SubmatrixParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleResult<T> {
    pub best: T,
    pub objective: f64,
    /// False when another hypothesis attains the optimum (within `tie_tolerance`).
    pub unique: bool,
    pub enumerated: u64,
}

/// Two objective values closer than this are treated as tied.
pub fn tie_tolerance(best: f64) -> f64 {
    1e-9 * (1.0 + best.abs())
}

/// Ordered-pair in-cluster edge count `sum_ij A_ij Y_ij` with `Y_ii = 0`.
pub fn cluster_objective(g: &Graph, a: &ClusterAssignment) -> u64 {
    let mut inside = 0u64;
    for members in a.clusters() {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                inside += g.has_edge(i, j) as u64;
            }
        }
    }
    2 * inside
}

pub fn mle_clustering(g: &Graph, r: usize, k: usize) -> Result<MleResult<ClusterAssignment>> {
    mle_clustering_with_budget(g, r, k, DEFAULT_BUDGET)
}

/// Exhaustive MLE for planted clustering with `p > q`; callers holding a
/// `p < q` instance flip the graph first.
pub fn mle_clustering_with_budget(
    g: &Graph,
    r: usize,
    k: usize,
    budget: u64,
) -> Result<MleResult<ClusterAssignment>> {
    let mut hypotheses = enumerate_cluster_assignments_with_budget(g.n(), r, k, budget)?;
    let first = hypotheses.next().expect("hypothesis class is nonempty");
    let mut best_value = cluster_objective(g, &first);
    let mut best = first;
    let mut unique = true;
    let mut enumerated = 1u64;
    for a in hypotheses {
        enumerated += 1;
        let value = cluster_objective(g, &a);
        if value > best_value {
            best_value = value;
            best = a;
            unique = true;
        } else if value == best_value {
            unique = false;
        }
    }
    Ok(MleResult { best, objective: best_value as f64, unique, enumerated })
}

pub fn mle_submatrix(a: &RealMatrix, params: &SubmatrixParams) -> Result<MleResult<BiClusterAssignment>> {
    mle_submatrix_with_budget(a, params, DEFAULT_BUDGET)
}

/// Exhaustive MLE for submatrix localization. Row partitions and column
/// partitions are enumerated independently; for each pair, the best pairing
/// of row clusters with column clusters is an assignment problem on the
/// `r x r` block sums. The budget applies to the full joint count
/// `|rows| * |cols| * r!`.
pub fn mle_submatrix_with_budget(
    a: &RealMatrix,
    params: &SubmatrixParams,
    budget: u64,
) -> Result<MleResult<BiClusterAssignment>> {
    if a.shape() != (params.n_left(), params.n_right()) {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, params say {}x{}",
            a.rows(),
            a.cols(),
            params.n_left(),
            params.n_right()
        )));
    }
    let r = params.r();
    let joint = cluster_space_size(params.n_left(), r, params.k_left())?
        * cluster_space_size(params.n_right(), r, params.k_right())?
        * (1..=r).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i));
    let enumerated = within_budget(&joint, budget)?;
    let lefts = enumerate_cluster_assignments_with_budget(params.n_left(), r, params.k_left(), u64::MAX)?;
    let rights = enumerate_cluster_assignments_with_budget(params.n_right(), r, params.k_right(), u64::MAX)?;

    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;
    let mut unique = true;
    for left in lefts {
        let row_sums: Vec<Vec<f64>> = left
            .clusters()
            .iter()
            .map(|rows| (0..a.cols()).map(|j| rows.iter().map(|&i| a.get(i, j)).sum()).collect())
            .collect();
        for right in rights.clone() {
            let cols = right.clusters();
            let blocks: Vec<Vec<f64>> = row_sums
                .iter()
                .map(|sums| cols.iter().map(|c| c.iter().map(|&j| sums[j]).sum()).collect())
                .collect();
            let current = best.as_ref().map_or(f64::NEG_INFINITY, |b| b.0);
            let (m, pairing_unique) = max_weight_assignment_unique(&blocks, tie_tolerance(current));
            if best.is_none() || m.value > current + tie_tolerance(current) {
                let mut col_to_row = vec![0; r];
                for (row_cluster, &col_cluster) in m.rows_to_cols.iter().enumerate() {
                    col_to_row[col_cluster] = row_cluster;
                }
                let right_labels = right
                    .labels()
                    .iter()
                    .map(|&l| if l == 0 { 0 } else { col_to_row[l - 1] + 1 })
                    .collect();
                best = Some((m.value, left.labels().to_vec(), right_labels));
                unique = pairing_unique;
            } else if (m.value - current).abs() <= tie_tolerance(current) {
                unique = false;
            }
        }
    }
    let (objective, left_labels, right_labels) = best.expect("hypothesis class is nonempty");
    Ok(MleResult {
        best: BiClusterAssignment::new(left_labels, right_labels)?,
        objective,
        unique,
        enumerated,
    })
}
