//! Entrywise rounding of a relaxation solution and exact-recovery checks.
//! Recovery is decided at the matrix level: the rounded 0/1 matrix must be
//! the matrix of a valid hypothesis and equal the planted one.

use serde::{Deserialize, Serialize};

use crate::model::{
    assignment_to_cluster_matrix, bicluster_to_matrix, BiClusterAssignment, ClusterAssignment,
    RealMatrix,
};

/// Result of rounding: a valid hypothesis, or `Unroundable` when the
/// thresholded matrix is not the matrix of any hypothesis of the right shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounded<T> {
    Assignment(T),
    Unroundable,
}

impl<T> Rounded<T> {
    pub fn assignment(&self) -> Option<&T> {
        match self {
            Rounded::Assignment(a) => Some(a),
            Rounded::Unroundable => None,
        }
    }
}

fn threshold_matrix(y: &RealMatrix, threshold: f64) -> RealMatrix {
    y.map(|v| if v >= threshold { 1.0 } else { 0.0 })
}

/// Rounds a relaxed cluster matrix to a clustering with `r` clusters of
/// size `k`.
///
/// For `k >= 2` the hypothesis is read from the off-diagonal entries alone:
/// the adjacency diagonal is zero, so diagonal entries of the relaxation
/// carry no objective weight and are only pinned by the constraints. A node
/// with no thresholded off-diagonal entry is isolated. For `k = 1` the
/// clustered nodes are the thresholded diagonal entries.
pub fn round_cluster_matrix(y: &RealMatrix, r: usize, k: usize, threshold: f64) -> Rounded<ClusterAssignment> {
    if y.rows() != y.cols() {
        return Rounded::Unroundable;
    }
    let n = y.rows();
    let on = |i: usize, j: usize| y.get(i, j) >= threshold;
    let mut rep_label = vec![0usize; n];
    let mut labels = vec![0usize; n];
    let mut next = 0;
    for i in 0..n {
        let rep = if k >= 2 {
            match (0..n).find(|&j| j != i && on(i, j)) {
                Some(j) => j.min(i),
                None => continue,
            }
        } else if on(i, i) {
            i
        } else {
            continue;
        };
        if rep_label[rep] == 0 {
            next += 1;
            rep_label[rep] = next;
        }
        labels[i] = rep_label[rep];
    }
    let Ok(a) = ClusterAssignment::new(labels, r, k) else { return Rounded::Unroundable };
    let expected = assignment_to_cluster_matrix(&a, k == 1);
    let matches = (0..n).all(|i| (0..n).all(|j| (i == j && k >= 2) || on(i, j) == (expected.get(i, j) == 1.0)));
    if next == r && matches {
        Rounded::Assignment(a)
    } else {
        Rounded::Unroundable
    }
}

/// Rounds a relaxed bi-clustering matrix to `r` blocks of size `k_left x k_right`.
pub fn round_bicluster_matrix(
    y: &RealMatrix,
    r: usize,
    k_left: usize,
    k_right: usize,
    threshold: f64,
) -> Rounded<BiClusterAssignment> {
    let b = threshold_matrix(y, threshold);
    let (rows, cols) = b.shape();
    let mut rep_label = vec![0usize; cols];
    let mut left = vec![0usize; rows];
    let mut next = 0;
    for i in 0..rows {
        let Some(rep) = (0..cols).find(|&j| b.get(i, j) == 1.0) else { continue };
        if rep_label[rep] == 0 {
            next += 1;
            rep_label[rep] = next;
        }
        left[i] = rep_label[rep];
    }
    let right: Vec<usize> = (0..cols)
        .map(|j| (0..rows).find(|&i| b.get(i, j) == 1.0).map_or(0, |i| left[i]))
        .collect();
    match BiClusterAssignment::new(left, right) {
        Ok(a) if a.r() == r
            && a.k_left() == k_left
            && a.k_right() == k_right
            && bicluster_to_matrix(&a) == b =>
        {
            Rounded::Assignment(a)
        }
        _ => Rounded::Unroundable,
    }
}

/// Rounds `y_hat` and reports whether the rounded matrix equals the truth's
/// cluster matrix.
pub fn round_and_certify(
    y_hat: &RealMatrix,
    truth: &ClusterAssignment,
    threshold: f64,
) -> (Rounded<ClusterAssignment>, bool) {
    let rounded = round_cluster_matrix(y_hat, truth.r(), truth.k(), threshold);
    let exact = match &rounded {
        Rounded::Assignment(a) => assignment_to_cluster_matrix(a, true) == assignment_to_cluster_matrix(truth, true),
        Rounded::Unroundable => false,
    };
    (rounded, exact)
}

pub fn round_and_certify_bicluster(
    y_hat: &RealMatrix,
    truth: &BiClusterAssignment,
    threshold: f64,
) -> (Rounded<BiClusterAssignment>, bool) {
    let rounded = round_bicluster_matrix(y_hat, truth.r(), truth.k_left(), truth.k_right(), threshold);
    let exact = match &rounded {
        Rounded::Assignment(a) => bicluster_to_matrix(a) == bicluster_to_matrix(truth),
        Rounded::Unroundable => false,
    };
    (rounded, exact)
}
