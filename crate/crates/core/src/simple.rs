//! Simple recovery algorithms: degree and common-neighbor counting for
//! planted clustering, row/column-sum thresholding for submatrix
//! localization, and element-wise thresholding.
//!
//! Inequalities follow each algorithm as stated: counting uses strict `<`
//! for isolation and strict `>` for linking, submatrix thresholding uses
//! `<=` for isolation and `>=` for linking and pairing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BiClusterAssignment, ClusterAssignment, Graph, PlantedParams, RealMatrix, SubmatrixParams};

/// Outcome of a simple algorithm. `Inconsistent` means the linked relation
/// did not split into `r` groups of the exact size, or the block pairing was
/// not a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recovery<T> {
    Recovered(T),
    Inconsistent,
}

impl<T> Recovery<T> {
    pub fn recovered(&self) -> Option<&T> {
        match self {
            Recovery::Recovered(t) => Some(t),
            Recovery::Inconsistent => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingThresholds {
    /// Node `i` is isolated when `d_i < degree_threshold`.
    pub degree_threshold: f64,
    /// Nodes `i, j` are linked when `S_ij > common_neighbor_threshold`.
    pub common_neighbor_threshold: f64,
}

impl CountingThresholds {
    /// `(p-q)K/2 + qn` and `(p-q)^2 K/3 + 2Kpq + q^2 (n-2K)`. With
    /// `use_non_neighbors` the second is evaluated at `(1-p, 1-q)`.
    pub fn new(params: &PlantedParams, use_non_neighbors: bool) -> Self {
        let (n, k, p, q) = (params.n() as f64, params.k() as f64, params.p(), params.q());
        let (ps, qs) = if use_non_neighbors { (1.0 - p, 1.0 - q) } else { (p, q) };
        Self {
            degree_threshold: (p - q) * k / 2.0 + q * n,
            common_neighbor_threshold: (ps - qs).powi(2) * k / 3.0 + 2.0 * k * ps * qs + qs * qs * (n - 2.0 * k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdingThresholds {
    pub row_threshold: f64,
    pub col_threshold: f64,
    /// Row-pair correlation threshold `mu^2 K_R / 2`.
    pub corr_threshold: f64,
    /// Column-pair correlation threshold `mu^2 K_L / 2`.
    pub col_corr_threshold: f64,
    pub block_threshold: f64,
    pub element_threshold: f64,
}

impl ThresholdingThresholds {
    pub fn new(params: &SubmatrixParams) -> Self {
        let (mu, kl, kr) = (params.mu(), params.k_left() as f64, params.k_right() as f64);
        Self {
            row_threshold: mu * kr / 2.0,
            col_threshold: mu * kl / 2.0,
            corr_threshold: mu * mu * kr / 2.0,
            col_corr_threshold: mu * mu * kl / 2.0,
            block_threshold: mu * kl * kr / 2.0,
            element_threshold: mu / 2.0,
        }
    }
}

/// `S_ij`: number of nodes other than `i, j` adjacent to both.
pub fn common_neighbors(g: &Graph, i: usize, j: usize) -> Result<usize> {
    if i == j || i >= g.n() || j >= g.n() {
        return Err(Error::InvalidParams(format!("need distinct nodes below {}, got ({i}, {j})", g.n())));
    }
    Ok(common_count(g, i, j))
}

#[inline]
fn common_count(g: &Graph, i: usize, j: usize) -> usize {
    // Zero diagonal keeps i and j themselves out of the intersection.
    g.row(i).iter().zip(g.row(j)).map(|(a, b)| (a & b).count_ones() as usize).sum()
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Groups `members` into the components of the relation `linked`, requiring
/// exactly `r` components of size `k`. Returns labels `1..=r` per member,
/// numbered by smallest member.
fn components(members: &[usize], r: usize, k: usize, mut linked: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    if members.len() != r * k {
        return None;
    }
    let mut uf = UnionFind::new(members.len());
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if linked(members[a], members[b]) {
                uf.union(a, b);
            }
        }
    }
    let mut root_label = vec![0usize; members.len()];
    let mut sizes = Vec::new();
    let mut labels = Vec::with_capacity(members.len());
    for a in 0..members.len() {
        let root = uf.find(a);
        if root_label[root] == 0 {
            sizes.push(0);
            root_label[root] = sizes.len();
        }
        sizes[root_label[root] - 1] += 1;
        labels.push(root_label[root]);
    }
    (sizes.len() == r && sizes.iter().all(|&s| s == k)).then_some(labels)
}

/// Counting algorithm for planted clustering with `p > q`. Step 1 declares
/// node `i` isolated when its degree is below the degree threshold. For
/// `r > 1`, step 2 links non-isolated pairs whose common-neighbor count
/// (common non-neighbor count with `use_non_neighbors`) exceeds its
/// threshold and returns the connected components as clusters.
pub fn counting_algorithm(g: &Graph, params: &PlantedParams, use_non_neighbors: bool) -> Result<Recovery<ClusterAssignment>> {
    if params.p() <= params.q() {
        return Err(Error::Precondition(format!(
            "counting assumes p > q (got p = {}, q = {}); flip the graph first",
            params.p(),
            params.q()
        )));
    }
    if g.n() != params.n() {
        return Err(Error::DimensionMismatch(format!("graph has {} nodes, params say {}", g.n(), params.n())));
    }
    let t = CountingThresholds::new(params, use_non_neighbors);
    let degrees = g.degrees();
    let members: Vec<usize> = (0..g.n()).filter(|&i| degrees[i] as f64 >= t.degree_threshold).collect();
    let (r, k) = (params.r(), params.k());
    let n = g.n();
    let labels = if r == 1 {
        (members.len() == k).then(|| vec![1; k])
    } else {
        components(&members, r, k, |i, j| {
            let s = common_count(g, i, j);
            let s = if use_non_neighbors {
                let a = g.has_edge(i, j) as usize;
                n + s + 2 * a - 2 - degrees[i] - degrees[j]
            } else {
                s
            };
            s as f64 > t.common_neighbor_threshold
        })
    };
    let Some(labels) = labels else { return Ok(Recovery::Inconsistent) };
    let mut full = vec![0; n];
    for (&i, &l) in members.iter().zip(&labels) {
        full[i] = l;
    }
    Ok(Recovery::Recovered(ClusterAssignment::new(full, r, k)?))
}

/// Thresholding algorithm for submatrix localization. Rows (columns) whose
/// sum is at most `mu K_R / 2` (`mu K_L / 2`) are isolated. For `r > 1`,
/// non-isolated rows with inner product at least `mu^2 K_R / 2` are linked
/// (columns likewise with `mu^2 K_L / 2`), and row cluster `k` is paired with
/// column cluster `l` when the block sum is at least `mu K_L K_R / 2`.
pub fn submatrix_thresholding(a: &RealMatrix, params: &SubmatrixParams) -> Result<Recovery<BiClusterAssignment>> {
    if a.shape() != (params.n_left(), params.n_right()) {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, params say {}x{}",
            a.rows(),
            a.cols(),
            params.n_left(),
            params.n_right()
        )));
    }
    let t = ThresholdingThresholds::new(params);
    let (r, kl, kr) = (params.r(), params.k_left(), params.k_right());
    let at = a.transpose();
    let rows: Vec<usize> = (0..a.rows()).filter(|&i| a.row(i).iter().sum::<f64>() > t.row_threshold).collect();
    let cols: Vec<usize> = (0..a.cols()).filter(|&j| at.row(j).iter().sum::<f64>() > t.col_threshold).collect();
    let inner = |m: &RealMatrix, x: usize, y: usize| -> f64 { m.row(x).iter().zip(m.row(y)).map(|(u, v)| u * v).sum() };
    let (left, right) = if r == 1 {
        ((rows.len() == kl).then(|| vec![1; kl]), (cols.len() == kr).then(|| vec![1; kr]))
    } else {
        (
            components(&rows, r, kl, |x, y| inner(a, x, y) >= t.corr_threshold),
            components(&cols, r, kr, |x, y| inner(&at, x, y) >= t.col_corr_threshold),
        )
    };
    let (Some(left), Some(right)) = (left, right) else { return Ok(Recovery::Inconsistent) };

    let mut blocks = vec![vec![0.0; r]; r];
    for (&i, &li) in rows.iter().zip(&left) {
        for (&j, &lj) in cols.iter().zip(&right) {
            blocks[li - 1][lj - 1] += a.get(i, j);
        }
    }
    // Pairing must be a perfect matching: exactly one partner per cluster.
    let mut col_partner = vec![None; r];
    for (k, row) in blocks.iter().enumerate() {
        let partners: Vec<usize> = (0..r).filter(|&l| row[l] >= t.block_threshold).collect();
        let &[l] = partners.as_slice() else { return Ok(Recovery::Inconsistent) };
        if col_partner[l].is_some() {
            return Ok(Recovery::Inconsistent);
        }
        col_partner[l] = Some(k);
    }
    let mut left_labels = vec![0; a.rows()];
    for (&i, &l) in rows.iter().zip(&left) {
        left_labels[i] = l;
    }
    let mut right_labels = vec![0; a.cols()];
    for (&j, &l) in cols.iter().zip(&right) {
        right_labels[j] = col_partner[l - 1].expect("perfect matching") + 1;
    }
    Ok(Recovery::Recovered(BiClusterAssignment::new(left_labels, right_labels)?))
}

/// `Y_ij = 1` exactly when `A_ij >= mu / 2`.
pub fn elementwise_thresholding(a: &RealMatrix, mu: f64) -> Result<RealMatrix> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParams(format!("mu = {mu} must be positive")));
    }
    Ok(a.map(|v| if v >= mu / 2.0 { 1.0 } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{bicluster_to_matrix, flip_graph, Noise};

    fn cliques(n: usize, groups: &[&[usize]]) -> Graph {
        let mut g = Graph::empty(n);
        for grp in groups {
            for (x, &i) in grp.iter().enumerate() {
                for &j in &grp[x + 1..] {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    #[test]
    fn strict_link_boundary_is_inconsistent() {
        let g = cliques(8, &[&[0, 1, 2], &[3, 4, 5]]);
        let params = PlantedParams::new(8, 2, 3, 1.0, 0.0).unwrap();
        let t = CountingThresholds::new(&params, false);
        assert_eq!(t.degree_threshold, 1.5);
        assert_eq!(t.common_neighbor_threshold, 1.0);
        assert_eq!(counting_algorithm(&g, &params, false).unwrap(), Recovery::Inconsistent);
    }

    #[test]
    fn two_four_cliques_recovered() {
        let g = cliques(8, &[&[0, 2, 4, 6], &[1, 3, 5, 7]]);
        let params = PlantedParams::new(8, 2, 4, 1.0, 0.0).unwrap();
        let got = counting_algorithm(&g, &params, false).unwrap();
        assert_eq!(got.recovered().unwrap().labels(), &[1, 2, 1, 2, 1, 2, 1, 2]);
    }

    #[test]
    fn common_neighbor_examples() {
        let tri = cliques(3, &[&[0, 1, 2]]);
        assert_eq!(common_neighbors(&tri, 0, 1).unwrap(), 1);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(common_neighbors(&path, 0, 2).unwrap(), 1);
        assert_eq!(common_neighbors(&path, 0, 1).unwrap(), 0);
        assert_eq!(common_neighbors(&Graph::empty(4), 1, 3).unwrap(), 0);
        assert!(common_neighbors(&path, 1, 1).is_err());
    }

    #[test]
    fn non_neighbor_counts_match_complement() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut g = Graph::empty(70);
        for i in 0..70 {
            for j in i + 1..70 {
                if rng.random::<f64>() < 0.6 {
                    g.set_edge(i, j, true);
                }
            }
        }
        let h = flip_graph(&g);
        let d = g.degrees();
        for (i, j) in [(0, 1), (5, 69), (33, 34)] {
            let a = g.has_edge(i, j) as usize;
            assert_eq!(70 + common_count(&g, i, j) + 2 * a - 2 - d[i] - d[j], common_count(&h, i, j));
        }
    }

    #[test]
    fn precondition_and_dimension_checks() {
        let params = PlantedParams::new(8, 2, 4, 0.2, 0.5).unwrap();
        assert!(counting_algorithm(&Graph::empty(8), &params, false).is_err());
        let params = PlantedParams::new(8, 2, 4, 0.5, 0.2).unwrap();
        assert!(counting_algorithm(&Graph::empty(9), &params, false).is_err());
    }

    #[test]
    fn thresholding_noise_free() {
        let truth = BiClusterAssignment::new(vec![0, 1, 1, 0], vec![1, 0, 1, 0]).unwrap();
        let params = SubmatrixParams::new(4, 4, 2, 2, 1, 1.0, Noise::None).unwrap();
        let a = bicluster_to_matrix(&truth);
        assert_eq!(submatrix_thresholding(&a, &params).unwrap(), Recovery::Recovered(truth));

        let truth = BiClusterAssignment::new(vec![1, 1, 2, 2], vec![2, 2, 1, 1]).unwrap();
        let params = SubmatrixParams::new(4, 4, 2, 2, 2, 1.0, Noise::None).unwrap();
        let got = submatrix_thresholding(&bicluster_to_matrix(&truth), &params).unwrap();
        let got = got.recovered().unwrap();
        assert_eq!(bicluster_to_matrix(got), bicluster_to_matrix(&truth));
    }

    #[test]
    fn element_rule_uses_at_least() {
        let a = RealMatrix::from_rows(&[vec![0.5, 0.49], vec![2.0, -1.0]]).unwrap();
        let y = elementwise_thresholding(&a, 1.0).unwrap();
        assert_eq!(y, RealMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap());
        assert!(elementwise_thresholding(&a, 0.0).is_err());
    }
}
