//! Domain types shared by every other module: model parameters, planted
//! assignments, observed graphs and dense real matrices, plus the
//! conversions between assignments and their 0/1 indicator matrices.
//!
//! All types validate their invariants at construction (including when
//! deserialized from JSON) and are immutable afterwards.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the planted clustering model: `n` nodes, `r` clusters of
/// size `K`, in-cluster edge probability `p` and cross-cluster probability `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPlantedParams")]
pub struct PlantedParams {
    n: usize,
    r: usize,
    #[serde(rename = "K")]
    k: usize,
    p: f64,
    q: f64,
}

#[derive(Deserialize)]
struct RawPlantedParams {
    n: usize,
    r: usize,
    #[serde(rename = "K")]
    k: usize,
    p: f64,
    q: f64,
}

impl TryFrom<RawPlantedParams> for PlantedParams {
    type Error = Error;
    fn try_from(raw: RawPlantedParams) -> Result<Self> {
        PlantedParams::new(raw.n, raw.r, raw.k, raw.p, raw.q)
    }
}

impl PlantedParams {
    pub fn new(n: usize, r: usize, k: usize, p: f64, q: f64) -> Result<Self> {
        if n == 0 || r == 0 || k == 0 {
            return Err(Error::InvalidParams(format!(
                "n, r and K must be positive (n={n}, r={r}, K={k})"
            )));
        }
        if r.checked_mul(k).map_or(true, |rk| rk > n) {
            return Err(Error::InvalidParams(format!("r*K = {}*{} exceeds n = {n}", r, k)));
        }
        for (name, v) in [("p", p), ("q", q)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParams(format!("{name} = {v} is not a probability")));
            }
        }
        if p == q {
            return Err(Error::InvalidParams(format!(
                "p = q = {p}: the graph carries no information about the clusters"
            )));
        }
        Ok(Self { n, r, k, p, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Number of clustered nodes, `rK`.
    pub fn clustered(&self) -> usize {
        self.r * self.k
    }

    /// Number of isolated nodes, `n - rK`.
    pub fn isolated(&self) -> usize {
        self.n - self.r * self.k
    }

    /// Parameters seen by an algorithm run on the complement graph.
    pub fn flipped(&self) -> PlantedParams {
        PlantedParams { p: 1.0 - self.p, q: 1.0 - self.q, ..*self }
    }
}

/// Noise law of the submatrix model. All three have zero mean; Gaussian and
/// Rademacher are sub-Gaussian with parameter 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Noise {
    Gaussian,
    Rademacher,
    None,
}

/// Parameters of the submatrix localization model: an `n_L x n_R` matrix with
/// `r` planted `K_L x K_R` blocks of elevated mean `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSubmatrixParams")]
pub struct SubmatrixParams {
    #[serde(rename = "n_L")]
    n_left: usize,
    #[serde(rename = "n_R")]
    n_right: usize,
    #[serde(rename = "K_L")]
    k_left: usize,
    #[serde(rename = "K_R")]
    k_right: usize,
    r: usize,
    mu: f64,
    noise: Noise,
}

#[derive(Deserialize)]
struct RawSubmatrixParams {
    #[serde(rename = "n_L")]
    n_left: usize,
    #[serde(rename = "n_R")]
    n_right: usize,
    #[serde(rename = "K_L")]
    k_left: usize,
    #[serde(rename = "K_R")]
    k_right: usize,
    r: usize,
    mu: f64,
    noise: Noise,
}

impl TryFrom<RawSubmatrixParams> for SubmatrixParams {
    type Error = Error;
    fn try_from(raw: RawSubmatrixParams) -> Result<Self> {
        SubmatrixParams::new(raw.n_left, raw.n_right, raw.k_left, raw.k_right, raw.r, raw.mu, raw.noise)
    }
}

impl SubmatrixParams {
    pub fn new(
        n_left: usize,
        n_right: usize,
        k_left: usize,
        k_right: usize,
        r: usize,
        mu: f64,
        noise: Noise,
    ) -> Result<Self> {
        if n_left == 0 || n_right == 0 || k_left == 0 || k_right == 0 || r == 0 {
            return Err(Error::InvalidParams(
                "dimensions, block sizes and r must be positive".into(),
            ));
        }
        if r * k_left > n_left || r * k_right > n_right {
            return Err(Error::InvalidParams(format!(
                "r*K_L = {} > n_L = {n_left} or r*K_R = {} > n_R = {n_right}",
                r * k_left,
                r * k_right
            )));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidParams(format!("mu = {mu} must be positive and finite")));
        }
        Ok(Self { n_left, n_right, k_left, k_right, r, mu, noise })
    }

    /// Square instance with `n x n` matrix and `K x K` blocks.
    pub fn square(n: usize, k: usize, r: usize, mu: f64, noise: Noise) -> Result<Self> {
        Self::new(n, n, k, k, r, mu, noise)
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }
    pub fn n_right(&self) -> usize {
        self.n_right
    }
    pub fn k_left(&self) -> usize {
        self.k_left
    }
    pub fn k_right(&self) -> usize {
        self.k_right
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn noise(&self) -> Noise {
        self.noise
    }

    /// `n = max(n_L, n_R)`.
    pub fn n(&self) -> usize {
        self.n_left.max(self.n_right)
    }

    pub fn with_noise(&self, noise: Noise) -> Self {
        Self { noise, ..*self }
    }
}

/// Planted (or recovered) clustering: label 0 marks an isolated node, labels
/// `1..=r` mark cluster membership, each used exactly `K` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClusterAssignment")]
pub struct ClusterAssignment {
    labels: Vec<usize>,
    r: usize,
    #[serde(rename = "K")]
    k: usize,
}

#[derive(Deserialize)]
struct RawClusterAssignment {
    labels: Vec<usize>,
    r: usize,
    #[serde(rename = "K")]
    k: usize,
}

impl TryFrom<RawClusterAssignment> for ClusterAssignment {
    type Error = Error;
    fn try_from(raw: RawClusterAssignment) -> Result<Self> {
        ClusterAssignment::new(raw.labels, raw.r, raw.k)
    }
}

impl ClusterAssignment {
    pub fn new(labels: Vec<usize>, r: usize, k: usize) -> Result<Self> {
        let counts = label_counts(&labels, r).ok_or_else(|| {
            Error::InvalidAssignment(format!("label above r = {r} in {labels:?}"))
        })?;
        if let Some((label, &c)) = counts.iter().enumerate().skip(1).find(|(_, &c)| c != k) {
            return Err(Error::InvalidAssignment(format!(
                "cluster {label} has {c} members, expected K = {k}"
            )));
        }
        Ok(Self { labels, r, k })
    }

    /// Assignment from explicit member lists; every other node is isolated.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![0; n];
        let k = clusters.first().map_or(0, Vec::len);
        for (m, members) in clusters.iter().enumerate() {
            for &i in members {
                if i >= n || labels[i] != 0 {
                    return Err(Error::InvalidAssignment(format!(
                        "node {i} is out of range or in two clusters"
                    )));
                }
                labels[i] = m + 1;
            }
        }
        Self::new(labels, clusters.len(), k)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
    pub fn n(&self) -> usize {
        self.labels.len()
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.labels[i] == 0
    }

    /// Member lists indexed by `label - 1`.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::with_capacity(self.k); self.r];
        for (i, &l) in self.labels.iter().enumerate() {
            if l > 0 {
                out[l - 1].push(i);
            }
        }
        out
    }

    /// Relabels clusters in order of their smallest member.
    pub fn canonical(&self) -> ClusterAssignment {
        ClusterAssignment { labels: canonical_labels(&self.labels), r: self.r, k: self.k }
    }

    pub fn same_cluster(&self, i: usize, j: usize) -> bool {
        self.labels[i] != 0 && self.labels[i] == self.labels[j]
    }
}

fn label_counts(labels: &[usize], r: usize) -> Option<Vec<usize>> {
    let mut counts = vec![0usize; r + 1];
    for &l in labels {
        *counts.get_mut(l)? += 1;
    }
    Some(counts)
}

fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let max = labels.iter().copied().max().unwrap_or(0);
    let mut map = vec![0usize; max + 1];
    let mut next = 0;
    labels
        .iter()
        .map(|&l| {
            if l == 0 {
                return 0;
            }
            if map[l] == 0 {
                next += 1;
                map[l] = next;
            }
            map[l]
        })
        .collect()
}

/// Whether two assignments describe the same partition: some permutation of
/// the cluster labels maps one onto the other, and the isolated sets agree.
pub fn assignments_equal_up_to_relabeling(
    a: &ClusterAssignment,
    b: &ClusterAssignment,
) -> Result<bool> {
    if a.n() != b.n() || a.r != b.r || a.k != b.k {
        return Err(Error::DimensionMismatch(format!(
            "(n, r, K) = ({}, {}, {}) vs ({}, {}, {})",
            a.n(),
            a.r,
            a.k,
            b.n(),
            b.r,
            b.k
        )));
    }
    Ok(canonical_labels(&a.labels) == canonical_labels(&b.labels))
}

/// Cluster matrix of an assignment. Off-diagonal entries are 1 iff both nodes
/// share a cluster. The diagonal is 1 on clustered nodes when `diagonal_one`
/// holds (the convention under which the matrix has trace and rank `r`-related
/// structure used by the convex program) and 0 everywhere otherwise (the
/// convention of the combinatorial objective).
pub fn assignment_to_cluster_matrix(a: &ClusterAssignment, diagonal_one: bool) -> RealMatrix {
    let n = a.n();
    RealMatrix::from_fn(n, n, |i, j| {
        let same = a.same_cluster(i, j) && (i != j || diagonal_one);
        if same {
            1.0
        } else {
            0.0
        }
    })
}

/// Simple undirected graph on `n` nodes stored as bitset rows. The diagonal
/// is always zero and the adjacency is symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edge_count()).finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, bits: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        flip_graph(&Graph::empty(n))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidParams(format!("edge ({i}, {j}) out of range for n = {n}")));
            }
            if i == j {
                return Err(Error::InvalidParams(format!("self-loop at node {i}")));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Sets or clears edge `{i, j}`. Self-loops are ignored.
    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        if i == j {
            return;
        }
        for (a, b) in [(i, j), (j, i)] {
            let w = &mut self.bits[a * self.words + b / 64];
            if present {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    /// Bitset row of node `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j` in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Adjacency matrix as a dense 0/1 real matrix.
    pub fn to_matrix(&self) -> RealMatrix {
        RealMatrix::from_fn(self.n, self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    adjacency: Vec<Vec<u8>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let adjacency = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as u8).collect())
            .collect();
        RawGraph { n: self.n, adjacency }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawGraph::deserialize(d)?;
        if raw.adjacency.len() != raw.n || raw.adjacency.iter().any(|row| row.len() != raw.n) {
            return Err(D::Error::custom("adjacency is not n x n"));
        }
        let mut g = Graph::empty(raw.n);
        for i in 0..raw.n {
            if raw.adjacency[i][i] != 0 {
                return Err(D::Error::custom(format!("nonzero diagonal at {i}")));
            }
            for j in i + 1..raw.n {
                let (a, b) = (raw.adjacency[i][j], raw.adjacency[j][i]);
                if a != b || a > 1 {
                    return Err(D::Error::custom(format!("asymmetric or non-binary entry ({i}, {j})")));
                }
                g.set_edge(i, j, a == 1);
            }
        }
        Ok(g)
    }
}

/// Complement graph `J - A - I`: an edge exactly where `g` has none.
pub fn flip_graph(g: &Graph) -> Graph {
    let mut out = g.clone();
    let tail = g.n % 64;
    for i in 0..g.n {
        let row = &mut out.bits[i * g.words..(i + 1) * g.words];
        for w in row.iter_mut() {
            *w = !*w;
        }
        if tail != 0 {
            row[g.words - 1] &= (1u64 << tail) - 1;
        }
        if g.n == 0 {
            continue;
        }
        row[i / 64] &= !(1u64 << (i % 64));
    }
    out
}

/// Planted bi-clustering: row labels and column labels over `0..=r`, where
/// row label `k` is paired with column label `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBiCluster")]
pub struct BiClusterAssignment {
    left_labels: Vec<usize>,
    right_labels: Vec<usize>,
    #[serde(skip)]
    r: usize,
    #[serde(skip)]
    k_left: usize,
    #[serde(skip)]
    k_right: usize,
}

#[derive(Deserialize)]
struct RawBiCluster {
    left_labels: Vec<usize>,
    right_labels: Vec<usize>,
}

impl TryFrom<RawBiCluster> for BiClusterAssignment {
    type Error = Error;
    fn try_from(raw: RawBiCluster) -> Result<Self> {
        BiClusterAssignment::new(raw.left_labels, raw.right_labels)
    }
}

impl BiClusterAssignment {
    /// Validates that each side uses labels `1..=r` equally often and that both
    /// sides use the same `r`. With all labels zero, `r = 0`.
    pub fn new(left_labels: Vec<usize>, right_labels: Vec<usize>) -> Result<Self> {
        let r = left_labels.iter().chain(&right_labels).copied().max().unwrap_or(0);
        let side = |labels: &[usize], name: &str| -> Result<usize> {
            let counts = label_counts(labels, r).expect("r is the maximum label");
            let k = counts.get(1).copied().unwrap_or(0);
            if counts.iter().skip(1).any(|&c| c != k || c == 0) {
                return Err(Error::InvalidAssignment(format!(
                    "{name} cluster sizes {:?} are not all equal and nonzero",
                    &counts[1..]
                )));
            }
            Ok(k)
        };
        let k_left = side(&left_labels, "left")?;
        let k_right = side(&right_labels, "right")?;
        Ok(Self { left_labels, right_labels, r, k_left, k_right })
    }

    pub fn left_labels(&self) -> &[usize] {
        &self.left_labels
    }
    pub fn right_labels(&self) -> &[usize] {
        &self.right_labels
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn k_left(&self) -> usize {
        self.k_left
    }
    pub fn k_right(&self) -> usize {
        self.k_right
    }

    /// Whether the assignment matches the shape in `params`.
    pub fn fits(&self, params: &SubmatrixParams) -> bool {
        self.left_labels.len() == params.n_left()
            && self.right_labels.len() == params.n_right()
            && self.r == params.r()
            && self.k_left == params.k_left()
            && self.k_right == params.k_right()
    }
}

/// Indicator of the union of the paired blocks.
pub fn bicluster_to_matrix(b: &BiClusterAssignment) -> RealMatrix {
    RealMatrix::from_fn(b.left_labels.len(), b.right_labels.len(), |i, j| {
        let l = b.left_labels[i];
        if l != 0 && l == b.right_labels[j] {
            1.0
        } else {
            0.0
        }
    })
}

/// Dense row-major real matrix with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRealMatrix")]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

#[derive(Deserialize)]
struct RawRealMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl TryFrom<RawRealMatrix> for RealMatrix {
    type Error = Error;
    fn try_from(raw: RawRealMatrix) -> Result<Self> {
        RealMatrix::new(raw.rows, raw.cols, raw.entries)
    }
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite entry at ({}, {})",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds a matrix from `f(i, j)`. Panics if `f` returns a non-finite value.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert!(v.is_finite(), "non-finite entry at ({i}, {j})");
                entries.push(v);
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.entries
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.entries
    }

    /// Wraps a buffer produced by internal arithmetic; entries must be finite.
    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|v| v.is_finite()));
        Self { rows, cols, entries }
    }

    pub fn transpose(&self) -> RealMatrix {
        RealMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Frobenius inner product `<self, other>`.
    pub fn dot(&self, other: &RealMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum()
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: f64, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.shape(), other.shape());
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + alpha * b).collect();
        RealMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scaled(&self, alpha: f64) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| alpha * v).collect(),
        }
    }

    /// Frobenius distance to `other`.
    pub fn distance(&self, other: &RealMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RealMatrix {
        RealMatrix::from_fn(self.rows, self.cols, |i, j| f(self.get(i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assignment(labels: &[usize], r: usize, k: usize) -> ClusterAssignment {
        ClusterAssignment::new(labels.to_vec(), r, k).unwrap()
    }

    #[test]
    fn cluster_matrix_examples() {
        let y = assignment_to_cluster_matrix(&assignment(&[1, 1, 0], 1, 2), true);
        assert_eq!(y, RealMatrix::from_rows(&[vec![1., 1., 0.], vec![1., 1., 0.], vec![0., 0., 0.]]).unwrap());

        let y = assignment_to_cluster_matrix(&assignment(&[1, 2], 2, 1), false);
        assert_eq!(y, RealMatrix::zeros(2, 2));

        let y = assignment_to_cluster_matrix(&assignment(&[1, 1, 2, 2], 2, 2), true);
        let expected = RealMatrix::from_fn(4, 4, |i, j| if i / 2 == j / 2 { 1.0 } else { 0.0 });
        assert_eq!(y, expected);
    }

    #[test]
    fn relabeling_examples() {
        let eq = |a: &[usize], b: &[usize], r, k| {
            assignments_equal_up_to_relabeling(&assignment(a, r, k), &assignment(b, r, k)).unwrap()
        };
        assert!(eq(&[1, 1, 2, 2], &[2, 2, 1, 1], 2, 2));
        assert!(!eq(&[1, 1, 2, 2], &[1, 2, 1, 2], 2, 2));
        assert!(!eq(&[1, 1, 0], &[1, 0, 1], 1, 2));
    }

    #[test]
    fn relabeling_rejects_shape_mismatch() {
        let a = assignment(&[1, 1, 0], 1, 2);
        let b = assignment(&[1, 1, 0, 0], 1, 2);
        assert!(matches!(assignments_equal_up_to_relabeling(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn flip_examples() {
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(flip_graph(&Graph::empty(3)), triangle);
        assert_eq!(flip_graph(&triangle), Graph::empty(3));
        // word boundary
        let g = Graph::complete(130);
        assert_eq!(g.edge_count(), 130 * 129 / 2);
        assert!(!g.has_edge(64, 64));
        assert_eq!(flip_graph(&g), Graph::empty(130));
    }

    #[test]
    fn bicluster_examples() {
        let b = BiClusterAssignment::new(vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!(bicluster_to_matrix(&b), RealMatrix::from_rows(&[vec![1., 0.], vec![0., 0.]]).unwrap());

        let b = BiClusterAssignment::new(vec![1, 2], vec![2, 1]).unwrap();
        assert_eq!(bicluster_to_matrix(&b), RealMatrix::from_rows(&[vec![0., 1.], vec![1., 0.]]).unwrap());

        let b = BiClusterAssignment::new(vec![0; 3], vec![0; 2]).unwrap();
        assert_eq!(b.r(), 0);
        assert_eq!(bicluster_to_matrix(&b), RealMatrix::zeros(3, 2));
    }

    #[test]
    fn constructors_enforce_invariants() {
        assert!(PlantedParams::new(10, 3, 4, 0.5, 0.1).is_err());
        assert!(PlantedParams::new(10, 2, 4, 0.3, 0.3).is_err());
        assert!(PlantedParams::new(10, 2, 4, 1.2, 0.3).is_err());
        assert!(PlantedParams::new(10, 2, 5, 0.0, 1.0).is_ok());
        assert!(ClusterAssignment::new(vec![1, 1, 2], 2, 1).is_err());
        assert!(ClusterAssignment::new(vec![1, 3], 2, 1).is_err());
        assert!(BiClusterAssignment::new(vec![1, 2], vec![1, 0]).is_err());
        assert!(SubmatrixParams::new(4, 4, 3, 1, 2, 1.0, Noise::None).is_err());
        assert!(SubmatrixParams::new(4, 4, 2, 2, 2, 0.0, Noise::None).is_err());
        assert!(RealMatrix::new(1, 2, vec![0.0, f64::NAN]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn json_uses_listed_field_names() {
        let p = PlantedParams::new(10, 2, 3, 0.5, 0.1).unwrap();
        let v = serde_json::to_value(p).unwrap();
        assert_eq!(v, serde_json::json!({"n": 10, "r": 2, "K": 3, "p": 0.5, "q": 0.1}));

        let s = SubmatrixParams::new(6, 5, 2, 1, 2, 0.5, Noise::Gaussian).unwrap();
        let v = serde_json::to_value(s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"n_L": 6, "n_R": 5, "K_L": 2, "K_R": 1, "r": 2, "mu": 0.5, "noise": "Gaussian"})
        );
        let back: SubmatrixParams = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);

        let a = assignment(&[1, 0, 1], 1, 2);
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v, serde_json::json!({"labels": [1, 0, 1], "r": 1, "K": 2}));

        let b = BiClusterAssignment::new(vec![1, 0], vec![0, 1]).unwrap();
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v, serde_json::json!({"left_labels": [1, 0], "right_labels": [0, 1]}));
        assert_eq!(serde_json::from_value::<BiClusterAssignment>(v).unwrap(), b);

        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v, serde_json::json!({"n": 3, "adjacency": [[0, 0, 1], [0, 0, 0], [1, 0, 0]]}));
        assert_eq!(serde_json::from_value::<Graph>(v).unwrap(), g);

        let bad = serde_json::json!({"n": 10, "r": 3, "K": 4, "p": 0.5, "q": 0.1});
        assert!(serde_json::from_value::<PlantedParams>(bad).is_err());
        let bad = serde_json::json!({"n": 2, "adjacency": [[0, 1], [0, 0]]});
        assert!(serde_json::from_value::<Graph>(bad).is_err());
    }
}
