//! Maximum-weight perfect matching on a square weight matrix (Hungarian
//! method with potentials, `O(r^3)`).

/// Optimal assignment: `rows_to_cols[i]` is the column matched to row `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub rows_to_cols: Vec<usize>,
    pub value: f64,
}

/// Maximum-weight perfect matching of the square matrix `w` (row-major,
/// `r x r`).
pub fn max_weight_assignment(w: &[Vec<f64>]) -> Assignment {
    let r = w.len();
    assert!(w.iter().all(|row| row.len() == r), "weight matrix must be square");
    if r == 0 {
        return Assignment { rows_to_cols: Vec::new(), value: 0.0 };
    }
    // Minimize cost = -w. Rows and columns are 1-based inside; index 0 is the
    // virtual column used to start each augmenting search.
    let cost = |i: usize, j: usize| -w[i - 1][j - 1];
    let inf = f64::INFINITY;
    let mut u = vec![0.0; r + 1];
    let mut v = vec![0.0; r + 1];
    let mut col_match = vec![0usize; r + 1];
    let mut way = vec![0usize; r + 1];
    for i in 1..=r {
        col_match[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; r + 1];
        let mut used = vec![false; r + 1];
        loop {
            used[j0] = true;
            let i0 = col_match[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=r {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=r {
                if used[j] {
                    u[col_match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_match[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_match[j0] = col_match[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut rows_to_cols = vec![0; r];
    for j in 1..=r {
        rows_to_cols[col_match[j] - 1] = j - 1;
    }
    let value = rows_to_cols.iter().enumerate().map(|(i, &j)| w[i][j]).sum();
    Assignment { rows_to_cols, value }
}

/// Optimal assignment plus whether it is the only one whose value lies
/// within `tol` of the optimum. Each matched edge is forbidden in turn and
/// the problem re-solved; any alternative optimum must avoid at least one
/// matched edge.
pub fn max_weight_assignment_unique(w: &[Vec<f64>], tol: f64) -> (Assignment, bool) {
    let best = max_weight_assignment(w);
    let r = w.len();
    if r <= 1 {
        return (best, true);
    }
    let penalty = 4.0 * (1.0 + w.iter().flatten().map(|x| x.abs()).sum::<f64>());
    for i in 0..r {
        let mut forbidden = w.to_vec();
        forbidden[i][best.rows_to_cols[i]] = -penalty;
        let alt = max_weight_assignment(&forbidden);
        if alt.value >= best.value - tol {
            return (best, false);
        }
    }
    (best, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(w: &[Vec<f64>]) -> f64 {
        fn rec(w: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
            if row == w.len() {
                return 0.0;
            }
            let mut best = f64::NEG_INFINITY;
            for j in 0..w.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.max(w[row][j] + rec(w, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        rec(w, 0, &mut vec![false; w.len()])
    }

    #[test]
    fn small_cases() {
        let a = max_weight_assignment(&[vec![0.0, 5.0], vec![4.0, 0.0]]);
        assert_eq!(a.rows_to_cols, vec![1, 0]);
        assert_eq!(a.value, 9.0);
        let (_, unique) = max_weight_assignment_unique(&[vec![1.0, 1.0], vec![1.0, 1.0]], 1e-9);
        assert!(!unique);
        let (_, unique) = max_weight_assignment_unique(&[vec![2.0, 1.0], vec![1.0, 2.0]], 1e-9);
        assert!(unique);
    }

    #[test]
    fn agrees_with_permutation_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for r in 1..=6 {
            for _ in 0..50 {
                let w: Vec<Vec<f64>> =
                    (0..r).map(|_| (0..r).map(|_| rng.random_range(-5.0..5.0)).collect()).collect();
                let a = max_weight_assignment(&w);
                assert!((a.value - brute_force(&w)).abs() < 1e-9);
            }
        }
    }
}
