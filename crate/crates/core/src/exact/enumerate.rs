use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::model::ClusterAssignment;

/// Default cap on the number of hypotheses an exhaustive search may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Number of ways to place `r` unlabeled clusters of size `K` among `n`
/// nodes: `C(n, rK) (rK)! / (r! (K!)^r)`.
pub fn cluster_space_size(n: usize, r: usize, k: usize) -> Result<BigUint> {
    let rk = r
        .checked_mul(k)
        .filter(|&rk| rk <= n)
        .ok_or_else(|| Error::InvalidParams(format!("r*K = {r}*{k} exceeds n = {n}")))?;
    let denom = factorial(r) * factorial(k).pow(r as u32);
    Ok(binomial(n, rk) * factorial(rk) / denom)
}

/// Lexicographic-by-largest-element (colex) successor of a sorted
/// `k`-combination of `0..m`. Returns false after the last combination.
fn next_colex(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { m };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, v) in c.iter_mut().enumerate().take(i) {
                *v = j;
            }
            return true;
        }
    }
    false
}

/// Exhaustive iterator over all planted clusterings of `n` nodes into `r`
/// clusters of size `K`, each yielded once with canonical labels (clusters
/// numbered by smallest member).
///
/// The search is an odometer over independent colex combination digits.
/// Digit 0 chooses the clustered set `V1` (`rK` of `n`). Digit `m` chooses
/// the `K - 1` companions of the smallest node not yet placed, from the
/// `rK - (m-1)K - 1` remaining clustered nodes. The last cluster is forced.
/// Digit 0 changes slowest.
#[derive(Debug, Clone)]
pub struct ClusterEnumerator {
    n: usize,
    r: usize,
    k: usize,
    digits: Vec<Vec<usize>>,
    pools: Vec<usize>,
    total: u64,
    done: bool,
}

impl ClusterEnumerator {
    pub fn total(&self) -> u64 {
        self.total
    }

    fn decode(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        let clustered: Vec<usize> = self.digits[0].clone();
        let mut remaining = clustered;
        for m in 1..=self.r {
            let head = remaining[0];
            let rest = &remaining[1..];
            let chosen: Vec<usize> = if m < self.r {
                self.digits[m].iter().map(|&idx| rest[idx]).collect()
            } else {
                rest.to_vec()
            };
            labels[head] = m;
            for &v in &chosen {
                labels[v] = m;
            }
            let mut keep = Vec::with_capacity(rest.len() - chosen.len());
            let mut ci = 0;
            for &v in rest {
                if ci < chosen.len() && chosen[ci] == v {
                    ci += 1;
                } else {
                    keep.push(v);
                }
            }
            remaining = keep;
        }
        labels
    }

    fn advance(&mut self) {
        for d in (0..self.digits.len()).rev() {
            if next_colex(&mut self.digits[d], self.pools[d]) {
                return;
            }
            let len = self.digits[d].len();
            self.digits[d] = (0..len).collect();
        }
        self.done = true;
    }
}

impl Iterator for ClusterEnumerator {
    type Item = ClusterAssignment;

    fn next(&mut self) -> Option<ClusterAssignment> {
        if self.done {
            return None;
        }
        let labels = self.decode();
        self.advance();
        Some(ClusterAssignment::new(labels, self.r, self.k).expect("enumerator yields valid assignments"))
    }
}

/// Returns `count` as `u64` if it is within `budget`, or the budget error
/// carrying the exact count.
pub(crate) fn within_budget(count: &BigUint, budget: u64) -> Result<u64> {
    match count.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded { count: count.to_string(), budget }),
    }
}

pub fn enumerate_cluster_assignments(n: usize, r: usize, k: usize) -> Result<ClusterEnumerator> {
    enumerate_cluster_assignments_with_budget(n, r, k, DEFAULT_BUDGET)
}

pub fn enumerate_cluster_assignments_with_budget(
    n: usize,
    r: usize,
    k: usize,
    budget: u64,
) -> Result<ClusterEnumerator> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidParams("r and K must be positive".into()));
    }
    let total = within_budget(&cluster_space_size(n, r, k)?, budget)?;
    let rk = r * k;
    let mut digits = vec![(0..rk).collect::<Vec<_>>()];
    let mut pools = vec![n];
    for m in 1..r {
        digits.push((0..k - 1).collect());
        pools.push(rk - (m - 1) * k - 1);
    }
    Ok(ClusterEnumerator { n, r, k, digits, pools, total, done: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn sizes() {
        let size = |n, r, k| cluster_space_size(n, r, k).unwrap().to_u64().unwrap();
        assert_eq!(size(4, 1, 4), 1);
        assert_eq!(size(5, 1, 2), 10);
        assert_eq!(size(9, 2, 3), 840);
        assert_eq!(size(4, 2, 2), 3);
        assert!(cluster_space_size(4, 3, 2).is_err());
        let big = cluster_space_size(1000, 10, 50).unwrap();
        assert!(big.to_string().len() > 100);
    }

    #[test]
    fn four_nodes_two_pairs() {
        let all: Vec<Vec<usize>> =
            enumerate_cluster_assignments(4, 2, 2).unwrap().map(|a| a.labels().to_vec()).collect();
        assert_eq!(all, vec![vec![1, 1, 2, 2], vec![1, 2, 1, 2], vec![1, 2, 2, 1]]);
    }

    #[test]
    fn colex_order_of_single_cluster() {
        let all: Vec<Vec<usize>> =
            enumerate_cluster_assignments(4, 1, 2).unwrap().map(|a| a.labels().to_vec()).collect();
        let expected = [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]];
        assert_eq!(all, expected.iter().map(|l| l.to_vec()).collect::<Vec<_>>());
    }

    #[test]
    fn distinct_canonical_and_complete() {
        for (n, r, k) in [(5, 1, 2), (7, 2, 2), (9, 2, 3), (9, 3, 2), (6, 3, 2), (4, 1, 4)] {
            let e = enumerate_cluster_assignments(n, r, k).unwrap();
            let total = e.total();
            let seen: HashSet<Vec<usize>> = e
                .map(|a| {
                    assert_eq!(a.canonical(), a);
                    a.labels().to_vec()
                })
                .collect();
            assert_eq!(seen.len() as u64, total, "({n}, {r}, {k})");
        }
    }

    #[test]
    fn budget_refusal_names_exact_count() {
        let err = enumerate_cluster_assignments_with_budget(9, 2, 3, 100).unwrap_err();
        assert_eq!(
            err.to_string(),
            "hypothesis space has 840 elements, exceeding the enumeration budget of 100"
        );
    }
}
