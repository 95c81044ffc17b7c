//! Exhaustive references for small graphs.
//!
//! Deletion sets are enumerated by increasing size and, within one size, in
//! lexicographic order of vertex positions. The first set that works is
//! returned, so results are minimum and deterministic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

/// Default size guard for the exhaustive searches.
pub const DEFAULT_MAX_VERTICES: usize = 16;
/// Hard limit imposed by the bitmask representation.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("k must be at least 1")]
    ZeroK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleWitness {
    /// Deleted vertices, ascending.
    pub deleted: Vec<VertexId>,
    /// The `k` lowest-id remaining vertices of degree `degree`.
    pub witness: Vec<VertexId>,
    pub degree: usize,
    /// Maximum degree of the remaining graph.
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum OracleResult {
    Feasible(OracleWitness),
    Infeasible,
}

impl OracleResult {
    pub fn min_deletions(&self) -> Option<usize> {
        match self {
            OracleResult::Feasible(w) => Some(w.deleted.len()),
            OracleResult::Infeasible => None,
        }
    }

    pub fn witness(&self) -> Option<&OracleWitness> {
        match self {
            OracleResult::Feasible(w) => Some(w),
            OracleResult::Infeasible => None,
        }
    }
}

/// Fewest deletions after which at least `k` vertices attain the maximum
/// degree.
pub fn exact_f_k(g: &Graph, k: usize) -> Result<OracleResult, OracleError> {
    exact_near_max(g, k, 0)
}

/// Fewest deletions after which at least `k` vertices share one degree that
/// is at least `Δ(H) − slack`.
pub fn exact_near_max(g: &Graph, k: usize, slack: usize) -> Result<OracleResult, OracleError> {
    exact_near_max_limited(g, k, slack, DEFAULT_MAX_VERTICES)
}

/// [`exact_near_max`] with an explicit size guard, at most [`MAX_VERTICES`].
pub fn exact_near_max_limited(g: &Graph, k: usize, slack: usize, limit: usize) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    let limit = limit.min(MAX_VERTICES);
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    if k > n {
        return Ok(OracleResult::Infeasible);
    }
    let ids = g.vertices();
    let adjacency: Vec<u64> = ids
        .iter()
        .map(|&v| g.neighbors(v).expect("own vertex").fold(0u64, |m, u| m | 1 << local(ids, u)))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    for size in 0..=n - k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let removed = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            if let Some((degree, max_degree, witness)) = qualifying(&adjacency, full & !removed, k, slack) {
                return Ok(OracleResult::Feasible(OracleWitness {
                    deleted: combo.iter().map(|&i| ids[i]).collect(),
                    witness: witness.into_iter().map(|i| ids[i]).collect(),
                    degree,
                    max_degree,
                }));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Ok(OracleResult::Infeasible)
}

fn local(ids: &[VertexId], v: VertexId) -> usize {
    ids.binary_search(&v).expect("neighbor is a vertex")
}

/// The highest degree held by at least `k` kept vertices, if it is within
/// `slack` of the maximum.
fn qualifying(adjacency: &[u64], kept: u64, k: usize, slack: usize) -> Option<(usize, usize, Vec<usize>)> {
    let degrees: Vec<(usize, usize)> = (0..adjacency.len())
        .filter(|&i| kept >> i & 1 == 1)
        .map(|i| (i, (adjacency[i] & kept).count_ones() as usize))
        .collect();
    let max_degree = degrees.iter().map(|&(_, d)| d).max()?;
    let lowest = max_degree.saturating_sub(slack);
    (lowest..=max_degree).rev().find_map(|d| {
        let members: Vec<usize> = degrees.iter().filter(|&&(_, e)| e == d).map(|&(i, _)| i).take(k).collect();
        (members.len() == k).then_some((d, max_degree, members))
    })
}

/// Advances `combo` to the next `combo.len()`-subset of `0..n` in
/// lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let size = combo.len();
    let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..size {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_random, gen_star_union};
    use proptest::prelude::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    /// Direct check of the near-maximum condition on an explicit subgraph.
    fn satisfies(g: &Graph, k: usize, slack: usize) -> bool {
        let max = g.max_degree();
        let degrees = g.degrees();
        (max.saturating_sub(slack)..=max).any(|d| degrees.iter().filter(|&&e| e == d).count() >= k)
    }

    /// Minimum over every subset of the vertices, with no ordering tricks.
    fn all_subsets_minimum(g: &Graph, k: usize, slack: usize) -> Option<usize> {
        let ids = g.vertices();
        (0u32..1 << ids.len())
            .filter_map(|mask| {
                let removed: Vec<VertexId> = (0..ids.len()).filter(|i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
                let h = g.delete_vertices(&removed).unwrap();
                (h.vertex_count() >= k && satisfies(&h, k, slack)).then_some(removed.len())
            })
            .min()
    }

    #[test]
    fn small_examples() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(exact_f_k(&k3, 3).unwrap().min_deletions(), Some(0));
        assert_eq!(exact_f_k(&path3(), 2).unwrap().min_deletions(), Some(1));
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(exact_f_k(&claw, 2).unwrap().min_deletions(), Some(1));
        assert_eq!(exact_near_max(&path3(), 2, 1).unwrap().min_deletions(), Some(0));
    }

    #[test]
    fn witness_is_first_in_order() {
        let result = exact_f_k(&path3(), 2).unwrap();
        let w = result.witness().unwrap();
        // deleting vertex 0 leaves the edge 1-2
        assert_eq!(w.deleted, vec![0]);
        assert_eq!(w.witness, vec![1, 2]);
        assert_eq!((w.degree, w.max_degree), (1, 1));
    }

    #[test]
    fn regular_graphs_cost_nothing() {
        let cycle = Graph::from_edges(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        for k in 1..=7 {
            assert_eq!(exact_f_k(&cycle, k).unwrap().min_deletions(), Some(0));
        }
    }

    #[test]
    fn guards_and_infeasibility() {
        assert_eq!(exact_f_k(&path3(), 4).unwrap(), OracleResult::Infeasible);
        assert_eq!(exact_f_k(&path3(), 0), Err(OracleError::ZeroK));
        let big = Graph::empty(17);
        assert_eq!(exact_f_k(&big, 2), Err(OracleError::TooLarge { n: 17, limit: 16 }));
        assert!(exact_near_max_limited(&big, 2, 0, 20).is_ok());
    }

    #[test]
    fn star_union_value() {
        let g = gen_star_union(2, 4).unwrap();
        // stars with 2 and 4 leaves: deleting two leaves of the larger one
        // gives two centers of degree 2
        assert_eq!(exact_f_k(&g, 2).unwrap().min_deletions(), Some(2));
        assert_eq!(exact_near_max(&g, 2, 1).unwrap().min_deletions(), Some(1));
    }

    #[test]
    fn result_serializes_with_status() {
        let json = serde_json::to_value(exact_f_k(&path3(), 4).unwrap()).unwrap();
        assert_eq!(json["status"], "infeasible");
    }

    #[test]
    fn combinations_in_lexicographic_order() {
        let mut combo = vec![0, 1];
        let mut seen = vec![combo.clone()];
        while next_combination(&mut combo, 4) {
            seen.push(combo.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn agrees_with_subset_scan(n in 1usize..9, p in 0.0f64..1.0, seed in any::<u64>(), k in 1usize..4, slack in 0usize..3) {
            let g = gen_random(n, p, seed).unwrap();
            let result = exact_near_max(&g, k, slack).unwrap();
            prop_assert_eq!(result.min_deletions(), all_subsets_minimum(&g, k, slack));
            if let Some(w) = result.witness() {
                let h = g.delete_vertices(&w.deleted).unwrap();
                prop_assert_eq!(h.max_degree(), w.max_degree);
                prop_assert!(w.degree + slack >= w.max_degree);
                for &v in &w.witness {
                    prop_assert_eq!(h.degree(v).unwrap(), w.degree);
                }
            }
        }

        #[test]
        fn slack_only_helps(n in 1usize..11, p in 0.0f64..1.0, seed in any::<u64>(), k in 1usize..4) {
            let g = gen_random(n, p, seed).unwrap();
            let strict = exact_f_k(&g, k).unwrap().min_deletions();
            let relaxed = exact_near_max(&g, k, 1).unwrap().min_deletions();
            if let (Some(s), Some(r)) = (strict, relaxed) {
                prop_assert!(r <= s);
            }
        }
    }
}
