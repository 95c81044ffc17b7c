use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomogeneousKind {
    Clique,
    Independent,
}

/// `k` vertices inducing a complete or an edgeless graph, all among the
/// first `window` vertices of the degree order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousSet {
    /// Ascending ids.
    pub vertices: Vec<VertexId>,
    pub kind: HomogeneousKind,
    pub window: usize,
}

impl HomogeneousSet {
    /// Every member is in `g` and the induced subgraph matches `kind`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let want = self.kind == HomogeneousKind::Clique;
        self.vertices.iter().all(|&v| g.contains(v))
            && self.vertices.windows(2).all(|w| w[0] < w[1])
            && self
                .vertices
                .iter()
                .enumerate()
                .all(|(i, &u)| self.vertices[i + 1..].iter().all(|&v| g.has_edge(u, v) == want))
    }

    /// Number of neighbors every member has inside the set.
    pub fn internal_degree(&self) -> usize {
        match self.kind {
            HomogeneousKind::Clique => self.vertices.len().saturating_sub(1),
            HomogeneousKind::Independent => 0,
        }
    }
}

/// Initial search window: the two-colour Ramsey number `R(k)` where it is
/// known (`k <= 4`), otherwise `k`.
pub fn ramsey_window(k: usize) -> usize {
    match k {
        0 | 1 => k,
        2 => 2,
        3 => 6,
        4 => 18,
        _ => k,
    }
}

/// Searches the top `m` vertices for a `k`-clique, then for a `k`-independent
/// set, starting at `m = min(R(k), n)` and widening by one vertex until one is
/// found. Within a window the lexicographically smallest set (by id) wins.
/// Returns `None` if the whole graph has neither.
pub fn find_homogeneous_set(g: &Graph, k: usize) -> Option<HomogeneousSet> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return None;
    }
    let order = g.degree_sequence();
    let mut window = ramsey_window(k).clamp(k, n);
    loop {
        if let Some(found) = search_window(g, &order.top(window), k) {
            let (vertices, kind) = found;
            return Some(HomogeneousSet { vertices, kind, window });
        }
        if window == n {
            return None;
        }
        window += 1;
    }
}

fn search_window(g: &Graph, members: &[VertexId], k: usize) -> Option<(Vec<VertexId>, HomogeneousKind)> {
    let mut members = members.to_vec();
    members.sort_unstable();
    let m = members.len();
    let adjacent: Vec<Vec<bool>> = members
        .iter()
        .map(|&u| members.iter().map(|&v| g.has_edge(u, v)).collect())
        .collect();
    for (kind, want) in [(HomogeneousKind::Clique, true), (HomogeneousKind::Independent, false)] {
        let mut chosen = Vec::with_capacity(k);
        let candidates: Vec<usize> = (0..m).collect();
        if first_set(&adjacent, want, &candidates, k, &mut chosen) {
            return Some((chosen.into_iter().map(|i| members[i]).collect(), kind));
        }
    }
    None
}

/// Depth-first search in ascending index order, so the first hit is the
/// lexicographically smallest set whose pairs all have adjacency `want`.
fn first_set(adjacent: &[Vec<bool>], want: bool, candidates: &[usize], need: usize, chosen: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    for (pos, &v) in candidates.iter().enumerate() {
        if candidates.len() - pos < need {
            return false;
        }
        let next: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|&u| adjacent[v][u] == want)
            .collect();
        chosen.push(v);
        if first_set(adjacent, want, &next, need - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_random;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn pairs_are_always_homogeneous() {
        for seed in 0..20 {
            let g = gen_random(9, 0.5, seed).unwrap();
            let s = find_homogeneous_set(&g, 2).unwrap();
            assert_eq!(s.window, 2);
            let mut top = g.degree_sequence().top(2);
            top.sort_unstable();
            assert_eq!(s.vertices, top);
            assert!(s.is_valid_in(&g));
        }
    }

    #[test]
    fn five_cycle_has_no_triple() {
        assert_eq!(find_homogeneous_set(&cycle(5), 3), None);
        // one more vertex on the cycle gives an independent triple
        let s = find_homogeneous_set(&cycle(6), 3).unwrap();
        assert_eq!(s.kind, HomogeneousKind::Independent);
        assert_eq!(s.vertices, vec![0, 2, 4]);
    }

    #[test]
    fn clique_preferred_in_same_window() {
        // triangle 0-1-2 plus isolated 3, 4, 5: both kinds exist
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = find_homogeneous_set(&g, 3).unwrap();
        assert_eq!(s.kind, HomogeneousKind::Clique);
        assert_eq!(s.vertices, vec![0, 1, 2]);
        assert_eq!(s.internal_degree(), 2);
    }

    #[test]
    fn window_grows_for_large_k() {
        // a 5-cycle plus 5 isolated vertices: the isolated ones sit at the
        // bottom of the degree order, and five of them are independent
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.sort_unstable();
        let g = Graph::from_edges(10, edges).unwrap();
        let s = find_homogeneous_set(&g, 5).unwrap();
        assert_eq!(s.kind, HomogeneousKind::Independent);
        assert!(s.window > 5);
        assert!(s.is_valid_in(&g));
        let top: Vec<VertexId> = g.degree_sequence().top(s.window);
        assert!(s.vertices.iter().all(|v| top.contains(v)));
    }

    #[test]
    fn degenerate_requests() {
        assert_eq!(find_homogeneous_set(&cycle(4), 5), None);
        assert_eq!(find_homogeneous_set(&cycle(4), 0), None);
        let s = find_homogeneous_set(&cycle(4), 1).unwrap();
        assert_eq!(s.vertices.len(), 1);
    }

    proptest! {
        #[test]
        fn results_are_valid_and_in_window(n in 6usize..16, p in 0.0f64..1.0, seed in any::<u64>(), k in 2usize..5) {
            let g = gen_random(n, p, seed).unwrap();
            if let Some(s) = find_homogeneous_set(&g, k) {
                prop_assert!(s.is_valid_in(&g));
                prop_assert_eq!(s.vertices.len(), k);
                let top = g.degree_sequence().top(s.window);
                prop_assert!(s.vertices.iter().all(|v| top.contains(v)));
            } else {
                prop_assert!(n < ramsey_window(k));
            }
        }
    }
}
