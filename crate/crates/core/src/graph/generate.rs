use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{exact_sqrt, Graph, GraphError};

/// `k/2` disjoint copies of `K_{1,s} ∪ K_{1,2s} ∪ .. ∪ K_{1,s·s}` with `s = √delta`.
///
/// Vertices are numbered copy by copy, star by star, each center followed by
/// its leaves. The maximum degree is `delta` and every graph obtained by
/// deleting fewer than roughly `(k/2)·√delta` vertices still lacks `k`
/// vertices of a common near-maximum degree.
pub fn gen_star_union(k: usize, delta: usize) -> Result<Graph, GraphError> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(GraphError::InvalidParameters(format!("k must be even and positive, got {k}")));
    }
    let side = exact_sqrt(delta)
        .filter(|&s| s >= 1)
        .ok_or_else(|| GraphError::InvalidParameters(format!("delta must be a positive perfect square, got {delta}")))?;

    let mut edges = Vec::new();
    let mut next = 0;
    for _ in 0..k / 2 {
        for i in 1..=side {
            let center = next;
            let leaves = i * side;
            edges.extend((1..=leaves).map(|l| (center, center + l)));
            next += leaves + 1;
        }
    }
    Graph::from_edges(next, edges)
}

/// Erdős–Rényi `G(n, p)`; each pair `u < v` is sampled in lexicographic order
/// from a ChaCha8 stream seeded with `seed`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameters(format!("p must lie in [0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}
