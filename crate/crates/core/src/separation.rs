//! Degree-gap separation in a bipartite view `K = G[A, B]`.
//!
//! [`separate_once`] removes a set `W ⊆ B` such that whenever
//! `d_K(x) > d_K(y)` for `x, y ∈ A`, the degree drop of `x` strictly exceeds
//! the drop of `y`. The neighborhoods of `B`-vertices form a uniform cover of
//! `A` grouped by `d_K`, and `W` realizes a uniform sub-cover of it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{find_uniform_subcover, CoverError, CoverMultiset, Partition, Signature, SubcoverResult, MAX_GROUND};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} lies on both sides")]
    Overlap(VertexId),
    #[error("side A has {0} vertices, more than the supported {MAX_GROUND}")]
    SideTooLarge(usize),
    #[error("side A is empty")]
    EmptySide,
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("removal does not separate {higher} (d_K {higher_degree}, drop {higher_drop}) from {lower} (d_K {lower_degree}, drop {lower_drop})")]
    GapNotSeparated {
        higher: VertexId,
        higher_degree: u64,
        higher_drop: u64,
        lower: VertexId,
        lower_degree: u64,
        lower_drop: u64,
    },
}

/// Bipartite view between an ordered side `A` and a side `B` of a host graph.
/// Edges inside either side are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteView {
    a_side: Vec<VertexId>,
    b_side: Vec<VertexId>,
    /// `A`-neighborhood of every `B`-vertex, as positions in `a_side`.
    signatures: Vec<Signature>,
}

impl BipartiteView {
    /// `b_side` is stored in ascending id order; `a_side` keeps its order.
    pub fn new(g: &Graph, a_side: Vec<VertexId>, b_side: Vec<VertexId>) -> Result<Self, SeparationError> {
        if a_side.is_empty() {
            return Err(SeparationError::EmptySide);
        }
        if a_side.len() > MAX_GROUND {
            return Err(SeparationError::SideTooLarge(a_side.len()));
        }
        let mut seen = BTreeSet::new();
        for &v in a_side.iter().chain(&b_side) {
            if !g.contains(v) {
                return Err(SeparationError::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(SeparationError::Overlap(v));
            }
        }
        let mut b_side = b_side;
        b_side.sort_unstable();
        let signatures = b_side
            .iter()
            .map(|&b| Signature::from_elements(a_side.iter().enumerate().filter(|&(_, &a)| g.has_edge(a, b)).map(|(i, _)| i)))
            .collect();
        Ok(Self { a_side, b_side, signatures })
    }

    /// `A` = the first `k` vertices of the degree order, `B` = all others.
    pub fn top_k(g: &Graph, k: usize) -> Result<Self, SeparationError> {
        let order = g.degree_sequence();
        let a_side = order.top(k);
        let b_side = order.vertices().skip(k).collect();
        Self::new(g, a_side, b_side)
    }

    pub fn a_side(&self) -> &[VertexId] {
        &self.a_side
    }

    pub fn b_side(&self) -> &[VertexId] {
        &self.b_side
    }

    /// `d_K` for every `A`-vertex, in `a_side` order.
    pub fn a_degrees(&self) -> Vec<u64> {
        self.drops_for(|_| true)
    }

    /// Number of `B`-neighbors selected by `removed` for each `A`-vertex.
    fn drops_for(&self, removed: impl Fn(usize) -> bool) -> Vec<u64> {
        let mut out = vec![0u64; self.a_side.len()];
        for (i, sig) in self.signatures.iter().enumerate() {
            if removed(i) {
                for e in sig.elements() {
                    out[e] += 1;
                }
            }
        }
        out
    }
}

/// Multiset of `A`-neighborhoods of the `B`-vertices, with elements given as
/// positions in `a_side`. Isolated `B`-vertices contribute the empty set.
pub fn neighborhood_signatures(view: &BipartiteView) -> CoverMultiset {
    view.signatures.iter().map(|&s| (s, 1)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    /// `W`, ascending.
    pub removed: Vec<VertexId>,
    /// Degree drop of every `A`-vertex, in `a_side` order.
    pub drops: Vec<u64>,
    pub subcover: SubcoverResult,
}

/// Computes `W` for `view`, starting the sub-cover search at `cap`.
///
/// The `A`-vertices are grouped by equal `d_K`, groups ordered by decreasing
/// `d_K`. Each signature of the chosen sub-cover is realized by the
/// lowest-id `B`-vertices carrying it. The gap property is checked on the
/// result before it is returned.
pub fn separate_once(view: &BipartiteView, cap: u64) -> Result<Separation, SeparationError> {
    let degrees = view.a_degrees();
    let partition = Partition::by_decreasing_value(&degrees)?;
    let cover = neighborhood_signatures(view);
    let subcover = find_uniform_subcover(&cover, &partition, cap)?;

    let mut remaining: Vec<(Signature, u64)> = subcover.subcover.iter().collect();
    let mut chosen = vec![false; view.b_side.len()];
    for (i, sig) in view.signatures.iter().enumerate() {
        if let Some(slot) = remaining.iter_mut().find(|(s, m)| s == sig && *m > 0) {
            slot.1 -= 1;
            chosen[i] = true;
        }
    }
    debug_assert!(remaining.iter().all(|&(_, m)| m == 0));

    let drops = view.drops_for(|i| chosen[i]);
    for x in 0..degrees.len() {
        for y in 0..degrees.len() {
            if degrees[x] > degrees[y] && drops[x] <= drops[y] {
                return Err(SeparationError::GapNotSeparated {
                    higher: view.a_side[x],
                    higher_degree: degrees[x],
                    higher_drop: drops[x],
                    lower: view.a_side[y],
                    lower_degree: degrees[y],
                    lower_drop: drops[y],
                });
            }
        }
    }
    let removed = view.b_side.iter().zip(&chosen).filter(|(_, &c)| c).map(|(&b, _)| b).collect();
    Ok(Separation { removed, drops, subcover })
}
