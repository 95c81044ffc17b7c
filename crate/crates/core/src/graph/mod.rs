//! Simple undirected graphs with stable vertex ids.
//!
//! A [`Graph`] keeps the ids of the graph it was derived from, so that a
//! subgraph obtained by [`Graph::delete_vertices`] still talks about the
//! vertices of the original input. Internally vertices live at dense local
//! indices `0..n` ordered by ascending id.

mod generate;
mod io;

pub use generate::{gen_random, gen_star_union};
pub use io::{parse_edge_list, read_edge_list, write_edge_list, ParseError};

use std::collections::BTreeSet;

use thiserror::Error;

/// Original vertex identifier, stable across deletions.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("graph has no vertices")]
    Empty,
    #[error("k = {k} is out of range for a graph on {n} vertices")]
    KOutOfRange { k: usize, n: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

/// Simple undirected graph. Adjacency lists hold local indices and are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on vertices `0..n` without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            ids: (0..n).collect(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Graph on vertices `0..n` with the given edges. Loops, duplicate edges
    /// (in either orientation) and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::UnknownVertex(u));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertex ids in ascending order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    fn index_of(&self, v: VertexId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    fn local(&self, v: VertexId) -> Result<usize, GraphError> {
        self.index_of(v).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.adj[self.local(v)?].len())
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> Result<impl Iterator<Item = VertexId> + '_, GraphError> {
        let i = self.local(v)?;
        Ok(self.adj[i].iter().map(move |&j| self.ids[j]))
    }

    /// Whether `u` and `v` are adjacent. Unknown ids are never adjacent.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list.iter().filter(|&&j| j > i) {
                out.push((self.ids[i], self.ids[j]));
            }
        }
        out
    }

    /// Degrees indexed like [`Graph::vertices`].
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Maximum degree, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices sorted by non-increasing degree, ties by ascending id.
    pub fn degree_sequence(&self) -> DegreeView {
        let mut order: Vec<(VertexId, usize)> = self
            .ids
            .iter()
            .zip(&self.adj)
            .map(|(&v, list)| (v, list.len()))
            .collect();
        // stable sort keeps ascending ids among equal degrees
        order.sort_by_key(|&(_, d)| std::cmp::Reverse(d));
        DegreeView { order }
    }

    /// Maximum multiplicity of a vertex degree.
    pub fn rep_number(&self) -> Result<usize, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut counts = vec![0usize; self.max_degree() + 1];
        for list in &self.adj {
            counts[list.len()] += 1;
        }
        Ok(counts.into_iter().max().unwrap_or(0))
    }

    /// `Δ(G) - d(x_k)` where `x_1, .., x_n` is the [`DegreeView`] order.
    pub fn r_k(&self, k: usize) -> Result<usize, GraphError> {
        self.degree_sequence().r_k(k)
    }

    /// Induced subgraph on the vertices not in `removed`.
    pub fn delete_vertices(&self, removed: &[VertexId]) -> Result<Graph, GraphError> {
        let mut gone = vec![false; self.ids.len()];
        for &v in removed {
            gone[self.local(v)?] = true;
        }
        let mut new_index = vec![usize::MAX; self.ids.len()];
        let mut ids = Vec::with_capacity(self.ids.len());
        for (i, &v) in self.ids.iter().enumerate() {
            if !gone[i] {
                new_index[i] = ids.len();
                ids.push(v);
            }
        }
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|(i, _)| !gone[*i])
            .map(|(_, list)| {
                list.iter()
                    .filter(|&&j| !gone[j])
                    .map(|&j| new_index[j])
                    .collect()
            })
            .collect();
        Ok(Graph { ids, adj })
    }

    /// Induced subgraph on `kept`.
    pub fn induced(&self, kept: &[VertexId]) -> Result<Graph, GraphError> {
        let keep: BTreeSet<VertexId> = kept.iter().copied().collect();
        for &v in &keep {
            self.local(v)?;
        }
        let removed: Vec<VertexId> = self.ids.iter().copied().filter(|v| !keep.contains(v)).collect();
        self.delete_vertices(&removed)
    }

    /// Same graph with ids renumbered `0..n` in ascending order of the old ids.
    pub fn compacted(&self) -> Graph {
        Graph {
            ids: (0..self.ids.len()).collect(),
            adj: self.adj.clone(),
        }
    }
}

/// Vertices ordered by non-increasing degree, ties broken by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeView {
    order: Vec<(VertexId, usize)>,
}

impl DegreeView {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `(vertex, degree)` pairs in order.
    pub fn entries(&self) -> &[(VertexId, usize)] {
        &self.order
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.order.iter().map(|&(v, _)| v)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().map(|&(_, d)| d)
    }

    /// First `k` vertices of the order.
    pub fn top(&self, k: usize) -> Vec<VertexId> {
        self.vertices().take(k).collect()
    }

    pub fn r_k(&self, k: usize) -> Result<usize, GraphError> {
        if k == 0 || k > self.order.len() {
            return Err(GraphError::KOutOfRange { k, n: self.order.len() });
        }
        Ok(self.order[0].1 - self.order[k - 1].1)
    }
}

/// `⌈√x⌉` in exact integer arithmetic.
pub fn ceil_sqrt(x: usize) -> usize {
    let mut s = (x as f64).sqrt() as usize;
    while s * s > x {
        s -= 1;
    }
    while s * s < x {
        s += 1;
    }
    s
}

/// `√x` when `x` is a perfect square.
pub fn exact_sqrt(x: usize) -> Option<usize> {
    let s = ceil_sqrt(x);
    (s * s == x).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn degree_sequence_examples() {
        let p3 = path(3);
        assert_eq!(p3.degree_sequence().entries(), &[(1, 2), (0, 1), (2, 1)]);
        assert_eq!(Graph::empty(3).degree_sequence().entries(), &[(0, 0), (1, 0), (2, 0)]);
        let degrees: Vec<usize> = star(3).degree_sequence().degrees().collect();
        assert_eq!(degrees, vec![3, 1, 1, 1]);
    }

    #[test]
    fn rep_number_examples() {
        assert_eq!(complete(3).rep_number(), Ok(3));
        assert_eq!(path(3).rep_number(), Ok(2));
        assert_eq!(star(3).rep_number(), Ok(3));
        assert_eq!(Graph::empty(0).rep_number(), Err(GraphError::Empty));
    }

    #[test]
    fn r_k_examples() {
        assert_eq!(star(3).r_k(2), Ok(2));
        let k4 = complete(4);
        for k in 1..=4 {
            assert_eq!(k4.r_k(k), Ok(0));
        }
        assert_eq!(path(4).r_k(3), Ok(1));
        assert_eq!(path(4).r_k(5), Err(GraphError::KOutOfRange { k: 5, n: 4 }));
        assert!(path(4).r_k(0).is_err());
    }

    #[test]
    fn delete_vertices_examples() {
        let h = complete(3).delete_vertices(&[2]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1)]);
        let g = path(5);
        assert_eq!(g.delete_vertices(&[]).unwrap(), g);
        let leaves = star(3).delete_vertices(&[0]).unwrap();
        assert_eq!(leaves.vertices(), &[1, 2, 3]);
        assert_eq!(leaves.edge_count(), 0);
        assert_eq!(g.delete_vertices(&[7]), Err(GraphError::UnknownVertex(7)));
    }

    #[test]
    fn ids_survive_repeated_deletion() {
        let g = path(6);
        let h = g.delete_vertices(&[0, 3]).unwrap();
        assert_eq!(h.vertices(), &[1, 2, 4, 5]);
        assert_eq!(h.edges(), vec![(1, 2), (4, 5)]);
        let h2 = h.delete_vertices(&[2]).unwrap();
        assert_eq!(h2.degree(1), Ok(0));
        assert_eq!(h2.degree(4), Ok(1));
        assert!(h2.delete_vertices(&[3]).is_err());
        assert_eq!(g.induced(&[1, 2, 4, 5]).unwrap(), h);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::UnknownVertex(3)));
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(9), 3);
        assert_eq!(ceil_sqrt(10), 4);
        assert_eq!(exact_sqrt(16), Some(4));
        assert_eq!(exact_sqrt(15), None);
    }
}
