//! Equalizing the degrees of a homogeneous set and the full extraction
//! pipeline.
//!
//! For a clique or independent set `S = {s_1 < … < s_k}` every outside vertex
//! `v` contributes the vector `w_v` with `(w_v)_j = e(s_j, v) − e(s_k, v)`.
//! Edges inside `S` add the same amount to every member, so the vectors sum
//! to `z` with `z_j = d(s_j) − d(s_k)`. Deleting outside vertices whose
//! vectors sum to `z` leaves all of `S` with one common degree.

mod homogeneous;
mod zero_sum;

pub use homogeneous::{find_homogeneous_set, ramsey_window, HomogeneousKind, HomogeneousSet};
pub use zero_sum::{bounded_subsequence_sum, subsequence_bound, IntVector, SubsequenceSum, ZeroSumError};

use thiserror::Error;

use crate::certificate::{graph_digest, CertificateStage, DeletionCertificate, StageKind};
use crate::graph::{ceil_sqrt, Graph, GraphError, VertexId};
use crate::trim::{reduce_rk_with, TrimError, TrimOptions, TrimReport};

pub const FLAG_FULL_COVER: &str = "full_cover_fallback";
pub const FLAG_BOUND_EXCEEDED: &str = "bound_exceeded";
pub const FLAG_WINDOW_EXPANDED: &str = "window_expanded";
pub const FLAG_TRIM_DISCARDED: &str = "trim_discarded";

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("trivial instance: {n} vertices, fewer than k = {k}")]
    TrivialInstance { n: usize, k: usize },
    #[error("no clique or independent set of size {k} among {n} vertices")]
    NotFound { n: usize, k: usize },
    #[error("homogeneous set is not valid in the graph")]
    InvalidSet,
    #[error(transparent)]
    Trim(#[from] TrimError),
    #[error(transparent)]
    ZeroSum(#[from] ZeroSumError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ExtractError {
    /// The instance admits no guarantee, as opposed to a genuine failure.
    pub fn is_vacuous(&self) -> bool {
        matches!(self, ExtractError::TrivialInstance { .. } | ExtractError::NotFound { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceVectors {
    /// Members of `S`, ascending; the last one is the reference.
    pub members: Vec<VertexId>,
    /// Vertices outside `S`, ascending, aligned with `vectors`.
    pub outside: Vec<VertexId>,
    pub vectors: Vec<IntVector>,
    pub total: IntVector,
}

impl DifferenceVectors {
    pub fn reference(&self) -> VertexId {
        *self.members.last().expect("S is nonempty")
    }

    /// `max_j |z_j|`.
    pub fn spread(&self) -> i64 {
        self.total.norm_inf()
    }
}

pub fn build_difference_vectors(g: &Graph, s: &HomogeneousSet) -> Result<DifferenceVectors, ExtractError> {
    if s.vertices.is_empty() || !s.is_valid_in(g) {
        return Err(ExtractError::InvalidSet);
    }
    let members = s.vertices.clone();
    let (&reference, rest) = members.split_last().expect("checked nonempty");
    let outside: Vec<VertexId> = g.vertices().iter().copied().filter(|v| members.binary_search(v).is_err()).collect();
    let edge = |a: VertexId, b: VertexId| g.has_edge(a, b) as i64;
    let vectors: Vec<IntVector> = outside
        .iter()
        .map(|&v| IntVector::new(rest.iter().map(|&sj| edge(sj, v) - edge(reference, v)).collect()))
        .collect();
    let total = IntVector::sum(rest.len(), &vectors);
    Ok(DifferenceVectors { members, outside, vectors, total })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equalization {
    pub graph: Graph,
    /// Deleted outside vertices, ascending.
    pub deleted: Vec<VertexId>,
    pub spread: i64,
    pub subsequence: SubsequenceSum,
    /// Common degree of the members of `S` in `graph`.
    pub degree: usize,
}

/// Deletes a short set of outside vertices after which every member of `s`
/// has the same degree.
pub fn equalize(g: &Graph, s: &HomogeneousSet) -> Result<Equalization, ExtractError> {
    let diff = build_difference_vectors(g, s)?;
    let d = diff.members.len() - 1;
    let spread = diff.spread();
    let subsequence = bounded_subsequence_sum(&diff.vectors, &diff.total, 1, spread, d)?;
    let deleted: Vec<VertexId> = subsequence.indices.iter().map(|&i| diff.outside[i]).collect();
    let graph = g.delete_vertices(&deleted)?;
    let degree = graph.degree(diff.reference())?;
    for &v in &diff.members {
        assert_eq!(graph.degree(v)?, degree, "member {v} of S kept a different degree");
    }
    Ok(Equalization { graph, deleted, spread, subsequence, degree })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Initial cap for sub-cover searches during trimming.
    pub cover_cap: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self { cover_cap: TrimOptions::default().cover_cap }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub graph: Graph,
    pub certificate: DeletionCertificate,
    pub trim: TrimReport,
    pub homogeneous: HomogeneousSet,
    pub subsequence: SubsequenceSum,
    /// `⌈√Δ⌉` of the input.
    pub sqrt_delta: usize,
    /// `total_deleted / ⌈√Δ⌉`, zero for edgeless inputs.
    pub c_obs: f64,
}

pub fn extract(g: &Graph, k: usize) -> Result<Extraction, ExtractError> {
    extract_with(g, k, ExtractOptions::default())
}

/// Trims `r_w` for the search window `w = min(R(k), n)`, picks a homogeneous
/// `k`-set among the top vertices and equalizes its degrees.
///
/// If trimming leaves no homogeneous set, the trim stages are discarded and
/// the set is searched in the input itself.
pub fn extract_with(g: &Graph, k: usize, options: ExtractOptions) -> Result<Extraction, ExtractError> {
    if k < 2 {
        return Err(ExtractError::InvalidK(k));
    }
    let n = g.vertex_count();
    if n < k {
        return Err(ExtractError::TrivialInstance { n, k });
    }
    let mut flags = Vec::new();
    let window = ramsey_window(k).min(n);
    let (mut trimmed, mut trim) = reduce_rk_with(g, window, TrimOptions { cover_cap: options.cover_cap })?;
    let homogeneous = match find_homogeneous_set(&trimmed, k) {
        Some(s) => s,
        None => {
            let s = find_homogeneous_set(g, k).ok_or(ExtractError::NotFound { n, k })?;
            flags.push(FLAG_TRIM_DISCARDED.to_string());
            trim.stages.clear();
            trim.final_rk = trim.initial_rk;
            trimmed = g.clone();
            s
        }
    };
    if trim.stages.iter().any(|st| st.full_cover) {
        flags.insert(0, FLAG_FULL_COVER.to_string());
    }
    if homogeneous.window > ramsey_window(k).clamp(k, trimmed.vertex_count()) {
        flags.push(FLAG_WINDOW_EXPANDED.to_string());
    }

    let eq = equalize(&trimmed, &homogeneous)?;
    if eq.subsequence.bound_exceeded {
        flags.push(FLAG_BOUND_EXCEEDED.to_string());
    }

    let mut stages: Vec<CertificateStage> =
        trim.stages.iter().map(|st| CertificateStage { kind: st.kind, deleted: st.deleted.clone() }).collect();
    stages.push(CertificateStage { kind: StageKind::Equalize, deleted: eq.deleted.clone() });
    let total_deleted: usize = stages.iter().map(|st| st.deleted.len()).sum();
    let max_degree_h = eq.graph.max_degree();
    let certificate = DeletionCertificate {
        input_hash: graph_digest(g),
        k,
        stages,
        witness: homogeneous.vertices.clone(),
        witness_degree: eq.degree,
        max_degree_h,
        g2_obs: max_degree_h - eq.degree,
        total_deleted,
        flags,
    };
    let sqrt_delta = ceil_sqrt(g.max_degree());
    let c_obs = if sqrt_delta == 0 { 0.0 } else { total_deleted as f64 / sqrt_delta as f64 };
    Ok(Extraction { graph: eq.graph, certificate, trim, homogeneous, subsequence: eq.subsequence, sqrt_delta, c_obs })
}
