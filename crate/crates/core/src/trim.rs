//! Reducing `r_k`, the gap between the maximum degree and the `k`-th largest
//! degree.
//!
//! [`bulk_trim`] repeatedly deletes the `k` highest-degree vertices until
//! `r_k <= ⌈√Δ⌉`. [`reduce_rk`] continues with separation stages, each
//! deleting a set `W` from the non-top vertices that strictly shrinks `r_k`,
//! until `r_k <= k·h` where `h` is the largest `|W|` seen so far (at least 1).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::StageKind;
use crate::graph::{ceil_sqrt, Graph, GraphError, VertexId};
use crate::separation::{separate_once, BipartiteView, SeparationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrimOptions {
    /// Initial cap for the sub-cover search in separation stages.
    pub cover_cap: u64,
}

impl Default for TrimOptions {
    fn default() -> Self {
        Self { cover_cap: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimStage {
    pub kind: StageKind,
    pub deleted: Vec<VertexId>,
    pub rk_before: usize,
    /// `None` when fewer than `k` vertices remain.
    pub rk_after: Option<usize>,
    /// The separating sub-cover was the whole neighborhood cover.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub full_cover: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimReport {
    pub k: usize,
    /// `⌈√Δ⌉` of the input graph.
    pub sqrt_delta: usize,
    pub stages: Vec<TrimStage>,
    /// Largest separating set observed, at least 1.
    pub h_emp: usize,
    pub initial_rk: Option<usize>,
    pub final_rk: Option<usize>,
    /// The input had fewer than `k` vertices and was returned unchanged.
    pub trivial: bool,
}

impl TrimReport {
    fn new(g: &Graph, k: usize) -> Self {
        let initial_rk = g.r_k(k).ok();
        Self {
            k,
            sqrt_delta: ceil_sqrt(g.max_degree()),
            stages: Vec::new(),
            h_emp: 1,
            initial_rk,
            final_rk: initial_rk,
            trivial: k > g.vertex_count(),
        }
    }

    pub fn deleted(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.stages.iter().flat_map(|s| s.deleted.iter().copied())
    }

    pub fn total_deleted(&self) -> usize {
        self.stages.iter().map(|s| s.deleted.len()).sum()
    }

    pub fn deleted_in(&self, kind: StageKind) -> usize {
        self.stages.iter().filter(|s| s.kind == kind).map(|s| s.deleted.len()).sum()
    }

    /// The `r_k` value after the bulk stages.
    pub fn post_bulk_rk(&self) -> Option<usize> {
        self.stages
            .iter()
            .rev()
            .find(|s| s.kind == StageKind::Bulk)
            .map_or(self.initial_rk, |s| s.rk_after)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// State of a separation stage that failed to decrease `r_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimViolation {
    pub stage: usize,
    pub top: Vec<VertexId>,
    pub removed: Vec<VertexId>,
    pub rk_before: usize,
    pub rk_after: usize,
    pub h_emp: usize,
    pub report: TrimReport,
}

#[derive(Debug, Error)]
pub enum TrimError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("separation stage {} did not decrease r_k ({} -> {})", .0.stage, .0.rk_before, .0.rk_after)]
    ClaimViolation(Box<ClaimViolation>),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Deletes the top `k` vertices (degree order) while `r_k > ⌈√Δ(g)⌉` and at
/// least `k` vertices remain. At most `⌈√Δ⌉` rounds run.
pub fn bulk_trim(g: &Graph, k: usize) -> Result<(Graph, TrimReport), TrimError> {
    if k == 0 {
        return Err(TrimError::ZeroK);
    }
    let mut report = TrimReport::new(g, k);
    let threshold = report.sqrt_delta;
    let mut current = g.clone();
    while let Ok(rk) = current.r_k(k) {
        if rk <= threshold {
            break;
        }
        let top = current.degree_sequence().top(k);
        current = current.delete_vertices(&top)?;
        let rk_after = current.r_k(k).ok();
        report.stages.push(TrimStage {
            kind: StageKind::Bulk,
            deleted: top,
            rk_before: rk,
            rk_after,
            full_cover: false,
        });
        report.final_rk = rk_after;
    }
    debug_assert!(report.stages.len() <= threshold);
    Ok((current, report))
}

/// [`reduce_rk_with`] using default options.
pub fn reduce_rk(g: &Graph, k: usize) -> Result<(Graph, TrimReport), TrimError> {
    reduce_rk_with(g, k, TrimOptions::default())
}

/// Bulk trimming followed by separation stages until `r_k <= k·h_emp`.
///
/// Each separation stage takes `A` = the top `k` vertices and `B` = the rest,
/// deletes the separating set of [`separate_once`] and checks that `r_k`
/// strictly decreased over the whole remaining graph. A stage that fails the
/// check aborts with [`TrimError::ClaimViolation`].
pub fn reduce_rk_with(g: &Graph, k: usize, options: TrimOptions) -> Result<(Graph, TrimReport), TrimError> {
    let (mut current, mut report) = bulk_trim(g, k)?;
    let Some(post_bulk) = report.final_rk else {
        return Ok((current, report));
    };

    let mut rk = post_bulk;
    let mut rounds = 0;
    while rk > k * report.h_emp {
        let view = BipartiteView::top_k(&current, k)?;
        let separation = separate_once(&view, options.cover_cap)?;
        let next = current.delete_vertices(&separation.removed)?;
        let rk_after = next.r_k(k)?;
        if rk_after >= rk {
            return Err(TrimError::ClaimViolation(Box::new(ClaimViolation {
                stage: report.stages.len(),
                top: view.a_side().to_vec(),
                removed: separation.removed,
                rk_before: rk,
                rk_after,
                h_emp: report.h_emp,
                report,
            })));
        }
        report.h_emp = report.h_emp.max(separation.removed.len());
        report.stages.push(TrimStage {
            kind: StageKind::Separation,
            deleted: separation.removed,
            rk_before: rk,
            rk_after: Some(rk_after),
            full_cover: separation.subcover.is_full_cover,
        });
        report.final_rk = Some(rk_after);
        current = next;
        rk = rk_after;
        rounds += 1;
        debug_assert!(rounds <= post_bulk);
    }
    Ok((current, report))
}
