//! Replayable record of an extraction run.
//!
//! A certificate lists the deleted vertices stage by stage together with the
//! `k` witness vertices that share one degree in the remaining graph. Anyone
//! holding the input graph can replay the deletions and check the claim.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{write_edge_list, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageKind {
    /// Removal of the `k` highest-degree vertices.
    Bulk,
    /// Removal of a separating set from the bipartite view.
    Separation,
    /// Removal of the subsequence that equalizes the witness degrees.
    Equalize,
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageKind::Bulk => "bulk",
            StageKind::Separation => "separation",
            StageKind::Equalize => "equalize",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStage {
    pub kind: StageKind,
    pub deleted: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeletionCertificate {
    pub input_hash: String,
    pub k: usize,
    pub stages: Vec<CertificateStage>,
    pub witness: Vec<VertexId>,
    pub witness_degree: usize,
    #[serde(rename = "max_degree_H")]
    pub max_degree_h: usize,
    pub g2_obs: usize,
    pub total_deleted: usize,
    pub flags: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("certificate deletes vertex {0}, which is not in the graph")]
    UnknownDeletedVertex(VertexId),
    #[error("certificate deletes vertex {0} more than once")]
    RepeatedDeletion(VertexId),
    #[error("witness vertex {0} is not in the graph")]
    UnknownWitness(VertexId),
    #[error("witness vertex {0} is listed more than once")]
    RepeatedWitness(VertexId),
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A claim of the certificate that the replay contradicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discrepancy {
    InputHash { expected: String, found: String },
    WitnessCount { k: usize, found: usize },
    WitnessDeleted(VertexId),
    WitnessDegree { vertex: VertexId, claimed: usize, actual: usize },
    MaxDegree { claimed: usize, actual: usize },
    Gap { claimed: usize, actual: usize },
    TotalDeleted { claimed: usize, actual: usize },
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::InputHash { expected, found } => {
                write!(f, "input hash {found} does not match graph hash {expected}")
            }
            Discrepancy::WitnessCount { k, found } => write!(f, "expected {k} witnesses, found {found}"),
            Discrepancy::WitnessDeleted(v) => write!(f, "witness {v} was deleted"),
            Discrepancy::WitnessDegree { vertex, claimed, actual } => {
                write!(f, "witness {vertex} has degree {actual}, certificate claims {claimed}")
            }
            Discrepancy::MaxDegree { claimed, actual } => {
                write!(f, "remaining graph has maximum degree {actual}, certificate claims {claimed}")
            }
            Discrepancy::Gap { claimed, actual } => write!(f, "gap is {actual}, certificate claims {claimed}"),
            Discrepancy::TotalDeleted { claimed, actual } => {
                write!(f, "{actual} vertices deleted, certificate claims {claimed}")
            }
        }
    }
}

/// Hex SHA-256 of the graph's edge-list text, extended by its id list when
/// the ids are not exactly `0..n`.
pub fn graph_digest(g: &Graph) -> String {
    let mut hasher = Sha256::new();
    hasher.update(write_edge_list(g).as_bytes());
    let compact = g.vertices().iter().enumerate().all(|(i, &v)| i == v);
    if !compact {
        for v in g.vertices() {
            hasher.update(format!("{v}\n").as_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

impl DeletionCertificate {
    pub fn deleted(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.stages.iter().flat_map(|s| s.deleted.iter().copied())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Applies every stage to `g`.
    pub fn replay(&self, g: &Graph) -> Result<Graph, CertificateError> {
        let mut seen = BTreeSet::new();
        for v in self.deleted() {
            if !g.contains(v) {
                return Err(CertificateError::UnknownDeletedVertex(v));
            }
            if !seen.insert(v) {
                return Err(CertificateError::RepeatedDeletion(v));
            }
        }
        let removed: Vec<VertexId> = seen.into_iter().collect();
        Ok(g.delete_vertices(&removed).expect("ids checked above"))
    }

    /// Replays the certificate on `g` and lists every claim that fails.
    pub fn audit(&self, g: &Graph) -> Result<Vec<Discrepancy>, CertificateError> {
        let mut witnesses = BTreeSet::new();
        for &w in &self.witness {
            if !g.contains(w) {
                return Err(CertificateError::UnknownWitness(w));
            }
            if !witnesses.insert(w) {
                return Err(CertificateError::RepeatedWitness(w));
            }
        }
        let h = self.replay(g)?;
        let mut issues = Vec::new();

        let digest = graph_digest(g);
        if digest != self.input_hash {
            issues.push(Discrepancy::InputHash { expected: digest, found: self.input_hash.clone() });
        }
        if self.witness.len() != self.k {
            issues.push(Discrepancy::WitnessCount { k: self.k, found: self.witness.len() });
        }
        for &w in &self.witness {
            match h.degree(w) {
                Err(_) => issues.push(Discrepancy::WitnessDeleted(w)),
                Ok(d) if d != self.witness_degree => {
                    issues.push(Discrepancy::WitnessDegree { vertex: w, claimed: self.witness_degree, actual: d })
                }
                Ok(_) => {}
            }
        }
        let max_degree = h.max_degree();
        if max_degree != self.max_degree_h {
            issues.push(Discrepancy::MaxDegree { claimed: self.max_degree_h, actual: max_degree });
        }
        match max_degree.checked_sub(self.witness_degree) {
            Some(gap) if gap == self.g2_obs => {}
            gap => issues.push(Discrepancy::Gap { claimed: self.g2_obs, actual: gap.unwrap_or(0) }),
        }
        let removed = g.vertex_count() - h.vertex_count();
        if removed != self.total_deleted {
            issues.push(Discrepancy::TotalDeleted { claimed: self.total_deleted, actual: removed });
        }
        Ok(issues)
    }
}

/// True iff replaying `cert` on `g` confirms all of its claims.
pub fn verify_certificate(g: &Graph, cert: &DeletionCertificate) -> Result<bool, CertificateError> {
    Ok(cert.audit(g)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular_certificate(g: &Graph) -> DeletionCertificate {
        DeletionCertificate {
            input_hash: graph_digest(g),
            k: 3,
            stages: vec![],
            witness: vec![0, 1, 2],
            witness_degree: 2,
            max_degree_h: 2,
            g2_obs: 0,
            total_deleted: 0,
            flags: vec![],
        }
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn empty_stage_certificate_on_regular_graph() {
        let g = cycle(5);
        assert!(verify_certificate(&g, &regular_certificate(&g)).unwrap());
    }

    #[test]
    fn detects_tampering() {
        let g = cycle(5);
        let mut cert = regular_certificate(&g);
        cert.witness_degree = 1;
        let issues = cert.audit(&g).unwrap();
        assert!(issues.iter().any(|d| matches!(d, Discrepancy::WitnessDegree { .. })));
        assert!(issues.iter().any(|d| matches!(d, Discrepancy::Gap { .. })));

        let mut cert = regular_certificate(&g);
        cert.stages.push(CertificateStage { kind: StageKind::Bulk, deleted: vec![4] });
        // deleting 4 drops 0 and 3 to degree 1
        assert!(!verify_certificate(&g, &cert).unwrap());

        let mut cert = regular_certificate(&g);
        cert.input_hash = "00".into();
        assert!(!verify_certificate(&g, &cert).unwrap());

        let mut cert = regular_certificate(&g);
        cert.witness.pop();
        assert!(!verify_certificate(&g, &cert).unwrap());
    }

    #[test]
    fn malformed_certificates_are_errors() {
        let g = cycle(5);
        let mut cert = regular_certificate(&g);
        cert.witness[0] = 9;
        assert!(matches!(cert.audit(&g), Err(CertificateError::UnknownWitness(9))));

        let mut cert = regular_certificate(&g);
        cert.stages.push(CertificateStage { kind: StageKind::Bulk, deleted: vec![3, 3] });
        assert!(matches!(cert.audit(&g), Err(CertificateError::RepeatedDeletion(3))));

        let mut cert = regular_certificate(&g);
        cert.stages.push(CertificateStage { kind: StageKind::Separation, deleted: vec![11] });
        assert!(matches!(cert.audit(&g), Err(CertificateError::UnknownDeletedVertex(11))));

        assert!(DeletionCertificate::from_json("{\"k\": 2}").is_err());
    }

    #[test]
    fn json_uses_documented_field_names() {
        let g = cycle(5);
        let cert = regular_certificate(&g);
        let value: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
        let keys: BTreeSet<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        let expected: BTreeSet<&str> = [
            "input_hash",
            "k",
            "stages",
            "witness",
            "witness_degree",
            "max_degree_H",
            "g2_obs",
            "total_deleted",
            "flags",
        ]
        .into_iter()
        .collect();
        assert_eq!(keys, expected);
        assert_eq!(DeletionCertificate::from_json(&cert.to_json()).unwrap(), cert);

        let stage = CertificateStage { kind: StageKind::Separation, deleted: vec![1, 2] };
        assert_eq!(serde_json::to_string(&stage).unwrap(), r#"{"kind":"separation","deleted":[1,2]}"#);
    }

    #[test]
    fn digest_distinguishes_relabelled_subgraphs() {
        let g = cycle(6);
        let a = g.delete_vertices(&[0]).unwrap();
        let b = g.delete_vertices(&[5]).unwrap();
        assert_eq!(write_edge_list(&a), write_edge_list(&b));
        assert_ne!(graph_digest(&a), graph_digest(&b));
        assert_eq!(graph_digest(&g), graph_digest(&cycle(6)));
    }
}
