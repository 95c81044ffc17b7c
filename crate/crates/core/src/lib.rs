//! Induced subgraphs with `k` vertices of equal, near-maximum degree.
//!
//! The pipeline in [`equalizer::extract`] deletes `O(√Δ)` vertices from a
//! graph so that the remaining induced subgraph `H` contains `k` vertices of
//! one common degree within an additive constant of `Δ(H)`, and records the
//! deletions in a replayable [`DeletionCertificate`].

pub mod certificate;
pub mod cover;
pub mod equalizer;
pub mod graph;
pub mod oracle;
pub mod separation;
pub mod trim;

pub use certificate::{verify_certificate, CertificateError, DeletionCertificate};
pub use graph::{Graph, GraphError, VertexId};
