//! Crossing-number machinery for sparse multigraphs.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`] — loopless multigraphs with stable dense ids, text formats.
//! * [`flow`] — edge-disjoint path counts (widths) via unit-capacity max flow.
//! * [`decompose`] — connectivity levels, uv-bridges, blobs, branches,
//!   double paths and blob fallback edges.
//! * [`planar`] — combinatorial embeddings (rotation systems), faces, duals,
//!   digons and clean normalization, planarity testing with Kuratowski
//!   witnesses.
//! * [`drawing`] — drawings as crossing registries, planarization, validation.
//! * [`solver`] — exact and weighted crossing-number search.
//! * [`earrings`] — short-cycle earrings, conflict graphs, disjoint families.
//! * [`insertion`] — crossing classification, path selection and constructive
//!   edge re-insertion; decay certificates.
//! * [`expectation`] — weight sampling and Monte-Carlo estimators with
//!   concentration checks.
//! * [`constructions`] — named graph families and reference drawings.
//! * [`corpus`] — random plane multigraph corpus for the verification harness.
//! * [`lemmas`] — face-count diagnostics and counting-lemma verification.
//! * [`config`] / [`experiment`] — experiment configuration, CSV reports and
//!   SVG schematics.

pub mod config;
pub mod constructions;
pub mod corpus;
pub mod decompose;
pub mod drawing;
pub mod earrings;
pub mod error;
pub mod expectation;
pub mod experiment;
pub mod flow;
pub mod graph;
pub mod insertion;
pub mod lemmas;
pub mod planar;
pub mod solver;

pub use error::{Error, Result};
pub use graph::Graph;
