//! Exact minimum cut toolkit for weighted undirected graphs.
//!
//! The solver repeatedly identifies edges whose endpoint connectivity
//! provably meets the current cut upper bound, contracts them all at once
//! into a quotient graph, and stops when two vertices remain. Scan rounds
//! run on all cores against a shared visited array and a lock-free
//! union-find; priority queues are bounded by the running bound so
//! saturated keys stop costing updates. An inexact multilevel bound based
//! on label propagation tightens the bound up front without giving up
//! exactness.
//!
//! Interchangeable pieces (the three priority queue kinds and the two
//! bound estimators) live behind name-keyed registries and are selected
//! through [`driver::DriverConfig`].

pub mod bound;
pub mod capforest;
pub mod contraction;
pub mod driver;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod parallel;
pub mod pq;
pub mod testgen;
pub mod union_find;

pub use capforest::{CapMode, ScanCut, ScanStats};
pub use driver::{exact_mincut, CutResult, DriverConfig};
pub use error::{Error, Result};
pub use graph::{build_graph, DegreeMode, Graph, Vertex, VertexMap, Weight};
