//! Fractal dimension bounds for graph-directed iterated function systems.
//!
//! A Mauldin–Williams graph is a directed multigraph with a contraction
//! ratio on every edge. Its dimension is the unique `s` at which the
//! spectral radius of `M(s)`, the matrix with entries
//! `M_uv(s) = Σ_{e: u→v} r_e^s`, equals one. Given an upper ratio and a
//! lower ratio per edge, the two dimensions bracket the Hausdorff and box
//! dimensions of the attractor.
//!
//! The crate is `no_std` (with `alloc`). The `std` feature only adds
//! wall-clock timing to the Julia-set pipeline.
//!
//! Modules:
//! - [`graph`]: graphs, paths, cross-cuts, cylinder measures, validation.
//! - [`spectral`]: sparse nonnegative matrices, Perron roots, dimension solving.
//! - [`julia`]: the Markov-partition bounds for Julia sets of `z² + c`.
//! - [`boxcount`]: inverse-iteration sampling and box-counting estimates.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod boxcount;
pub mod graph;
pub mod julia;
pub mod scc;
pub mod spectral;

pub use graph::{
    CrossCut, Edge, EdgeId, GraphError, MwGraph, Path, PerronData, RatioKind, ValidationIssue,
    ValidationReport, VertexId,
};
pub use spectral::{
    DimensionResult, SolverConfig, SparseNonnegMatrix, SpectralError, SpectralResult,
};
