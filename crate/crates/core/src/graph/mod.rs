//! Mauldin–Williams graphs: directed multigraphs with a positive ratio per
//! edge, together with the path algebra built on top of them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

mod augment;
mod contract;
mod measure;
mod path;

pub use augment::augment_for_sosc;
pub use measure::{cylinder_measure, PerronData};
pub use path::{cross_cut_first_below, enumerate_paths, CrossCut, Path, DEFAULT_CROSS_CUT_LIMIT};

use crate::scc::strongly_connected_components;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("edge {edge}: vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        count: usize,
    },
    #[error("edge {edge}: ratio {ratio} is not a positive finite number")]
    BadRatio { edge: EdgeId, ratio: f64 },
    #[error("edge {edge}: lower ratios must be given for every edge or for none")]
    MixedLowerRatios { edge: EdgeId },
    #[error("lower ratios requested but the graph carries none")]
    NoLowerRatios,
    #[error("edge {edge} does not exist")]
    UnknownEdge { edge: EdgeId },
    #[error("path breaks at position {position}: edge {edge} does not start at vertex {expected}")]
    BrokenPath {
        position: usize,
        edge: EdgeId,
        expected: VertexId,
    },
    #[error("graph is not strictly contracting (edge {edge} has ratio {ratio})")]
    NotStrictlyContracting { edge: EdgeId, ratio: f64 },
    #[error("delta must satisfy 0 < delta <= 1, got {0}")]
    BadDelta(f64),
    #[error("cross-cut exceeds {limit} paths")]
    CrossCutTooLarge { limit: usize },
    #[error("cycle for vertex {vertex} is not a nonempty cycle at that vertex")]
    NotACycle { vertex: VertexId },
    #[error("expected {expected} cycles (one per vertex), got {got}")]
    CycleCount { expected: usize, got: usize },
    #[error("augmentation length must be at least 1")]
    ZeroLength,
}

/// Selects which per-edge ratio a computation reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioKind {
    /// `r_e`, bounding the maps from above; yields the upper dimension.
    Upper,
    /// `r'_e`, bounding the maps from below; yields the lower dimension.
    Lower,
}

impl fmt::Display for RatioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioKind::Upper => f.write_str("upper"),
            RatioKind::Lower => f.write_str("lower"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

/// A directed multigraph with a positive ratio on each edge.
///
/// Vertices are `0..vertex_count()` and edges `0..edge_count()`. Outgoing
/// edges of a vertex are kept in increasing id order, which fixes the order
/// of every enumeration built on the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MwGraph {
    labels: Vec<Option<String>>,
    edges: Vec<Edge>,
    upper: Vec<f64>,
    lower: Option<Vec<f64>>,
    outgoing: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertex_count: usize,
    labels: Vec<Option<String>>,
    edges: Vec<Edge>,
    upper: Vec<f64>,
    lower: Vec<Option<f64>>,
}

impl GraphBuilder {
    pub fn new(vertex_count: usize) -> Self {
        GraphBuilder {
            vertex_count,
            labels: alloc::vec![None; vertex_count],
            ..Default::default()
        }
    }

    pub fn label(mut self, vertex: VertexId, label: impl Into<String>) -> Self {
        if let Some(slot) = self.labels.get_mut(vertex) {
            *slot = Some(label.into());
        }
        self
    }

    pub fn edge(mut self, source: VertexId, target: VertexId, ratio: f64) -> Self {
        self.push(source, target, ratio, None);
        self
    }

    pub fn edge_with_lower(
        mut self,
        source: VertexId,
        target: VertexId,
        upper: f64,
        lower: f64,
    ) -> Self {
        self.push(source, target, upper, Some(lower));
        self
    }

    pub fn push(&mut self, source: VertexId, target: VertexId, upper: f64, lower: Option<f64>) {
        self.edges.push(Edge { source, target });
        self.upper.push(upper);
        self.lower.push(lower);
    }

    pub fn build(self) -> Result<MwGraph, GraphError> {
        let n = self.vertex_count;
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (id, e) in self.edges.iter().enumerate() {
            for vertex in [e.source, e.target] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange {
                        edge: id,
                        vertex,
                        count: n,
                    });
                }
            }
        }
        let good = |r: f64| r.is_finite() && r > 0.0;
        for (id, &r) in self.upper.iter().enumerate() {
            if !good(r) {
                return Err(GraphError::BadRatio { edge: id, ratio: r });
            }
        }
        let have_lower = self.lower.first().is_some_and(Option::is_some);
        let mut lower = Vec::with_capacity(if have_lower { self.edges.len() } else { 0 });
        for (id, l) in self.lower.iter().enumerate() {
            match (have_lower, l) {
                (true, Some(r)) => {
                    if !good(*r) {
                        return Err(GraphError::BadRatio { edge: id, ratio: *r });
                    }
                    lower.push(*r);
                }
                (false, None) => {}
                _ => return Err(GraphError::MixedLowerRatios { edge: id }),
            }
        }
        let mut outgoing = alloc::vec![Vec::new(); n];
        for (id, e) in self.edges.iter().enumerate() {
            outgoing[e.source].push(id);
        }
        Ok(MwGraph {
            labels: self.labels,
            edges: self.edges,
            upper: self.upper,
            lower: have_lower.then_some(lower),
            outgoing,
        })
    }
}

impl MwGraph {
    pub fn builder(vertex_count: usize) -> GraphBuilder {
        GraphBuilder::new(vertex_count)
    }

    pub fn vertex_count(&self) -> usize {
        self.outgoing.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing edge ids of `v`, ascending.
    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v]
    }

    pub fn has_lower(&self) -> bool {
        self.lower.is_some()
    }

    pub fn upper_ratios(&self) -> &[f64] {
        &self.upper
    }

    pub fn lower_ratios(&self) -> Option<&[f64]> {
        self.lower.as_deref()
    }

    pub fn ratios(&self, kind: RatioKind) -> Result<&[f64], GraphError> {
        match kind {
            RatioKind::Upper => Ok(&self.upper),
            RatioKind::Lower => self.lower_ratios().ok_or(GraphError::NoLowerRatios),
        }
    }

    pub fn ratio(&self, e: EdgeId) -> f64 {
        self.upper[e]
    }

    pub fn min_ratio(&self) -> f64 {
        self.upper.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_ratio(&self) -> f64 {
        self.upper.iter().copied().fold(0.0, f64::max)
    }

    /// All upper ratios strictly below one.
    pub fn is_strictly_contracting(&self) -> bool {
        self.first_non_contracting().is_none()
    }

    pub(crate) fn first_non_contracting(&self) -> Option<(EdgeId, f64)> {
        self.upper
            .iter()
            .copied()
            .enumerate()
            .find(|&(_, r)| r >= 1.0)
    }

    pub(crate) fn require_strictly_contracting(&self) -> Result<(), GraphError> {
        match self.first_non_contracting() {
            Some((edge, ratio)) => Err(GraphError::NotStrictlyContracting { edge, ratio }),
            None => Ok(()),
        }
    }

    /// The same graph with the lower ratios promoted to upper ratios.
    pub fn lower_graph(&self) -> Result<MwGraph, GraphError> {
        let lower = self.lower.clone().ok_or(GraphError::NoLowerRatios)?;
        Ok(MwGraph {
            labels: self.labels.clone(),
            edges: self.edges.clone(),
            upper: lower,
            lower: None,
            outgoing: self.outgoing.clone(),
        })
    }

    pub fn is_strongly_connected(&self) -> bool {
        let comps = strongly_connected_components(self.vertex_count(), |v| {
            self.outgoing[v].iter().map(|&e| self.edges[e].target)
        });
        comps.len() == 1
    }

    /// Checks the standing assumptions. Every failed condition is reported;
    /// callers decide whether to proceed.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let comps = strongly_connected_components(self.vertex_count(), |v| {
            self.outgoing[v].iter().map(|&e| self.edges[e].target)
        });
        if comps.len() > 1 {
            issues.push(ValidationIssue::NotStronglyConnected {
                components: comps.len(),
            });
        }
        for (v, out) in self.outgoing.iter().enumerate() {
            if out.len() < 2 {
                issues.push(ValidationIssue::LowOutDegree {
                    vertex: v,
                    degree: out.len(),
                });
            }
        }
        for (e, &r) in self.upper.iter().enumerate() {
            if r >= 1.0 {
                issues.push(ValidationIssue::RatioNotBelowOne { edge: e, ratio: r });
            }
        }
        if let Some(lower) = &self.lower {
            for (e, (&l, &u)) in lower.iter().zip(&self.upper).enumerate() {
                if l > u {
                    issues.push(ValidationIssue::LowerExceedsUpper {
                        edge: e,
                        lower: l,
                        upper: u,
                    });
                }
            }
        }
        ValidationReport { issues }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    NotStronglyConnected { components: usize },
    LowOutDegree { vertex: VertexId, degree: usize },
    RatioNotBelowOne { edge: EdgeId, ratio: f64 },
    LowerExceedsUpper { edge: EdgeId, lower: f64, upper: f64 },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::NotStronglyConnected { components } => {
                write!(f, "not strongly connected ({components} components)")
            }
            ValidationIssue::LowOutDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has out-degree {degree} (< 2)")
            }
            ValidationIssue::RatioNotBelowOne { edge, ratio } => {
                write!(f, "edge {edge} has ratio {ratio} >= 1")
            }
            ValidationIssue::LowerExceedsUpper { edge, lower, upper } => {
                write!(f, "edge {edge} has lower ratio {lower} > upper ratio {upper}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn strongly_connected(&self) -> bool {
        !self
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::NotStronglyConnected { .. }))
    }

    /// True when the only problems are vertices with a single outgoing edge;
    /// the dimension is still well defined for such graphs.
    pub fn only_degree_warnings(&self) -> bool {
        self.issues
            .iter()
            .all(|i| matches!(i, ValidationIssue::LowOutDegree { degree, .. } if *degree >= 1))
    }
}
