use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeId, GraphError, MwGraph, VertexId};

/// A finite path: a home vertex and a chain of edges leaving it.
///
/// The empty path at `u` has ratio 1. Paths order lexicographically by
/// (home, edge ids).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    home: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn empty(home: VertexId) -> Self {
        Path {
            home,
            edges: Vec::new(),
        }
    }

    /// Builds a path, checking that the edges exist and chain from `home`.
    pub fn new(graph: &MwGraph, home: VertexId, edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        let p = Path { home, edges };
        p.check(graph)?;
        Ok(p)
    }

    pub(crate) fn from_parts_unchecked(home: VertexId, edges: Vec<EdgeId>) -> Self {
        Path { home, edges }
    }

    pub fn source(&self) -> VertexId {
        self.home
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn target(&self, graph: &MwGraph) -> VertexId {
        self.edges
            .last()
            .map_or(self.home, |&e| graph.edge(e).target)
    }

    /// Verifies every edge exists and starts where the previous one ended.
    pub fn check(&self, graph: &MwGraph) -> Result<(), GraphError> {
        if self.home >= graph.vertex_count() {
            return Err(GraphError::VertexOutOfRange {
                edge: self.edges.first().copied().unwrap_or(0),
                vertex: self.home,
                count: graph.vertex_count(),
            });
        }
        let mut at = self.home;
        for (position, &edge) in self.edges.iter().enumerate() {
            if edge >= graph.edge_count() {
                return Err(GraphError::UnknownEdge { edge });
            }
            let e = graph.edge(edge);
            if e.source != at {
                return Err(GraphError::BrokenPath {
                    position,
                    edge,
                    expected: at,
                });
            }
            at = e.target;
        }
        Ok(())
    }

    /// `self` followed by `other`; fails unless `other` starts where `self` ends.
    pub fn concat(&self, other: &Path, graph: &MwGraph) -> Result<Path, GraphError> {
        let end = self.target(graph);
        if other.home != end {
            return Err(GraphError::BrokenPath {
                position: self.len(),
                edge: other.edges.first().copied().unwrap_or(usize::MAX),
                expected: end,
            });
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            home: self.home,
            edges,
        })
    }

    /// The path with `e` appended (no chaining check).
    pub fn extended(&self, e: EdgeId) -> Path {
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.extend_from_slice(&self.edges);
        edges.push(e);
        Path {
            home: self.home,
            edges,
        }
    }

    /// The parent `α⁻` (last edge removed); `None` for the empty path.
    pub fn parent(&self) -> Option<Path> {
        let (_, init) = self.edges.split_last()?;
        Some(Path {
            home: self.home,
            edges: init.to_vec(),
        })
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.home == other.home && other.edges.starts_with(&self.edges)
    }

    /// Product of the upper edge ratios along the path; 1 for the empty path.
    pub fn ratio(&self, graph: &MwGraph) -> Result<f64, GraphError> {
        self.check(graph)?;
        Ok(self.ratio_with(graph.upper_ratios()))
    }

    pub(crate) fn ratio_with(&self, ratios: &[f64]) -> f64 {
        self.edges.iter().fold(1.0, |acc, &e| acc * ratios[e])
    }
}

/// All paths of exactly `length` edges leaving `from`, in lexicographic
/// order of edge ids.
pub fn enumerate_paths(graph: &MwGraph, from: VertexId, length: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut edges = Vec::with_capacity(length);
    // depth-first with explicit cursors
    let mut cursors: Vec<usize> = vec![0];
    let mut at = vec![from];
    loop {
        let depth = edges.len();
        if depth == length {
            out.push(Path::from_parts_unchecked(from, edges.clone()));
        } else {
            let v = at[depth];
            let c = cursors[depth];
            if let Some(&e) = graph.outgoing(v).get(c) {
                cursors[depth] += 1;
                edges.push(e);
                at.push(graph.edge(e).target);
                cursors.push(0);
                continue;
            }
        }
        // backtrack
        if edges.pop().is_none() {
            break;
        }
        at.pop();
        cursors.pop();
    }
    out
}

/// A finite set of pairwise incomparable paths that meets every infinite
/// admissible string exactly once, grouped by home vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCut {
    per_vertex: Vec<Vec<Path>>,
}

impl CrossCut {
    /// Paths of the cross-cut starting at `u`, in lexicographic order.
    pub fn at(&self, u: VertexId) -> &[Path] {
        &self.per_vertex[u]
    }

    pub fn len(&self) -> usize {
        self.per_vertex.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.per_vertex.iter().flatten()
    }

    /// The unique element that is a prefix of `path`, if any.
    pub fn prefix_of(&self, path: &Path) -> Option<&Path> {
        let set = self.per_vertex.get(path.source())?;
        // lexicographic order puts the only candidate just before `path`
        let idx = match set.binary_search(path) {
            Ok(i) => return Some(&set[i]),
            Err(i) => i,
        };
        idx.checked_sub(1)
            .map(|i| &set[i])
            .filter(|p| p.is_prefix_of(path))
    }

    /// No element is a proper prefix of another.
    pub fn is_antichain(&self) -> bool {
        self.per_vertex
            .iter()
            .all(|set| set.windows(2).all(|w| !w[0].is_prefix_of(&w[1])))
    }
}

pub const DEFAULT_CROSS_CUT_LIMIT: usize = 10_000_000;

/// The cross-cut "first time less than δ": every path `α` with
/// `r(α) < δ <= r(α⁻)`.
///
/// Built by depth-first expansion from each vertex's empty path, closing a
/// branch as soon as its ratio drops below `delta`. Returns an error past
/// `limit` paths.
pub fn cross_cut_first_below(
    graph: &MwGraph,
    delta: f64,
    limit: usize,
) -> Result<CrossCut, GraphError> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(GraphError::BadDelta(delta));
    }
    graph.require_strictly_contracting()?;
    let ratios = graph.upper_ratios();
    let mut per_vertex = Vec::with_capacity(graph.vertex_count());
    let mut total = 0usize;
    for u in 0..graph.vertex_count() {
        let mut set = Vec::new();
        // (edges so far, ratio, cursor into outgoing list of the endpoint)
        let mut edges: Vec<EdgeId> = Vec::new();
        let mut ratio_stack = vec![1.0f64];
        let mut at = vec![u];
        let mut cursors = vec![0usize];
        loop {
            let depth = edges.len();
            let r = ratio_stack[depth];
            if r < delta {
                set.push(Path::from_parts_unchecked(u, edges.clone()));
                total += 1;
                if total > limit {
                    return Err(GraphError::CrossCutTooLarge { limit });
                }
            } else {
                let v = at[depth];
                if let Some(&e) = graph.outgoing(v).get(cursors[depth]) {
                    cursors[depth] += 1;
                    edges.push(e);
                    ratio_stack.push(r * ratios[e]);
                    at.push(graph.edge(e).target);
                    cursors.push(0);
                    continue;
                }
            }
            if edges.pop().is_none() {
                break;
            }
            ratio_stack.pop();
            at.pop();
            cursors.pop();
        }
        per_vertex.push(set);
    }
    Ok(CrossCut { per_vertex })
}
