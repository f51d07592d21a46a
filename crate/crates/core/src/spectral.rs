//! Sparse nonnegative matrices `M(s)`, their Perron roots, and the
//! dimension `s` solving `ρ(M(s)) = 1`.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{GraphError, MwGraph, RatioKind, VertexId};
use crate::scc::strongly_connected_components;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(
        "power iteration did not converge in {iterations} iterations \
         (estimate {estimate}, residual {residual:e})"
    )]
    NoConvergence {
        estimate: f64,
        residual: f64,
        iterations: usize,
    },
    #[error("exponent must be finite and nonnegative, got {0}")]
    BadExponent(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("phi(0) = {0} < 1: some vertex has no outgoing edge")]
    PhiBelowOneAtZero(f64),
    #[error("phi stays >= 1 up to s = {0}; ratios are not contracting")]
    NoUpperBracket(f64),
    #[error("vector length {got} does not match matrix dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Row-compressed square matrix with nonnegative entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseNonnegMatrix {
    n: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseNonnegMatrix {
    /// Assembles from `(row, col, value)` triplets, summing duplicates.
    /// Negative or non-finite values are clamped out (treated as absent).
    pub fn from_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut t: Vec<(usize, usize, f64)> = triplets
            .into_iter()
            .filter(|&(r, c, v)| r < n && c < n && v.is_finite() && v >= 0.0)
            .collect();
        t.sort_by_key(|a| (a.0, a.1));
        let mut row_start = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(t.len());
        let mut vals: Vec<f64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
                continue;
            }
            cols.push(c);
            vals.push(v);
            row_start[r + 1] += 1;
            last = Some((r, c));
        }
        for i in 0..n {
            row_start[i + 1] += row_start[i];
        }
        SparseNonnegMatrix {
            n,
            row_start,
            cols,
            vals,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, (0..n).map(|i| (i, i, 1.0)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_start[r]..self.row_start[r + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.vals[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.row(r).find(|&(j, _)| j == c).map_or(0.0, |(_, v)| v)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|r| self.row(r).map(|(_, v)| v).sum()).collect()
    }

    /// Rows with no positive entry.
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&r| self.row(r).all(|(_, v)| v == 0.0))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|&v| v == 0.0)
    }

    /// `out = self · x`, accumulating each row left to right.
    pub fn mul_vec_into(&self, x: &[f64], out: &mut [f64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_start[r]..self.row_start[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *o = acc;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.mul_vec_into(x, &mut out);
        out
    }

    /// True iff the positive pattern contains a cycle, i.e. the matrix is
    /// not nilpotent.
    pub fn has_cycle(&self) -> bool {
        let comps = strongly_connected_components(self.n, |r| {
            self.row(r).filter(|&(_, v)| v > 0.0).map(|(c, _)| c)
        });
        comps
            .iter()
            .any(|c| c.len() > 1 || self.get(c[0], c[0]) > 0.0)
    }

    /// True iff the digraph of the positive pattern is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let comps = strongly_connected_components(self.n, |r| {
            self.row(r).filter(|&(_, v)| v > 0.0).map(|(c, _)| c)
        });
        // a single vertex needs a positive loop to be irreducible in the
        // 1×1 sense used here: [0] is reducible
        comps.len() == 1 && (self.n > 1 || self.get(0, 0) > 0.0)
    }
}

/// `M(s)`: entry `(u, v)` is `Σ r_e^s` over edges `u → v`.
pub fn build_matrix(
    graph: &MwGraph,
    s: f64,
    kind: RatioKind,
) -> Result<SparseNonnegMatrix, SpectralError> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(SpectralError::BadExponent(s));
    }
    let ratios = graph.ratios(kind)?;
    Ok(SparseNonnegMatrix::from_triplets(
        graph.vertex_count(),
        graph
            .edges()
            .iter()
            .zip(ratios)
            .map(|(e, &r)| (e.source, e.target, libm::pow(r, s))),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Power-iteration tolerance on the residual and on successive radii.
    pub spectral_tol: f64,
    pub max_iter: usize,
    /// Final bracket width for the dimension.
    pub dimension_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            spectral_tol: 1e-12,
            max_iter: 100_000,
            dimension_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub radius: f64,
    /// Positive and summing to one when the matrix is irreducible.
    pub eigenvector: Vec<f64>,
    /// `max |(A x − ρ x)_i|` at the returned pair.
    pub residual: f64,
    pub iterations: usize,
    /// Set for the zero matrix, whose eigenvector is just the uniform vector.
    pub degenerate: bool,
}

/// Perron root and eigenvector of a nonnegative matrix.
///
/// Iterates on `A/σ + I` with `σ` the largest row sum, which is primitive
/// whenever `A` is irreducible, so periodic patterns converge too. Iterates
/// are normalized to sum one.
pub fn spectral_radius(
    matrix: &SparseNonnegMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult, SpectralError> {
    spectral_radius_from(matrix, None, tol, max_iter)
}

/// As [`spectral_radius`], starting from `start` (e.g. the eigenvector of a
/// nearby matrix). Nonpositive entries in `start` are lifted.
pub fn spectral_radius_from(
    matrix: &SparseNonnegMatrix,
    start: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult, SpectralError> {
    if !(tol > 0.0) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let n = matrix.dim();
    let uniform = 1.0 / n.max(1) as f64;
    // nilpotent: radius exactly zero, and iteration would only creep there
    if n == 0 || !matrix.has_cycle() {
        return Ok(SpectralResult {
            radius: 0.0,
            eigenvector: vec![uniform; n],
            residual: 0.0,
            iterations: 0,
            degenerate: true,
        });
    }
    let mut x = match start {
        Some(s) if s.len() == n => {
            let floor = uniform * 1e-3;
            let mut v: Vec<f64> = s.iter().map(|&a| if a > floor { a } else { floor }).collect();
            let total: f64 = v.iter().sum();
            v.iter_mut().for_each(|a| *a /= total);
            v
        }
        Some(s) => {
            return Err(SpectralError::DimensionMismatch {
                expected: n,
                got: s.len(),
            })
        }
        None => vec![uniform; n],
    };
    let scale = matrix.row_sums().into_iter().fold(0.0, f64::max);
    let mut ax = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut radius = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        matrix.mul_vec_into(&x, &mut ax);
        let sum_x: f64 = x.iter().sum();
        radius = ax.iter().sum::<f64>() / sum_x;
        let mut xmax = 0.0f64;
        residual = 0.0;
        for (a, b) in ax.iter().zip(&x) {
            residual = residual.max((a - radius * b).abs());
            xmax = xmax.max(*b);
        }
        let settled = (radius - prev).abs() <= tol * radius.max(1.0);
        if residual <= tol * xmax && settled {
            return Ok(SpectralResult {
                radius,
                eigenvector: x,
                residual,
                iterations: it,
                degenerate: false,
            });
        }
        prev = radius;
        let mut total = 0.0;
        for (xi, a) in x.iter_mut().zip(&ax) {
            *xi += a / scale;
            total += *xi;
        }
        x.iter_mut().for_each(|v| *v /= total);
    }
    Err(SpectralError::NoConvergence {
        estimate: radius,
        residual,
        iterations: max_iter,
    })
}

/// `Φ(s) = ρ(M(s))`.
pub fn phi(
    graph: &MwGraph,
    s: f64,
    kind: RatioKind,
    config: &SolverConfig,
) -> Result<SpectralResult, SpectralError> {
    let m = build_matrix(graph, s, kind)?;
    spectral_radius(&m, config.spectral_tol, config.max_iter)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiEvaluation {
    pub s: f64,
    pub radius: f64,
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionResult {
    /// Midpoint of the final bracket.
    pub s_star: f64,
    /// `Φ(lo) >= 1 >= Φ(hi)`.
    pub lo: f64,
    pub hi: f64,
    pub evaluations: usize,
    pub diagnostics: Vec<PhiEvaluation>,
    /// Perron vector of the last evaluation.
    pub eigenvector: Vec<f64>,
}

impl DimensionResult {
    pub fn total_iterations(&self) -> usize {
        self.diagnostics.iter().map(|d| d.iterations).sum()
    }
}

/// Solves `Φ(s) = 1` by bracketing bisection.
///
/// Starts from `[0, 1]`, doubles the right end until `Φ < 1`, then halves
/// until the bracket is no wider than `config.dimension_tol`. Each Perron
/// solve is warm-started from the previous eigenvector.
pub fn solve_dimension(
    graph: &MwGraph,
    kind: RatioKind,
    config: &SolverConfig,
) -> Result<DimensionResult, SpectralError> {
    if !(config.dimension_tol > 0.0) {
        return Err(SpectralError::BadTolerance(config.dimension_tol));
    }
    // surfaces NoLowerRatios before any work
    graph.ratios(kind)?;

    let mut diagnostics = Vec::new();
    let mut warm: Option<Vec<f64>> = None;
    let mut eval = |s: f64, diagnostics: &mut Vec<PhiEvaluation>| -> Result<f64, SpectralError> {
        let m = build_matrix(graph, s, kind)?;
        let r = spectral_radius_from(&m, warm.as_deref(), config.spectral_tol, config.max_iter)?;
        diagnostics.push(PhiEvaluation {
            s,
            radius: r.radius,
            residual: r.residual,
            iterations: r.iterations,
        });
        if !r.degenerate {
            warm = Some(r.eigenvector);
        }
        Ok(r.radius)
    };

    let at_zero = eval(0.0, &mut diagnostics)?;
    if at_zero < 1.0 {
        return Err(SpectralError::PhiBelowOneAtZero(at_zero));
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while eval(hi, &mut diagnostics)? >= 1.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(SpectralError::NoUpperBracket(lo));
        }
    }
    while hi - lo > config.dimension_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval(mid, &mut diagnostics)? >= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let eigenvector = warm.unwrap_or_default();
    Ok(DimensionResult {
        s_star: 0.5 * (lo + hi),
        lo,
        hi,
        evaluations: diagnostics.len(),
        diagnostics,
        eigenvector,
    })
}

/// Entry `(u, v)` of `M(s)^k`, by `k` sparse products.
pub fn matrix_power_entry(
    graph: &MwGraph,
    s: f64,
    kind: RatioKind,
    u: VertexId,
    v: VertexId,
    k: usize,
) -> Result<f64, SpectralError> {
    let m = build_matrix(graph, s, kind)?;
    let n = m.dim();
    let mut col = vec![0.0; n];
    col[v] = 1.0;
    let mut next = vec![0.0; n];
    for _ in 0..k {
        m.mul_vec_into(&col, &mut next);
        core::mem::swap(&mut col, &mut next);
    }
    Ok(col[u])
}
