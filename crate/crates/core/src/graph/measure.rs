use alloc::vec::Vec;

use super::{GraphError, MwGraph, Path, RatioKind};
use crate::spectral::{build_matrix, solve_dimension, spectral_radius, SolverConfig, SpectralError};

/// The Perron eigenvector of `M(s)` at the graph's dimension.
///
/// `lambda` solves `λ_u = Σ_v M_uv(s) λ_v` with `Σ λ_u = 1`, which makes
/// `μ_u([α]) = r(α)^s λ_{target(α)}` a consistent family of cylinder
/// measures.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronData {
    pub s: f64,
    pub lambda: Vec<f64>,
    pub radius: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl PerronData {
    /// Solves for the dimension (to near machine precision) and returns the
    /// eigenvector there.
    pub fn at_dimension(
        graph: &MwGraph,
        kind: RatioKind,
        config: &SolverConfig,
    ) -> Result<Self, SpectralError> {
        let tight = SolverConfig {
            dimension_tol: config.dimension_tol.min(1e-14),
            ..*config
        };
        let dim = solve_dimension(graph, kind, &tight)?;
        Self::at(graph, dim.s_star, kind, config)
    }

    /// Eigen-data of `M(s)` at an arbitrary exponent.
    pub fn at(
        graph: &MwGraph,
        s: f64,
        kind: RatioKind,
        config: &SolverConfig,
    ) -> Result<Self, SpectralError> {
        let m = build_matrix(graph, s, kind)?;
        let r = spectral_radius(&m, config.spectral_tol, config.max_iter)?;
        Ok(PerronData {
            s,
            lambda: r.eigenvector,
            radius: r.radius,
            residual: r.residual,
            iterations: r.iterations,
        })
    }

    pub fn min_lambda(&self) -> f64 {
        self.lambda.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `μ([α]) = r(α)^s · λ_{target(α)}` using the upper ratios.
pub fn cylinder_measure(
    path: &Path,
    perron: &PerronData,
    graph: &MwGraph,
) -> Result<f64, GraphError> {
    let r = path.ratio(graph)?;
    Ok(libm::pow(r, perron.s) * perron.lambda[path.target(graph)])
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{cross_cut_first_below, DEFAULT_CROSS_CUT_LIMIT};
    use super::*;

    fn sample_graph() -> MwGraph {
        MwGraph::builder(3)
            .edge(0, 1, 0.4)
            .edge(0, 2, 0.3)
            .edge(1, 0, 0.55)
            .edge(1, 1, 0.2)
            .edge(2, 0, 0.35)
            .edge(2, 1, 0.6)
            .edge(2, 2, 0.25)
            .build()
            .unwrap()
    }

    #[test]
    fn empty_path_measure_is_lambda() {
        let g = sample_graph();
        let p = PerronData::at_dimension(&g, RatioKind::Upper, &SolverConfig::default()).unwrap();
        for u in 0..3 {
            assert_eq!(cylinder_measure(&Path::empty(u), &p, &g).unwrap(), p.lambda[u]);
        }
        assert!((p.lambda.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!((p.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measure_is_additive_over_children() {
        let g = sample_graph();
        let p = PerronData::at_dimension(&g, RatioKind::Upper, &SolverConfig::default()).unwrap();
        for alpha in super::super::enumerate_paths(&g, 2, 3) {
            let whole = cylinder_measure(&alpha, &p, &g).unwrap();
            let parts: f64 = g
                .outgoing(alpha.target(&g))
                .iter()
                .map(|&e| cylinder_measure(&alpha.extended(e), &p, &g).unwrap())
                .sum();
            assert!((whole - parts).abs() <= 1e-10 * whole);
        }
    }

    #[test]
    fn cross_cut_identity() {
        let g = sample_graph();
        let p = PerronData::at_dimension(&g, RatioKind::Upper, &SolverConfig::default()).unwrap();
        for delta in [0.5, 0.1, 0.02] {
            let cut = cross_cut_first_below(&g, delta, DEFAULT_CROSS_CUT_LIMIT).unwrap();
            for u in 0..3 {
                let total: f64 = cut
                    .at(u)
                    .iter()
                    .map(|a| cylinder_measure(a, &p, &g).unwrap())
                    .sum();
                assert!((total - p.lambda[u]).abs() <= 1e-10 * p.lambda[u]);
            }
        }
    }

    #[test]
    fn broken_path_has_no_measure() {
        let g = two_loops(0.5, 0.5);
        let p = PerronData::at_dimension(&g, RatioKind::Upper, &SolverConfig::default()).unwrap();
        assert!(cylinder_measure(&Path::from_parts_unchecked(0, alloc::vec![5]), &p, &g).is_err());
    }
}
