use alloc::vec::Vec;

use num_complex::Complex64;

use super::{JuliaError, PartitionConfig, QuadraticMap, RefinedIfs, Rhombus};
use crate::graph::RatioKind;
use crate::spectral::{solve_dimension, DimensionResult, SolverConfig};

/// Dimension bracket at one refinement level.
#[derive(Debug, Clone)]
pub struct LevelBounds {
    pub level: usize,
    pub nodes: usize,
    pub edges: usize,
    /// Dimension of the lower-ratio graph; a lower bound.
    pub lower: DimensionResult,
    /// Dimension of the upper-ratio graph; an upper bound.
    pub upper: DimensionResult,
    pub min_modulus: f64,
    pub max_modulus: f64,
    /// Wall-clock seconds for refinement plus both solves, when timed.
    pub seconds: Option<f64>,
}

impl LevelBounds {
    pub fn s2(&self) -> f64 {
        self.lower.s_star
    }

    pub fn s1(&self) -> f64 {
        self.upper.s_star
    }

    pub fn width(&self) -> f64 {
        self.s1() - self.s2()
    }

    pub fn contains(&self, d: f64) -> bool {
        self.s2() <= d && d <= self.s1()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelFailure {
    pub level: usize,
    pub error: JuliaError,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundsWarning {
    /// `s2 > s1` beyond solver tolerance at this level.
    BracketOrder { level: usize, s2: f64, s1: f64 },
    /// The bracket got wider than at the previous level.
    NotNarrower { level: usize, previous: f64, width: f64 },
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub c: Complex64,
    pub escape_radius: f64,
    pub rhombus: Option<Rhombus>,
    pub levels: Vec<LevelBounds>,
    /// Set when refinement stopped before the requested depth.
    pub failure: Option<LevelFailure>,
    pub warnings: Vec<BoundsWarning>,
}

impl BoundsReport {
    pub fn last(&self) -> Option<&LevelBounds> {
        self.levels.last()
    }

    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }
}

/// Brackets at levels `0..=max_level`.
pub fn bounds_pipeline(
    map: &QuadraticMap,
    max_level: usize,
    partition: &PartitionConfig,
    solver: &SolverConfig,
) -> BoundsReport {
    bounds_pipeline_observed(map, max_level, partition, solver, &mut || None, &mut |_, _| {})
}

/// [`bounds_pipeline`] with wall-clock timing.
#[cfg(feature = "std")]
pub fn bounds_pipeline_timed(
    map: &QuadraticMap,
    max_level: usize,
    partition: &PartitionConfig,
    solver: &SolverConfig,
    observe: &mut dyn FnMut(&RefinedIfs, &LevelBounds),
) -> BoundsReport {
    let start = std::time::Instant::now();
    bounds_pipeline_observed(
        map,
        max_level,
        partition,
        solver,
        &mut || Some(start.elapsed().as_secs_f64()),
        observe,
    )
}

/// The general driver. `clock` returns a monotone time in seconds (or
/// `None` when untimed); `observe` sees every level as it completes.
///
/// A failure at level `k` ends the run; levels below `k` are kept and the
/// failure is recorded in the report.
pub fn bounds_pipeline_observed(
    map: &QuadraticMap,
    max_level: usize,
    partition: &PartitionConfig,
    solver: &SolverConfig,
    clock: &mut dyn FnMut() -> Option<f64>,
    observe: &mut dyn FnMut(&RefinedIfs, &LevelBounds),
) -> BoundsReport {
    let mut report = BoundsReport {
        c: map.c(),
        escape_radius: map.escape_radius(),
        rhombus: None,
        levels: Vec::new(),
        failure: None,
        warnings: Vec::new(),
    };
    let mut started = clock();
    let mut current = match RefinedIfs::initial(*map, *partition) {
        Ok(ifs) => ifs,
        Err(error) => {
            report.failure = Some(LevelFailure { level: 0, error });
            return report;
        }
    };
    report.rhombus = Some(current.rhombus());
    for level in 0..=max_level {
        if level > 0 {
            current = match current.refine() {
                Ok(next) => next,
                Err(error) => {
                    report.failure = Some(LevelFailure { level, error });
                    break;
                }
            };
        }
        let bounds = match solve_level(&current, solver) {
            Ok(mut b) => {
                let now = clock();
                b.seconds = match (started, now) {
                    (Some(a), Some(z)) => Some(z - a),
                    _ => None,
                };
                started = now;
                b
            }
            Err(error) => {
                report.failure = Some(LevelFailure { level, error });
                break;
            }
        };
        let tol = 2.0 * solver.dimension_tol;
        if bounds.s2() > bounds.s1() + tol {
            report.warnings.push(BoundsWarning::BracketOrder {
                level,
                s2: bounds.s2(),
                s1: bounds.s1(),
            });
        }
        if let Some(prev) = report.levels.last() {
            if bounds.width() > prev.width() + tol {
                report.warnings.push(BoundsWarning::NotNarrower {
                    level,
                    previous: prev.width(),
                    width: bounds.width(),
                });
            }
        }
        observe(&current, &bounds);
        report.levels.push(bounds);
    }
    report
}

fn solve_level(ifs: &RefinedIfs, solver: &SolverConfig) -> Result<LevelBounds, JuliaError> {
    let g = ifs.graph();
    let lower = solve_dimension(g, RatioKind::Lower, solver)?;
    let upper = solve_dimension(g, RatioKind::Upper, solver)?;
    let mb = ifs.modulus_bounds();
    Ok(LevelBounds {
        level: ifs.level(),
        nodes: g.vertex_count(),
        edges: g.edge_count(),
        lower,
        upper,
        min_modulus: mb.iter().map(|b| b.min).fold(f64::INFINITY, f64::min),
        max_modulus: mb.iter().map(|b| b.max).fold(0.0, f64::max),
        seconds: None,
    })
}
