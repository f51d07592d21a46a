//! Dimension brackets for the Julia set of `z² + c` from a refined Markov
//! partition.
//!
//! The plane is split into four quadrant regions, cut out of the escape
//! disk by an inner rhombus with vertices on the axes. Each region is mapped
//! into itself by the inverse branches of the quadratic map according to the
//! quadrant graph A→{A,B}, B→{C,D}, C→{A,B}, D→{C,D}. Level `k` of the
//! refinement has one region per path of length `k` in that graph. The
//! derivative of an inverse branch onto a region `U` lies between
//! `1/(2 max|z|)` and `1/(2 min|z|)` over `U`, which gives lower and upper
//! ratios for every edge of the refined graph and hence a dimension bracket.

use alloc::boxed::Box;
use alloc::string::String;

use thiserror::Error;

use crate::graph::GraphError;
use crate::spectral::SpectralError;

mod map;
mod partition;
mod pipeline;
mod region;

pub use map::{Quadrant, QuadraticMap};
pub use partition::{
    base_boundary, build_initial_regions, in_base_region, path_word, BoundRegion,
    InitialPartition, PartitionConfig, RefinedIfs, Rhombus,
};
#[cfg(feature = "std")]
pub use pipeline::bounds_pipeline_timed;
pub use pipeline::{
    bounds_pipeline, bounds_pipeline_observed, BoundsReport, BoundsWarning, LevelBounds,
    LevelFailure,
};
pub use region::{
    derivative_ratio_bounds, modulus_bounds, polygon_contains, polygon_distance,
    segment_distance, ModulusBounds, RatioBounds, Region,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JuliaError {
    #[error("point {re} + {im}i is the critical value; inverse branches coincide")]
    BranchPoint { re: f64, im: f64 },
    #[error("region has no boundary samples")]
    EmptyRegion,
    #[error("region encloses the origin")]
    OriginInRegion,
    #[error("region comes within {min:e} of the origin (slack {slack:e})")]
    TooCloseToOrigin { min: f64, slack: f64 },
    #[error("critical value c lies in region {quadrant}; inverse branch is not single valued")]
    BranchPointInRegion { quadrant: map::Quadrant },
    #[error(
        "image of region {target} under the branch into {source_quadrant} leaves region \
         {source_quadrant} at {re} + {im}i"
    )]
    Containment {
        source_quadrant: map::Quadrant,
        target: map::Quadrant,
        re: f64,
        im: f64,
    },
    #[error("no parallelogram passed the containment check ({tried} tried); the default failed with: {default_failure}")]
    NoParallelogram {
        tried: usize,
        default_failure: Box<JuliaError>,
    },
    #[error("edge ratio {upper} >= 1 at vertex {vertex}: min |z| <= 1/2 there")]
    NotContracting { vertex: String, upper: f64 },
    #[error("region {region}: {error}")]
    InRegion {
        region: String,
        error: Box<JuliaError>,
    },
    #[error("invalid configuration: {0}")]
    BadConfig(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
