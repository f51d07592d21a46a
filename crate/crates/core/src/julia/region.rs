use alloc::vec::Vec;

use num_complex::Complex64;

use super::{JuliaError, Quadrant};
use crate::graph::Path;

/// A planar region given by samples along its boundary, traversed as a
/// closed polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    /// Path in the quadrant graph naming the region; its home vertex is the
    /// quadrant the region sits in.
    pub id: Path,
    pub quadrant: Quadrant,
    pub boundary: Vec<Complex64>,
}

impl Region {
    pub fn new(id: Path, quadrant: Quadrant, boundary: Vec<Complex64>) -> Self {
        Region {
            id,
            quadrant,
            boundary,
        }
    }

    pub fn contains(&self, p: Complex64) -> bool {
        polygon_contains(&self.boundary, p)
    }

    pub fn max_modulus_sample(&self) -> f64 {
        self.boundary.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `m <= |z| <= M` over a region, after slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusBounds {
    pub min: f64,
    pub max: f64,
    /// Slack subtracted at the segment realising `min`.
    pub slack: f64,
}

/// Per-edge ratio bounds for an inverse branch whose image is the region:
/// `1/(2M) |w₂ − w₁| <= |f(w₂) − f(w₁)| <= 1/(2m) |w₂ − w₁|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBounds {
    pub lower: f64,
    pub upper: f64,
    pub modulus: ModulusBounds,
}

/// Ray-casting point-in-polygon test (boundary points may go either way).
pub fn polygon_contains(poly: &[Complex64], p: Complex64) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.im > p.im) != (b.im > p.im) {
            let x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if p.re < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Distance from `p` to the segment `[a, b]`.
pub fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * d.re + (p - a).im * d.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (a + d * t - p).norm()
}

/// Distance from `p` to the closed polygon.
pub fn polygon_distance(poly: &[Complex64], p: Complex64) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| segment_distance(poly[i], poly[(i + 1) % n], p))
        .fold(f64::INFINITY, f64::min)
}

/// Bounds on `|z|` over a region from its boundary samples.
///
/// `|z|` has no interior extremum away from the origin, so both bounds are
/// read off the boundary. Each edge of the sample polygon contributes its
/// exact distance to the origin and its endpoint moduli, widened by a local
/// allowance for the true curve bowing away from the chord: a quarter of
/// the smaller second difference at the edge's endpoints (the sagitta of a
/// circular arc is an eighth of it). Taking the smaller one keeps corners,
/// which are always samples, from inflating the allowance on the smooth
/// side. `extra_slack` is added on top.
pub fn modulus_bounds(boundary: &[Complex64], extra_slack: f64) -> Result<ModulusBounds, JuliaError> {
    let n = boundary.len();
    if n == 0 {
        return Err(JuliaError::EmptyRegion);
    }
    if polygon_contains(boundary, Complex64::new(0.0, 0.0)) {
        return Err(JuliaError::OriginInRegion);
    }
    let second = |i: usize| {
        let prev = boundary[(i + n - 1) % n];
        let next = boundary[(i + 1) % n];
        (prev - boundary[i] * 2.0 + next).norm()
    };
    let origin = Complex64::new(0.0, 0.0);
    let mut min = f64::INFINITY;
    let mut min_slack = 0.0;
    let mut max = 0.0f64;
    let mut d_here = second(0);
    for i in 0..n {
        let j = (i + 1) % n;
        let d_next = second(j);
        let slack = 0.25 * d_here.min(d_next) + extra_slack;
        let (a, b) = (boundary[i], boundary[j]);
        let lo = segment_distance(a, b, origin) - slack;
        if lo < min {
            min = lo;
            min_slack = slack;
        }
        max = max.max(a.norm().max(b.norm()) + slack);
        d_here = d_next;
    }
    if !(min > 0.0) {
        return Err(JuliaError::TooCloseToOrigin {
            min: min + min_slack,
            slack: min_slack,
        });
    }
    Ok(ModulusBounds {
        min,
        max,
        slack: min_slack,
    })
}

/// Lipschitz bounds `(1/(2M), 1/(2m))` for the inverse branch onto a region.
pub fn derivative_ratio_bounds(region: &Region, extra_slack: f64) -> Result<RatioBounds, JuliaError> {
    ratio_bounds_of(&region.boundary, extra_slack)
}

pub(crate) fn ratio_bounds_of(boundary: &[Complex64], extra_slack: f64) -> Result<RatioBounds, JuliaError> {
    let modulus = modulus_bounds(boundary, extra_slack)?;
    Ok(RatioBounds {
        lower: 0.5 / modulus.max,
        upper: 0.5 / modulus.min,
        modulus,
    })
}
