//! Sampling Julia sets by random inverse iteration, and box counting.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::julia::QuadraticMap;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoxCountError {
    #[error("no points to count")]
    NoPoints,
    #[error("point {index} is not finite")]
    NonFinitePoint { index: usize },
    #[error("box size {0} must be positive and finite")]
    BadDelta(f64),
    #[error("need at least {need} distinct box sizes, got {got}")]
    TooFewScales { need: usize, got: usize },
    #[error("box sizes must satisfy 0 < min < max (got {min}, {max})")]
    BadRange { min: f64, max: f64 },
}

pub const MIN_SCALES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Complex64>,
    pub seed: u64,
    pub burn_in: usize,
    /// Restarts forced by landing exactly on the critical value.
    pub reseeds: usize,
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn start_point(map: &QuadraticMap, rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(map.escape_radius(), core::f64::consts::TAU * unit(rng))
}

/// `n` points near the Julia set of `map`: start on the escape circle and
/// apply a uniformly random inverse branch at each step, discarding the
/// first `burn_in` iterates. The same seed gives the same cloud.
pub fn sample_julia(map: &QuadraticMap, n: usize, burn_in: usize, seed: u64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = start_point(map, &mut rng);
    let mut points = Vec::with_capacity(n);
    let mut reseeds = 0;
    let mut step = 0usize;
    while points.len() < n {
        let w = z - map.c();
        if w.re == 0.0 && w.im == 0.0 {
            reseeds += 1;
            z = start_point(map, &mut rng);
            step = 0;
            continue;
        }
        let root = w.sqrt();
        z = if rng.next_u32() & 1 == 0 { root } else { -root };
        step += 1;
        if step > burn_in {
            points.push(z);
        }
    }
    PointCloud {
        points,
        seed,
        burn_in,
        reseeds,
    }
}

fn check_points(points: &[Complex64]) -> Result<(), BoxCountError> {
    if points.is_empty() {
        return Err(BoxCountError::NoPoints);
    }
    match points.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        Some(index) => Err(BoxCountError::NonFinitePoint { index }),
        None => Ok(()),
    }
}

/// Number of cells of the grid with side `δ/√2` (diameter `δ`), anchored at
/// the origin, that contain at least one point.
pub fn box_count(points: &[Complex64], delta: f64) -> Result<usize, BoxCountError> {
    check_points(points)?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(BoxCountError::BadDelta(delta));
    }
    let side = delta * core::f64::consts::FRAC_1_SQRT_2;
    let mut cells: Vec<(i64, i64)> = points
        .iter()
        .map(|z| (libm::floor(z.re / side) as i64, libm::floor(z.im / side) as i64))
        .collect();
    cells.sort_unstable();
    cells.dedup();
    Ok(cells.len())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountEstimate {
    /// `(δ, N(δ))` in the order given.
    pub pairs: Vec<(f64, usize)>,
    /// Least-squares slope of `log N` against `−log δ`.
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// Fits `log N(δ) ≈ D·(−log δ) + b` over the given box sizes.
pub fn estimate_dimension(points: &[Complex64], deltas: &[f64]) -> Result<BoxCountEstimate, BoxCountError> {
    check_points(points)?;
    if let Some(&d) = deltas.iter().find(|d| !(**d > 0.0 && d.is_finite())) {
        return Err(BoxCountError::BadDelta(d));
    }
    let mut distinct = deltas.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < MIN_SCALES {
        return Err(BoxCountError::TooFewScales {
            need: MIN_SCALES,
            got: distinct.len(),
        });
    }
    let mut pairs = Vec::with_capacity(deltas.len());
    for &d in deltas {
        pairs.push((d, box_count(points, d)?));
    }
    let xs: Vec<f64> = pairs.iter().map(|p| -libm::log(p.0)).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| libm::log(p.1 as f64)).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok(BoxCountEstimate {
        pairs,
        slope,
        intercept,
        residual: libm::sqrt(sse / n),
    })
}

/// `count` box sizes spaced evenly in log scale from `max` down to `min`.
pub fn geometric_deltas(min: f64, max: f64, count: usize) -> Result<Vec<f64>, BoxCountError> {
    if !(min > 0.0 && min < max && max.is_finite()) {
        return Err(BoxCountError::BadRange { min, max });
    }
    if count < MIN_SCALES {
        return Err(BoxCountError::TooFewScales {
            need: MIN_SCALES,
            got: count,
        });
    }
    let (a, b) = (libm::log(max), libm::log(min));
    Ok((0..count)
        .map(|i| libm::exp(a + (b - a) * i as f64 / (count - 1) as f64))
        .collect())
}
