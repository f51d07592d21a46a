//! Point clouds as two-column text: `re im` per line, `#` comments.

use std::fmt::Write;

use mwdim_core::boxcount::PointCloud;
use num_complex::Complex64;

use crate::ParseError;

pub fn write_cloud(cloud: &PointCloud, c: Complex64) -> String {
    let mut out = String::with_capacity(cloud.points.len() * 44 + 128);
    let _ = writeln!(out, "# c {:?} {:?}", c.re, c.im);
    let _ = writeln!(
        out,
        "# seed {} burn_in {} points {} reseeds {}",
        cloud.seed,
        cloud.burn_in,
        cloud.points.len(),
        cloud.reseeds
    );
    write_points(&mut out, &cloud.points);
    out
}

pub(crate) fn write_points(out: &mut String, points: &[Complex64]) {
    for z in points {
        let _ = writeln!(out, "{:?} {:?}", z.re, z.im);
    }
}

pub fn parse_cloud(text: &str) -> Result<Vec<Complex64>, ParseError> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        points.push(parse_point(line, i + 1)?);
    }
    Ok(points)
}

pub(crate) fn parse_point(line: &str, number: usize) -> Result<Complex64, ParseError> {
    let mut it = line.split_whitespace();
    let (Some(re), Some(im), None) = (it.next(), it.next(), it.next()) else {
        return Err(ParseError::new(number, "expected two numbers `re im`"));
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseError::new(number, format!("{s:?} is not a finite number")))
    };
    Ok(Complex64::new(num(re)?, num(im)?))
}
