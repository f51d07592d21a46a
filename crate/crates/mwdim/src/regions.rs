//! Region boundaries for plotting.
//!
//! ```text
//! # c -0.5 0
//! # escape_radius 1.3660254037844386
//! # level 1
//! region AA A
//! 1.2 0.3
//! ...
//! ```
//!
//! Each `region NAME QUADRANT` line starts a closed polygon; the point lines
//! that follow are its boundary samples.

use std::fmt::Write;

use mwdim_core::julia::RefinedIfs;
use num_complex::Complex64;

use crate::cloud::{parse_point, write_points};
use crate::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedRegion {
    pub name: String,
    pub quadrant: String,
    pub boundary: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RegionsFile {
    pub c: Option<Complex64>,
    pub escape_radius: Option<f64>,
    pub level: Option<usize>,
    pub regions: Vec<NamedRegion>,
}

pub fn write_regions(ifs: &RefinedIfs) -> String {
    let c = ifs.map().c();
    let mut out = String::new();
    let _ = writeln!(out, "# c {:?} {:?}", c.re, c.im);
    let _ = writeln!(out, "# escape_radius {:?}", ifs.map().escape_radius());
    let _ = writeln!(out, "# rhombus {:?} {:?}", ifs.rhombus().real, ifs.rhombus().imag);
    let _ = writeln!(out, "# level {}", ifs.level());
    for (v, r) in ifs.regions().iter().enumerate() {
        let _ = writeln!(out, "region {} {}", ifs.word(v), r.quadrant);
        write_points(&mut out, &r.boundary);
    }
    out
}

pub fn parse_regions(text: &str) -> Result<RegionsFile, ParseError> {
    let mut file = RegionsFile::default();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.trim();
        if let Some(header) = line.strip_prefix('#') {
            let mut it = header.split_whitespace();
            let bad = || ParseError::new(number, format!("malformed header {line:?}"));
            let num = |s: Option<&str>| s.and_then(|s| s.parse::<f64>().ok()).ok_or_else(bad);
            match it.next() {
                Some("c") => file.c = Some(Complex64::new(num(it.next())?, num(it.next())?)),
                Some("escape_radius") => file.escape_radius = Some(num(it.next())?),
                Some("level") => {
                    file.level = Some(it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?)
                }
                _ => {}
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("region") {
            let mut it = rest.split_whitespace();
            let name = it
                .next()
                .ok_or_else(|| ParseError::new(number, "region line needs a name"))?;
            file.regions.push(NamedRegion {
                name: name.to_string(),
                quadrant: it.next().unwrap_or("").to_string(),
                boundary: Vec::new(),
            });
            continue;
        }
        let z = parse_point(line, number)?;
        match file.regions.last_mut() {
            Some(r) => r.boundary.push(z),
            None => return Err(ParseError::new(number, "point before the first `region` line")),
        }
    }
    Ok(file)
}
