//! Static SVG figures of regions, the escape circle, and point clouds.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_complex::Complex64;

use crate::regions::NamedRegion;

/// `px = scale·(re + extent)`, `py = scale·(extent − im)`: the square
/// `[−extent, extent]²` onto `[0, size]²` with the imaginary axis up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform {
    pub scale: f64,
    pub extent: f64,
}

impl Transform {
    pub fn fit(size: u32, extent: f64) -> Self {
        Transform {
            scale: size as f64 / (2.0 * extent),
            extent,
        }
    }

    pub fn apply(&self, z: Complex64) -> (f64, f64) {
        (self.scale * (z.re + self.extent), self.scale * (self.extent - z.im))
    }

    pub fn describe(&self) -> String {
        format!(
            "px = {s}*(re + {e}); py = {s}*({e} - im)",
            s = self.scale,
            e = self.extent
        )
    }
}

pub struct Figure<'a> {
    pub regions: &'a [NamedRegion],
    pub cloud: &'a [Complex64],
    pub escape_radius: Option<f64>,
    pub size: u32,
}

fn extent(fig: &Figure) -> f64 {
    let mut e = fig.escape_radius.unwrap_or(0.0);
    let all = fig.regions.iter().flat_map(|r| r.boundary.iter()).chain(fig.cloud);
    for z in all {
        e = e.max(z.re.abs()).max(z.im.abs());
    }
    if e > 0.0 {
        1.05 * e
    } else {
        1.0
    }
}

/// Regions become closed polygons; cloud points are binned to pixels and
/// drawn as one path of unit squares, so file size is bounded by the image
/// area rather than the cloud size.
pub fn render(fig: &Figure) -> String {
    let size = fig.size.max(1);
    let t = Transform::fit(size, extent(fig));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" data-transform="{}">"#,
        t.describe()
    );
    let _ = writeln!(out, "<desc>complex plane; {}</desc>", t.describe());
    let _ = writeln!(out, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    if let Some(r) = fig.escape_radius {
        let (cx, cy) = t.apply(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            out,
            r#"<circle class="escape" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#,
            r * t.scale
        );
    }
    for region in fig.regions {
        let _ = write!(
            out,
            r#"<polygon class="region" data-name="{}" fill="none" stroke="steelblue" stroke-width="0.8" points=""#,
            escape(&region.name)
        );
        for (i, z) in region.boundary.iter().enumerate() {
            let (x, y) = t.apply(*z);
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{x:.3},{y:.3}");
        }
        out.push_str("\"/>\n");
    }
    let pixels: BTreeSet<(i64, i64)> = fig
        .cloud
        .iter()
        .map(|z| {
            let (x, y) = t.apply(*z);
            (x.floor() as i64, y.floor() as i64)
        })
        .collect();
    if !pixels.is_empty() {
        out.push_str(r#"<path class="cloud" fill="black" d=""#);
        for (x, y) in pixels {
            let _ = write!(out, "M{x} {y}h1v1h-1z");
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('"', "&quot;")
}
