//! Tables and structured documents for bounds and box-count runs.

use std::fmt::Write;

use mwdim_core::boxcount::BoxCountEstimate;
use mwdim_core::julia::{BoundRegion, BoundsReport, BoundsWarning, PartitionConfig};
use mwdim_core::SolverConfig;
use serde_json::{json, Value};

use crate::format::{round_down3, round_up3, sig12};

pub const BOUNDS_HEADER: &str = "level\tnodes\ts2\ts1\twidth\tseconds";

/// Tab-separated rows `level nodes s2 s1 width seconds`.
pub fn bounds_tsv(report: &BoundsReport) -> String {
    let mut out = String::new();
    out.push_str(BOUNDS_HEADER);
    out.push('\n');
    for l in &report.levels {
        let secs = l.seconds.map_or_else(|| "NA".to_string(), |s| format!("{s:.3}"));
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            l.level,
            l.nodes,
            sig12(l.s2()),
            sig12(l.s1()),
            sig12(l.width()),
            secs
        );
    }
    out
}

fn warning_json(w: &BoundsWarning) -> Value {
    match *w {
        BoundsWarning::BracketOrder { level, s2, s1 } => {
            json!({"kind": "bracket_order", "level": level, "s2": s2, "s1": s1})
        }
        BoundsWarning::NotNarrower { level, previous, width } => {
            json!({"kind": "not_narrower", "level": level, "previous_width": previous, "width": width})
        }
    }
}

pub fn warning_text(w: &BoundsWarning) -> String {
    match *w {
        BoundsWarning::BracketOrder { level, s2, s1 } => {
            format!("level {level}: lower bound {} exceeds upper bound {}", sig12(s2), sig12(s1))
        }
        BoundsWarning::NotNarrower { level, previous, width } => format!(
            "level {level}: bracket width {} is wider than the previous {}",
            sig12(width),
            sig12(previous)
        ),
    }
}

pub fn bounds_json(report: &BoundsReport, partition: &PartitionConfig, solver: &SolverConfig) -> Value {
    let levels: Vec<Value> = report
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "nodes": l.nodes,
                "edges": l.edges,
                "s2": l.s2(),
                "s1": l.s1(),
                "width": l.width(),
                "seconds": l.seconds,
                "min_modulus": l.min_modulus,
                "max_modulus": l.max_modulus,
                "lower_evaluations": l.lower.evaluations,
                "upper_evaluations": l.upper.evaluations,
                "power_iterations": l.lower.total_iterations() + l.upper.total_iterations(),
            })
        })
        .collect();
    let bracket = report.last().map(|l| {
        json!({
            "s2": l.s2(),
            "s1": l.s1(),
            "display": [round_down3(l.s2()), round_up3(l.s1())],
        })
    });
    json!({
        "c": {"re": report.c.re, "im": report.c.im},
        "escape_radius": report.escape_radius,
        "rhombus": report.rhombus.map(|r| json!({"real": r.real, "imag": r.imag})),
        "partition": {
            "samples_per_side": partition.samples_per_side,
            "bound_region": match partition.bound_region {
                BoundRegion::Source => "source",
                BoundRegion::Image => "image",
            },
            "extra_slack": partition.extra_slack,
            "containment_tol": partition.containment_tol,
        },
        "solver": {
            "spectral_tol": solver.spectral_tol,
            "dimension_tol": solver.dimension_tol,
            "max_iter": solver.max_iter,
        },
        "levels": levels,
        "bracket": bracket,
        "failure": report.failure.as_ref().map(|f| json!({"level": f.level, "error": f.error.to_string()})),
        "warnings": report.warnings.iter().map(warning_json).collect::<Vec<_>>(),
    })
}

/// Tab-separated `(δ, N)` rows.
pub fn boxdim_table(est: &BoxCountEstimate) -> String {
    let mut out = String::from("delta\tcount\n");
    for (d, n) in &est.pairs {
        let _ = writeln!(out, "{}\t{n}", sig12(*d));
    }
    out
}

pub fn boxdim_summary(est: &BoxCountEstimate, points: usize) -> String {
    format!(
        "slope {}\nintercept {}\nresidual {}\npoints {points}\nscales {}\n",
        sig12(est.slope),
        sig12(est.intercept),
        sig12(est.residual),
        est.pairs.len()
    )
}
