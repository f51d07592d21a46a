//! The subcommands. Each writes its report to `out`, warnings to `err`, and
//! returns an error carrying the exit class.

use std::fs;
use std::io::Write;
use std::path::Path;

use mwdim_core::boxcount::{estimate_dimension, geometric_deltas, sample_julia, MIN_SCALES};
use mwdim_core::julia::{bounds_pipeline_timed, BoundRegion, PartitionConfig, QuadraticMap};
use mwdim_core::spectral::solve_dimension;
use mwdim_core::{DimensionResult, RatioKind, SolverConfig, ValidationIssue};

use crate::cli::{BoundRegionArg, BoxdimArgs, Cli, Command, DimArgs, JuliaBoundsArgs, RenderArgs, SampleArgs, Which};
use crate::cloud::{parse_cloud, write_cloud};
use crate::format::{bracket, sig12};
use crate::graph_file::parse_graph;
use crate::regions::{parse_regions, write_regions};
use crate::report::{bounds_json, bounds_tsv, boxdim_summary, boxdim_table, warning_text, BOUNDS_HEADER};
use crate::svg::{render, Figure};
use crate::CliError;

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Dim(a) => cmd_dim(a, out, err),
        Command::JuliaBounds(a) => cmd_julia_bounds(a, out, err),
        Command::Sample(a) => cmd_sample(a, out),
        Command::Boxdim(a) => cmd_boxdim(a, out),
        Command::Render(a) => cmd_render(a, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must be positive, got {v}")))
    }
}

fn print_dimension(out: &mut dyn Write, kind: RatioKind, d: &DimensionResult) -> std::io::Result<()> {
    let residual = d.diagnostics.last().map_or(0.0, |p| p.residual);
    writeln!(out, "{kind} s = {}", sig12(d.s_star))?;
    writeln!(
        out,
        "  bracket [{}, {}]  evaluations {}  power iterations {}  last residual {residual:.3e}",
        sig12(d.lo),
        sig12(d.hi),
        d.evaluations,
        d.total_iterations()
    )
}

pub fn cmd_dim(args: &DimArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    positive("tol", args.tol)?;
    let text = read(&args.graph)?;
    let graph = parse_graph(&text).map_err(|error| CliError::Parse {
        path: args.graph.clone(),
        error,
    })?;
    let report = graph.validate();
    let mut fatal = Vec::new();
    for issue in &report.issues {
        match issue {
            ValidationIssue::LowOutDegree { degree: 1, .. } | ValidationIssue::RatioNotBelowOne { .. } => {
                let _ = writeln!(err, "warning: {issue}");
            }
            _ => fatal.push(issue.to_string()),
        }
    }
    if !fatal.is_empty() {
        return Err(CliError::Validation(fatal.join("; ")));
    }
    if !graph.is_contracting() {
        return Err(CliError::Validation(
            "not contracting: some cycle has ratio product >= 1".into(),
        ));
    }
    let kinds: &[RatioKind] = match args.which {
        Which::Upper => &[RatioKind::Upper],
        Which::Lower => &[RatioKind::Lower],
        Which::Both if graph.has_lower() => &[RatioKind::Upper, RatioKind::Lower],
        Which::Both => &[RatioKind::Upper],
    };
    let cfg = SolverConfig {
        dimension_tol: args.tol,
        ..SolverConfig::default()
    };
    writeln!(out, "graph {} vertices, {} edges", graph.vertex_count(), graph.edge_count()).map_err(stdout_err)?;
    let mut solved = Vec::new();
    for &kind in kinds {
        let d = solve_dimension(&graph, kind, &cfg)?;
        print_dimension(out, kind, &d).map_err(stdout_err)?;
        solved.push(d.s_star);
    }
    if let [upper, lower] = solved[..] {
        writeln!(out, "bracket {}", bracket(lower, upper)).map_err(stdout_err)?;
    }
    Ok(())
}

pub fn cmd_julia_bounds(args: &JuliaBoundsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    positive("tol", args.tol)?;
    if args.depth > args.max_depth {
        return Err(CliError::Usage(format!(
            "--depth {} exceeds --max-depth {} (each level doubles memory)",
            args.depth, args.max_depth
        )));
    }
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(args.extra_slack >= 0.0) {
        return Err(CliError::Usage("--extra-slack must be nonnegative".into()));
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let map = QuadraticMap::new(args.c);
    let partition = PartitionConfig {
        samples_per_side: args.samples,
        bound_region: match args.bound_region {
            BoundRegionArg::Source => BoundRegion::Source,
            BoundRegionArg::Image => BoundRegion::Image,
        },
        extra_slack: args.extra_slack,
        ..PartitionConfig::default()
    };
    let solver = SolverConfig {
        dimension_tol: args.tol,
        ..SolverConfig::default()
    };

    writeln!(out, "{BOUNDS_HEADER}").map_err(stdout_err)?;
    let mut io_failure: Option<CliError> = None;
    let report = bounds_pipeline_timed(&map, args.depth, &partition, &solver, &mut |ifs, b| {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.3}",
            b.level,
            b.nodes,
            sig12(b.s2()),
            sig12(b.s1()),
            sig12(b.width()),
            b.seconds.unwrap_or(f64::NAN)
        );
        if let Some(dir) = &args.out {
            if b.level <= args.regions_upto && io_failure.is_none() {
                let path = dir.join(format!("regions-level{}.txt", b.level));
                if let Err(e) = write(&path, &write_regions(ifs)) {
                    io_failure = Some(e);
                }
            }
        }
    });
    if let Some(e) = io_failure {
        return Err(e);
    }
    if let Some(r) = report.rhombus {
        let _ = writeln!(err, "rhombus: real {} imag {}", sig12(r.real), sig12(r.imag));
    }
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {}", warning_text(w));
    }
    if let Some(dir) = &args.out {
        write(&dir.join("bounds.tsv"), &bounds_tsv(&report))?;
        let doc = serde_json::to_string_pretty(&bounds_json(&report, &partition, &solver))
            .expect("report serializes");
        write(&dir.join("bounds.json"), &(doc + "\n"))?;
    }
    if let Some(last) = report.last() {
        writeln!(
            out,
            "level {}: {} <= dim <= {}  ({})",
            last.level,
            sig12(last.s2()),
            sig12(last.s1()),
            bracket(last.s2(), last.s1())
        )
        .map_err(stdout_err)?;
    }
    match report.failure {
        Some(f) => {
            let _ = writeln!(err, "stopped at level {}", f.level);
            Err(f.error.into())
        }
        None => Ok(()),
    }
}

pub fn cmd_sample(args: &SampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let map = QuadraticMap::new(args.c);
    let cloud = sample_julia(&map, args.n, args.burn_in, args.seed);
    write(&args.out, &write_cloud(&cloud, args.c))?;
    let max = cloud.points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    writeln!(
        out,
        "wrote {} points to {} (seed {}, burn-in {}, reseeds {}, max |z| {}, escape radius {})",
        cloud.points.len(),
        args.out.display(),
        args.seed,
        args.burn_in,
        cloud.reseeds,
        sig12(max),
        sig12(map.escape_radius())
    )
    .map_err(stdout_err)
}

pub fn cmd_boxdim(args: &BoxdimArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.scales < MIN_SCALES {
        return Err(CliError::Usage(format!(
            "--scales {} is too few; need at least {MIN_SCALES}",
            args.scales
        )));
    }
    if !(args.margin >= 0.0) {
        return Err(CliError::Usage("--margin must be nonnegative".into()));
    }
    let deltas = geometric_deltas(args.dmin, args.dmax, args.scales)?;
    let points = parse_cloud(&read(&args.cloud)?).map_err(|error| CliError::Parse {
        path: args.cloud.clone(),
        error,
    })?;
    let est = estimate_dimension(&points, &deltas)?;
    let table = boxdim_table(&est);
    let summary = boxdim_summary(&est, points.len());
    write!(out, "{table}{summary}").map_err(stdout_err)?;
    if let Some(path) = &args.out {
        let commented: String = summary.lines().map(|l| format!("# {l}\n")).collect();
        write(path, &(commented + &table))?;
    }
    if let Some((lo, hi)) = args.bracket {
        let ok = lo - args.margin <= est.slope && est.slope <= hi + args.margin;
        writeln!(out, "consistent {}", if ok { "yes" } else { "no" }).map_err(stdout_err)?;
        if !ok {
            return Err(CliError::Check(format!(
                "slope {} outside [{}, {}] widened by {}",
                sig12(est.slope),
                sig12(lo),
                sig12(hi),
                args.margin
            )));
        }
    }
    Ok(())
}

pub fn cmd_render(args: &RenderArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.regions.is_empty() && args.cloud.is_none() {
        return Err(CliError::Usage("nothing to render: give --regions and/or --cloud".into()));
    }
    let mut regions = Vec::new();
    let mut escape_radius = None;
    for path in &args.regions {
        let file = parse_regions(&read(path)?).map_err(|error| CliError::Parse {
            path: path.clone(),
            error,
        })?;
        escape_radius = escape_radius.or(file.escape_radius);
        regions.extend(file.regions);
    }
    let cloud = match &args.cloud {
        Some(path) => parse_cloud(&read(path)?).map_err(|error| CliError::Parse {
            path: path.clone(),
            error,
        })?,
        None => Vec::new(),
    };
    let svg = render(&Figure {
        regions: &regions,
        cloud: &cloud,
        escape_radius,
        size: args.size,
    });
    write(&args.out, &svg)?;
    writeln!(
        out,
        "wrote {}: {} regions, {} points",
        args.out.display(),
        regions.len(),
        cloud.len()
    )
    .map_err(stdout_err)
}
