use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "mwdim", version, about = "Dimension bounds for graph-directed IFS and Julia sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve ρ(M(s)) = 1 for a graph file.
    Dim(DimArgs),
    /// Dimension brackets for the Julia set of z² + c by partition refinement.
    JuliaBounds(JuliaBoundsArgs),
    /// Sample a Julia set by random inverse iteration.
    Sample(SampleArgs),
    /// Box-counting estimate for a point cloud.
    Boxdim(BoxdimArgs),
    /// Draw regions and a point cloud as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Upper,
    Lower,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundRegionArg {
    Source,
    Image,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// `both` falls back to `upper` when the graph has no lower ratios.
    #[arg(long, value_enum, default_value_t = Which::Both)]
    pub which: Which,
    /// Tolerance on s.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct JuliaBoundsArgs {
    /// The parameter c as `RE` or `RE,IM`.
    #[arg(long, default_value = "-0.5", value_parser = parse_c, allow_hyphen_values = true)]
    pub c: Complex64,
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
    /// Refuse depths above this (memory grows as 2^depth).
    #[arg(long, default_value_t = 14)]
    pub max_depth: usize,
    /// Tolerance on each dimension.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Directory for bounds.tsv, bounds.json and region files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write region boundaries for levels up to this one.
    #[arg(long, default_value_t = 1)]
    pub regions_upto: usize,
    /// Boundary samples per side of each initial region.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = BoundRegionArg::Source)]
    pub bound_region: BoundRegionArg,
    /// Extra slack added to every modulus bound.
    #[arg(long, default_value_t = 0.0)]
    pub extra_slack: f64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, default_value = "-0.5", value_parser = parse_c, allow_hyphen_values = true)]
    pub c: Complex64,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoxdimArgs {
    #[arg(long)]
    pub cloud: PathBuf,
    #[arg(long, default_value_t = 1.0 / 512.0)]
    pub dmin: f64,
    #[arg(long, default_value_t = 1.0 / 16.0)]
    pub dmax: f64,
    #[arg(long, default_value_t = 6)]
    pub scales: usize,
    /// Write the (δ, N) table here as well.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Check the slope against a bracket `LO,HI`; exit 7 if outside.
    #[arg(long, value_parser = parse_pair)]
    pub bracket: Option<(f64, f64)>,
    /// Allowed distance outside the bracket.
    #[arg(long, default_value_t = 0.15)]
    pub margin: f64,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Region files (repeatable).
    #[arg(long)]
    pub regions: Vec<PathBuf>,
    #[arg(long)]
    pub cloud: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Image side in pixels.
    #[arg(long, default_value_t = 800)]
    pub size: u32,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("{s:?} is not a finite number"))
}

pub fn parse_c(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Complex64::new(parse_f64(s)?, 0.0)),
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected LO,HI")?;
    let (a, b) = (parse_f64(a)?, parse_f64(b)?);
    if a > b {
        return Err(format!("bracket {a},{b} is reversed"));
    }
    Ok((a, b))
}
