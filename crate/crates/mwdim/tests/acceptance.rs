//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Run with `cargo test -p mwdim --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mwdim::cli::{BoundRegionArg, JuliaBoundsArgs};
use mwdim::commands::cmd_julia_bounds;
use mwdim_core::boxcount::{estimate_dimension, sample_julia};
use mwdim_core::graph::{augment_for_sosc, cross_cut_first_below, cylinder_measure, DEFAULT_CROSS_CUT_LIMIT};
use mwdim_core::julia::QuadraticMap;
use mwdim_core::spectral::{build_matrix, matrix_power_entry, phi, solve_dimension, spectral_radius};
use mwdim_core::{MwGraph, Path, PerronData, RatioKind, SolverConfig, SparseNonnegMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sqrt3() -> f64 {
    3f64.sqrt()
}

fn julia_base(upper: f64, lower: f64) -> MwGraph {
    let mut b = MwGraph::builder(4);
    for (u, v) in [(0, 0), (0, 1), (1, 2), (1, 3), (2, 0), (2, 1), (3, 2), (3, 3)] {
        b.push(u, v, upper, Some(lower));
    }
    b.build().unwrap()
}

fn closed_forms() -> Outcome {
    let m0 = (9.0 + 3.0 * sqrt3()).sqrt() / 6.0;
    let g = julia_base(0.5 / m0, 1.0 / (1.0 + sqrt3()));
    let cfg = SolverConfig::default();
    let lower = solve_dimension(&g, RatioKind::Lower, &cfg).map_err(|e| e.to_string())?.s_star;
    let upper = solve_dimension(&g, RatioKind::Upper, &cfg).map_err(|e| e.to_string())?.s_star;
    let exact = 2f64.ln() / (1.0 + sqrt3()).ln();
    check(
        (lower - exact).abs() < 1e-8 && upper > 3.0410 && upper < 3.0420,
        format!("lower {lower:.12} (exact {exact:.12}), upper {upper:.12}"),
    )
}

/// Runs the `julia-bounds` command and reads back its final bracket line.
fn julia_bounds(depth: usize) -> Result<(f64, f64), String> {
    let args = JuliaBoundsArgs {
        c: Complex64::new(-0.5, 0.0),
        depth,
        max_depth: 14,
        tol: 1e-10,
        out: None,
        regions_upto: 0,
        samples: 256,
        bound_region: BoundRegionArg::Source,
        extra_slack: 0.0,
    };
    let mut out = Vec::new();
    let mut err = Vec::new();
    cmd_julia_bounds(&args, &mut out, &mut err).map_err(|e| e.to_string())?;
    let text = String::from_utf8(out).unwrap();
    let line = text
        .lines()
        .find(|l| l.starts_with(&format!("level {depth}:")))
        .ok_or_else(|| format!("no bracket line in output:\n{text}"))?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    // level K: S2 <= dim <= S1  (...)
    let s2 = fields[2].parse::<f64>().map_err(|e| e.to_string())?;
    let s1 = fields[6].parse::<f64>().map_err(|e| e.to_string())?;
    Ok((s2, s1))
}

fn level_zero() -> Outcome {
    let (s2, s1) = julia_bounds(0)?;
    check(
        s2 <= 0.690 && s1 >= 3.041 && s2 > 0.689 && s1 < 3.042,
        format!("({s2:.6}, {s1:.6})"),
    )
}

fn level_one() -> Outcome {
    let (s2, s1) = julia_bounds(1)?;
    check(
        (s2 - 0.735).abs() <= 0.05 && (s1 - 1.758).abs() <= 0.05,
        format!("({s2:.6}, {s1:.6})"),
    )
}

fn deep(bracket: &mut Option<(f64, f64)>) -> Outcome {
    let (s2, s1) = julia_bounds(10)?;
    *bracket = Some((s2, s1));
    let width = s1 - s2;
    check(
        width <= 0.05 && s2 <= 1.07336 && 1.07336 <= s1 && s2 <= 1.077 && s1 >= 1.069,
        format!("({s2:.6}, {s1:.6}), width {width:.6}"),
    )
}

/// Random strongly connected graph: spanning cycle plus `extra` random
/// edges, out-degree at least two everywhere.
fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, lo: f64, hi: f64, extra: usize) -> MwGraph {
    let n = rng.random_range(1..=max_n);
    let mut b = MwGraph::builder(n);
    for v in 0..n {
        b.push(v, (v + 1) % n, rng.random_range(lo..hi), None);
        b.push(v, rng.random_range(0..n), rng.random_range(lo..hi), None);
    }
    for _ in 0..rng.random_range(0..=extra) {
        b.push(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(lo..hi), None);
    }
    b.build().unwrap()
}

fn any_graph(rng: &mut ChaCha8Rng, max_n: usize, max_edges: usize) -> MwGraph {
    let n = rng.random_range(1..=max_n);
    let mut b = MwGraph::builder(n);
    for _ in 0..rng.random_range(1..=max_edges) {
        b.push(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0.05..1.5), None);
    }
    b.build().unwrap()
}

fn path_sum(g: &MwGraph, s: f64, u: usize, v: usize, k: usize) -> f64 {
    if k == 0 {
        return if u == v { 1.0 } else { 0.0 };
    }
    g.outgoing(u)
        .iter()
        .map(|&e| g.ratio(e).powf(s) * path_sum(g, s, g.edge(e).target, v, k - 1))
        .sum()
}

fn perron_frobenius() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let cfg = SolverConfig::default();
    // (a) constant row sums
    let mut worst_a = 0.0f64;
    for _ in 0..100 {
        let g = random_graph(&mut rng, 8, 0.05, 1.0, 12);
        let m = build_matrix(&g, 1.0, RatioKind::Upper).unwrap();
        let c = rng.random_range(0.2..4.0);
        let sums = m.row_sums();
        let triplets: Vec<(usize, usize, f64)> = (0..m.dim())
            .flat_map(|r| m.row(r).map(move |(j, x)| (r, j, x)).collect::<Vec<_>>())
            .map(|(r, j, x)| (r, j, x * c / sums[r]))
            .collect();
        let scaled = SparseNonnegMatrix::from_triplets(m.dim(), triplets);
        let rho = spectral_radius(&scaled, 1e-13, 1_000_000).map_err(|e| e.to_string())?.radius;
        worst_a = worst_a.max((rho - c).abs() / c.max(1.0));
    }
    // (b) entrywise monotonicity on irreducible pairs
    let mut violations_b = 0;
    for _ in 0..200 {
        let g = random_graph(&mut rng, 8, 0.05, 0.95, 10);
        let s = rng.random_range(0.1..3.0);
        let mut b = MwGraph::builder(g.vertex_count());
        for (e, edge) in g.edges().iter().enumerate() {
            let bump = if rng.random_bool(0.5) { rng.random_range(0.0..0.3) } else { 0.0 };
            b.push(edge.source, edge.target, g.ratio(e) + bump, None);
        }
        // an extra edge makes A ≥ B with a larger pattern
        let n = g.vertex_count();
        b.push(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0.05..0.9), None);
        let big = b.build().unwrap();
        let small_rho = phi(&g, s, RatioKind::Upper, &cfg).map_err(|e| e.to_string())?.radius;
        let big_rho = phi(&big, s, RatioKind::Upper, &cfg).map_err(|e| e.to_string())?.radius;
        if big_rho < small_rho - 1e-10 {
            violations_b += 1;
        }
    }
    // (c) matrix powers against path sums, graphs with at most 6 edges
    let mut worst_c = 0.0f64;
    let mut entries = 0usize;
    for _ in 0..300 {
        let g = any_graph(&mut rng, 4, 6);
        let s = rng.random_range(0.0..3.0);
        for k in 0..=8 {
            for u in 0..g.vertex_count() {
                for v in 0..g.vertex_count() {
                    let fast = matrix_power_entry(&g, s, RatioKind::Upper, u, v, k).map_err(|e| e.to_string())?;
                    let slow = path_sum(&g, s, u, v, k);
                    worst_c = worst_c.max((fast - slow).abs() / slow.max(1.0));
                    entries += 1;
                }
            }
        }
    }
    check(
        worst_a < 1e-10 && violations_b == 0 && worst_c < 1e-10,
        format!(
            "(a) max rel err {worst_a:.1e}; (b) {violations_b}/200 violations; (c) max rel err {worst_c:.1e} over {entries} entries"
        ),
    )
}

fn cross_cuts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let cfg = SolverConfig::default();
    let mut worst_identity = 0.0f64;
    let mut sandwich_failures = 0;
    let mut paths = 0usize;
    for _ in 0..100 {
        let g = random_graph(&mut rng, 5, 0.1, 0.6, 5);
        let perron = PerronData::at_dimension(&g, RatioKind::Upper, &cfg).map_err(|e| e.to_string())?;
        let rmin = g.min_ratio();
        for delta in [0.5, 0.1, 0.02] {
            let cut = cross_cut_first_below(&g, delta, DEFAULT_CROSS_CUT_LIMIT).map_err(|e| e.to_string())?;
            paths += cut.len();
            for alpha in cut.iter() {
                let r = alpha.ratio(&g).unwrap();
                if !(delta * rmin <= r * (1.0 + 1e-12) && r < delta) {
                    sandwich_failures += 1;
                }
            }
            for u in 0..g.vertex_count() {
                let total: f64 = cut.at(u).iter().map(|a| cylinder_measure(a, &perron, &g).unwrap()).sum();
                worst_identity = worst_identity.max((total - perron.lambda[u]).abs());
            }
        }
    }
    check(
        sandwich_failures == 0 && worst_identity < 1e-9,
        format!("{paths} paths, {sandwich_failures} sandwich failures, max identity error {worst_identity:.1e}"),
    )
}

/// Shortest cycle through `v`.
fn cycle_at(g: &MwGraph, v: usize) -> Path {
    let n = g.vertex_count();
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &e in g.outgoing(u) {
            let t = g.edge(e).target;
            if t == v {
                let mut edges = vec![e];
                let mut w = u;
                while w != v {
                    let back = via[w].unwrap();
                    edges.push(back);
                    w = g.edge(back).source;
                }
                edges.reverse();
                return Path::new(g, v, edges).unwrap();
            }
            if via[t].is_none() {
                via[t] = Some(e);
                queue.push_back(t);
            }
        }
    }
    unreachable!("strongly connected")
}

fn sosc_augmentation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let cfg = SolverConfig::default();
    let mut worst = f64::INFINITY;
    let mut checks = 0;
    for _ in 0..50 {
        let g = random_graph(&mut rng, 5, 0.1, 0.9, 5);
        let cycles: Vec<Path> = (0..g.vertex_count()).map(|v| cycle_at(&g, v)).collect();
        let dim = solve_dimension(&g, RatioKind::Upper, &cfg).map_err(|e| e.to_string())?.s_star;
        for n in 1..=3 {
            let aug = augment_for_sosc(&g, &cycles, n).map_err(|e| e.to_string())?;
            for s in [0.25, 0.5 * dim, dim, 1.0, 2.0] {
                let rho = phi(&g, s, RatioKind::Upper, &cfg).map_err(|e| e.to_string())?.radius;
                let rho_aug = phi(&aug, s, RatioKind::Upper, &cfg).map_err(|e| e.to_string())?.radius;
                let c = cycles.iter().map(|z| z.ratio(&g).unwrap().powf(s)).fold(f64::INFINITY, f64::min);
                worst = worst.min(rho_aug - (c * rho.powi(n as i32) - 1e-9));
                checks += 1;
            }
        }
    }
    check(worst >= 0.0, format!("{checks} checks, min slack {worst:.3e}"))
}

fn box_counting(bracket: Option<(f64, f64)>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let pow2 = |k: i32| 2f64.powi(-k);
    let square: Vec<Complex64> = (0..200_000)
        .map(|_| Complex64::new(rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    let sq = estimate_dimension(&square, &(2..=6).map(pow2).collect::<Vec<_>>())
        .map_err(|e| e.to_string())?
        .slope;
    let segment: Vec<Complex64> = (0..100_000)
        .map(|_| Complex64::new(0.6, 0.8) * rng.random::<f64>())
        .collect();
    let seg = estimate_dimension(&segment, &(3..=9).map(pow2).collect::<Vec<_>>())
        .map_err(|e| e.to_string())?
        .slope;
    let map = QuadraticMap::minus_half();
    let cloud = sample_julia(&map, 1_000_000, 1000, 2024);
    let julia = estimate_dimension(&cloud.points, &(4..=9).map(pow2).collect::<Vec<_>>())
        .map_err(|e| e.to_string())?
        .slope;
    let (s2, s1) = match bracket {
        Some(b) => b,
        None => julia_bounds(10)?,
    };
    check(
        (sq - 2.0).abs() <= 0.10
            && (seg - 1.0).abs() <= 0.05
            && (1.00..=1.15).contains(&julia)
            && s2 - 0.15 <= julia
            && julia <= s1 + 0.15,
        format!("square {sq:.4}, segment {seg:.4}, julia {julia:.4} (bracket {s2:.4}..{s1:.4} ± 0.15)"),
    )
}

fn run(name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let (ok, detail) = match outcome {
        Ok(d) => (in_time, d),
        Err(d) => (false, d),
    };
    let timing = format!(
        "{:.2} s of {} s{}",
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { " OVER LIMIT" }
    );
    println!("{} {name}: {detail} [{timing}]", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut bracket = None;
    let results = [
        run("exact closed forms", secs(1), closed_forms),
        run("level-0 bracket", secs(5), level_zero),
        run("level-1 bracket", secs(30), level_one),
        run("depth-10 bracket", secs(600), || deep(&mut bracket)),
        run("Perron-Frobenius properties", secs(30), perron_frobenius),
        run("cross-cuts and measures", secs(60), cross_cuts),
        run("SOSC augmentation inequality", secs(60), sosc_augmentation),
        run("box-count calibration", secs(120), || box_counting(bracket)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
