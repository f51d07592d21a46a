use mwdim_core::graph::{augment_for_sosc, cross_cut_first_below, cylinder_measure, DEFAULT_CROSS_CUT_LIMIT};
use mwdim_core::spectral::{build_matrix, matrix_power_entry, phi, solve_dimension, spectral_radius};
use mwdim_core::{MwGraph, Path, PerronData, RatioKind, SolverConfig, SparseNonnegMatrix};
use proptest::prelude::*;

/// Strongly connected graphs: a spanning cycle plus extra edges, every
/// vertex with out-degree at least 2, ratios in `[lo, hi]`.
fn graphs(max_n: usize, lo: f64, hi: f64) -> impl Strategy<Value = MwGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let extra = proptest::collection::vec((0..n, 0..n, lo..hi), n..=2 * n);
        let cycle = proptest::collection::vec(lo..hi, n);
        let loops = proptest::collection::vec(lo..hi, n);
        (Just(n), cycle, loops, extra).prop_map(|(n, cycle, loops, extra)| {
            let mut b = MwGraph::builder(n);
            for (v, r) in cycle.into_iter().enumerate() {
                b.push(v, (v + 1) % n, r, None);
            }
            // second edge from every vertex so no vertex is a dead end
            for (v, r) in loops.into_iter().enumerate() {
                b.push(v, (v + n / 2) % n, r, None);
            }
            for (u, v, r) in extra {
                b.push(u, v, r, None);
            }
            b.build().unwrap()
        })
    })
}

/// Shortest cycle through `v` by breadth-first search over edges.
fn cycle_at(g: &MwGraph, v: usize) -> Path {
    let n = g.vertex_count();
    let mut via = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    for &e in g.outgoing(v) {
        let t = g.edge(e).target;
        if t == v {
            return Path::new(g, v, vec![e]).unwrap();
        }
        if via[t].is_none() {
            via[t] = Some(e);
            queue.push_back(t);
        }
    }
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
            if via[t].is_none() && t != v {
                via[t] = Some(e);
                queue.push_back(t);
            }
        }
    }
    unreachable!("graph is strongly connected")
}

fn brute_power_entry(g: &MwGraph, s: f64, u: usize, v: usize, k: usize) -> f64 {
    if k == 0 {
        return if u == v { 1.0 } else { 0.0 };
    }
    g.outgoing(u)
        .iter()
        .map(|&e| g.ratio(e).powf(s) * brute_power_entry(g, s, g.edge(e).target, v, k - 1))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constant_row_sums(g in graphs(6, 0.05, 0.95), c in 0.1f64..5.0) {
        let m = build_matrix(&g, 1.0, RatioKind::Upper).unwrap();
        let sums = m.row_sums();
        let scaled = SparseNonnegMatrix::from_triplets(
            m.dim(),
            (0..m.dim()).flat_map(|r| {
                let k = c / sums[r];
                m.row(r).map(move |(j, x)| (r, j, x * k)).collect::<Vec<_>>()
            }),
        );
        let r = spectral_radius(&scaled, 1e-13, 1_000_000).unwrap();
        prop_assert!((r.radius - c).abs() < 1e-10 * c.max(1.0));
    }

    #[test]
    fn radius_is_monotone(g in graphs(5, 0.05, 0.9), bump in 0.0f64..0.5) {
        let cfg = SolverConfig::default();
        let s = 1.3;
        let lighter = phi(&g, s, RatioKind::Upper, &cfg).unwrap().radius;
        let mut b = MwGraph::builder(g.vertex_count());
        for (e, edge) in g.edges().iter().enumerate() {
            b.push(edge.source, edge.target, g.ratio(e) * (1.0 + bump), None);
        }
        let heavier = phi(&b.build().unwrap(), s, RatioKind::Upper, &cfg).unwrap().radius;
        prop_assert!(heavier >= lighter - 1e-10);
    }

    #[test]
    fn power_entries_are_path_sums(g in graphs(3, 0.1, 0.9), s in 0.0f64..3.0, k in 0usize..=6) {
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let fast = matrix_power_entry(&g, s, RatioKind::Upper, u, v, k).unwrap();
                let slow = brute_power_entry(&g, s, u, v, k);
                prop_assert!((fast - slow).abs() <= 1e-10 * slow.max(1.0));
            }
        }
    }

    #[test]
    fn cross_cut_sandwich_and_measure(g in graphs(4, 0.1, 0.6), delta in prop::sample::select(vec![0.5, 0.1, 0.02])) {
        let cut = cross_cut_first_below(&g, delta, DEFAULT_CROSS_CUT_LIMIT).unwrap();
        let rmin = g.min_ratio();
        prop_assert!(cut.is_antichain());
        for alpha in cut.iter() {
            let r = alpha.ratio(&g).unwrap();
            prop_assert!(r < delta && r >= delta * rmin * (1.0 - 1e-12));
        }
        let perron = PerronData::at_dimension(&g, RatioKind::Upper, &SolverConfig::default()).unwrap();
        for u in 0..g.vertex_count() {
            let total: f64 = cut.at(u).iter().map(|a| cylinder_measure(a, &perron, &g).unwrap()).sum();
            prop_assert!((total - perron.lambda[u]).abs() < 1e-9, "{} vs {}", total, perron.lambda[u]);
        }
    }

    #[test]
    fn augmentation_bound(g in graphs(4, 0.1, 0.8), n in 1usize..=3, s in 0.2f64..2.5) {
        let cycles: Vec<Path> = (0..g.vertex_count()).map(|v| cycle_at(&g, v)).collect();
        let aug = augment_for_sosc(&g, &cycles, n).unwrap();
        let cfg = SolverConfig::default();
        let rho = phi(&g, s, RatioKind::Upper, &cfg).unwrap().radius;
        let rho_aug = phi(&aug, s, RatioKind::Upper, &cfg).unwrap().radius;
        let c = cycles
            .iter()
            .map(|z| z.ratio(&g).unwrap().powf(s))
            .fold(f64::INFINITY, f64::min);
        prop_assert!(rho_aug >= c * rho.powi(n as i32) - 1e-9);
    }
}

#[test]
fn dimension_of_moran_graphs() {
    let cfg = SolverConfig::default();
    for (k, r) in [(2usize, 0.5f64), (3, 1.0 / 3.0), (4, 0.3), (5, 0.1)] {
        let mut b = MwGraph::builder(1);
        for _ in 0..k {
            b.push(0, 0, r, None);
        }
        let d = solve_dimension(&b.build().unwrap(), RatioKind::Upper, &cfg).unwrap();
        let exact = (k as f64).ln() / (1.0 / r).ln();
        assert!((d.s_star - exact).abs() < 1e-9, "{k} {r}");
    }
}
