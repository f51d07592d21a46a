use super::{enumerate_paths, GraphError, MwGraph, Path};

/// The system whose edges `u → v` are the strings `α·ζ_v`, for `α` every
/// path of length `n` from `u` to `v` and `ζ_v` a fixed cycle at `v`.
///
/// Each new edge carries ratio `r(α)·r(ζ_v)` (and likewise for lower
/// ratios when present). Edges are emitted by source vertex, then by `α`
/// in lexicographic order.
pub fn augment_for_sosc(
    graph: &MwGraph,
    cycles: &[Path],
    n: usize,
) -> Result<MwGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::ZeroLength);
    }
    let count = graph.vertex_count();
    if cycles.len() != count {
        return Err(GraphError::CycleCount {
            expected: count,
            got: cycles.len(),
        });
    }
    graph.require_strictly_contracting()?;
    for (v, zeta) in cycles.iter().enumerate() {
        let is_cycle = zeta.check(graph).is_ok()
            && !zeta.is_empty()
            && zeta.source() == v
            && zeta.target(graph) == v;
        if !is_cycle {
            return Err(GraphError::NotACycle { vertex: v });
        }
    }
    let upper = graph.upper_ratios();
    let lower = graph.lower_ratios();
    let mut b = MwGraph::builder(count);
    for v in 0..count {
        if let Some(l) = graph.label(v) {
            b = b.label(v, l);
        }
    }
    for u in 0..count {
        for alpha in enumerate_paths(graph, u, n) {
            let v = alpha.target(graph);
            let zeta = &cycles[v];
            let r = alpha.ratio_with(upper) * zeta.ratio_with(upper);
            let r_low = lower.map(|l| alpha.ratio_with(l) * zeta.ratio_with(l));
            b.push(u, v, r, r_low);
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn length_one_with_loops() {
        let g = MwGraph::builder(2)
            .edge(0, 0, 0.5)
            .edge(0, 1, 0.4)
            .edge(1, 1, 0.3)
            .edge(1, 0, 0.6)
            .build()
            .unwrap();
        let cycles = vec![
            Path::new(&g, 0, vec![0]).unwrap(),
            Path::new(&g, 1, vec![2]).unwrap(),
        ];
        let a = augment_for_sosc(&g, &cycles, 1).unwrap();
        assert_eq!(a.edge_count(), 4);
        let expect = [0.5 * 0.5, 0.4 * 0.3, 0.6 * 0.5, 0.3 * 0.3];
        // edges from 0 (ids 0, 1) then from 1 (ids 2, 3 in path order)
        let got: Vec<f64> = a.upper_ratios().to_vec();
        assert!((got[0] - expect[0]).abs() < 1e-16);
        assert!((got[1] - expect[1]).abs() < 1e-16);
        // from vertex 1 the outgoing ids are 2 (to 1) then 3 (to 0)
        assert!((got[2] - expect[3]).abs() < 1e-16);
        assert!((got[3] - expect[2]).abs() < 1e-16);
    }

    #[test]
    fn edge_counts_match_path_counts() {
        let g = julia_base(0.6);
        // cycles: A loop, B→C→B, C→A→B→C, D loop
        let cycles = vec![
            Path::new(&g, 0, vec![0]).unwrap(),
            Path::new(&g, 1, vec![2, 5]).unwrap(),
            Path::new(&g, 2, vec![5, 2]).unwrap(),
            Path::new(&g, 3, vec![7]).unwrap(),
        ];
        for n in 1..=3 {
            let a = augment_for_sosc(&g, &cycles, n).unwrap();
            assert_eq!(a.vertex_count(), 4);
            assert!(a.is_strongly_connected());
            for u in 0..4 {
                let paths = enumerate_paths(&g, u, n);
                for v in 0..4 {
                    let want = paths.iter().filter(|p| p.target(&g) == v).count();
                    let got = a
                        .outgoing(u)
                        .iter()
                        .filter(|&&e| a.edge(e).target == v)
                        .count();
                    assert_eq!(want, got);
                }
            }
        }
    }

    #[test]
    fn rejects_non_cycles() {
        let g = julia_base(0.6);
        let mut cycles = vec![
            Path::new(&g, 0, vec![0]).unwrap(),
            Path::new(&g, 1, vec![2, 5]).unwrap(),
            Path::new(&g, 2, vec![5, 2]).unwrap(),
            Path::empty(3),
        ];
        assert_eq!(
            augment_for_sosc(&g, &cycles, 1),
            Err(GraphError::NotACycle { vertex: 3 })
        );
        cycles[3] = Path::new(&g, 3, vec![6]).unwrap(); // D→C, not a cycle
        assert_eq!(
            augment_for_sosc(&g, &cycles, 1),
            Err(GraphError::NotACycle { vertex: 3 })
        );
        cycles.pop();
        assert!(matches!(
            augment_for_sosc(&g, &cycles, 1),
            Err(GraphError::CycleCount { .. })
        ));
        assert_eq!(augment_for_sosc(&g, &cycles, 0), Err(GraphError::ZeroLength));
    }
}
