use alloc::vec;
use alloc::vec::Vec;

use super::MwGraph;
use crate::scc::strongly_connected_components;

impl MwGraph {
    /// True iff every cycle has ratio product below one.
    ///
    /// Computed as the maximum cycle mean of `log r_e` (Karp, per strongly
    /// connected component) being negative. Graphs whose ratios are all
    /// below one take an O(E) shortcut; Karp itself is O(V·E).
    pub fn is_contracting(&self) -> bool {
        if self.is_strictly_contracting() {
            return true;
        }
        match self.max_cycle_mean_log_ratio() {
            Some(mean) => mean < 0.0,
            None => true,
        }
    }

    /// Largest mean of `log r_e` over all cycles, `None` for acyclic graphs.
    pub fn max_cycle_mean_log_ratio(&self) -> Option<f64> {
        let n = self.vertex_count();
        let comps = strongly_connected_components(n, |v| {
            self.outgoing(v).iter().map(|&e| self.edge(e).target)
        });
        let mut local = vec![usize::MAX; n];
        let mut best: Option<f64> = None;
        for comp in &comps {
            for (i, &v) in comp.iter().enumerate() {
                local[v] = i;
            }
            // edges inside the component, as (from, to, weight) in local ids
            let mut inner = Vec::new();
            for &v in comp {
                for &e in self.outgoing(v) {
                    let t = self.edge(e).target;
                    if local[t] != usize::MAX {
                        inner.push((local[v], local[t], libm::log(self.ratio(e))));
                    }
                }
            }
            if !inner.is_empty() {
                let mean = karp_max_mean(comp.len(), &inner);
                best = Some(best.map_or(mean, |b: f64| b.max(mean)));
            }
            for &v in comp {
                local[v] = usize::MAX;
            }
        }
        best
    }
}

/// Karp's maximum cycle mean on a strongly connected digraph with `n`
/// vertices and at least one edge.
#[allow(clippy::needless_range_loop)]
fn karp_max_mean(n: usize, edges: &[(usize, usize, f64)]) -> f64 {
    let neg = f64::NEG_INFINITY;
    // d[k][v]: heaviest walk of exactly k edges from vertex 0 to v
    let mut d = vec![vec![neg; n]; n + 1];
    d[0][0] = 0.0;
    for k in 1..=n {
        let (prev, cur) = d.split_at_mut(k);
        let prev = &prev[k - 1];
        let cur = &mut cur[0];
        for &(u, v, w) in edges {
            if prev[u] > neg {
                let cand = prev[u] + w;
                if cand > cur[v] {
                    cur[v] = cand;
                }
            }
        }
    }
    let mut best = neg;
    for v in 0..n {
        if d[n][v] == neg {
            continue;
        }
        let mut worst = f64::INFINITY;
        for k in 0..n {
            if d[k][v] > neg {
                let m = (d[n][v] - d[k][v]) / (n - k) as f64;
                if m < worst {
                    worst = m;
                }
            }
        }
        if worst > best {
            best = worst;
        }
    }
    best
}
