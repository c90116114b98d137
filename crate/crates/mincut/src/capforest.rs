//! Sequential forest scan marking contractible edges.
//!
//! The scan repeatedly pops the unvisited vertex most strongly connected to
//! the visited set. Each scanned edge `(x, y)` raises `r(y)` by its weight;
//! when `r(y)` crosses the running bound `lambda_hat` the endpoints are
//! unioned, because the crossing certifies connectivity at least
//! `lambda_hat` between them. The running bound itself is lowered whenever
//! the cut between the visited set and the rest drops below it, and queue
//! priorities are clamped to the bound so saturated keys are never updated
//! again.

use std::collections::HashMap;

use crate::graph::{Graph, Vertex, Weight};
use crate::pq::QueueFactory;
use crate::union_find::UnionFind;

/// Whether queue priorities are clamped to the running bound or allowed to
/// grow to the full connection weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapMode {
    Capped,
    Uncapped,
}

/// Priority-queue traffic counters.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanStats {
    pub queue_inserts: u64,
    pub queue_updates: u64,
    pub pops: u64,
}

impl ScanStats {
    /// Total insert plus update operations issued to the queue.
    pub fn queue_ops(&self) -> u64 {
        self.queue_inserts + self.queue_updates
    }

    pub fn add(&mut self, other: &ScanStats) {
        self.queue_inserts += other.queue_inserts;
        self.queue_updates += other.queue_updates;
        self.pops += other.pops;
    }
}

/// A realized cut discovered during a scan: its weight and one side, in the
/// ids of the scanned graph.
#[derive(Debug, Clone)]
pub struct ScanCut {
    pub value: Weight,
    pub side: Vec<Vertex>,
}

/// Result of one sequential scan.
pub struct SequentialScan {
    pub union_find: UnionFind,
    /// Minimum of the input bound and every proper visited-set cut seen.
    pub new_lambda_hat: Weight,
    /// Number of edges marked contractible.
    pub contracted_edges: u64,
    /// Witness for `new_lambda_hat` when it improved on the input bound.
    pub best_cut: Option<ScanCut>,
    pub stats: ScanStats,
}

/// Effective queue cap for a scan over `g`.
pub(crate) fn queue_cap(g: &Graph, lambda_hat: Weight, cap_mode: CapMode) -> Weight {
    match cap_mode {
        CapMode::Capped => lambda_hat,
        // Keys never exceed the largest weighted degree, so this cap is
        // equivalent to no cap at all.
        CapMode::Uncapped => g
            .vertices()
            .map(|v| g.weighted_degree(v))
            .max()
            .unwrap_or(0),
    }
}

/// Runs the scan from `start`, marking contractible edges into a fresh
/// union-find. The graph must be connected and `lambda_hat >= 1`.
pub fn capforest(
    g: &Graph,
    lambda_hat: Weight,
    start: Vertex,
    factory: &dyn QueueFactory,
    cap_mode: CapMode,
) -> SequentialScan {
    scan_impl(g, lambda_hat, start, factory, cap_mode, None)
}

/// Like [`capforest`], additionally retaining the per-edge lower bound
/// `q(e)` assigned when each edge was scanned, keyed by the ordered
/// endpoint pair.
pub fn q_lower_bounds(
    g: &Graph,
    lambda_hat: Weight,
    start: Vertex,
    factory: &dyn QueueFactory,
    cap_mode: CapMode,
) -> HashMap<(Vertex, Vertex), Weight> {
    let mut q = HashMap::with_capacity(g.m());
    scan_impl(g, lambda_hat, start, factory, cap_mode, Some(&mut q));
    q
}

fn scan_impl(
    g: &Graph,
    mut lambda_hat: Weight,
    start: Vertex,
    factory: &dyn QueueFactory,
    cap_mode: CapMode,
    mut record_q: Option<&mut HashMap<(Vertex, Vertex), Weight>>,
) -> SequentialScan {
    let n = g.n();
    assert!(lambda_hat >= 1, "scan needs a positive bound");
    assert!((start as usize) < n, "start vertex out of range");

    let cap = queue_cap(g, lambda_hat, cap_mode);
    assert!(
        factory.supports_cap(cap),
        "queue kind {} cannot represent cap {cap}",
        factory.name()
    );
    let mut queue = factory.make(n, cap);
    let mut uf = UnionFind::new(n);
    let mut r = vec![0 as Weight; n];
    let mut visited = vec![false; n];
    let mut alpha: Weight = 0;
    let mut stats = ScanStats::default();
    let input_lambda = lambda_hat;

    // Visit order and the prefix length realizing the best cut seen.
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut best_prefix = 0usize;
    let mut marked: u64 = 0;

    queue.insert(start, 0);
    stats.queue_inserts += 1;

    while let Some((x, _)) = queue.pop_max() {
        stats.pops += 1;
        visited[x as usize] = true;
        order.push(x);

        alpha = alpha + g.weighted_degree(x) - 2 * r[x as usize];
        // The visited set must stay a proper subset for alpha to be a cut.
        if order.len() < n && alpha < lambda_hat {
            lambda_hat = alpha;
            best_prefix = order.len();
        }

        for (y, w) in g.neighbors(x) {
            if visited[y as usize] {
                continue;
            }
            let r_old = r[y as usize];
            let r_new = r_old + w;
            if r_old < lambda_hat && lambda_hat <= r_new {
                uf.union(x, y);
                marked += 1;
            }
            r[y as usize] = r_new;
            let target = match cap_mode {
                CapMode::Capped => r_new.min(lambda_hat),
                CapMode::Uncapped => r_new,
            };
            // The certified lower bound is the clamped value: the raw sum
            // can overshoot the true connectivity once pops deviate from
            // strict maximum order among saturated keys.
            if let Some(q) = record_q.as_deref_mut() {
                q.insert((x.min(y), x.max(y)), target);
            }
            match queue.priority(y) {
                None => {
                    queue.insert(y, target);
                    stats.queue_inserts += 1;
                }
                Some(stored) if stored < target => {
                    queue.increase_key(y, target);
                    stats.queue_updates += 1;
                }
                Some(_) => {} // already at or beyond the target, skip
            }
        }
    }

    assert!(
        order.len() == n,
        "scan covered {} of {} vertices; the graph must be connected",
        order.len(),
        n
    );

    let best_cut = (lambda_hat < input_lambda).then(|| ScanCut {
        value: lambda_hat,
        side: order[..best_prefix].to_vec(),
    });

    SequentialScan {
        union_find: uf,
        new_lambda_hat: lambda_hat,
        contracted_edges: marked,
        best_cut,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::oracle;
    use crate::pq::QueueRegistry;
    use crate::testgen;
    use crate::union_find::canonical_labels;

    fn units(n: usize, list: &[(Vertex, Vertex)]) -> Graph {
        let edges: Vec<_> = list.iter().map(|&(u, v)| (u, v, 1)).collect();
        build_graph(n, &edges).unwrap()
    }

    #[test]
    fn path_scan_unions_both_edges() {
        let g = units(3, &[(0, 1), (1, 2)]);
        let reg = QueueRegistry::with_builtin();
        let mut scan = capforest(&g, 1, 0, reg.get("heap").unwrap(), CapMode::Capped);
        assert_eq!(scan.new_lambda_hat, 1);
        assert_eq!(scan.contracted_edges, 2);
        assert_eq!(scan.union_find.set_count(), 1);
        assert_eq!(scan.union_find.find(0), scan.union_find.find(2));
        assert!(scan.best_cut.is_none());
    }

    #[test]
    fn single_vertex_scan_is_trivial() {
        let g = build_graph(1, &[]).unwrap();
        let reg = QueueRegistry::with_builtin();
        let scan = capforest(&g, 5, 0, reg.get("bqueue").unwrap(), CapMode::Capped);
        assert_eq!(scan.new_lambda_hat, 5);
        assert_eq!(scan.contracted_edges, 0);
    }

    #[test]
    fn triangle_scan_marks_one_edge() {
        let g = units(3, &[(0, 1), (1, 2), (0, 2)]);
        let reg = QueueRegistry::with_builtin();
        for name in reg.names() {
            let mut scan = capforest(&g, 2, 0, reg.get(name).unwrap(), CapMode::Capped);
            assert_eq!(scan.new_lambda_hat, 2, "{name}");
            assert_eq!(scan.contracted_edges, 1, "{name}");
            // The union joins the second and third visited vertices.
            assert_eq!(scan.union_find.set_count(), 2, "{name}");
            assert_eq!(scan.union_find.find(1), scan.union_find.find(2), "{name}");
        }
    }

    #[test]
    fn bound_drops_to_a_real_cut_with_witness() {
        let g = testgen::two_cliques_with_bridge(4, 1);
        let reg = QueueRegistry::with_builtin();
        for name in reg.names() {
            let scan = capforest(&g, 3, 0, reg.get(name).unwrap(), CapMode::Capped);
            assert_eq!(scan.new_lambda_hat, 1, "{name}");
            let cut = scan.best_cut.expect("bound improved");
            assert_eq!(cut.value, 1);
            assert_eq!(g.cut_weight(&cut.side), 1, "{name}");
        }
    }

    #[test]
    #[should_panic(expected = "connected")]
    fn disconnected_graph_is_rejected() {
        let g = units(4, &[(0, 1), (2, 3)]);
        let reg = QueueRegistry::with_builtin();
        capforest(&g, 1, 0, reg.get("heap").unwrap(), CapMode::Capped);
    }

    #[test]
    fn q_values_on_path_and_star() {
        let reg = QueueRegistry::with_builtin();
        let path = units(3, &[(0, 1), (1, 2)]);
        let q = q_lower_bounds(&path, 1, 0, reg.get("heap").unwrap(), CapMode::Capped);
        assert_eq!(q[&(0, 1)], 1);
        assert_eq!(q[&(1, 2)], 1);

        let star = units(4, &[(0, 1), (0, 2), (0, 3)]);
        let q = q_lower_bounds(&star, 1, 0, reg.get("heap").unwrap(), CapMode::Capped);
        assert!(q.values().all(|&v| v == 1));
        assert_eq!(q.len(), 3);
    }

    #[test]
    fn q_is_a_connectivity_lower_bound_on_random_graphs() {
        let reg = QueueRegistry::with_builtin();
        for seed in 0..40u64 {
            let g = testgen::random_connected(4 + (seed as usize % 12), 0.35, 6, 900 + seed);
            let lambda0 = g.min_degree_vertex().unwrap().1.max(1);
            for name in reg.names() {
                for mode in [CapMode::Capped, CapMode::Uncapped] {
                    let q = q_lower_bounds(&g, lambda0, 0, reg.get(name).unwrap(), mode);
                    for (&(u, v), &qv) in &q {
                        let conn = oracle::oracle_connectivity(&g, u, v);
                        assert!(
                            qv <= conn,
                            "{name} {mode:?} seed {seed}: q({u},{v}) = {qv} > {conn}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn every_scan_marks_an_edge_on_nontrivial_graphs() {
        let reg = QueueRegistry::with_builtin();
        for seed in 0..60u64 {
            let g = testgen::random_connected(2 + (seed as usize % 14), 0.3, 5, 2000 + seed);
            let lambda0 = g.min_degree_vertex().unwrap().1.max(1);
            let scan = capforest(&g, lambda0, 0, reg.get("heap").unwrap(), CapMode::Uncapped);
            assert!(scan.contracted_edges >= 1, "seed {seed}");
        }
    }

    #[test]
    fn no_union_merges_a_cut_below_the_returned_bound() {
        let reg = QueueRegistry::with_builtin();
        for seed in 0..40u64 {
            let n = 4 + (seed as usize % 7);
            let g = testgen::random_connected(n, 0.4, 5, 3000 + seed);
            let lambda0 = g.min_degree_vertex().unwrap().1.max(1);
            for name in reg.names() {
                let mut scan =
                    capforest(&g, lambda0, 0, reg.get(name).unwrap(), CapMode::Capped);
                let labels = canonical_labels(&mut scan.union_find);
                // Enumerate all proper cuts cheaper than the returned bound;
                // none may separate two vertices of one union-find block.
                for mask in 0u32..(1 << (n - 1)) - 1 {
                    let side: Vec<Vertex> = (0..n as Vertex)
                        .filter(|&v| v == 0 || mask >> (v - 1) & 1 == 1)
                        .collect();
                    if g.cut_weight(&side) >= scan.new_lambda_hat {
                        continue;
                    }
                    let mut in_side = vec![false; n];
                    for &v in &side {
                        in_side[v as usize] = true;
                    }
                    for u in 0..n as Vertex {
                        for v in (u + 1)..n as Vertex {
                            if labels[u as usize] == labels[v as usize] {
                                assert_eq!(
                                    in_side[u as usize], in_side[v as usize],
                                    "{name} seed {seed}: union crosses a sub-bound cut"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn returned_bound_is_a_real_cut_or_the_input() {
        let reg = QueueRegistry::with_builtin();
        for seed in 0..30u64 {
            let g = testgen::random_connected(5 + (seed as usize % 10), 0.3, 6, 4000 + seed);
            let lambda0 = g.min_degree_vertex().unwrap().1.max(1);
            let scan = capforest(&g, lambda0, 0, reg.get("bstack").unwrap(), CapMode::Capped);
            match scan.best_cut {
                Some(cut) => {
                    assert_eq!(cut.value, scan.new_lambda_hat);
                    assert_eq!(g.cut_weight(&cut.side), cut.value, "seed {seed}");
                }
                None => assert_eq!(scan.new_lambda_hat, lambda0),
            }
        }
    }
}
