//! Quotient-graph construction from a union-find partition.
//!
//! Edge aggregation runs in parallel over vertex ranges into a concurrent
//! hash table keyed by the ordered block-id pair. When two blocks dominate
//! the partition, the weight between them is summed in per-worker counters
//! instead, which keeps that single hot key out of the shared table.

use dashmap::DashMap;

use crate::error::Result;
use crate::graph::{Graph, Vertex, VertexMap, Weight};
use crate::union_find::DisjointSet;

/// Contraction tuning knobs.
#[derive(Debug, Clone)]
pub struct ContractionConfig {
    pub workers: usize,
    /// Both heavy blocks must exceed `|V_C| / heavy_fraction` vertices for
    /// the local-accumulation path to engage.
    pub heavy_fraction: usize,
}

impl Default for ContractionConfig {
    fn default() -> Self {
        ContractionConfig {
            workers: 1,
            heavy_fraction: 16,
        }
    }
}

/// Quotient graph plus bookkeeping from one contraction round.
pub struct ContractionResult {
    pub graph: Graph,
    /// Maps each input vertex to its block id; inverse lists block members.
    pub block_map: VertexMap,
    /// Input bound lowered to the minimum collapsed-vertex degree when that
    /// degree realizes a cheaper cut.
    pub new_lambda_hat: Weight,
    /// Members (input-graph ids) of the minimum-degree block when the bound
    /// dropped.
    pub witness: Option<Vec<Vertex>>,
}

fn pair_key(a: Vertex, b: Vertex) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    (lo as u64) << 32 | hi as u64
}

/// Contracts every union-find block of `g` into a single vertex.
///
/// Blocks are renumbered ascending by their smallest member id, boundary
/// weights between blocks are summed and intra-block edges vanish. A
/// single-block partition legitimately yields a one-vertex graph.
pub fn contract(
    g: &Graph,
    ds: &mut dyn DisjointSet,
    lambda_hat: Weight,
    cfg: &ContractionConfig,
) -> Result<ContractionResult> {
    let n = g.n();
    assert_eq!(ds.element_count(), n, "partition must cover the graph");

    // Dense block ids in first-seen order; scanning ascending ids makes the
    // numbering ascend with each block's smallest member.
    let mut block_of = vec![Vertex::MAX; n];
    let mut block_id_of_root = vec![Vertex::MAX; n];
    let mut n_c = 0 as Vertex;
    for v in 0..n as Vertex {
        let root = ds.find(v) as usize;
        if block_id_of_root[root] == Vertex::MAX {
            block_id_of_root[root] = n_c;
            n_c += 1;
        }
        block_of[v as usize] = block_id_of_root[root];
    }
    debug_assert_eq!(n_c as usize, ds.set_count());

    let mut block_size = vec![0usize; n_c as usize];
    for &b in &block_of {
        block_size[b as usize] += 1;
    }
    let heavy = heavy_pair(&block_size, cfg.heavy_fraction);

    let workers = cfg.workers.max(1).min(n.max(1));
    let mut pairs: Vec<((Vertex, Vertex), Weight)>;
    let heavy_total: Weight;
    if workers == 1 {
        // Sequential fast path: no shared table, no thread scope.
        let mut table: std::collections::HashMap<u64, Weight> = std::collections::HashMap::new();
        let mut local_heavy: Weight = 0;
        for u in 0..n {
            let bu = block_of[u];
            for (v, w) in g.neighbors(u as Vertex) {
                if (u as Vertex) >= v {
                    continue;
                }
                let bv = block_of[v as usize];
                if bu == bv {
                    continue;
                }
                if heavy == Some((bu.min(bv), bu.max(bv))) {
                    local_heavy += w;
                } else {
                    let slot = table.entry(pair_key(bu, bv)).or_insert(0);
                    *slot = slot
                        .checked_add(w)
                        .expect("aggregate bounded by total weight");
                }
            }
        }
        heavy_total = local_heavy;
        pairs = table
            .into_iter()
            .map(|(key, w)| (((key >> 32) as Vertex, key as Vertex), w))
            .collect();
    } else {
        let chunk = n.div_ceil(workers).max(1);
        let table: DashMap<u64, Weight> = DashMap::new();
        heavy_total = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|wi| {
                    let table = &table;
                    let block_of = &block_of;
                    s.spawn(move || {
                        let lo = wi * chunk;
                        let hi = ((wi + 1) * chunk).min(n);
                        let mut local_heavy: Weight = 0;
                        for u in lo..hi {
                            let bu = block_of[u];
                            for (v, w) in g.neighbors(u as Vertex) {
                                if (u as Vertex) >= v {
                                    continue;
                                }
                                let bv = block_of[v as usize];
                                if bu == bv {
                                    continue;
                                }
                                if heavy == Some((bu.min(bv), bu.max(bv))) {
                                    local_heavy += w;
                                } else {
                                    let mut slot = table.entry(pair_key(bu, bv)).or_insert(0);
                                    *slot = slot
                                        .checked_add(w)
                                        .expect("aggregate bounded by total weight");
                                }
                            }
                        }
                        local_heavy
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).sum()
        });
        pairs = table
            .into_iter()
            .map(|(key, w)| (((key >> 32) as Vertex, key as Vertex), w))
            .collect();
    }
    if let Some((a, b)) = heavy {
        if heavy_total > 0 {
            pairs.push(((a, b), heavy_total));
        }
    }
    pairs.sort_unstable_by_key(|&(k, _)| k);
    let graph = Graph::from_pairs(n_c as usize, pairs)?;

    let mut inverse: Vec<Vec<Vertex>> = vec![Vec::new(); n_c as usize];
    for v in 0..n as Vertex {
        inverse[block_of[v as usize] as usize].push(v);
    }
    let forward = block_of.iter().map(|&b| Some(b)).collect();

    let (new_lambda_hat, witness) = if graph.n() >= 2 {
        let (b, deg) = graph.min_degree_vertex().expect("non-empty");
        if deg < lambda_hat {
            (deg, Some(inverse[b as usize].clone()))
        } else {
            (lambda_hat, None)
        }
    } else {
        (lambda_hat, None)
    };

    Ok(ContractionResult {
        graph,
        block_map: VertexMap::new(forward, inverse),
        new_lambda_hat,
        witness,
    })
}

/// The two most populous blocks, if both pass the size threshold.
fn heavy_pair(block_size: &[usize], fraction: usize) -> Option<(Vertex, Vertex)> {
    if block_size.len() < 2 || fraction == 0 {
        return None;
    }
    let mut first = 0usize;
    let mut second = 1usize;
    if block_size[second] > block_size[first] {
        std::mem::swap(&mut first, &mut second);
    }
    for b in 2..block_size.len() {
        if block_size[b] > block_size[first] {
            second = first;
            first = b;
        } else if block_size[b] > block_size[second] {
            second = b;
        }
    }
    let threshold = block_size.len() / fraction;
    (block_size[first] > threshold && block_size[second] > threshold).then(|| {
        (
            (first.min(second)) as Vertex,
            (first.max(second)) as Vertex,
        )
    })
}

/// Sums the boundary weight between two specific blocks with per-worker
/// local counters, merged once at the end. Equals the shared-table
/// aggregate for the same pair.
pub fn heavy_pair_accumulate(
    g: &Graph,
    block_of: &[Vertex],
    heavy_a: Vertex,
    heavy_b: Vertex,
    workers: usize,
) -> Weight {
    assert_ne!(heavy_a, heavy_b, "heavy blocks must differ");
    let n = g.n();
    let workers = workers.max(1).min(n.max(1));
    let chunk = n.div_ceil(workers).max(1);
    let key = (heavy_a.min(heavy_b), heavy_a.max(heavy_b));
    if workers == 1 {
        let mut local: Weight = 0;
        for u in 0..n {
            let bu = block_of[u];
            for (v, w) in g.neighbors(u as Vertex) {
                if (u as Vertex) < v {
                    let bv = block_of[v as usize];
                    if (bu.min(bv), bu.max(bv)) == key {
                        local += w;
                    }
                }
            }
        }
        return local;
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|wi| {
                s.spawn(move || {
                    let lo = wi * chunk;
                    let hi = ((wi + 1) * chunk).min(n);
                    let mut local: Weight = 0;
                    for u in lo..hi {
                        let bu = block_of[u];
                        for (v, w) in g.neighbors(u as Vertex) {
                            if (u as Vertex) >= v {
                                continue;
                            }
                            let bv = block_of[v as usize];
                            if (bu.min(bv), bu.max(bv)) == key {
                                local += w;
                            }
                        }
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::testgen;
    use crate::union_find::UnionFind;

    fn units(n: usize, list: &[(Vertex, Vertex)]) -> Graph {
        let edges: Vec<_> = list.iter().map(|&(u, v)| (u, v, 1)).collect();
        build_graph(n, &edges).unwrap()
    }

    #[test]
    fn triangle_contraction_merges_parallel_edges() {
        let g = units(3, &[(0, 1), (1, 2), (0, 2)]);
        let mut uf = UnionFind::new(3);
        uf.union(0, 1);
        let res = contract(&g, &mut uf, 999, &ContractionConfig::default()).unwrap();
        assert_eq!(res.graph.n(), 2);
        assert_eq!(res.graph.m(), 1);
        assert_eq!(res.graph.neighbors(0).collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn path_contraction_lowers_the_bound_with_witness() {
        let g = units(3, &[(0, 1), (1, 2)]);
        let mut uf = UnionFind::new(3);
        uf.union(0, 1);
        let res = contract(&g, &mut uf, 2, &ContractionConfig::default()).unwrap();
        assert_eq!(res.graph.n(), 2);
        assert_eq!(res.new_lambda_hat, 1);
        let w = res.witness.unwrap();
        assert!(w == vec![0, 1] || w == vec![2]);
        assert_eq!(g.cut_weight(&w), 1);
    }

    #[test]
    fn identity_partition_reproduces_the_graph() {
        let g = testgen::random_connected(14, 0.3, 7, 3);
        let mut uf = UnionFind::new(14);
        let res = contract(&g, &mut uf, Weight::MAX, &ContractionConfig::default()).unwrap();
        assert_eq!(res.graph, g);
        assert!(res.witness.is_none() || res.new_lambda_hat < Weight::MAX);
    }

    #[test]
    fn single_block_partition_collapses_to_one_vertex() {
        let g = units(3, &[(0, 1), (1, 2)]);
        let mut uf = UnionFind::new(3);
        uf.union(0, 1);
        uf.union(1, 2);
        let res = contract(&g, &mut uf, 5, &ContractionConfig::default()).unwrap();
        assert_eq!(res.graph.n(), 1);
        assert_eq!(res.graph.m(), 0);
        assert_eq!(res.new_lambda_hat, 5);
    }

    #[test]
    fn blocks_renumber_by_smallest_member() {
        let g = units(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut uf = UnionFind::new(4);
        uf.union(3, 1); // block {1, 3} has smallest member 1
        let res = contract(&g, &mut uf, 99, &ContractionConfig::default()).unwrap();
        let map = &res.block_map;
        assert_eq!(map.forward(0), Some(0));
        assert_eq!(map.forward(1), Some(1));
        assert_eq!(map.forward(3), Some(1));
        assert_eq!(map.forward(2), Some(2));
        assert_eq!(map.originals(1), &[1, 3]);
    }

    #[test]
    fn boundary_weights_are_preserved() {
        for seed in 0..25u64 {
            let g = testgen::random_connected(18, 0.3, 9, 100 + seed);
            let mut uf = UnionFind::new(18);
            // Arbitrary partition from a few random unions.
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10 {
                uf.union(rng.random_range(0..18), rng.random_range(0..18));
            }
            let res = contract(&g, &mut uf, Weight::MAX, &ContractionConfig::default()).unwrap();
            // Every contracted adjacency equals the summed original boundary.
            for bu in res.graph.vertices() {
                for (bv, w) in res.graph.neighbors(bu) {
                    let mut expect = 0;
                    for &u in res.block_map.originals(bu) {
                        for (v, uw) in g.neighbors(u) {
                            if res.block_map.forward(v) == Some(bv) {
                                expect += uw;
                            }
                        }
                    }
                    assert_eq!(w, expect, "seed {seed}");
                }
            }
            // Total boundary weight never exceeds the original total.
            assert!(res.graph.total_weight() <= g.total_weight());
        }
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let g = testgen::random_connected(64, 0.15, 8, 77);
        let mut uf = UnionFind::new(64);
        for v in 0..32u32 {
            uf.union(v, v + 16);
        }
        let mut results = Vec::new();
        for workers in [1, 2, 4, 8] {
            let mut ds = uf.clone();
            let cfg = ContractionConfig {
                workers,
                ..Default::default()
            };
            results.push(contract(&g, &mut ds, Weight::MAX, &cfg).unwrap().graph);
        }
        for r in &results[1..] {
            assert_eq!(*r, results[0]);
        }
    }

    #[test]
    fn heavy_pair_sums_connecting_weights() {
        let g = build_graph(4, &[(0, 2, 2), (0, 3, 3), (1, 3, 5)]).unwrap();
        // Blocks: {0, 1} -> 0 and {2, 3} -> 1.
        let block_of = vec![0, 0, 1, 1];
        assert_eq!(heavy_pair_accumulate(&g, &block_of, 0, 1, 3), 10);
        assert_eq!(heavy_pair_accumulate(&g, &block_of, 1, 0, 1), 10);
    }

    #[test]
    fn heavy_pair_with_no_connection_is_zero() {
        let g = units(4, &[(0, 1), (2, 3)]);
        let block_of = vec![0, 0, 1, 1];
        assert_eq!(heavy_pair_accumulate(&g, &block_of, 0, 1, 2), 0);
    }

    #[test]
    fn heavy_pair_matches_table_aggregation() {
        use rand::{Rng, SeedableRng};
        for seed in 0..10u64 {
            let n = 40 + 8 * (seed as usize % 4);
            let g = testgen::random_connected(n, 0.2, 6, 500 + seed);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let blocks = rng.random_range(2..6u32);
            let block_of: Vec<Vertex> =
                (0..n).map(|_| rng.random_range(0..blocks)).collect();
            for a in 0..blocks {
                for b in (a + 1)..blocks {
                    let direct = heavy_pair_accumulate(&g, &block_of, a, b, 4);
                    let mut table = 0;
                    for u in g.vertices() {
                        for (v, w) in g.neighbors(u) {
                            if u < v {
                                let (bu, bv) = (block_of[u as usize], block_of[v as usize]);
                                if (bu.min(bv), bu.max(bv)) == (a, b) {
                                    table += w;
                                }
                            }
                        }
                    }
                    assert_eq!(direct, table, "seed {seed} pair ({a},{b})");
                }
            }
        }
    }
}
