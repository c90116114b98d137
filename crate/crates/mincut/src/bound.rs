//! Upper-bound providers for the minimum cut.
//!
//! Every bound is the exact weight of a realized cut, so it can never fall
//! below the true minimum and the driver stays exact no matter how loose
//! the bound is. The trivial provider takes the minimum weighted degree.
//! The multilevel provider clusters with label propagation, contracts the
//! clusters level by level, and finishes the shrunken graph exactly.

use std::sync::atomic::{AtomicU32, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capforest::CapMode;
use crate::contraction::{contract, ContractionConfig};
use crate::driver::{exact_mincut, DriverConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexMap, Weight};
use crate::union_find::UnionFind;

/// A realized cut serving as an upper bound.
#[derive(Debug, Clone)]
pub struct BoundResult {
    pub value: Weight,
    /// One side of the realized cut, in the ids of the bounded graph.
    pub witness: Vec<Vertex>,
    pub method: &'static str,
}

/// Knobs for the multilevel provider.
#[derive(Debug, Clone)]
pub struct BoundConfig {
    /// Label propagation sweeps per level.
    pub iterations: usize,
    /// Stop contracting once the level graph has at most this many
    /// vertices and hand it to the exact sequential solve.
    pub contract_threshold: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            iterations: 3,
            contract_threshold: 1024,
            seed: 0,
            workers: 1,
        }
    }
}

/// A bound estimator selectable by name.
pub trait BoundMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, g: &Graph, cfg: &BoundConfig) -> Result<BoundResult>;
}

struct MinDegreeMethod;
struct LabelPropagationMethod;

impl BoundMethod for MinDegreeMethod {
    fn name(&self) -> &'static str {
        "mindeg"
    }
    fn compute(&self, g: &Graph, _cfg: &BoundConfig) -> Result<BoundResult> {
        min_degree_bound(g)
    }
}

impl BoundMethod for LabelPropagationMethod {
    fn name(&self) -> &'static str {
        "lp"
    }
    fn compute(&self, g: &Graph, cfg: &BoundConfig) -> Result<BoundResult> {
        inexact_bound(g, cfg)
    }
}

/// Name-indexed registry of bound estimators.
pub struct BoundRegistry {
    methods: Vec<Box<dyn BoundMethod>>,
}

impl BoundRegistry {
    /// Registry with the builtin methods `mindeg` and `lp`.
    pub fn with_builtin() -> Self {
        BoundRegistry {
            methods: vec![Box::new(MinDegreeMethod), Box::new(LabelPropagationMethod)],
        }
    }

    pub fn register(&mut self, method: Box<dyn BoundMethod>) {
        self.methods.push(method);
    }

    pub fn get(&self, name: &str) -> Option<&dyn BoundMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }
}

impl Default for BoundRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

/// The trivial bound: a minimum-degree vertex realizes the cut that
/// separates it from everything else.
pub fn min_degree_bound(g: &Graph) -> Result<BoundResult> {
    if g.n() < 2 {
        return Err(Error::Input(
            "degree bound needs at least two vertices".into(),
        ));
    }
    let (v, deg) = g.min_degree_vertex()?;
    Ok(BoundResult {
        value: deg,
        witness: vec![v],
        method: "mindeg",
    })
}

/// Label propagation clustering. Labels start as vertex ids; in every
/// sweep each vertex, visited in seeded random order, adopts the label
/// carrying the maximum total incident edge weight among its neighbors,
/// ties toward the smallest label. With more than one worker the sweep is
/// split into chunks that read neighbor labels without synchronization.
pub fn label_propagation(g: &Graph, iterations: usize, seed: u64, workers: usize) -> Vec<Vertex> {
    assert!(iterations >= 1);
    let n = g.n();
    let labels: Vec<AtomicU32> = (0..n as Vertex).map(AtomicU32::new).collect();
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..iterations {
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            order.swap(i, j);
        }
        let workers = workers.max(1).min(n.max(1));
        let chunk = n.div_ceil(workers).max(1);
        std::thread::scope(|s| {
            for slice in order.chunks(chunk) {
                let labels = &labels;
                s.spawn(move || {
                    let mut tally: std::collections::HashMap<Vertex, Weight> =
                        std::collections::HashMap::new();
                    for &v in slice {
                        tally.clear();
                        let mut best: Option<(Weight, Vertex)> = None;
                        for (y, w) in g.neighbors(v) {
                            let l = labels[y as usize].load(Ordering::Relaxed);
                            let total = tally.entry(l).or_insert(0);
                            *total += w;
                            let t = *total;
                            best = match best {
                                Some((bw, bl)) if bw > t || (bw == t && bl <= l) => {
                                    Some((bw, bl))
                                }
                                _ => Some((t, l)),
                            };
                        }
                        if let Some((_, l)) = best {
                            labels[v as usize].store(l, Ordering::Relaxed);
                        }
                    }
                });
            }
        });
    }
    labels.into_iter().map(|l| l.into_inner()).collect()
}

/// Multilevel inexact bound: cluster, contract, repeat, then solve the
/// final level exactly with the sequential driver. Returns the cheapest
/// cut realized anywhere in the hierarchy, witnessed in original ids.
pub fn inexact_bound(g: &Graph, cfg: &BoundConfig) -> Result<BoundResult> {
    let mut best = min_degree_bound(g)?;
    best.method = "lp";

    let mut cur = g.clone();
    let mut maps: Vec<VertexMap> = Vec::new();
    let contraction_cfg = ContractionConfig {
        workers: cfg.workers,
        ..Default::default()
    };

    let mut level = 0u64;
    while cur.n() > cfg.contract_threshold && cur.n() > 2 {
        let labels = label_propagation(
            &cur,
            cfg.iterations,
            cfg.seed.wrapping_add(level),
            cfg.workers,
        );
        let mut uf = UnionFind::new(cur.n());
        let mut leader: std::collections::HashMap<Vertex, Vertex> =
            std::collections::HashMap::new();
        for v in 0..cur.n() as Vertex {
            let l = labels[v as usize];
            match leader.get(&l) {
                Some(&first) => {
                    uf.union(first, v);
                }
                None => {
                    leader.insert(l, v);
                }
            }
        }
        if uf.set_count() == cur.n() {
            break; // clustering made no progress
        }
        let res = contract(&cur, &mut uf, best.value, &contraction_cfg)?;
        if let Some(side) = res.witness {
            best.value = res.new_lambda_hat;
            best.witness = crate::driver::recover_partition(&maps, &side);
        }
        maps.push(res.block_map);
        cur = res.graph;
        level += 1;
    }

    if cur.n() >= 2 {
        let sub_cfg = DriverConfig {
            queue: "heap".into(),
            workers: 1,
            seed: cfg.seed,
            bound: "mindeg".into(),
            cap_mode: CapMode::Capped,
            emit_partition: true,
        };
        let sub = exact_mincut(&cur, &sub_cfg)?;
        if sub.value < best.value {
            best.value = sub.value;
            let side = sub.partition.expect("partition requested");
            best.witness = crate::driver::recover_partition(&maps, &side);
        }
    }

    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::oracle::oracle_global_mincut;
    use crate::testgen;

    #[test]
    fn min_degree_bound_on_cycle() {
        let edges: Vec<_> = (0..5u32).map(|u| (u, (u + 1) % 5, 1)).collect();
        let g = build_graph(5, &edges).unwrap();
        let b = min_degree_bound(&g).unwrap();
        assert_eq!(b.value, 2);
        assert_eq!(b.witness.len(), 1);
        assert_eq!(g.cut_weight(&b.witness), 2);
    }

    #[test]
    fn min_degree_bound_on_weighted_triangle() {
        let g = build_graph(3, &[(0, 1, 3), (1, 2, 1), (0, 2, 1)]).unwrap();
        let b = min_degree_bound(&g).unwrap();
        assert_eq!(b.value, 2);
        assert_eq!(b.witness, vec![2]);
    }

    #[test]
    fn min_degree_bound_rejects_tiny_graphs() {
        let g = build_graph(1, &[]).unwrap();
        assert!(min_degree_bound(&g).is_err());
    }

    #[test]
    fn registry_knows_builtin_methods() {
        let reg = BoundRegistry::with_builtin();
        assert_eq!(reg.names(), vec!["mindeg", "lp"]);
        assert!(reg.get("lp").is_some());
        assert!(reg.get("exactly").is_none());
    }

    #[test]
    fn single_edge_ends_with_one_label() {
        let g = build_graph(2, &[(0, 1, 1)]).unwrap();
        for seed in 0..8 {
            let labels = label_propagation(&g, 1, seed, 1);
            assert_eq!(labels[0], labels[1], "seed {seed}");
        }
    }

    #[test]
    fn isolated_vertices_keep_their_labels() {
        let g = build_graph(3, &[(0, 1, 1)]).unwrap();
        let labels = label_propagation(&g, 2, 4, 1);
        assert_eq!(labels[2], 2);
    }

    #[test]
    fn clique_pair_mostly_splits_into_two_clusters() {
        // Label propagation is a heuristic; on the twin-clique instance the
        // sweep usually finds the two cliques but an unlucky visit order can
        // flood one label across the bridge. Require the clean split in a
        // clear majority of seeds and cluster counts of 1 or 2 always.
        let g = testgen::two_cliques_with_bridge(4, 1);
        let mut clean = 0;
        for seed in 0..32 {
            let labels = label_propagation(&g, 2, seed, 1);
            let mut distinct: Vec<Vertex> = labels.clone();
            distinct.sort_unstable();
            distinct.dedup();
            assert!(distinct.len() <= 2, "seed {seed}: {labels:?}");
            let left_ok = labels[..4].iter().all(|&l| l == labels[0]);
            let right_ok = labels[4..].iter().all(|&l| l == labels[4]);
            if distinct.len() == 2 && left_ok && right_ok {
                clean += 1;
            }
        }
        assert!(clean >= 24, "only {clean}/32 seeds split the cliques");
    }

    #[test]
    fn inexact_bound_on_clique_bridge_is_exact() {
        let g = testgen::two_cliques_with_bridge(4, 1);
        let b = inexact_bound(&g, &BoundConfig::default()).unwrap();
        assert_eq!(b.value, 1);
        assert_eq!(b.witness.len(), 4);
        assert_eq!(g.cut_weight(&b.witness), 1);
    }

    #[test]
    fn inexact_bound_on_k5() {
        let mut edges = Vec::new();
        for u in 0..5u32 {
            for v in (u + 1)..5 {
                edges.push((u, v, 1));
            }
        }
        let g = build_graph(5, &edges).unwrap();
        let b = inexact_bound(&g, &BoundConfig::default()).unwrap();
        assert_eq!(b.value, 4);
        assert_eq!(g.cut_weight(&b.witness), 4);
    }

    #[test]
    fn inexact_bound_on_c6() {
        let edges: Vec<_> = (0..6u32).map(|u| (u, (u + 1) % 6, 1)).collect();
        let g = build_graph(6, &edges).unwrap();
        let b = inexact_bound(&g, &BoundConfig::default()).unwrap();
        assert_eq!(b.value, 2);
        assert_eq!(g.cut_weight(&b.witness), 2);
    }

    #[test]
    fn multilevel_path_stays_sound_with_tiny_threshold() {
        // Force actual label propagation levels by contracting down to 4.
        let cfg = BoundConfig {
            contract_threshold: 4,
            ..Default::default()
        };
        for seed in 0..20u64 {
            let g = testgen::random_connected(40, 0.15, 8, 90_000 + seed);
            let lambda = oracle_global_mincut(&g).value;
            let b = inexact_bound(
                &g,
                &BoundConfig {
                    seed,
                    ..cfg.clone()
                },
            )
            .unwrap();
            assert!(b.value >= lambda, "seed {seed}: bound below the cut");
            assert_eq!(g.cut_weight(&b.witness), b.value, "seed {seed}");
            assert!(!b.witness.is_empty() && b.witness.len() < g.n());
        }
    }

    #[test]
    fn bound_soundness_on_random_instances() {
        for seed in 0..20u64 {
            let g = testgen::random_connected(18, 0.25, 9, 60_000 + seed);
            let lambda = oracle_global_mincut(&g).value;
            let b = inexact_bound(
                &g,
                &BoundConfig {
                    seed,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(b.value >= lambda, "seed {seed}");
            assert_eq!(g.cut_weight(&b.witness), b.value, "seed {seed}");
        }
    }

    #[test]
    fn parallel_sweeps_stay_sound() {
        let g = testgen::random_connected(60, 0.1, 5, 8);
        let labels = label_propagation(&g, 3, 17, 4);
        assert_eq!(labels.len(), g.n());
        let cfg = BoundConfig {
            workers: 4,
            contract_threshold: 8,
            ..Default::default()
        };
        let b = inexact_bound(&g, &cfg).unwrap();
        assert_eq!(g.cut_weight(&b.witness), b.value);
        assert!(b.value >= oracle_global_mincut(&g).value);
    }
}
