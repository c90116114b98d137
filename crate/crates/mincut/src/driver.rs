//! Exact minimum cut driver: initialize the bound, alternate scan rounds
//! with quotient-graph contraction until two vertices remain, and report
//! the cheapest realized cut with an optional partition witness.

use crate::bound::{BoundConfig, BoundRegistry};
use crate::capforest::{capforest, CapMode, ScanCut, ScanStats};
use crate::contraction::{contract, ContractionConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexMap, Weight};
use crate::parallel::{draw_starts, parallel_capforest};
use crate::pq::QueueRegistry;

/// Driver configuration. Queue kind and bound method are registry names
/// resolved at run time.
#[derive(Debug, Clone)]
pub struct DriverConfig {
    pub queue: String,
    pub workers: usize,
    pub seed: u64,
    pub bound: String,
    pub cap_mode: CapMode,
    /// Track per-round vertex maps and emit one side of the minimum cut.
    /// Off by default; value-only runs skip the map bookkeeping.
    pub emit_partition: bool,
}

impl Default for DriverConfig {
    fn default() -> Self {
        DriverConfig {
            queue: "heap".into(),
            workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
            seed: 0,
            bound: "lp".into(),
            cap_mode: CapMode::Capped,
            emit_partition: false,
        }
    }
}

/// Per-round driver telemetry.
#[derive(Debug, Clone)]
pub struct RoundStats {
    pub n: usize,
    pub m: usize,
    pub marked: u64,
    pub fallback: bool,
    pub lambda_after: Weight,
    pub millis: f64,
}

#[derive(Debug, Clone, Default)]
pub struct DriverStats {
    pub rounds: Vec<RoundStats>,
    pub fallbacks: u32,
    pub scan: ScanStats,
    pub bound_millis: f64,
}

/// Exact minimum cut of the input graph.
#[derive(Debug, Clone)]
pub struct CutResult {
    pub value: Weight,
    /// One side of a realizing partition, in input-graph ids; present iff
    /// requested in the config.
    pub partition: Option<Vec<Vertex>>,
    pub rounds: u32,
    pub stats: DriverStats,
}

/// Maps a vertex set of the graph after `maps.len()` contraction rounds
/// back to the ids of the original graph.
pub fn recover_partition(maps: &[VertexMap], side: &[Vertex]) -> Vec<Vertex> {
    let mut cur: Vec<Vertex> = side.to_vec();
    for map in maps.iter().rev() {
        cur = map.map_back(&cur);
    }
    cur.sort_unstable();
    cur
}

/// Tracks the cheapest realized cut, remembering at which contraction level
/// its side was expressed.
struct BestCut {
    value: Weight,
    side: Option<(usize, Vec<Vertex>)>,
}

impl BestCut {
    fn offer(&mut self, value: Weight, level: usize, side: Option<Vec<Vertex>>, keep_side: bool) {
        if value < self.value {
            self.value = value;
            if keep_side {
                self.side = side.map(|s| (level, s));
            }
        }
    }
}

/// Computes the exact minimum cut of `g`.
///
/// Disconnected inputs short-circuit to value 0 with one component as the
/// witness. Connected inputs run bound initialization followed by scan and
/// contraction rounds; a round that marks nothing falls back to the
/// sequential scan, which always makes progress.
pub fn exact_mincut(g: &Graph, cfg: &DriverConfig) -> Result<CutResult> {
    if g.n() == 0 {
        return Err(Error::Input("minimum cut of an empty graph".into()));
    }
    if g.n() == 1 {
        return Err(Error::Input(
            "minimum cut needs at least two vertices".into(),
        ));
    }
    if cfg.workers == 0 {
        return Err(Error::Input("worker count must be at least 1".into()));
    }

    let queues = QueueRegistry::with_builtin();
    let factory = queues
        .get(&cfg.queue)
        .ok_or_else(|| Error::Input(format!("unknown queue kind '{}'", cfg.queue)))?;
    let bounds = BoundRegistry::with_builtin();
    let bound_method = bounds
        .get(&cfg.bound)
        .ok_or_else(|| Error::Input(format!("unknown bound method '{}'", cfg.bound)))?;

    let (labels, components) = g.component_labels();
    if components > 1 {
        let partition = cfg.emit_partition.then(|| {
            (0..g.n() as Vertex)
                .filter(|&v| labels[v as usize] == 0)
                .collect()
        });
        return Ok(CutResult {
            value: 0,
            partition,
            rounds: 0,
            stats: DriverStats::default(),
        });
    }

    // Reject caps the chosen queue cannot allocate before any work happens.
    // Capped rounds never exceed the initial degree bound; uncapped rounds
    // can see collapsed degrees up to the total weight.
    let worst_cap = match cfg.cap_mode {
        CapMode::Capped => g.min_degree_vertex().expect("non-empty").1.max(1),
        CapMode::Uncapped => g.total_weight().max(1),
    };
    if !factory.supports_cap(worst_cap) {
        return Err(Error::Input(format!(
            "queue kind '{}' cannot represent priorities up to {worst_cap}; use 'heap'",
            cfg.queue
        )));
    }

    let bound_cfg = BoundConfig {
        seed: cfg.seed,
        workers: cfg.workers,
        ..BoundConfig::default()
    };
    let bound_started = std::time::Instant::now();
    let initial = bound_method.compute(g, &bound_cfg)?;
    let mut best = BestCut {
        value: initial.value,
        side: cfg.emit_partition.then(|| (0, initial.witness.clone())),
    };
    let mut lambda = initial.value.max(1);

    let mut stats = DriverStats::default();
    stats.bound_millis = bound_started.elapsed().as_secs_f64() * 1e3;
    let mut maps: Vec<VertexMap> = Vec::new();
    let mut cur = g.clone();
    let contraction_cfg = ContractionConfig {
        workers: cfg.workers,
        ..Default::default()
    };

    let mut round: u64 = 0;
    while cur.n() > 2 {
        let round_started = std::time::Instant::now();
        let (n_before, m_before) = (cur.n(), cur.m());
        let round_seed = cfg.seed.wrapping_add(round.wrapping_mul(0x9e37_79b9_7f4a_7c15));

        let (mut uf, scan_lambda, mut marked, scan_cut, scan_stats):
            (Box<dyn crate::union_find::DisjointSet>, Weight, u64, Option<ScanCut>, ScanStats);
        if cfg.workers > 1 {
            let out = parallel_capforest(&cur, lambda, cfg.workers, round_seed, factory, cfg.cap_mode);
            uf = Box::new(out.union_find);
            scan_lambda = out.new_lambda_hat;
            marked = out.contracted_edges;
            scan_cut = out.best_cut;
            scan_stats = out.stats;
        } else {
            let start = draw_starts(cur.n(), 1, round_seed)[0];
            let out = capforest(&cur, lambda, start, factory, cfg.cap_mode);
            uf = Box::new(out.union_find);
            scan_lambda = out.new_lambda_hat;
            marked = out.contracted_edges;
            scan_cut = out.best_cut;
            scan_stats = out.stats;
        }
        stats.scan.add(&scan_stats);
        lambda = scan_lambda;
        if let Some(cut) = scan_cut {
            best.offer(cut.value, maps.len(), Some(cut.side), cfg.emit_partition);
        }

        let mut fallback = false;
        if marked == 0 {
            // The parallel round found nothing contractible; the sequential
            // scan is guaranteed to.
            fallback = true;
            stats.fallbacks += 1;
            let start = draw_starts(cur.n(), 1, round_seed ^ 0x5eed)[0];
            let out = capforest(&cur, lambda, start, factory, cfg.cap_mode);
            stats.scan.add(&out.stats);
            lambda = out.new_lambda_hat;
            marked = out.contracted_edges;
            if let Some(cut) = out.best_cut {
                best.offer(cut.value, maps.len(), Some(cut.side), cfg.emit_partition);
            }
            uf = Box::new(out.union_find);
        }
        if marked == 0 {
            return Err(Error::Input(
                "no contractible edge found; cannot make progress".into(),
            ));
        }

        let res = contract(&cur, uf.as_mut(), lambda, &contraction_cfg)?;
        lambda = res.new_lambda_hat;
        if let Some(wit) = res.witness {
            best.offer(lambda, maps.len(), Some(wit), cfg.emit_partition);
        }
        if cfg.emit_partition {
            maps.push(res.block_map);
        }
        cur = res.graph;
        round += 1;
        stats.rounds.push(RoundStats {
            n: n_before,
            m: m_before,
            marked,
            fallback,
            lambda_after: lambda,
            millis: round_started.elapsed().as_secs_f64() * 1e3,
        });
    }

    debug_assert_eq!(best.value, lambda, "bound and best cut diverged");
    let partition = if cfg.emit_partition {
        let (level, side) = best.side.expect("partition tracking was on");
        let side = recover_partition(&maps[..level], &side);
        debug_assert!(!side.is_empty() && side.len() < g.n());
        debug_assert_eq!(g.cut_weight(&side), best.value);
        Some(side)
    } else {
        None
    };

    Ok(CutResult {
        value: best.value,
        partition,
        rounds: round as u32,
        stats,
    })
}
