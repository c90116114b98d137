//! Parallel forest scan: workers grow disjoint scanned regions from random
//! starts, sharing only a monotone visited array, a concurrent union-find
//! and an atomic bound.
//!
//! A worker that pops a vertex already claimed by someone else blacklists
//! it locally and skips it entirely, so every vertex contributes to exactly
//! one worker's region (up to the benign claim race, which at worst makes
//! two workers scan the same vertex). Per-worker queues, `r` values and cut
//! tracking are private; nothing in the scan takes a lock.
//!
//! [`SteppedScan`] drives the identical per-worker step function from a
//! single thread under an explicit schedule, which makes interleavings
//! reproducible and enumerable in tests.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capforest::{CapMode, ScanCut, ScanStats};
use crate::graph::{Graph, Vertex, Weight};
use crate::pq::{BoundedQueue, QueueFactory};
use crate::union_find::ConcurrentUnionFind;

/// Result of one parallel scan round.
pub struct ParallelScan {
    pub union_find: ConcurrentUnionFind,
    pub new_lambda_hat: Weight,
    pub contracted_edges: u64,
    pub best_cut: Option<ScanCut>,
    pub stats: ScanStats,
}

/// Start vertices drawn from one seeded stream, one per worker. Collisions
/// are tolerated; the losing worker blacklists the vertex and retires.
pub fn draw_starts(n: usize, workers: usize, seed: u64) -> Vec<Vertex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..workers).map(|_| rng.random_range(0..n as Vertex)).collect()
}

struct SharedScan<'a> {
    g: &'a Graph,
    visited: &'a [AtomicBool],
    lambda: &'a AtomicU64,
    uf: &'a ConcurrentUnionFind,
    cap_mode: CapMode,
}

impl SharedScan<'_> {
    fn lower_lambda(&self, candidate: Weight) {
        self.lambda.fetch_min(candidate, Ordering::AcqRel);
    }
}

/// Per-worker scan state advanced one pop at a time.
struct WorkerScan {
    queue: Box<dyn BoundedQueue>,
    r: Vec<Weight>,
    local_visited: Vec<bool>,
    blacklist: Vec<bool>,
    alpha: Weight,
    claimed: Vec<Vertex>,
    best_alpha: Option<(Weight, usize)>,
    marked: u64,
    stats: ScanStats,
}

impl WorkerScan {
    fn new(n: usize, start: Vertex, factory: &dyn QueueFactory, cap: Weight) -> Self {
        let mut queue = factory.make(n, cap);
        let mut stats = ScanStats::default();
        queue.insert(start, 0);
        stats.queue_inserts += 1;
        WorkerScan {
            queue,
            r: vec![0; n],
            local_visited: vec![false; n],
            blacklist: vec![false; n],
            alpha: 0,
            claimed: Vec::new(),
            best_alpha: None,
            marked: 0,
            stats,
        }
    }

    /// Pops and scans one vertex. Returns false once the queue is empty.
    fn step(&mut self, sh: &SharedScan<'_>) -> bool {
        let Some((x, _)) = self.queue.pop_max() else {
            return false;
        };
        self.stats.pops += 1;
        self.local_visited[x as usize] = true;

        if sh.visited[x as usize].load(Ordering::Acquire) {
            // Claimed by another worker. Skip the cut update and the edge
            // scan; edges into x must not feed this worker's bounds.
            self.blacklist[x as usize] = true;
            return true;
        }
        sh.visited[x as usize].store(true, Ordering::Release);
        self.claimed.push(x);

        self.alpha = self.alpha + sh.g.weighted_degree(x) - 2 * self.r[x as usize];
        // Only a proper non-empty subset of V yields a cut.
        if self.claimed.len() < sh.g.n() {
            if self.best_alpha.map_or(true, |(b, _)| self.alpha < b) {
                self.best_alpha = Some((self.alpha, self.claimed.len()));
            }
            sh.lower_lambda(self.alpha);
        }
        let lambda = sh.lambda.load(Ordering::Acquire);

        for (y, w) in sh.g.neighbors(x) {
            if self.blacklist[y as usize] || self.local_visited[y as usize] {
                continue;
            }
            let r_old = self.r[y as usize];
            let r_new = r_old + w;
            if r_old < lambda && lambda <= r_new {
                sh.uf.union(x, y);
                self.marked += 1;
            }
            self.r[y as usize] = r_new;
            let target = match sh.cap_mode {
                CapMode::Capped => r_new.min(lambda),
                CapMode::Uncapped => r_new,
            };
            match self.queue.priority(y) {
                None => {
                    self.queue.insert(y, target);
                    self.stats.queue_inserts += 1;
                }
                Some(stored) if stored < target => {
                    self.queue.increase_key(y, target);
                    self.stats.queue_updates += 1;
                }
                Some(_) => {}
            }
        }
        true
    }
}

fn aggregate(
    workers: Vec<WorkerScan>,
    uf: ConcurrentUnionFind,
    final_lambda: Weight,
    input_lambda: Weight,
) -> ParallelScan {
    let mut stats = ScanStats::default();
    let mut marked = 0;
    let mut best: Option<(Weight, usize, usize)> = None; // (alpha, worker, prefix)
    for (i, w) in workers.iter().enumerate() {
        stats.add(&w.stats);
        marked += w.marked;
        if let Some((alpha, prefix)) = w.best_alpha {
            if best.map_or(true, |(b, _, _)| alpha < b) {
                best = Some((alpha, i, prefix));
            }
        }
    }
    let best_cut = best
        .filter(|&(alpha, _, _)| alpha < input_lambda)
        .map(|(alpha, i, prefix)| {
            debug_assert_eq!(alpha, final_lambda);
            ScanCut {
                value: alpha,
                side: workers[i].claimed[..prefix].to_vec(),
            }
        });
    ParallelScan {
        union_find: uf,
        new_lambda_hat: final_lambda,
        contracted_edges: marked,
        best_cut,
        stats,
    }
}

/// Runs one scan round with `workers` threads. The graph must be connected
/// and `lambda_hat >= 1`. The returned union-find may hold no unions at
/// all; callers fall back to the sequential scan in that case.
pub fn parallel_capforest(
    g: &Graph,
    lambda_hat: Weight,
    workers: usize,
    seed: u64,
    factory: &dyn QueueFactory,
    cap_mode: CapMode,
) -> ParallelScan {
    assert!(workers >= 1, "need at least one worker");
    let starts = draw_starts(g.n(), workers, seed);
    let n = g.n();
    assert!(lambda_hat >= 1, "scan needs a positive bound");

    let visited: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(false)).collect();
    let lambda = AtomicU64::new(lambda_hat);
    let uf = ConcurrentUnionFind::new(n);
    let cap = crate::capforest::queue_cap(g, lambda_hat, cap_mode);
    assert!(
        factory.supports_cap(cap),
        "queue kind {} cannot represent cap {cap}",
        factory.name()
    );

    let shared = SharedScan {
        g,
        visited: &visited,
        lambda: &lambda,
        uf: &uf,
        cap_mode,
    };

    let done: Vec<WorkerScan> = std::thread::scope(|s| {
        let handles: Vec<_> = starts
            .iter()
            .map(|&start| {
                let sh = &shared;
                s.spawn(move || {
                    let mut w = WorkerScan::new(n, start, factory, cap);
                    while w.step(sh) {}
                    w
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    assert!(
        visited.iter().all(|f| f.load(Ordering::Acquire)),
        "scan left vertices unvisited; the graph must be connected"
    );
    let final_lambda = lambda.load(Ordering::Acquire);
    aggregate(done, uf, final_lambda, lambda_hat)
}

/// Single-threaded scan over explicitly scheduled worker steps.
///
/// Runs the same per-worker step function as [`parallel_capforest`] but
/// advances whichever worker the caller names next, so a fixed schedule
/// reproduces one exact interleaving of the parallel round.
pub struct SteppedScan<'g> {
    g: &'g Graph,
    visited: Vec<AtomicBool>,
    lambda: AtomicU64,
    uf: Option<ConcurrentUnionFind>,
    cap_mode: CapMode,
    input_lambda: Weight,
    workers: Vec<WorkerScan>,
    live: Vec<bool>,
}

impl<'g> SteppedScan<'g> {
    pub fn new(
        g: &'g Graph,
        lambda_hat: Weight,
        starts: &[Vertex],
        factory: &dyn QueueFactory,
        cap_mode: CapMode,
    ) -> Self {
        assert!(!starts.is_empty());
        assert!(lambda_hat >= 1, "scan needs a positive bound");
        let n = g.n();
        let cap = crate::capforest::queue_cap(g, lambda_hat, cap_mode);
        SteppedScan {
            g,
            visited: (0..n).map(|_| AtomicBool::new(false)).collect(),
            lambda: AtomicU64::new(lambda_hat),
            uf: Some(ConcurrentUnionFind::new(n)),
            cap_mode,
            input_lambda: lambda_hat,
            workers: starts
                .iter()
                .map(|&s| WorkerScan::new(n, s, factory, cap))
                .collect(),
            live: vec![true; starts.len()],
        }
    }

    pub fn worker_count(&self) -> usize {
        self.workers.len()
    }

    pub fn is_live(&self, worker: usize) -> bool {
        self.live[worker]
    }

    pub fn is_done(&self) -> bool {
        self.live.iter().all(|&l| !l)
    }

    /// Advances `worker` by one pop. Returns false if the worker has
    /// finished (now or earlier).
    pub fn step(&mut self, worker: usize) -> bool {
        if !self.live[worker] {
            return false;
        }
        let sh = SharedScan {
            g: self.g,
            visited: &self.visited,
            lambda: &self.lambda,
            uf: self.uf.as_ref().unwrap(),
            cap_mode: self.cap_mode,
        };
        let alive = self.workers[worker].step(&sh);
        self.live[worker] = alive;
        alive
    }

    /// Runs every live worker to completion in round-robin order.
    pub fn run_to_completion(&mut self) {
        while !self.is_done() {
            for w in 0..self.workers.len() {
                self.step(w);
            }
        }
    }

    pub fn finish(mut self) -> ParallelScan {
        assert!(self.is_done(), "workers still live");
        let final_lambda = self.lambda.load(Ordering::Acquire);
        aggregate(
            std::mem::take(&mut self.workers),
            self.uf.take().unwrap(),
            final_lambda,
            self.input_lambda,
        )
    }
}
