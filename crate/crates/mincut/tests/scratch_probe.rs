//! Throwaway probe (deleted before finishing): how often does the first
//! scan leave the bound strictly above the minimum cut on small graphs?

use mincut::capforest::{capforest, CapMode};
use mincut::bound::min_degree_bound;
use mincut::oracle::oracle_global_mincut;
use mincut::pq::QueueRegistry;
use mincut::testgen;

#[test]
fn probe_bound_gap_after_first_scan() {
    let reg = QueueRegistry::with_builtin();
    let factory = reg.get("heap").unwrap();
    let mut with_gap = 0;
    let mut total = 0;
    for seed in 0..400u64 {
        for kind in 0..4 {
            let n = 6 + (seed as usize % 11);
            let g = match kind {
                0 => testgen::random_connected(n, 0.35, 16, seed),
                1 => testgen::random_connected(n, 0.7, 16, seed),
                2 => testgen::gnp(n, 0.5, 16, seed),
                _ => testgen::clique_bridge(3 + (seed as usize % 4), 16, seed),
            };
            if !g.is_connected() || g.n() < 4 {
                continue;
            }
            let lambda = oracle_global_mincut(&g).value;
            let bound = min_degree_bound(&g).unwrap().value;
            let scan = capforest(&g, bound, 0, factory, CapMode::Capped);
            total += 1;
            if scan.new_lambda_hat > lambda {
                with_gap += 1;
                println!(
                    "gap: kind {kind} seed {seed} n {} lambda {lambda} post-scan {}",
                    g.n(),
                    scan.new_lambda_hat
                );
            }
        }
    }
    println!("gap after first scan: {with_gap}/{total}");
}
