//! Seeded instance generators shared by unit tests, the acceptance suite
//! and benchmarks. All randomness comes from ChaCha streams keyed by the
//! caller's seed, so instances are stable across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{build_graph, Graph, Vertex, Weight};

fn weight_in(rng: &mut ChaCha8Rng, max_w: Weight) -> Weight {
    if max_w <= 1 {
        1
    } else {
        rng.random_range(1..=max_w)
    }
}

/// G(n, p) with uniform weights in `1..=max_w`. May be disconnected.
pub fn gnp(n: usize, p: f64, max_w: Weight, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            if rng.random_bool(p) {
                edges.push((u, v, weight_in(&mut rng, max_w)));
            }
        }
    }
    build_graph(n, &edges).unwrap()
}

/// G(n, p) forced connected by threading a random spanning tree through a
/// shuffled vertex order first.
pub fn random_connected(n: usize, p: f64, max_w: Weight, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push((parent, order[i], weight_in(&mut rng, max_w)));
    }
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            if rng.random_bool(p) {
                edges.push((u, v, weight_in(&mut rng, max_w)));
            }
        }
    }
    build_graph(n, &edges).unwrap()
}

/// Random tree on `n` vertices via random attachment over a shuffled order.
pub fn random_tree(n: usize, max_w: Weight, seed: u64) -> Graph {
    random_connected(n, 0.0, max_w, seed)
}

/// Cycle 0-1-...-(n-1)-0 with random weights.
pub fn cycle(n: usize, max_w: Weight, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n as Vertex)
        .map(|u| (u, (u + 1) % n as Vertex, weight_in(&mut rng, max_w)))
        .collect();
    build_graph(n, &edges).unwrap()
}

/// Two unit-weight cliques K_k on `{0..k}` and `{k..2k}` joined by one
/// bridge of the given weight between vertices `k - 1` and `k`.
pub fn two_cliques_with_bridge(k: usize, bridge_w: Weight) -> Graph {
    let mut edges = Vec::new();
    for base in [0, k] {
        for u in 0..k {
            for v in (u + 1)..k {
                edges.push(((base + u) as Vertex, (base + v) as Vertex, 1));
            }
        }
    }
    edges.push((k as Vertex - 1, k as Vertex, bridge_w));
    build_graph(2 * k, &edges).unwrap()
}

/// Two random cliques with random weights joined by one random-weight bridge.
pub fn clique_bridge(k: usize, max_w: Weight, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for base in [0, k] {
        for u in 0..k {
            for v in (u + 1)..k {
                edges.push((
                    (base + u) as Vertex,
                    (base + v) as Vertex,
                    weight_in(&mut rng, max_w),
                ));
            }
        }
    }
    let a = rng.random_range(0..k) as Vertex;
    let b = (k + rng.random_range(0..k)) as Vertex;
    edges.push((a, b, weight_in(&mut rng, max_w)));
    build_graph(2 * k, &edges).unwrap()
}

/// Disjoint union of two connected random graphs. Always disconnected.
pub fn disconnected_union(n1: usize, n2: usize, p: f64, max_w: Weight, seed: u64) -> Graph {
    let g1 = random_connected(n1, p, max_w, seed);
    let g2 = random_connected(n2, p, max_w, seed.wrapping_add(0x9e37_79b9));
    let mut edges = Vec::new();
    for u in g1.vertices() {
        for (v, w) in g1.neighbors(u) {
            if u < v {
                edges.push((u, v, w));
            }
        }
    }
    let shift = n1 as Vertex;
    for u in g2.vertices() {
        for (v, w) in g2.neighbors(u) {
            if u < v {
                edges.push((u + shift, v + shift, w));
            }
        }
    }
    build_graph(n1 + n2, &edges).unwrap()
}

/// Unit-weight G(n, m) by sampling m distinct vertex pairs. Used for the
/// large performance sanity instance.
pub fn gnm_unit(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(m * 2);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n as Vertex);
        let v = rng.random_range(0..n as Vertex);
        if u == v {
            continue;
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if seen.insert(key) {
            edges.push((key.0, key.1, 1));
        }
    }
    build_graph(n, &edges).unwrap()
}
