//! Brute-force ground truth used by the test and acceptance suites.
//!
//! Two independent routes to the global minimum cut (exhaustive cut
//! enumeration and a Stoer-Wagner style phase algorithm) cross-validate
//! each other, plus an augmenting-path max-flow for pairwise connectivity.
//! None of this is performance work; it exists to check the real solver.

use crate::graph::{Graph, Vertex, Weight};

/// An exact cut value with one side of the witnessing partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCut {
    pub value: Weight,
    pub side: Vec<Vertex>,
}

/// Exact global minimum cut by repeated minimum-cut-phase passes.
///
/// Cubic in the vertex count, which is fine at test scale. A disconnected
/// graph yields value 0 with one component as the side.
pub fn oracle_global_mincut(g: &Graph) -> OracleCut {
    assert!(g.n() >= 2, "global minimum cut needs at least two vertices");
    let (labels, count) = g.component_labels();
    if count > 1 {
        let side = (0..g.n() as Vertex).filter(|&v| labels[v as usize] == 0).collect();
        return OracleCut { value: 0, side };
    }

    let n = g.n();
    let mut w = vec![vec![0 as Weight; n]; n];
    for u in g.vertices() {
        for (v, wt) in g.neighbors(u) {
            w[u as usize][v as usize] = wt;
        }
    }
    let mut members: Vec<Vec<Vertex>> = (0..n as Vertex).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<OracleCut> = None;

    while active.len() > 1 {
        // Maximum adjacency order starting from the first active vertex.
        let mut added = vec![false; n];
        let mut conn = vec![0 as Weight; n];
        let mut order = Vec::with_capacity(active.len());
        let first = active[0];
        added[first] = true;
        order.push(first);
        for &v in &active {
            conn[v] = w[first][v];
        }
        while order.len() < active.len() {
            let mut pick = usize::MAX;
            for &v in &active {
                if !added[v] && (pick == usize::MAX || conn[v] > conn[pick]) {
                    pick = v;
                }
            }
            added[pick] = true;
            order.push(pick);
            for &v in &active {
                if !added[v] {
                    conn[v] += w[pick][v];
                }
            }
        }
        let t = order[order.len() - 1];
        let s = order[order.len() - 2];
        let phase_cut = conn[t];
        if best.as_ref().map_or(true, |b| phase_cut < b.value) {
            best = Some(OracleCut {
                value: phase_cut,
                side: members[t].clone(),
            });
        }
        // Merge t into s.
        let moved = std::mem::take(&mut members[t]);
        members[s].extend(moved);
        for &v in &active {
            if v != s && v != t {
                w[s][v] += w[t][v];
                w[v][s] = w[s][v];
            }
        }
        active.retain(|&v| v != t);
    }

    let mut cut = best.expect("at least one phase ran");
    cut.side.sort_unstable();
    cut
}

/// Exact global minimum cut by enumerating all proper cuts that keep
/// vertex 0 on the first side. Only usable for very small graphs.
pub fn enumerate_global_mincut(g: &Graph) -> OracleCut {
    let n = g.n();
    assert!((2..=20).contains(&n), "enumeration oracle is for tiny graphs");
    let mut best_value = Weight::MAX;
    let mut best_mask = 0u32;
    // Bit i of the mask decides vertex i + 1; vertex 0 is always inside.
    for mask in 0..((1u32 << (n - 1)) - 1) {
        let mut value = 0;
        for u in g.vertices() {
            let u_in = u == 0 || mask >> (u - 1) & 1 == 1;
            if !u_in {
                continue;
            }
            for (v, w) in g.neighbors(u) {
                let v_in = v == 0 || mask >> (v - 1) & 1 == 1;
                if !v_in {
                    value += w;
                }
            }
        }
        if value < best_value {
            best_value = value;
            best_mask = mask;
        }
    }
    let side = (0..n as Vertex)
        .filter(|&v| v == 0 || best_mask >> (v - 1) & 1 == 1)
        .collect();
    OracleCut {
        value: best_value,
        side,
    }
}

/// Exact pairwise connectivity, the smallest cut separating `s` from `t`,
/// via shortest-augmenting-path max-flow on the bidirected capacity graph.
pub fn oracle_connectivity(g: &Graph, s: Vertex, t: Vertex) -> Weight {
    assert!(s != t, "connectivity query needs distinct endpoints");
    let n = g.n();
    // Arc i and arc i ^ 1 are mutual residuals. An undirected edge becomes
    // one such pair with capacity c on both arcs.
    let mut to: Vec<Vertex> = Vec::with_capacity(g.m() * 2);
    let mut cap: Vec<Weight> = Vec::with_capacity(g.m() * 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in g.vertices() {
        for (v, w) in g.neighbors(u) {
            if u < v {
                adj[u as usize].push(to.len());
                to.push(v);
                cap.push(w);
                adj[v as usize].push(to.len());
                to.push(u);
                cap.push(w);
            }
        }
    }

    let mut flow: Weight = 0;
    let mut parent_arc = vec![usize::MAX; n];
    loop {
        parent_arc.fill(usize::MAX);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &adj[u as usize] {
                let v = to[a];
                if cap[a] == 0 || v == s || parent_arc[v as usize] != usize::MAX {
                    continue;
                }
                parent_arc[v as usize] = a;
                if v == t {
                    reached = true;
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
        if !reached {
            return flow;
        }
        let mut bottleneck = Weight::MAX;
        let mut v = t;
        while v != s {
            let a = parent_arc[v as usize];
            bottleneck = bottleneck.min(cap[a]);
            v = to[a ^ 1];
        }
        let mut v = t;
        while v != s {
            let a = parent_arc[v as usize];
            cap[a] -= bottleneck;
            cap[a ^ 1] += bottleneck;
            v = to[a ^ 1];
        }
        flow += bottleneck;
    }
}
