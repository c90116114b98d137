//! Weighted undirected graph storage, construction and preprocessing.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Dense vertex id in `[0, n)`.
pub type Vertex = u32;
/// Non-negative 64-bit edge weight.
pub type Weight = u64;

/// Degree notion used by k-core peeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    /// Sum of incident edge weights.
    Weighted,
    /// Number of incident edges.
    Unweighted,
}

/// Immutable weighted undirected graph in CSR form.
///
/// The adjacency is symmetric, stores no self-loops and no zero-weight
/// edges, and caches the weighted degree of every vertex. Construction
/// guarantees that twice the total edge weight fits in a `Weight`, so
/// degree and cut arithmetic downstream cannot wrap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    weights: Vec<Weight>,
    wdeg: Vec<Weight>,
    total_weight: Weight,
}

impl Graph {
    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sum of all stored undirected edge weights.
    #[inline]
    pub fn total_weight(&self) -> Weight {
        self.total_weight
    }

    /// Neighbors of `v` with edge weights, sorted by neighbor id.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, Weight)> + '_ {
        let lo = self.offsets[v as usize];
        let hi = self.offsets[v as usize + 1];
        self.targets[lo..hi]
            .iter()
            .copied()
            .zip(self.weights[lo..hi].iter().copied())
    }

    /// Weighted degree `c(v)`.
    #[inline]
    pub fn weighted_degree(&self, v: Vertex) -> Weight {
        self.wdeg[v as usize]
    }

    /// Number of incident edges.
    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// A vertex of minimum weighted degree and that degree, ties broken by
    /// smallest id.
    pub fn min_degree_vertex(&self) -> Result<(Vertex, Weight)> {
        if self.n() == 0 {
            return Err(Error::Input("minimum degree of an empty graph".into()));
        }
        let mut best = (0 as Vertex, self.wdeg[0]);
        for v in 1..self.n() {
            if self.wdeg[v] < best.1 {
                best = (v as Vertex, self.wdeg[v]);
            }
        }
        Ok(best)
    }

    /// Weight of the cut `(side, V \ side)`. `side` must list distinct valid
    /// vertices.
    pub fn cut_weight(&self, side: &[Vertex]) -> Weight {
        let mut in_side = vec![false; self.n()];
        for &v in side {
            in_side[v as usize] = true;
        }
        let mut total = 0;
        for &v in side {
            for (y, w) in self.neighbors(v) {
                if !in_side[y as usize] {
                    total += w;
                }
            }
        }
        total
    }

    /// Connected component label per vertex plus the component count.
    pub fn component_labels(&self) -> (Vec<u32>, usize) {
        let n = self.n();
        let mut label = vec![u32::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s as Vertex);
            while let Some(v) = stack.pop() {
                for (y, _) in self.neighbors(v) {
                    if label[y as usize] == u32::MAX {
                        label[y as usize] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_labels().1 == 1
    }

    /// Maximal subgraph in which every vertex keeps degree at least `k`,
    /// obtained by iterative peeling. The result may be empty.
    pub fn k_core(&self, k: Weight, mode: DegreeMode) -> (Graph, VertexMap) {
        let n = self.n();
        let mut deg: Vec<Weight> = match mode {
            DegreeMode::Weighted => self.wdeg.clone(),
            DegreeMode::Unweighted => (0..n).map(|v| self.degree(v as Vertex) as Weight).collect(),
        };
        let mut removed = vec![false; n];
        let mut queue: Vec<Vertex> = (0..n as Vertex).filter(|&v| deg[v as usize] < k).collect();
        for &v in &queue {
            removed[v as usize] = true;
        }
        while let Some(v) = queue.pop() {
            for (y, w) in self.neighbors(v) {
                if removed[y as usize] {
                    continue;
                }
                let dec = match mode {
                    DegreeMode::Weighted => w,
                    DegreeMode::Unweighted => 1,
                };
                deg[y as usize] = deg[y as usize].saturating_sub(dec);
                if deg[y as usize] < k {
                    removed[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        let kept: Vec<Vertex> = (0..n as Vertex).filter(|&v| !removed[v as usize]).collect();
        self.induced_subgraph(&kept)
    }

    /// Induced subgraph on the component with the most vertices, ties broken
    /// by smallest contained original id.
    pub fn largest_connected_component(&self) -> (Graph, VertexMap) {
        if self.n() == 0 {
            return self.induced_subgraph(&[]);
        }
        let (label, count) = self.component_labels();
        let mut size = vec![0usize; count];
        for &l in &label {
            size[l as usize] += 1;
        }
        // Components are labeled in order of their smallest vertex id, so the
        // first label of maximum size wins the tie.
        let best = (0..count).max_by_key(|&c| (size[c], std::cmp::Reverse(c))).unwrap();
        let kept: Vec<Vertex> = (0..self.n() as Vertex)
            .filter(|&v| label[v as usize] == best as u32)
            .collect();
        self.induced_subgraph(&kept)
    }

    /// Subgraph induced by `kept` (ascending, distinct), with the id map.
    pub fn induced_subgraph(&self, kept: &[Vertex]) -> (Graph, VertexMap) {
        let mut forward = vec![None; self.n()];
        for (new, &old) in kept.iter().enumerate() {
            forward[old as usize] = Some(new as Vertex);
        }
        let mut pairs = Vec::new();
        for (new_u, &old_u) in kept.iter().enumerate() {
            for (old_v, w) in self.neighbors(old_u) {
                if let Some(new_v) = forward[old_v as usize] {
                    if (new_u as Vertex) < new_v {
                        pairs.push(((new_u as Vertex, new_v), w));
                    }
                }
            }
        }
        let graph = Graph::from_pairs(kept.len(), pairs)
            .expect("subgraph weights are bounded by the original graph");
        let map = VertexMap {
            forward,
            inverse: kept.iter().map(|&v| vec![v]).collect(),
        };
        (graph, map)
    }

    /// Builds a graph from undirected pairs keyed `(u, v)` with `u < v`,
    /// distinct keys and positive weights.
    pub(crate) fn from_pairs(n: usize, pairs: Vec<((Vertex, Vertex), Weight)>) -> Result<Graph> {
        let mut counts = vec![0usize; n + 1];
        for &((u, v), _) in &pairs {
            debug_assert!(u < v && (v as usize) < n);
            counts[u as usize + 1] += 1;
            counts[v as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let total_dir = pairs.len() * 2;
        let mut targets = vec![0 as Vertex; total_dir];
        let mut weights = vec![0 as Weight; total_dir];
        let mut cursor = offsets.clone();
        for &((u, v), w) in &pairs {
            targets[cursor[u as usize]] = v;
            weights[cursor[u as usize]] = w;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            weights[cursor[v as usize]] = w;
            cursor[v as usize] += 1;
        }
        // Sort each adjacency run by neighbor id for deterministic layout.
        for v in 0..n {
            let lo = offsets[v];
            let hi = offsets[v + 1];
            let mut run: Vec<(Vertex, Weight)> = targets[lo..hi]
                .iter()
                .copied()
                .zip(weights[lo..hi].iter().copied())
                .collect();
            run.sort_unstable_by_key(|&(t, _)| t);
            for (i, (t, w)) in run.into_iter().enumerate() {
                targets[lo + i] = t;
                weights[lo + i] = w;
            }
        }
        let mut wdeg = vec![0 as Weight; n];
        for v in 0..n {
            let mut d: Weight = 0;
            for i in offsets[v]..offsets[v + 1] {
                d = d
                    .checked_add(weights[i])
                    .ok_or(Error::Overflow("degree accumulation"))?;
            }
            wdeg[v] = d;
        }
        let mut total: Weight = 0;
        for &(_, w) in &pairs {
            total = total
                .checked_add(w)
                .ok_or(Error::Overflow("total weight accumulation"))?;
        }
        // Degree sums and cut values are bounded by twice the total weight.
        if total > Weight::MAX / 2 {
            return Err(Error::Overflow("total weight accumulation"));
        }
        Ok(Graph {
            offsets,
            targets,
            weights,
            wdeg,
            total_weight: total,
        })
    }
}

/// Builds a graph from an edge list.
///
/// Self-loops and zero-weight entries are dropped. Repeated entries for the
/// same ordered pair are parallel edges and their weights sum. A pair listed
/// in both directions with equal per-direction sums is a symmetric listing
/// of one undirected edge and counts once; unequal directed sums are treated
/// as parallel edges and sum.
pub fn build_graph(n: usize, edges: &[(Vertex, Vertex, Weight)]) -> Result<Graph> {
    let mut directed: HashMap<(Vertex, Vertex), Weight> = HashMap::new();
    for &(u, v, w) in edges {
        if u as usize >= n || v as usize >= n {
            return Err(Error::Input(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v || w == 0 {
            continue;
        }
        let slot = directed.entry((u, v)).or_insert(0);
        *slot = slot
            .checked_add(w)
            .ok_or(Error::Overflow("parallel edge merge"))?;
    }
    let mut pairs: Vec<((Vertex, Vertex), Weight)> = Vec::with_capacity(directed.len());
    for (&(u, v), &w_uv) in &directed {
        if u > v {
            continue;
        }
        let merged = match directed.get(&(v, u)) {
            Some(&w_vu) if w_vu == w_uv => w_uv,
            Some(&w_vu) => w_uv
                .checked_add(w_vu)
                .ok_or(Error::Overflow("parallel edge merge"))?,
            None => w_uv,
        };
        pairs.push(((u, v), merged));
    }
    for (&(u, v), &w_vu) in &directed {
        if u < v || directed.contains_key(&(v, u)) {
            continue;
        }
        pairs.push(((v, u), w_vu));
    }
    pairs.sort_unstable_by_key(|&(k, _)| k);
    Graph::from_pairs(n, pairs)
}

/// Mapping between the vertex ids of a graph and a derived graph.
///
/// `forward` sends an original id to its new id, or `None` when removed.
/// `inverse` lists, per new id, the original ids it represents. The inverse
/// lists partition the mapped originals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexMap {
    forward: Vec<Option<Vertex>>,
    inverse: Vec<Vec<Vertex>>,
}

impl VertexMap {
    pub fn new(forward: Vec<Option<Vertex>>, inverse: Vec<Vec<Vertex>>) -> Self {
        VertexMap { forward, inverse }
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            forward: (0..n as Vertex).map(Some).collect(),
            inverse: (0..n as Vertex).map(|v| vec![v]).collect(),
        }
    }

    /// New id of original vertex `v`, or `None` when `v` was removed.
    pub fn forward(&self, v: Vertex) -> Option<Vertex> {
        self.forward[v as usize]
    }

    /// Original ids represented by new id `v`.
    pub fn originals(&self, v: Vertex) -> &[Vertex] {
        &self.inverse[v as usize]
    }

    pub fn original_count(&self) -> usize {
        self.forward.len()
    }

    pub fn new_count(&self) -> usize {
        self.inverse.len()
    }

    /// Expands a set of new ids into the original ids they represent,
    /// sorted ascending.
    pub fn map_back(&self, side: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = side
            .iter()
            .flat_map(|&v| self.inverse[v as usize].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}
