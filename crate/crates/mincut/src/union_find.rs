//! Disjoint-set structures marking contractible edges.
//!
//! The sequential variant backs the fallback scan; the concurrent variant
//! is shared by all workers of the parallel scan. Union is commutative, so
//! any interleaving of the same union multiset yields the same partition.

use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering};

use crate::graph::Vertex;

/// Common surface over both variants, used by contraction and tests.
pub trait DisjointSet {
    fn element_count(&self) -> usize;
    fn find(&mut self, x: Vertex) -> Vertex;
    fn union(&mut self, x: Vertex, y: Vertex) -> bool;
    fn set_count(&self) -> usize;
}

/// Sequential union-find with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<Vertex>,
    size: Vec<u32>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as Vertex).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn element_count(&self) -> usize {
        self.parent.len()
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }

    pub fn find(&mut self, mut x: Vertex) -> Vertex {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = self.parent[x as usize];
        }
        x
    }

    /// Merges the sets of `x` and `y`; true iff they were distinct.
    pub fn union(&mut self, x: Vertex, y: Vertex) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        let (big, small) = if self.size[rx as usize] >= self.size[ry as usize] {
            (rx, ry)
        } else {
            (ry, rx)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.sets -= 1;
        true
    }
}

impl DisjointSet for UnionFind {
    fn element_count(&self) -> usize {
        self.element_count()
    }
    fn find(&mut self, x: Vertex) -> Vertex {
        UnionFind::find(self, x)
    }
    fn union(&mut self, x: Vertex, y: Vertex) -> bool {
        UnionFind::union(self, x, y)
    }
    fn set_count(&self) -> usize {
        self.sets
    }
}

/// Lock-free union-find safe for simultaneous `find` and `union` from any
/// number of threads.
///
/// Roots link strictly toward smaller ids via compare-and-swap, so chains
/// are acyclic under any interleaving, and a vertex that loses root status
/// never regains it. Path halving races are benign: a failed halving CAS
/// leaves a still-valid ancestor pointer in place.
pub struct ConcurrentUnionFind {
    parent: Vec<AtomicU32>,
    sets: AtomicUsize,
}

impl ConcurrentUnionFind {
    pub fn new(n: usize) -> Self {
        ConcurrentUnionFind {
            parent: (0..n as Vertex).map(AtomicU32::new).collect(),
            sets: AtomicUsize::new(n),
        }
    }

    pub fn element_count(&self) -> usize {
        self.parent.len()
    }

    pub fn set_count(&self) -> usize {
        self.sets.load(Ordering::Acquire)
    }

    pub fn find(&self, x: Vertex) -> Vertex {
        let mut v = x;
        loop {
            let p = self.parent[v as usize].load(Ordering::Acquire);
            if p == v {
                return v;
            }
            let gp = self.parent[p as usize].load(Ordering::Acquire);
            if gp != p {
                let _ = self.parent[v as usize].compare_exchange(
                    p,
                    gp,
                    Ordering::AcqRel,
                    Ordering::Relaxed,
                );
                v = gp;
            } else {
                v = p;
            }
        }
    }

    /// Merges the sets of `x` and `y`; true iff the calling thread performed
    /// the link that joined two distinct sets.
    pub fn union(&self, x: Vertex, y: Vertex) -> bool {
        loop {
            let rx = self.find(x);
            let ry = self.find(y);
            if rx == ry {
                return false;
            }
            let (hi, lo) = if rx > ry { (rx, ry) } else { (ry, rx) };
            if self.parent[hi as usize]
                .compare_exchange(hi, lo, Ordering::AcqRel, Ordering::Relaxed)
                .is_ok()
            {
                self.sets.fetch_sub(1, Ordering::AcqRel);
                return true;
            }
            // Another thread relinked hi first; retry from fresh roots.
        }
    }
}

impl DisjointSet for ConcurrentUnionFind {
    fn element_count(&self) -> usize {
        self.element_count()
    }
    fn find(&mut self, x: Vertex) -> Vertex {
        ConcurrentUnionFind::find(self, x)
    }
    fn union(&mut self, x: Vertex, y: Vertex) -> bool {
        ConcurrentUnionFind::union(self, x, y)
    }
    fn set_count(&self) -> usize {
        ConcurrentUnionFind::set_count(self)
    }
}

/// Canonical partition labeling: every vertex maps to the smallest vertex id
/// in its set. Two structures describe the same partition iff these agree.
pub fn canonical_labels(ds: &mut dyn DisjointSet) -> Vec<Vertex> {
    let n = ds.element_count();
    let mut min_of_root = vec![Vertex::MAX; n];
    for v in 0..n as Vertex {
        let r = ds.find(v) as usize;
        min_of_root[r] = min_of_root[r].min(v);
    }
    (0..n as Vertex)
        .map(|v| min_of_root[ds.find(v) as usize])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn fresh_elements_are_their_own_roots() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.find(3), 3);
        assert_eq!(uf.set_count(), 5);
    }

    #[test]
    fn union_connects_and_is_transitive() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(1, 2));
        assert_eq!(uf.find(1), uf.find(2));
        assert!(uf.union(2, 3));
        assert_eq!(uf.find(3), uf.find(1));
        assert_eq!(uf.set_count(), 3);
    }

    #[test]
    fn repeated_union_reports_false() {
        let mut uf = UnionFind::new(3);
        assert!(uf.union(0, 1));
        assert!(!uf.union(0, 1));
        assert_eq!(uf.set_count(), 2);
    }

    #[test]
    fn concurrent_variant_matches_sequential_semantics() {
        let cu = ConcurrentUnionFind::new(6);
        assert!(cu.union(0, 1));
        assert!(cu.union(1, 2));
        assert!(!cu.union(2, 0));
        assert_eq!(cu.set_count(), 4);
        assert_eq!(cu.find(2), cu.find(0));
    }

    #[test]
    fn concurrent_stress_matches_sequential_replay() {
        let n = 2000;
        let threads = 8;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ops: Vec<(Vertex, Vertex)> = (0..100_000)
            .map(|_| {
                (
                    rng.random_range(0..n as Vertex),
                    rng.random_range(0..n as Vertex),
                )
            })
            .collect();

        let cu = ConcurrentUnionFind::new(n);
        std::thread::scope(|s| {
            for t in 0..threads {
                let ops = &ops;
                let cu = &cu;
                s.spawn(move || {
                    for (i, &(x, y)) in ops.iter().enumerate() {
                        if i % threads == t {
                            cu.union(x, y);
                        }
                    }
                });
            }
        });

        let mut seq = UnionFind::new(n);
        for &(x, y) in &ops {
            seq.union(x, y);
        }
        let mut cu = cu;
        assert_eq!(
            canonical_labels(&mut cu),
            canonical_labels(&mut seq),
            "partitions diverged"
        );
        assert_eq!(cu.set_count(), seq.set_count());
    }

    proptest! {
        #[test]
        fn union_order_is_irrelevant(
            pairs in proptest::collection::vec((0u32..20, 0u32..20), 0..40),
            seed in 0u64..1000,
        ) {
            let mut a = UnionFind::new(20);
            for &(x, y) in &pairs {
                a.union(x, y);
            }
            let mut shuffled = pairs.clone();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for i in (1..shuffled.len()).rev() {
                let j = rng.random_range(0..=i);
                shuffled.swap(i, j);
            }
            let mut b = UnionFind::new(20);
            for &(x, y) in &shuffled {
                b.union(x, y);
            }
            prop_assert_eq!(canonical_labels(&mut a), canonical_labels(&mut b));
        }

        #[test]
        fn set_count_drops_once_per_successful_union(
            pairs in proptest::collection::vec((0u32..16, 0u32..16), 0..30),
        ) {
            let mut uf = UnionFind::new(16);
            let mut expected = 16;
            for &(x, y) in &pairs {
                if uf.union(x, y) {
                    expected -= 1;
                }
                prop_assert_eq!(uf.set_count(), expected);
            }
        }
    }
}
