//! Addressable binary max-heap with bottom-up deletion.
//!
//! Deleting the maximum first sifts the root hole down along the path of
//! larger children to a leaf and only then re-inserts the last element
//! there, sifting it up. Elements near the bottom rarely travel far, which
//! saves comparisons over the textbook sift-down.

use super::BoundedQueue;
use crate::graph::{Vertex, Weight};

const ABSENT: usize = usize::MAX;

pub struct Heap {
    // (priority, vertex) pairs in heap order.
    slots: Vec<(Weight, Vertex)>,
    pos: Vec<usize>,
    cap: Weight,
}

impl Heap {
    pub fn new(n: usize, cap: Weight) -> Self {
        Heap {
            slots: Vec::new(),
            pos: vec![ABSENT; n],
            cap,
        }
    }

    fn sift_up(&mut self, mut i: usize) {
        let moved = self.slots[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.slots[parent].0 >= moved.0 {
                break;
            }
            self.slots[i] = self.slots[parent];
            self.pos[self.slots[i].1 as usize] = i;
            i = parent;
        }
        self.slots[i] = moved;
        self.pos[moved.1 as usize] = i;
    }

    /// Moves the hole at `i` down along the larger-child path until it
    /// reaches a leaf, returning the final hole index.
    fn sift_hole_to_leaf(&mut self, mut i: usize) -> usize {
        let len = self.slots.len();
        loop {
            let left = 2 * i + 1;
            if left >= len {
                return i;
            }
            let right = left + 1;
            let child = if right < len && self.slots[right].0 > self.slots[left].0 {
                right
            } else {
                left
            };
            self.slots[i] = self.slots[child];
            self.pos[self.slots[i].1 as usize] = i;
            i = child;
        }
    }
}

impl BoundedQueue for Heap {
    fn cap(&self) -> Weight {
        self.cap
    }

    fn len(&self) -> usize {
        self.slots.len()
    }

    fn priority(&self, v: Vertex) -> Option<Weight> {
        let i = self.pos[v as usize];
        (i != ABSENT).then(|| self.slots[i].0)
    }

    fn insert(&mut self, v: Vertex, priority: Weight) {
        assert!(self.pos[v as usize] == ABSENT, "duplicate insert of vertex {v}");
        self.slots.push((priority.min(self.cap), v));
        self.pos[v as usize] = self.slots.len() - 1;
        self.sift_up(self.slots.len() - 1);
    }

    fn increase_key(&mut self, v: Vertex, priority: Weight) {
        let i = self.pos[v as usize];
        assert!(i != ABSENT, "key update of absent vertex {v}");
        let cur = self.slots[i].0;
        assert!(
            priority >= cur,
            "key decrease of vertex {v}: {cur} -> {priority}"
        );
        let target = priority.min(self.cap);
        if target == cur {
            return;
        }
        self.slots[i].0 = target;
        self.sift_up(i);
    }

    fn pop_max(&mut self) -> Option<(Vertex, Weight)> {
        let (p, v) = *self.slots.first()?;
        self.pos[v as usize] = ABSENT;
        let last = self.slots.pop().unwrap();
        if !self.slots.is_empty() {
            let hole = self.sift_hole_to_leaf(0);
            self.slots[hole] = last;
            self.pos[last.1 as usize] = hole;
            self.sift_up(hole);
        }
        Some((v, p))
    }
}
