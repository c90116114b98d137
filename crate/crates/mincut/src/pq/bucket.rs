//! Bucket priority queues: an array of buckets indexed by priority plus a
//! top-bucket pointer.
//!
//! Buckets hold stamped entries and removals are lazy. A key update pushes
//! a fresh entry to the back of the target bucket and invalidates the old
//! one by bumping the vertex stamp, so within a bucket the live entries
//! are ordered by the time they last entered it. `BStack` pops the back of
//! the top bucket, `BQueue` the front.

use std::collections::VecDeque;

use super::BoundedQueue;
use crate::graph::{Vertex, Weight};

#[derive(Clone, Copy)]
struct Entry {
    vertex: Vertex,
    stamp: u32,
}

/// Container behavior distinguishing the two bucket kinds.
trait Bag: Default + Send {
    fn push(&mut self, e: Entry);
    fn pop(&mut self) -> Option<Entry>;
}

/// LIFO bag.
impl Bag for Vec<Entry> {
    fn push(&mut self, e: Entry) {
        self.push(e);
    }
    fn pop(&mut self) -> Option<Entry> {
        self.pop()
    }
}

/// FIFO bag.
impl Bag for VecDeque<Entry> {
    fn push(&mut self, e: Entry) {
        self.push_back(e);
    }
    fn pop(&mut self) -> Option<Entry> {
        self.pop_front()
    }
}

struct BucketQueue<B> {
    buckets: Vec<B>,
    cap: Weight,
    top: usize,
    live: usize,
    // Per-vertex stamp; an entry is live iff its stamp matches.
    stamp: Vec<u32>,
    prio: Vec<Weight>,
    present: Vec<bool>,
}

impl<B: Bag> BucketQueue<B> {
    fn new(n: usize, cap: Weight) -> Self {
        assert!(
            cap <= super::BUCKET_CAP_LIMIT,
            "bucket queue cap {cap} exceeds the allocation limit; use the heap"
        );
        let mut buckets = Vec::new();
        buckets.resize_with(cap as usize + 1, B::default);
        BucketQueue {
            buckets,
            cap,
            top: 0,
            live: 0,
            stamp: vec![0; n],
            prio: vec![0; n],
            present: vec![false; n],
        }
    }

    fn enqueue(&mut self, v: Vertex, p: Weight) {
        self.stamp[v as usize] = self.stamp[v as usize].wrapping_add(1);
        self.buckets[p as usize].push(Entry {
            vertex: v,
            stamp: self.stamp[v as usize],
        });
        self.prio[v as usize] = p;
        self.top = self.top.max(p as usize);
    }
}

impl<B: Bag> BoundedQueue for BucketQueue<B> {
    fn cap(&self) -> Weight {
        self.cap
    }

    fn len(&self) -> usize {
        self.live
    }

    fn priority(&self, v: Vertex) -> Option<Weight> {
        self.present[v as usize].then(|| self.prio[v as usize])
    }

    fn insert(&mut self, v: Vertex, priority: Weight) {
        assert!(!self.present[v as usize], "duplicate insert of vertex {v}");
        self.present[v as usize] = true;
        self.live += 1;
        self.enqueue(v, priority.min(self.cap));
    }

    fn increase_key(&mut self, v: Vertex, priority: Weight) {
        assert!(self.present[v as usize], "key update of absent vertex {v}");
        let cur = self.prio[v as usize];
        assert!(
            priority >= cur,
            "key decrease of vertex {v}: {cur} -> {priority}"
        );
        let target = priority.min(self.cap);
        if target == cur {
            // Clamped no-op; the entry keeps its bucket position.
            return;
        }
        self.enqueue(v, target);
    }

    fn pop_max(&mut self) -> Option<(Vertex, Weight)> {
        if self.live == 0 {
            return None;
        }
        loop {
            match self.buckets[self.top].pop() {
                Some(e) if self.stamp[e.vertex as usize] == e.stamp => {
                    let v = e.vertex;
                    let p = self.prio[v as usize];
                    debug_assert_eq!(p as usize, self.top);
                    self.stamp[v as usize] = self.stamp[v as usize].wrapping_add(1);
                    self.present[v as usize] = false;
                    self.live -= 1;
                    return Some((v, p));
                }
                Some(_) => {} // stale entry, discard
                None => {
                    debug_assert!(self.top > 0, "live count and buckets disagree");
                    self.top -= 1;
                }
            }
        }
    }
}

/// Bucket queue whose buckets behave like stacks: `pop_max` returns the
/// element that entered the top bucket most recently.
pub struct BStack(BucketQueue<Vec<Entry>>);

impl BStack {
    pub fn new(n: usize, cap: Weight) -> Self {
        BStack(BucketQueue::new(n, cap))
    }
}

/// Bucket queue whose buckets behave like queues: `pop_max` returns the
/// element that entered the top bucket first.
pub struct BQueue(BucketQueue<VecDeque<Entry>>);

impl BQueue {
    pub fn new(n: usize, cap: Weight) -> Self {
        BQueue(BucketQueue::new(n, cap))
    }
}

macro_rules! delegate_queue {
    ($ty:ty) => {
        impl BoundedQueue for $ty {
            fn cap(&self) -> Weight {
                self.0.cap()
            }
            fn len(&self) -> usize {
                self.0.len()
            }
            fn priority(&self, v: Vertex) -> Option<Weight> {
                self.0.priority(v)
            }
            fn insert(&mut self, v: Vertex, priority: Weight) {
                self.0.insert(v, priority)
            }
            fn increase_key(&mut self, v: Vertex, priority: Weight) {
                self.0.increase_key(v, priority)
            }
            fn pop_max(&mut self) -> Option<(Vertex, Weight)> {
                self.0.pop_max()
            }
        }
    };
}

delegate_queue!(BStack);
delegate_queue!(BQueue);
