//! Addressable bounded max-priority queues over vertex ids.
//!
//! All implementations share one contract: stored priorities are clamped to
//! a fixed cap, each vertex appears at most once, keys only increase, and
//! `pop_max` returns a vertex of maximal stored priority. The three builtin
//! implementations deliberately differ in how they order elements that tie
//! at the top: `BStack` pops the most recently pushed element of the top
//! bucket, `BQueue` the least recently pushed, and `Heap` makes no promise.
//!
//! Implementations register by name in a [`QueueRegistry`] and are selected
//! at runtime through driver configuration.

mod bucket;
mod heap;

pub use bucket::{BQueue, BStack};
pub use heap::Heap;

use crate::graph::{Vertex, Weight};

/// Addressable max-priority queue with priorities clamped to a cap.
///
/// Contract violations (duplicate insert, updating an absent vertex,
/// decreasing a key) panic. Instances are plain data and move freely
/// between threads, though each is used by a single worker at a time.
pub trait BoundedQueue: Send {
    /// Maximum representable priority, fixed at construction.
    fn cap(&self) -> Weight;

    /// Number of queued vertices.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stored (clamped) priority of `v`, or `None` when absent.
    fn priority(&self, v: Vertex) -> Option<Weight>;

    fn contains(&self, v: Vertex) -> bool {
        self.priority(v).is_some()
    }

    /// Queues `v` with priority `min(priority, cap)`.
    fn insert(&mut self, v: Vertex, priority: Weight);

    /// Raises the key of `v` to `min(priority, cap)`. A vertex already
    /// stored at its clamped target keeps its queue position; in
    /// particular an update of a saturated key is a no-op.
    fn increase_key(&mut self, v: Vertex, priority: Weight);

    /// Removes and returns a vertex of maximal stored priority.
    fn pop_max(&mut self) -> Option<(Vertex, Weight)>;
}

/// Builds queue instances for one implementation kind.
pub trait QueueFactory: Send + Sync {
    /// Registry name, e.g. `"heap"`.
    fn name(&self) -> &'static str;

    /// Whether a queue with this cap can be built. Bucket queues allocate
    /// one bucket per priority and reject absurd caps.
    fn supports_cap(&self, _cap: Weight) -> bool {
        true
    }

    /// New empty queue over the vertex universe `[0, n)`.
    fn make(&self, n: usize, cap: Weight) -> Box<dyn BoundedQueue>;
}

/// Bucket queues hold `cap + 1` buckets; beyond this limit the allocation
/// is rejected and callers should use the heap instead.
pub const BUCKET_CAP_LIMIT: Weight = 1 << 24;

struct BStackFactory;
struct BQueueFactory;
struct HeapFactory;

impl QueueFactory for BStackFactory {
    fn name(&self) -> &'static str {
        "bstack"
    }
    fn supports_cap(&self, cap: Weight) -> bool {
        cap <= BUCKET_CAP_LIMIT
    }
    fn make(&self, n: usize, cap: Weight) -> Box<dyn BoundedQueue> {
        Box::new(BStack::new(n, cap))
    }
}

impl QueueFactory for BQueueFactory {
    fn name(&self) -> &'static str {
        "bqueue"
    }
    fn supports_cap(&self, cap: Weight) -> bool {
        cap <= BUCKET_CAP_LIMIT
    }
    fn make(&self, n: usize, cap: Weight) -> Box<dyn BoundedQueue> {
        Box::new(BQueue::new(n, cap))
    }
}

impl QueueFactory for HeapFactory {
    fn name(&self) -> &'static str {
        "heap"
    }
    fn make(&self, n: usize, cap: Weight) -> Box<dyn BoundedQueue> {
        Box::new(Heap::new(n, cap))
    }
}

/// Name-indexed registry of queue implementations.
pub struct QueueRegistry {
    factories: Vec<Box<dyn QueueFactory>>,
}

impl QueueRegistry {
    /// Registry with the three builtin kinds: `heap`, `bstack`, `bqueue`.
    pub fn with_builtin() -> Self {
        let mut reg = QueueRegistry {
            factories: Vec::new(),
        };
        reg.register(Box::new(HeapFactory));
        reg.register(Box::new(BStackFactory));
        reg.register(Box::new(BQueueFactory));
        reg
    }

    pub fn register(&mut self, factory: Box<dyn QueueFactory>) {
        self.factories.push(factory);
    }

    pub fn get(&self, name: &str) -> Option<&dyn QueueFactory> {
        self.factories
            .iter()
            .find(|f| f.name() == name)
            .map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.factories.iter().map(|f| f.name()).collect()
    }
}

impl Default for QueueRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}
