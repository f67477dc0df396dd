//! Dynamic membership oracle: tracks whether the current word belongs to
//! the language while letters are substituted.
//!
//! The backend is a complete binary tree over the word whose leaves hold
//! the monoid images of the letters and whose internal nodes hold products,
//! so the root is the image of the whole word. Updates rewrite one
//! root-to-leaf path (logarithmic), tests read the root (constant). The
//! oracle interface (`build`/`update`/`test`) is what the enumeration layer
//! consumes, so a backend with faster updates can be swapped in without
//! touching it.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::alphabet::{Letter, Word};
use crate::instrument;
use crate::monoid::{Elem, Monoid};

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// Balanced aggregation tree over syntactic-monoid elements.
#[derive(Debug, Clone)]
pub struct MonoidTree {
    monoid: Arc<Monoid>,
    /// Heap layout: nodes[1] is the root, leaf i sits at `size + i - 1`.
    nodes: Vec<Elem>,
    size: usize,
    n: usize,
    uid: u64,
    version: u64,
}

impl MonoidTree {
    /// Builds the tree for `word` in O(n).
    pub fn build(word: &Word, monoid: Arc<Monoid>) -> Self {
        let n = word.len();
        assert!(n >= 1, "the word must be non-empty");
        let size = n.next_power_of_two();
        let mut nodes = vec![monoid.identity(); 2 * size];
        for i in 1..=n {
            nodes[size + i - 1] = monoid.letter(word.at(i));
        }
        for v in (1..size).rev() {
            nodes[v] = monoid.mul(nodes[2 * v], nodes[2 * v + 1]);
        }
        MonoidTree {
            monoid,
            nodes,
            size,
            n,
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            version: 0,
        }
    }

    /// Substitutes letter `a` at position `i`, recomputing the path to the
    /// root.
    pub fn update(&mut self, i: usize, a: Letter) {
        assert!(i >= 1 && i <= self.n, "position {i} out of range");
        let mut v = self.size + i - 1;
        instrument::tick();
        self.nodes[v] = self.monoid.letter(a);
        while v > 1 {
            v /= 2;
            instrument::tick();
            self.nodes[v] = self.monoid.mul(self.nodes[2 * v], self.nodes[2 * v + 1]);
        }
        self.version += 1;
    }

    /// Whether the word currently stored is in the language.
    pub fn test(&self) -> bool {
        instrument::tick();
        self.monoid.is_accepting(self.nodes[1])
    }

    /// Monoid image of the stored word.
    pub fn root(&self) -> Elem {
        self.nodes[1]
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    /// Checksum of the leaf row; enumeration must restore it bit-exactly.
    pub fn leaf_checksum(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.nodes[self.size..].hash(&mut h);
        h.finish()
    }

    /// Memory cells held, in word-sized units.
    pub fn cells(&self) -> usize {
        self.nodes.len() + 4
    }
}
