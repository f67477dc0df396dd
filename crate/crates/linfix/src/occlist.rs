//! Occurrence lists: dynamic position sets over `{1..n}` with O(1) insert,
//! delete and count, and O(1)-delay traversal in insertion order, plus the
//! per-letter index built from them.
//!
//! The implementation pairs a slot array with a doubly-linked list threaded
//! through a preallocated arena of `n` nodes (one per position), so insert
//! and delete never allocate and the O(1) and linear-memory claims are
//! exact and measurable. Elements come out in insertion order, not sorted;
//! these lists are not priority queues.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::alphabet::{Letter, Word};
use crate::instrument;

const NIL: usize = usize::MAX;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

fn fresh_uid() -> u64 {
    NEXT_UID.fetch_add(1, Ordering::Relaxed)
}

/// A set of positions `1..=n` with constant-time updates and
/// insertion-order traversal.
#[derive(Debug, Clone)]
pub struct OccurrenceList {
    /// Arena links, indexed by position (slot 0 unused).
    next: Vec<usize>,
    prev: Vec<usize>,
    present: Vec<bool>,
    head: usize,
    tail: usize,
    count: usize,
    version: u64,
}

impl OccurrenceList {
    /// Creates an empty list able to hold positions `1..=n`.
    pub fn new(n: usize) -> Self {
        OccurrenceList {
            next: vec![NIL; n + 1],
            prev: vec![NIL; n + 1],
            present: vec![false; n + 1],
            head: NIL,
            tail: NIL,
            count: 0,
            version: 0,
        }
    }

    /// Adds position `i`. Panics on duplicate insert; that is a programming
    /// error in the caller.
    pub fn insert(&mut self, i: usize) {
        instrument::tick();
        assert!(
            i >= 1 && i < self.present.len() && !self.present[i],
            "duplicate insert of position {i}"
        );
        self.present[i] = true;
        self.prev[i] = self.tail;
        self.next[i] = NIL;
        if self.tail != NIL {
            self.next[self.tail] = i;
        } else {
            self.head = i;
        }
        self.tail = i;
        self.count += 1;
        self.version += 1;
    }

    /// Removes position `i`. Panics when `i` is absent.
    pub fn delete(&mut self, i: usize) {
        instrument::tick();
        assert!(
            i >= 1 && i < self.present.len() && self.present[i],
            "delete of missing position {i}"
        );
        let (p, n) = (self.prev[i], self.next[i]);
        if p != NIL {
            self.next[p] = n;
        } else {
            self.head = n;
        }
        if n != NIL {
            self.prev[n] = p;
        } else {
            self.tail = p;
        }
        self.present[i] = false;
        self.prev[i] = NIL;
        self.next[i] = NIL;
        self.count -= 1;
        self.version += 1;
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.present.len() && self.present[i]
    }

    /// Number of stored positions.
    pub fn count(&self) -> usize {
        instrument::tick();
        self.count
    }

    pub(crate) fn len(&self) -> usize {
        self.count
    }

    /// Cursor over the stored positions in insertion order. The cursor is
    /// invalidated by any later insert or delete.
    pub fn retrieve(&self) -> Cursor<'_> {
        Cursor {
            list: self,
            at: self.head,
            version: self.version,
        }
    }

    /// First arena node in insertion order, for cooperative traversals that
    /// outlive a borrow. Use with [`OccurrenceList::next_raw`].
    pub(crate) fn head_raw(&self) -> usize {
        self.head
    }

    pub(crate) fn next_raw(&self, i: usize) -> usize {
        debug_assert!(self.present[i]);
        self.next[i]
    }

    /// Memory cells held, in word-sized units.
    pub fn cells(&self) -> usize {
        3 * self.present.len() + 4
    }
}

/// Read-only cursor in insertion order; panics if the list was modified
/// after the cursor was taken.
pub struct Cursor<'a> {
    list: &'a OccurrenceList,
    at: usize,
    version: u64,
}

impl<'a> Iterator for Cursor<'a> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        assert_eq!(
            self.version,
            self.list.version,
            "occurrence-list cursor used after modification"
        );
        instrument::tick();
        if self.at == NIL {
            None
        } else {
            let i = self.at;
            self.at = self.list.next[i];
            Some(i)
        }
    }
}

/// One occurrence list per letter plus a copy of the current word. The
/// lists partition `{1..n}`: position `i` is in the list of `word[i]`.
#[derive(Debug, Clone)]
pub struct LetterIndex {
    lists: Vec<OccurrenceList>,
    word: Word,
    uid: u64,
    version: u64,
}

impl LetterIndex {
    /// Builds the index by one scan of the word. O(n) steps, O(n) memory.
    pub fn build(word: Word) -> Self {
        let n = word.len();
        assert!(n >= 1, "the word must be non-empty");
        let letters = word.letters().iter().copied().max().unwrap() + 1;
        let mut lists: Vec<OccurrenceList> = Vec::new();
        lists.resize_with(letters, || OccurrenceList::new(n));
        for i in 1..=n {
            lists[word.at(i)].insert(i);
        }
        LetterIndex {
            lists,
            word,
            uid: fresh_uid(),
            version: 0,
        }
    }

    /// Builds the index with lists for `k` letters even if some do not
    /// occur in the word.
    pub fn build_over(word: Word, k: usize) -> Self {
        let n = word.len();
        assert!(n >= 1, "the word must be non-empty");
        let mut lists: Vec<OccurrenceList> = Vec::new();
        lists.resize_with(k, || OccurrenceList::new(n));
        for i in 1..=n {
            lists[word.at(i)].insert(i);
        }
        LetterIndex {
            lists,
            word,
            uid: fresh_uid(),
            version: 0,
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, a: Letter) -> &OccurrenceList {
        &self.lists[a]
    }

    /// Substitutes letter `a` at position `i` and returns the letter that
    /// was overwritten. Substituting the same letter is a set-level no-op
    /// but still bumps the version: any update resets enumeration.
    pub fn apply_substitution(&mut self, i: usize, a: Letter) -> Letter {
        instrument::tick();
        assert!(i >= 1 && i <= self.word.len(), "position {i} out of range");
        assert!(a < self.lists.len(), "letter {a} out of range");
        let b = self.word.at(i);
        if b != a {
            self.lists[b].delete(i);
            self.lists[a].insert(i);
            self.word.set(i, a);
        }
        self.version += 1;
        b
    }

    /// Identity of this index; sessions bind to it at start.
    pub fn uid(&self) -> u64 {
        self.uid
    }

    /// Bumped by every substitution; sessions fail fast on mismatch.
    pub fn version(&self) -> u64 {
        self.version
    }

    /// Structural checksum over the word and all list links. Traversals are
    /// read-only, so this must be stable across an entire session.
    pub fn checksum(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.word.letters().hash(&mut h);
        for list in &self.lists {
            list.next.hash(&mut h);
            list.prev.hash(&mut h);
            list.present.hash(&mut h);
            list.head.hash(&mut h);
            list.tail.hash(&mut h);
            list.count.hash(&mut h);
        }
        h.finish()
    }

    /// Memory cells held, in word-sized units.
    pub fn cells(&self) -> usize {
        self.word.len() + self.lists.iter().map(|l| l.cells()).sum::<usize>() + 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn index_of(text: &str, letters: &str) -> LetterIndex {
        let a = Alphabet::new(letters.chars()).unwrap();
        LetterIndex::build_over(Word::new(a.intern(text).unwrap()), a.len())
    }

    fn positions(list: &OccurrenceList) -> Vec<usize> {
        list.retrieve().collect()
    }

    #[test]
    fn build_partitions_positions() {
        let idx = index_of("aba", "abe");
        assert_eq!(positions(idx.list(0)), vec![1, 3]);
        assert_eq!(positions(idx.list(1)), vec![2]);
        assert_eq!(positions(idx.list(2)), Vec::<usize>::new());

        let idx = index_of("eee", "abe");
        assert_eq!(positions(idx.list(2)), vec![1, 2, 3]);
        assert_eq!(idx.list(0).len(), 0);
    }

    #[test]
    fn retrieval_is_insertion_order() {
        let mut list = OccurrenceList::new(5);
        list.insert(3);
        list.insert(1);
        assert_eq!(positions(&list), vec![3, 1]);
        list.delete(3);
        assert_eq!(positions(&list), vec![1]);
        assert_eq!(list.count(), 1);
        list.insert(5);
        list.insert(3);
        assert_eq!(positions(&list), vec![1, 5, 3]);
    }

    #[test]
    #[should_panic(expected = "duplicate insert")]
    fn duplicate_insert_panics() {
        let mut list = OccurrenceList::new(3);
        list.insert(2);
        list.insert(2);
    }

    #[test]
    #[should_panic(expected = "missing position")]
    fn missing_delete_panics() {
        let mut list = OccurrenceList::new(3);
        list.delete(2);
    }

    #[test]
    fn version_stamp_tracks_modifications() {
        // Borrowing rules already prevent safe-code misuse of a Cursor; the
        // stamp is what session-level raw traversals check against.
        let mut list = OccurrenceList::new(3);
        let v0 = list.version();
        list.insert(1);
        list.insert(2);
        assert_eq!(list.version(), v0 + 2);
        list.delete(1);
        assert_eq!(list.version(), v0 + 3);
    }

    #[test]
    fn substitution_updates_lists() {
        let mut idx = index_of("aaa", "abe");
        let b = idx.apply_substitution(2, 1);
        assert_eq!(b, 0);
        assert_eq!(idx.word().letters(), &[0, 1, 0]);
        assert_eq!(positions(idx.list(0)), vec![1, 3]);
        assert_eq!(positions(idx.list(1)), vec![2]);

        // Substituting back restores the sets (not necessarily the order).
        idx.apply_substitution(2, 0);
        let mut all: Vec<usize> = positions(idx.list(0));
        all.sort_unstable();
        assert_eq!(all, vec![1, 2, 3]);
        assert_eq!(idx.list(1).len(), 0);

        // Same-letter substitution is a set-level no-op returning a.
        let v = idx.version();
        assert_eq!(idx.apply_substitution(1, 0), 0);
        assert_eq!(idx.version(), v + 1);
    }

    #[test]
    fn retrieve_is_read_only() {
        let idx = index_of("abbae", "abe");
        let before = idx.checksum();
        for a in 0..3 {
            let _: Vec<usize> = idx.list(a).retrieve().collect();
        }
        assert_eq!(idx.checksum(), before);
    }

    #[test]
    fn constant_ops_per_update_across_sizes() {
        let mut costs = Vec::new();
        for n in [1_000usize, 10_000, 100_000] {
            let a = Alphabet::new("abe".chars()).unwrap();
            let letters: Vec<usize> = (0..n).map(|i| i % 3).collect();
            let mut idx = LetterIndex::build_over(Word::new(letters), a.len());
            let mut max_cost = 0;
            let mut meter = instrument::Meter::start();
            for i in 1..=200usize {
                let pos = (i * 37) % n + 1;
                let next = (idx.word().at(pos) + 1) % 3;
                idx.apply_substitution(pos, next);
                max_cost = max_cost.max(meter.restart());
            }
            costs.push(max_cost);
        }
        assert_eq!(costs[0], costs[1]);
        assert_eq!(costs[1], costs[2]);
    }

    #[test]
    fn random_ops_match_reference_set() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 512;
        let mut list = OccurrenceList::new(n);
        let mut reference = std::collections::BTreeSet::new();
        for _ in 0..10_000 {
            let i = rng.gen_range(1..=n);
            if reference.contains(&i) {
                list.delete(i);
                reference.remove(&i);
            } else {
                list.insert(i);
                reference.insert(i);
            }
            assert_eq!(list.len(), reference.len());
        }
        let mut got: Vec<usize> = list.retrieve().collect();
        got.sort_unstable();
        let want: Vec<usize> = reference.iter().copied().collect();
        assert_eq!(got, want);
        for i in 1..=n {
            assert_eq!(list.contains(i), reference.contains(&i));
        }
    }

    #[test]
    fn substitution_audit_on_large_word() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let letters: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let mut idx = LetterIndex::build_over(Word::new(letters), 3);
        for _ in 0..10_000 {
            let pos = rng.gen_range(1..=n);
            let a = rng.gen_range(0..3);
            idx.apply_substitution(pos, a);
        }
        // Full audit: the lists partition 1..=n according to the word.
        let mut seen = vec![false; n + 1];
        for a in 0..3 {
            for i in idx.list(a).retrieve() {
                assert!(!seen[i], "position {i} in two lists");
                seen[i] = true;
                assert_eq!(idx.word().at(i), a);
            }
        }
        assert!(seen[1..].iter().all(|&s| s));
        // Memory stays linear.
        assert!(idx.cells() <= 12 * n);
    }
}
