//! Cooperative background traversals over the per-letter occurrence lists.
//!
//! A traversal owns a frozen cursor into one list and consumes one element
//! per step; steps are driven by the session (one per right-endpoint
//! decrement, and one per left-endpoint increment for the max-left kind).
//! The min kind keeps the smallest positions seen, the max-left kind the
//! largest positions not beyond the first limit. Finishing is only legal
//! when at most `p` elements remain unvisited, which the sweep cadence
//! guarantees; the assertion here is the guard on that claim.

use crate::instrument;
use crate::occlist::OccurrenceList;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Min,
    /// Keep positions at or left of the stored limit.
    MaxLeft(usize),
}

#[derive(Debug, Clone)]
pub struct Traversal {
    kind: Kind,
    cursor: usize,
    consumed: usize,
    total: usize,
    p: usize,
    /// Ascending buffer of at most `p` retained positions.
    buf: Vec<usize>,
    finished: bool,
}

impl Traversal {
    pub fn idle(p: usize) -> Traversal {
        Traversal {
            kind: Kind::Min,
            cursor: NIL,
            consumed: 0,
            total: 0,
            p,
            buf: Vec::with_capacity(p),
            finished: true,
        }
    }

    pub fn start_min(list: &OccurrenceList, p: usize) -> Traversal {
        instrument::tick();
        Traversal {
            kind: Kind::Min,
            cursor: list.head_raw(),
            consumed: 0,
            total: list.len(),
            p,
            buf: Vec::with_capacity(p),
            finished: false,
        }
    }

    pub fn start_max_left(list: &OccurrenceList, p: usize, r1: usize) -> Traversal {
        instrument::tick();
        Traversal {
            kind: Kind::MaxLeft(r1),
            cursor: list.head_raw(),
            consumed: 0,
            total: list.len(),
            p,
            buf: Vec::with_capacity(p),
            finished: false,
        }
    }

    /// Consumes one element, if any remain.
    pub fn step(&mut self, list: &OccurrenceList) {
        if self.finished || self.cursor == NIL {
            return;
        }
        instrument::tick();
        let pos = self.cursor;
        self.cursor = list.next_raw(pos);
        self.consumed += 1;
        self.offer(pos);
    }

    fn offer(&mut self, pos: usize) {
        match self.kind {
            Kind::Min => {
                if self.buf.len() < self.p {
                    let at = self.buf.partition_point(|&x| x < pos);
                    self.buf.insert(at, pos);
                } else if pos < *self.buf.last().unwrap() {
                    self.buf.pop();
                    let at = self.buf.partition_point(|&x| x < pos);
                    self.buf.insert(at, pos);
                }
            }
            Kind::MaxLeft(r1) => {
                if pos > r1 {
                    return;
                }
                if self.buf.len() < self.p {
                    let at = self.buf.partition_point(|&x| x < pos);
                    self.buf.insert(at, pos);
                } else if pos > self.buf[0] {
                    self.buf.remove(0);
                    let at = self.buf.partition_point(|&x| x < pos);
                    self.buf.insert(at, pos);
                }
            }
        }
    }

    /// Drains the remaining elements and returns the retained positions,
    /// ascending. Panics if more than `p` elements are still unvisited:
    /// that would mean the sweep cadence failed to cover the list.
    pub fn finish(&mut self, list: &OccurrenceList) -> &[usize] {
        if !self.finished {
            let remaining = self.total - self.consumed;
            assert!(
                remaining <= self.p,
                "background traversal finished with {remaining} unvisited elements (p = {})",
                self.p
            );
            while self.cursor != NIL {
                instrument::tick();
                let pos = self.cursor;
                self.cursor = list.next_raw(pos);
                self.consumed += 1;
                self.offer(pos);
            }
            self.finished = true;
        }
        &self.buf
    }

    pub fn cells(&self) -> usize {
        self.buf.capacity() + 5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list_of(positions: &[usize], n: usize) -> OccurrenceList {
        let mut l = OccurrenceList::new(n);
        for &i in positions {
            l.insert(i);
        }
        l
    }

    #[test]
    fn min_traversal_keeps_smallest() {
        // Insertion order deliberately scrambled.
        let list = list_of(&[7, 2, 9, 4, 1], 10);
        let mut t = Traversal::start_min(&list, 3);
        for _ in 0..2 {
            t.step(&list);
        }
        // After any number of steps the buffer holds the smallest of the
        // visited prefix (7, 2 so far).
        assert_eq!(t.result_unchecked(), &[2, 7]);
        let out = t.finish(&list);
        assert_eq!(out, &[1, 2, 4]);
    }

    #[test]
    fn max_left_traversal_respects_limit() {
        let list = list_of(&[7, 2, 9, 4, 1], 10);
        let mut t = Traversal::start_max_left(&list, 2, 6);
        for _ in 0..3 {
            t.step(&list);
        }
        let out = t.finish(&list);
        assert_eq!(out, &[2, 4], "largest two at or below 6");
    }

    #[test]
    #[should_panic(expected = "unvisited elements")]
    fn finish_asserts_remaining_bound() {
        let list = list_of(&[1, 2, 3, 4, 5, 6], 10);
        let mut t = Traversal::start_min(&list, 2);
        t.finish(&list);
    }

    #[test]
    fn empty_list_finishes_immediately() {
        let list = list_of(&[], 4);
        let mut t = Traversal::start_min(&list, 3);
        assert_eq!(t.finish(&list), &[] as &[usize]);
    }

    impl Traversal {
        fn result_unchecked(&self) -> &[usize] {
            &self.buf
        }
    }
}
