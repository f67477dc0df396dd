//! Constant-size summaries of nearby non-neutral letter occurrences kept
//! by the enumeration session: the right information tracks, per letter,
//! the first few occurrences at or right of the sweeping endpoint together
//! with small left-context lists; the left information keeps the last few
//! occurrences inside the window between the first limit and the current
//! one. Both are stored as flat fixed-capacity arrays so a step never
//! allocates.
//!
//! "Left of j / right of i" are inclusive on both ends throughout, and a
//! left-context list includes the tracked position itself when the letters
//! coincide.

use crate::instrument;
use crate::oracle::{LiSnapshot, RiSnapshot};

const NONE: usize = usize::MAX;

/// Per non-neutral letter: the at most `p` first occurrences at or right
/// of the current right endpoint (tracked, ascending), and per tracked
/// position and letter the at most `p` last occurrences between the
/// endpoint and that position.
#[derive(Debug, Clone)]
pub struct RightInfo {
    nn: usize,
    p: usize,
    /// `tracked[k*p + i]`, ascending within each letter block.
    tracked: Vec<usize>,
    tracked_len: Vec<usize>,
    /// `ctx[((k*p + i)*nn + b)*p + j]`, ascending within each list.
    ctx: Vec<usize>,
    ctx_len: Vec<usize>,
}

impl RightInfo {
    pub fn new(nn: usize, p: usize) -> RightInfo {
        RightInfo {
            nn,
            p,
            tracked: vec![NONE; nn * p],
            tracked_len: vec![0; nn],
            ctx: vec![NONE; nn * p * nn * p],
            ctx_len: vec![0; nn * p * nn],
        }
    }

    /// Summary at the last position of the word: position `n` tracked for
    /// its own letter (when non-neutral), nothing else.
    pub fn init_at_end(&mut self, n: usize, last_slot: Option<usize>) {
        instrument::tick();
        self.tracked_len.fill(0);
        self.ctx_len.fill(0);
        if let Some(k) = last_slot {
            self.tracked[k * self.p] = n;
            self.tracked_len[k] = 1;
            let base = (k * self.p) * self.nn + k;
            self.ctx[base * self.p] = n;
            self.ctx_len[base] = 1;
        }
    }

    /// Extends the summary one position left: `pos` enters the range. When
    /// `pos` carries a non-neutral letter it becomes the first tracked
    /// occurrence of that letter (the overflowing one is dropped) and is
    /// offered to every left-context list that is not yet full.
    pub fn extend_down(&mut self, pos: usize, slot_of_pos: Option<usize>) {
        instrument::tick();
        let Some(k) = slot_of_pos else { return };
        // Existing tracked positions see pos as a new earliest occurrence
        // of its letter; full lists keep their (later) entries.
        for t in 0..self.nn {
            for i in 0..self.tracked_len[t] {
                let list = ((t * self.p + i) * self.nn + k) as usize;
                let len = self.ctx_len[list];
                if len < self.p {
                    instrument::tick();
                    let base = list * self.p;
                    self.ctx.copy_within(base..base + len, base + 1);
                    self.ctx[base] = pos;
                    self.ctx_len[list] = len + 1;
                }
            }
        }
        // pos becomes the first tracked occurrence of its own letter.
        let len = self.tracked_len[k];
        let keep = len.min(self.p - 1);
        // Shift tracked entries and their context blocks one slot right.
        for i in (0..keep).rev() {
            self.tracked[k * self.p + i + 1] = self.tracked[k * self.p + i];
            let src = (k * self.p + i) * self.nn;
            let dst = (k * self.p + i + 1) * self.nn;
            for b in 0..self.nn {
                instrument::tick();
                let sbase = (src + b) * self.p;
                let dbase = (dst + b) * self.p;
                self.ctx.copy_within(sbase..sbase + self.ctx_len[src + b], dbase);
                self.ctx_len[dst + b] = self.ctx_len[src + b];
            }
        }
        self.tracked[k * self.p] = pos;
        self.tracked_len[k] = keep + 1;
        // Fresh context block for pos: only its own occurrence, inclusive.
        let base = (k * self.p) * self.nn;
        for b in 0..self.nn {
            self.ctx_len[base + b] = 0;
        }
        self.ctx[(base + k) * self.p] = pos;
        self.ctx_len[base + k] = 1;
    }

    pub fn copy_from(&mut self, other: &RightInfo) {
        debug_assert!(self.nn == other.nn && self.p == other.p);
        instrument::tick();
        self.tracked.copy_from_slice(&other.tracked);
        self.tracked_len.copy_from_slice(&other.tracked_len);
        self.ctx.copy_from_slice(&other.ctx);
        self.ctx_len.copy_from_slice(&other.ctx_len);
    }

    pub fn tracked_of(&self, slot: usize) -> &[usize] {
        &self.tracked[slot * self.p..slot * self.p + self.tracked_len[slot]]
    }

    /// Left-context list of letter `b_slot` at the `i`-th tracked position
    /// of letter `slot`.
    pub fn ctx_of(&self, slot: usize, i: usize, b_slot: usize) -> &[usize] {
        debug_assert!(i < self.tracked_len[slot]);
        let list = (slot * self.p + i) * self.nn + b_slot;
        &self.ctx[list * self.p..list * self.p + self.ctx_len[list]]
    }

    pub fn cells(&self) -> usize {
        self.tracked.len() + self.tracked_len.len() + self.ctx.len() + self.ctx_len.len() + 2
    }

    pub fn snapshot(&self) -> RiSnapshot {
        RiSnapshot {
            tracked: (0..self.nn).map(|k| self.tracked_of(k).to_vec()).collect(),
            ctx: (0..self.nn)
                .map(|k| {
                    (0..self.tracked_len[k])
                        .map(|i| (0..self.nn).map(|b| self.ctx_of(k, i, b).to_vec()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Per non-neutral letter: the at most `p` last occurrences between the
/// first limit and the current one, ascending.
#[derive(Debug, Clone)]
pub struct LeftInfo {
    nn: usize,
    p: usize,
    last: Vec<usize>,
    len: Vec<usize>,
}

impl LeftInfo {
    pub fn new(nn: usize, p: usize) -> LeftInfo {
        LeftInfo {
            nn,
            p,
            last: vec![NONE; nn * p],
            len: vec![0; nn],
        }
    }

    /// Summary of the single-position window `[r1, r1]`.
    pub fn init_at(&mut self, r1: usize, slot_of_r1: Option<usize>) {
        instrument::tick();
        self.len.fill(0);
        if let Some(k) = slot_of_r1 {
            self.last[k * self.p] = r1;
            self.len[k] = 1;
        }
    }

    pub fn copy_from(&mut self, other: &LeftInfo) {
        debug_assert!(self.nn == other.nn && self.p == other.p);
        instrument::tick();
        self.last.copy_from_slice(&other.last);
        self.len.copy_from_slice(&other.len);
    }

    pub fn list(&self, slot: usize) -> &[usize] {
        &self.last[slot * self.p..slot * self.p + self.len[slot]]
    }

    pub fn set(&mut self, slot: usize, values: &[usize]) {
        debug_assert!(values.len() <= self.p);
        instrument::tick_n(values.len() as u64 + 1);
        self.last[slot * self.p..slot * self.p + values.len()].copy_from_slice(values);
        self.len[slot] = values.len();
    }

    pub fn cells(&self) -> usize {
        self.last.len() + self.len.len() + 2
    }

    pub fn snapshot(&self) -> LiSnapshot {
        LiSnapshot {
            last: (0..self.nn).map(|k| self.list(k).to_vec()).collect(),
        }
    }
}

/// Merges two adjacent "last occurrences" lists: `outer` summarizes a
/// range ending where `inner`'s begins (both ends inclusive, so the seam
/// position may appear in both). Keeps the at most `p` largest of the
/// union, ascending, into `out`.
pub fn combine_left_lists(outer: &[usize], inner: &[usize], p: usize, out: &mut Vec<usize>) {
    out.clear();
    instrument::tick_n(1 + inner.len() as u64);
    let eligible = match inner.first() {
        Some(&seam) => outer.partition_point(|&x| x < seam),
        None => outer.len(),
    };
    let need = p.saturating_sub(inner.len());
    let start = eligible.saturating_sub(need);
    out.extend_from_slice(&outer[start..eligible]);
    out.extend_from_slice(inner);
    debug_assert!(out.len() <= p);
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn combine(outer: &[usize], inner: &[usize], p: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(p);
        combine_left_lists(outer, inner, p, &mut out);
        out
    }

    #[test]
    fn combine_dedupes_the_seam() {
        assert_eq!(combine(&[2, 5], &[5, 7], 3), vec![2, 5, 7]);
    }

    #[test]
    fn combine_ignores_outer_when_inner_saturated() {
        assert_eq!(combine(&[1, 2, 3], &[4, 5, 6], 3), vec![4, 5, 6]);
    }

    #[test]
    fn combine_matches_direct_scan_on_random_splits() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let p = rng.gen_range(1..=4);
            let n = rng.gen_range(1..=30);
            // A set of positions carrying the letter, then a split point.
            let mut occ: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
            occ.sort_unstable();
            let lo = rng.gen_range(1..=n);
            let hi = rng.gen_range(lo..=n);
            let mid = rng.gen_range(lo..=hi);
            let last_p = |a: usize, b: usize| -> Vec<usize> {
                let mut v: Vec<usize> = occ
                    .iter()
                    .copied()
                    .filter(|&x| a <= x && x <= b)
                    .collect();
                let cut = v.len().saturating_sub(p);
                v.drain(..cut);
                v
            };
            let outer = last_p(lo, mid);
            let inner = last_p(mid, hi);
            assert_eq!(combine(&outer, &inner, p), last_p(lo, hi), "{lo}..{mid}..{hi}");
        }
    }

    #[test]
    fn right_info_two_letter_example() {
        // Word "ba": letters b=slot 1, a=slot 0 (both non-neutral).
        let mut ri = RightInfo::new(2, 2);
        ri.init_at_end(2, Some(0));
        assert_eq!(ri.tracked_of(0), &[2]);
        assert_eq!(ri.tracked_of(1), &[] as &[usize]);
        assert_eq!(ri.ctx_of(0, 0, 0), &[2]);
        assert_eq!(ri.ctx_of(0, 0, 1), &[] as &[usize]);

        ri.extend_down(1, Some(1));
        assert_eq!(ri.tracked_of(0), &[2]);
        assert_eq!(ri.tracked_of(1), &[1]);
        assert_eq!(ri.ctx_of(0, 0, 1), &[1], "b@1 left of tracked a@2");
        assert_eq!(ri.ctx_of(1, 0, 1), &[1]);
    }

    #[test]
    fn right_info_drops_overflowing_tracked_position() {
        // p = 2, one letter; positions 5,4,3 arrive right to left.
        let mut ri = RightInfo::new(1, 2);
        ri.init_at_end(5, Some(0));
        ri.extend_down(4, Some(0));
        assert_eq!(ri.tracked_of(0), &[4, 5]);
        ri.extend_down(3, Some(0));
        assert_eq!(ri.tracked_of(0), &[3, 4]);
        // Context of the carried-over position 4 was shifted along.
        assert_eq!(ri.ctx_of(0, 1, 0), &[3, 4]);
    }
}
