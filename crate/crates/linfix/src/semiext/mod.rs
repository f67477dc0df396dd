//! Constant-delay, constant-additional-memory enumeration of the language
//! infixes of a word under the letter index, for semi-extensible ZG
//! languages.
//!
//! A session sweeps a window `[l, r]`: the left endpoint moves right one
//! position per outer round, and for each `l` the right endpoint sweeps
//! down from the end of the word. While some non-neutral letter is
//! frequent in the window and the rare-letter subword passes the matching
//! `Cond` recognizer, every window is itself a language infix and is
//! emitted directly. When the window exits that regime, the remaining
//! infixes for this `l` involve only rare letters and are produced from
//! the rare occurrence lists; the session then advances `l`.
//!
//! The hard part is knowing where the rare occurrences are without ever
//! scanning the word during enumeration. Three mechanisms cooperate:
//!
//! * min background traversals of the occurrence lists feed the first
//!   outer round, advancing one element per right-endpoint decrement;
//! * the right information tracks the first few occurrences right of `r`
//!   with small left-context lists, maintained in constant time per step;
//! * at each round's exit the left information summarizes the window
//!   between the first limit and the current one, and max-left background
//!   traversals (started once, after the first round) cover everything
//!   left of the first limit.
//!
//! Sessions never write to the word or the index: they bind its version at
//! start and fail fast with [`SessionError::Stale`] once an update lands.
//! All buffers are allocated at session start with capacities that depend
//! only on the language, never on the word length.

mod info;
mod produce;
mod traversal;

pub use info::{combine_left_lists, LeftInfo, RightInfo};

use std::fmt;

use crate::alphabet::{Infix, Letter};
use crate::classify::{LetterSet, SemiextPlan};
use crate::instrument;
use crate::occlist::LetterIndex;
use crate::oracle::{LiSnapshot, RiSnapshot};
use produce::Produce;
use traversal::Traversal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionError {
    /// The index was updated (or swapped) after the session started.
    Stale,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionError::Stale => write!(f, "session is stale: the word was updated"),
        }
    }
}

impl std::error::Error for SessionError {}

/// Knobs for diagnostics. Both violate the constant-memory or read-only
/// spirit of measured runs and default to off.
#[derive(Debug, Clone, Copy, Default)]
pub struct SessionOptions {
    /// Record the per-round limits (grows with the word; test/diagnostic
    /// use only).
    pub record_limits: bool,
    /// Re-check every emitted infix against the language recognizer.
    pub verify_outputs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    RoundStart,
    Sweep,
    ProduceThenRound,
    ProduceThenFinish,
    RoundEnd,
    Finished,
}

/// Read-only enumeration cursor over `(word, index)`.
///
/// Obtain one with [`EnumSession::start`], then pull infixes with
/// [`EnumSession::next`], passing the same index back in; between calls
/// the index is free for updates, which invalidate the session.
pub struct EnumSession<'p> {
    plan: &'p SemiextPlan,
    // Binding to the index this session reads.
    uid: u64,
    version: u64,
    n: usize,
    p: usize,
    /// Non-neutral letters, ascending, and the inverse map.
    nn: Vec<Letter>,
    nn_slot: Vec<Option<usize>>,
    eps_in_lang: bool,
    // Occurrence counters: suffix counts (from l) and window counts [l, r].
    nocc: Vec<usize>,
    noccw: Vec<usize>,
    t_mask: LetterSet,
    l: usize,
    r: usize,
    phase: Phase,
    // Rare occurrence lists per non-neutral slot, ascending, in [l, r].
    delta: Vec<Vec<usize>>,
    delta_filled: Vec<bool>,
    // Right information at r, at r + 1, and at the previous limit.
    ri: RightInfo,
    ri_above: RightInfo,
    ri_limit: RightInfo,
    // Left information at the current and previous limit.
    li: LeftInfo,
    li_limit: LeftInfo,
    r1: usize,
    prev_limit: usize,
    // Background traversals per non-neutral slot.
    min_trav: Vec<Traversal>,
    max_trav: Vec<Traversal>,
    max_started: bool,
    produce: Produce,
    // Preallocated scratch.
    scratch: Vec<usize>,
    merged: Vec<usize>,
    merged_letters: Vec<Letter>,
    // Diagnostics.
    limits: Option<Vec<(usize, usize)>>,
    verify_outputs: bool,
}

impl<'p> EnumSession<'p> {
    /// Starts a session over `index`. Constant work beyond reading the
    /// per-letter counters; the first [`EnumSession::next`] call performs
    /// the first round's setup.
    pub fn start(index: &LetterIndex, plan: &'p SemiextPlan) -> EnumSession<'p> {
        Self::start_with(index, plan, SessionOptions::default())
    }

    pub fn start_with(
        index: &LetterIndex,
        plan: &'p SemiextPlan,
        options: SessionOptions,
    ) -> EnumSession<'p> {
        let k = plan.dfa.alphabet().len();
        assert_eq!(index.letters(), k, "index and plan disagree on the alphabet");
        let n = index.len();
        let p = plan.p;
        let neutral_mask: LetterSet = plan.neutral_mask();
        let nn: Vec<Letter> = (0..k).filter(|&a| neutral_mask & (1 << a) == 0).collect();
        let mut nn_slot = vec![None; k];
        for (s, &a) in nn.iter().enumerate() {
            nn_slot[a] = Some(s);
        }
        let nocc: Vec<usize> = (0..k).map(|a| index.list(a).count()).collect();
        let min_trav: Vec<Traversal> = nn
            .iter()
            .map(|&a| Traversal::start_min(index.list(a), p))
            .collect();
        let max_trav: Vec<Traversal> = nn.iter().map(|_| Traversal::idle(p)).collect();
        let rare_cap = nn.len() * p + 1;
        EnumSession {
            plan,
            uid: index.uid(),
            version: index.version(),
            n,
            p,
            nn_slot,
            eps_in_lang: plan.dfa.accepts_empty(),
            noccw: nocc.clone(),
            nocc,
            t_mask: 0,
            l: 1,
            r: n,
            phase: Phase::RoundStart,
            delta: nn.iter().map(|_| Vec::with_capacity(p)).collect(),
            delta_filled: vec![false; nn.len()],
            ri: RightInfo::new(nn.len(), p),
            ri_above: RightInfo::new(nn.len(), p),
            ri_limit: RightInfo::new(nn.len(), p),
            li: LeftInfo::new(nn.len(), p),
            li_limit: LeftInfo::new(nn.len(), p),
            r1: 0,
            prev_limit: 0,
            min_trav,
            max_trav,
            max_started: false,
            produce: Produce::new(rare_cap),
            scratch: Vec::with_capacity(3 * p + 2),
            merged: Vec::with_capacity(rare_cap),
            merged_letters: Vec::with_capacity(rare_cap),
            limits: options.record_limits.then(Vec::new),
            verify_outputs: options.verify_outputs,
            nn,
        }
    }

    /// Pulls the next language infix. Constant work per call; errors when
    /// the index has been updated since the session started.
    pub fn next(&mut self, index: &LetterIndex) -> Result<Option<Infix>, SessionError> {
        if index.uid() != self.uid || index.version() != self.version {
            return Err(SessionError::Stale);
        }
        loop {
            instrument::tick();
            match self.phase {
                Phase::Finished => return Ok(None),
                Phase::RoundStart => self.round_start(index),
                Phase::Sweep => {
                    if let Some(out) = self.sweep_step(index) {
                        return Ok(Some(self.checked(index, out)));
                    }
                    self.exit_sweep(index);
                }
                Phase::ProduceThenRound | Phase::ProduceThenFinish => {
                    match self.produce.next(&self.plan.dfa) {
                        Some(out) => return Ok(Some(self.checked(index, out))),
                        None => {
                            if self.phase == Phase::ProduceThenFinish {
                                self.phase = Phase::Finished;
                            } else {
                                self.phase = Phase::RoundEnd;
                            }
                        }
                    }
                }
                Phase::RoundEnd => self.round_end(index),
            }
        }
    }

    fn checked(&self, index: &LetterIndex, out: Infix) -> Infix {
        if self.verify_outputs {
            let w = index.word();
            assert!(
                self.plan.dfa.accepts(w.slice(out.l, out.r)),
                "emitted non-language infix {out}"
            );
        }
        out
    }

    /// Additional memory cells held by the session, in word-sized units.
    /// Independent of the word length by construction.
    pub fn cells(&self) -> usize {
        let fixed = 14 // scalar fields
            + self.nocc.capacity()
            + self.noccw.capacity()
            + self.nn.capacity()
            + self.nn_slot.capacity()
            + self.delta.iter().map(|d| d.capacity() + 1).sum::<usize>()
            + self.delta_filled.capacity()
            + self.ri.cells()
            + self.ri_above.cells()
            + self.ri_limit.cells()
            + self.li.cells()
            + self.li_limit.cells()
            + self.min_trav.iter().map(|t| t.cells()).sum::<usize>()
            + self.max_trav.iter().map(|t| t.cells()).sum::<usize>()
            + self.produce.cells()
            + self.scratch.capacity()
            + self.merged.capacity()
            + self.merged_letters.capacity();
        // The limits recorder is diagnostic-only and grows with the word;
        // it is deliberately excluded from the measured figure.
        fixed
    }

    // -- round machinery ---------------------------------------------------

    /// Top of the outer round: reset the window to `[l, n]`, refresh the
    /// counters and summaries, and fill the rare lists.
    fn round_start(&mut self, index: &LetterIndex) {
        instrument::tick_n(self.noccw.len() as u64);
        self.r = self.n;
        self.noccw.copy_from_slice(&self.nocc);
        let w = index.word();
        self.ri.init_at_end(self.n, self.slot_of(w.at(self.n)));
        self.ri_above.copy_from(&self.ri);
        for f in self.delta_filled.iter_mut() {
            *f = false;
        }
        for slot in 0..self.nn.len() {
            if self.noccw[self.nn[slot]] < self.p {
                self.fill_rare(index, slot, self.n);
            }
        }
        self.recompute_frequent();
        self.phase = Phase::Sweep;
    }

    /// One iteration of the inner sweep. Emits the current window when the
    /// frequent regime holds; otherwise returns `None` and the caller
    /// transitions out.
    fn sweep_step(&mut self, index: &LetterIndex) -> Option<Infix> {
        if self.t_mask == 0 || !self.cond_holds(index) {
            return None;
        }
        let out = Infix::new(self.l, self.r);
        let w = index.word();
        let a = w.at(self.r);
        self.noccw[a] -= 1;
        self.recompute_frequent();
        if let Some(slot) = self.slot_of(a) {
            if self.noccw[a] == self.p - 1 {
                // The letter just became rare: locate its occurrences in
                // the shrunk window.
                self.fill_rare(index, slot, self.r - 1);
            } else if self.noccw[a] < self.p - 1 {
                instrument::tick();
                let popped = self.delta[slot].pop();
                debug_assert_eq!(popped, Some(self.r));
            }
        }
        // Keep the summary one step above r for the round's exit, then
        // extend down to the new endpoint.
        self.ri_above.copy_from(&self.ri);
        let newpos = self.r - 1;
        if newpos >= 1 {
            self.ri.extend_down(newpos, self.slot_of(w.at(newpos)));
        }
        self.r -= 1;
        self.step_traversals_on_decrement(index);
        Some(out)
    }

    fn exit_sweep(&mut self, index: &LetterIndex) {
        if self.t_mask != 0 {
            // No window at or below this r can contain a language infix.
            if self.r == self.n {
                self.phase = Phase::Finished;
            } else {
                self.phase = Phase::RoundEnd;
            }
        } else {
            // All non-neutral letters of the window are rare; the rare
            // lists describe the window exactly.
            let full = self.r == self.n;
            self.merge_delta_positions(index);
            self.produce.start(
                !full,
                self.l,
                self.r,
                &self.merged,
                &self.merged_letters,
                self.eps_in_lang,
            );
            self.phase = if full {
                Phase::ProduceThenFinish
            } else {
                Phase::ProduceThenRound
            };
        }
    }

    /// Bottom of the outer round: fix the limit, maintain the left
    /// information, and advance `l`.
    fn round_end(&mut self, index: &LetterIndex) {
        let r_l = self.r + 1;
        debug_assert!(r_l > self.l, "limits always lie right of l");
        if let Some(rec) = &mut self.limits {
            rec.push((self.l, r_l));
        }
        let w = index.word();
        if self.l == 1 {
            self.r1 = r_l;
            self.li.init_at(r_l, self.slot_of(w.at(r_l)));
            for (slot, trav) in self.max_trav.iter_mut().enumerate() {
                *trav = Traversal::start_max_left(index.list(self.nn[slot]), self.p, r_l);
            }
            self.max_started = true;
        } else {
            self.update_left_info(r_l, w.at(r_l));
        }
        self.ri_limit.copy_from(&self.ri_above);
        self.li_limit.copy_from(&self.li);
        self.prev_limit = r_l;
        self.nocc[w.at(self.l)] -= 1;
        self.l += 1;
        if self.max_started {
            for (slot, trav) in self.max_trav.iter_mut().enumerate() {
                trav.step(index.list(self.nn[slot]));
            }
        }
        self.phase = if self.l > self.n {
            Phase::Finished
        } else {
            Phase::RoundStart
        };
    }

    /// Left information at the new limit from the previous limit's left
    /// information and right information.
    fn update_left_info(&mut self, r_l: usize, letter_at_limit: Letter) {
        instrument::tick();
        if r_l == self.prev_limit {
            self.li.copy_from(&self.li_limit);
            return;
        }
        // The limit moved: it must be a tracked occurrence of its letter
        // in the previous limit's summary.
        let slot = self.nn_slot[letter_at_limit]
            .expect("limit letter is non-neutral when the limit moves");
        let i = self
            .ri_limit
            .tracked_of(slot)
            .iter()
            .position(|&q| q == r_l)
            .expect("new limit not tracked by the previous right information");
        for b in 0..self.nn.len() {
            combine_left_lists(
                self.li_limit.list(b),
                self.ri_limit.ctx_of(slot, i, b),
                self.p,
                &mut self.scratch,
            );
            self.li.set(b, &self.scratch);
        }
    }

    // -- rare occurrences --------------------------------------------------

    /// Fills `delta[slot]` with the occurrences of its letter in
    /// `[l, upto]`, which the caller guarantees number fewer than `p`.
    fn fill_rare(&mut self, index: &LetterIndex, slot: usize, upto: usize) {
        let a = self.nn[slot];
        self.scratch.clear();
        if self.l == 1 {
            // First round: the min traversal has seen everything except
            // the tail the sweep already passed.
            let list = self.min_trav[slot].finish(index.list(a));
            self.scratch.extend_from_slice(list);
        } else {
            // Later rounds: everything left of the first limit comes from
            // the max-left traversal, the stretch up to the previous limit
            // from the left information, and the rest is tracked by the
            // right information at the previous limit.
            let maxleft = self.max_trav[slot].finish(index.list(a));
            combine_left_lists(maxleft, self.li_limit.list(slot), self.p, &mut self.scratch);
            let seam = self.scratch.last().copied();
            for &q in self.ri_limit.tracked_of(slot) {
                instrument::tick();
                if q > upto {
                    break;
                }
                if Some(q) > seam {
                    self.scratch.push(q);
                }
            }
        }
        let lo = self.l;
        self.delta[slot].clear();
        for &q in self.scratch.iter() {
            instrument::tick();
            if q >= lo && q <= upto {
                self.delta[slot].push(q);
            }
        }
        self.delta_filled[slot] = true;
        debug_assert_eq!(
            self.delta[slot].len(),
            self.noccw[a],
            "rare list for letter {a} disagrees with the window count"
        );
        assert!(self.delta[slot].len() < self.p);
    }

    /// Sorted positions (and letters) of all rare non-neutral occurrences
    /// in the window, merged from the per-letter lists.
    fn merge_delta_positions(&mut self, index: &LetterIndex) {
        self.merged.clear();
        for slot in 0..self.nn.len() {
            if self.noccw[self.nn[slot]] < self.p {
                debug_assert!(self.delta_filled[slot]);
                instrument::tick_n(self.delta[slot].len() as u64 + 1);
                self.merged.extend_from_slice(&self.delta[slot]);
            }
        }
        self.merged.sort_unstable();
        let w = index.word();
        self.merged_letters.clear();
        for i in 0..self.merged.len() {
            self.merged_letters.push(w.at(self.merged[i]));
        }
    }

    /// Whether the rare subword of the window passes the recognizer for
    /// the current frequent set.
    fn cond_holds(&mut self, index: &LetterIndex) -> bool {
        self.merge_delta_positions(index);
        self.plan
            .family
            .member_uncached(self.t_mask, &self.merged_letters)
    }

    fn recompute_frequent(&mut self) {
        instrument::tick();
        let mut t = 0;
        for &a in &self.nn {
            if self.noccw[a] >= self.p {
                t |= 1 << a;
            }
        }
        self.t_mask = t;
    }

    fn step_traversals_on_decrement(&mut self, index: &LetterIndex) {
        if self.l == 1 {
            for (slot, trav) in self.min_trav.iter_mut().enumerate() {
                trav.step(index.list(self.nn[slot]));
            }
        }
        if self.max_started {
            for (slot, trav) in self.max_trav.iter_mut().enumerate() {
                trav.step(index.list(self.nn[slot]));
            }
        }
    }

    fn slot_of(&self, a: Letter) -> Option<usize> {
        self.nn_slot[a]
    }

    // -- diagnostics -------------------------------------------------------

    /// Recorded `(l, limit)` pairs; empty unless limit recording was
    /// enabled.
    pub fn limits(&self) -> &[(usize, usize)] {
        self.limits.as_deref().unwrap_or(&[])
    }

    #[doc(hidden)]
    pub fn debug_probe(&self) -> DebugProbe {
        DebugProbe {
            l: self.l,
            r: self.r,
            r1: self.r1,
            prev_limit: self.prev_limit,
            sweeping: self.phase == Phase::Sweep,
            ri: self.ri.snapshot(),
            ri_limit: self.ri_limit.snapshot(),
            li_limit: self.li_limit.snapshot(),
        }
    }
}

/// Internal state exposed to the differential tests.
#[doc(hidden)]
pub struct DebugProbe {
    pub l: usize,
    pub r: usize,
    pub r1: usize,
    pub prev_limit: usize,
    pub sweeping: bool,
    pub ri: RiSnapshot,
    pub ri_limit: RiSnapshot,
    pub li_limit: LiSnapshot,
}
