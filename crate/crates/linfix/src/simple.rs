//! Backtracking enumeration of language infixes for extensible languages
//! with a neutral letter, driven by a dynamic membership oracle.
//!
//! The session considers left endpoints in increasing order; for each one
//! it erases letters from the right (substituting the neutral letter in
//! the oracle) while membership holds, then restores them. Results with an
//! even right endpoint are emitted while shrinking, odd ones while
//! restoring, so the work between two results stays bounded; the same
//! parity split on the left endpoint restores the oracle completely by the
//! time enumeration finishes. Extensibility gives the pruning rule: once
//! the suffix starting at some left endpoint leaves the language, no
//! larger left endpoint can produce anything, so the session immediately
//! turns around.
//!
//! The session mutates the oracle through fake updates, so real updates
//! cannot be processed until enumeration completes; an update landing
//! mid-session is detected by a version check and reported as an error.

use std::fmt;

use crate::alphabet::{Infix, Letter, Word};
use crate::classify;
use crate::instrument;
use crate::membership::MonoidTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleStartError {
    NotExtensible,
    NoNeutralLetter,
    /// The oracle stores a different word length than the given word.
    LengthMismatch,
}

impl fmt::Display for SimpleStartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleStartError::NotExtensible => write!(f, "language is not extensible"),
            SimpleStartError::NoNeutralLetter => write!(f, "language has no neutral letter"),
            SimpleStartError::LengthMismatch => write!(f, "oracle and word lengths differ"),
        }
    }
}

impl std::error::Error for SimpleStartError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleNextError {
    /// The oracle was mutated from outside while the session was active.
    UpdateDuringEnumeration,
}

impl fmt::Display for SimpleNextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "oracle was updated during enumeration")
    }
}

impl std::error::Error for SimpleNextError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outer {
    /// Left endpoint increases; even ones are enumerated.
    Ascend,
    /// Left endpoint decreases while the oracle is restored; odd ones are
    /// enumerated.
    Descend,
    Finished,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Inner {
    /// Dispatch for the current left endpoint.
    BeginL,
    /// Test the full suffix; on failure the ascend phase turns around.
    Probe,
    /// Erase rightward while membership holds; emit even right endpoints.
    Shrink,
    /// Restore rightward; emit odd right endpoints.
    Grow,
    /// Advance the left endpoint.
    EndL,
}

/// Pull-based cursor over the language infixes of `word`, issuing fake
/// updates to the oracle while it runs and restoring it on exhaustion.
pub struct SimpleSession {
    word: Word,
    neutral: Letter,
    n: usize,
    outer: Outer,
    inner: Inner,
    l: usize,
    r: usize,
    expected_version: u64,
    oracle_uid: u64,
    probes: usize,
}

impl SimpleSession {
    /// Starts enumeration over `word`, which must be exactly the word the
    /// oracle currently stores. The language must be extensible and have a
    /// neutral letter (both checked against the oracle's monoid).
    pub fn start(word: &Word, psi: &MonoidTree) -> Result<SimpleSession, SimpleStartError> {
        let monoid = psi.monoid();
        if !classify::is_extensible(monoid) {
            return Err(SimpleStartError::NotExtensible);
        }
        let neutral = (0..monoid.letter_len())
            .find(|&a| monoid.is_neutral(a))
            .ok_or(SimpleStartError::NoNeutralLetter)?;
        if psi.len() != word.len() {
            return Err(SimpleStartError::LengthMismatch);
        }
        Ok(SimpleSession {
            word: word.clone(),
            neutral,
            n: word.len(),
            outer: Outer::Ascend,
            inner: Inner::BeginL,
            l: 1,
            r: word.len(),
            expected_version: psi.version(),
            oracle_uid: psi.uid(),
            probes: 0,
        })
    }

    /// Pulls the next infix. Work per call is a bounded number of oracle
    /// operations; when `None` is returned the oracle is bit-identical to
    /// its state at session start.
    pub fn next(&mut self, psi: &mut MonoidTree) -> Result<Option<Infix>, SimpleNextError> {
        if psi.uid() != self.oracle_uid || psi.version() != self.expected_version {
            return Err(SimpleNextError::UpdateDuringEnumeration);
        }
        let out = self.advance(psi);
        self.expected_version = psi.version();
        Ok(out)
    }

    fn advance(&mut self, psi: &mut MonoidTree) -> Option<Infix> {
        loop {
            instrument::tick();
            match (self.outer, self.inner) {
                (Outer::Finished, _) => return None,
                (Outer::Ascend, Inner::BeginL) => {
                    self.inner = if self.l % 2 == 0 { Inner::Probe } else { Inner::EndL };
                }
                (Outer::Descend, Inner::BeginL) => {
                    // Restore this position first; for the turnaround point
                    // it was never erased and this is a no-op rewrite.
                    psi.update(self.l, self.word.at(self.l));
                    self.inner = if self.l % 2 == 1 { Inner::Probe } else { Inner::EndL };
                }
                (outer, Inner::Probe) => {
                    self.probes += 1;
                    self.r = self.n;
                    if psi.test() {
                        self.inner = Inner::Shrink;
                    } else if outer == Outer::Ascend {
                        // Extensibility: no larger left endpoint can have
                        // results; turn around without erasing this one.
                        self.outer = Outer::Descend;
                        self.inner = Inner::BeginL;
                    } else {
                        self.inner = Inner::EndL;
                    }
                }
                (_, Inner::Shrink) => {
                    // Invariant: membership holds for [l, r].
                    let out = (self.r % 2 == 0).then(|| Infix::new(self.l, self.r));
                    psi.update(self.r, self.neutral);
                    self.r -= 1;
                    if self.r < self.l || !psi.test() {
                        self.inner = Inner::Grow;
                    }
                    if out.is_some() {
                        return out;
                    }
                }
                (_, Inner::Grow) => {
                    if self.r == self.n {
                        self.inner = Inner::EndL;
                        continue;
                    }
                    self.r += 1;
                    psi.update(self.r, self.word.at(self.r));
                    if self.r % 2 == 1 {
                        return Some(Infix::new(self.l, self.r));
                    }
                }
                (Outer::Ascend, Inner::EndL) => {
                    psi.update(self.l, self.neutral);
                    if self.l == self.n {
                        self.outer = Outer::Descend;
                    } else {
                        self.l += 1;
                    }
                    self.inner = Inner::BeginL;
                }
                (Outer::Descend, Inner::EndL) => {
                    if self.l == 1 {
                        self.outer = Outer::Finished;
                        return None;
                    }
                    self.l -= 1;
                    self.inner = Inner::BeginL;
                }
            }
        }
    }

    pub fn is_finished(&self) -> bool {
        self.outer == Outer::Finished
    }

    /// Number of full-suffix probes made; the ascend phase stops probing
    /// at the first failure.
    pub fn probe_count(&self) -> usize {
        self.probes
    }

    /// Additional memory cells held by the session beyond the word copy.
    pub fn cells(&self) -> usize {
        8
    }
}
