//! Enumerating the remaining infixes of a window whose non-neutral letters
//! are all rare.
//!
//! The rare occurrence lists give the non-neutral subword `w'` of the
//! window `[lo, hi]` together with its positions `q_1 < .. < q_m`. Every
//! infix of the window either realizes some `w'[i..j]` padded by neutral
//! letters — its endpoints then range over `(q_{i-1}, q_i] x [q_j,
//! q_{j+1})` — or contains no non-neutral position at all, in which case
//! it lies strictly between two consecutive `q`s and belongs to the
//! language exactly when the empty word does. Membership of each `w'[i..j]`
//! is a constant-length recognizer run, so the walk has constant delay and
//! touches only preallocated buffers.

use crate::alphabet::{Infix, Letter};
use crate::dfa::Dfa;
use crate::instrument;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Both endpoints free inside the window.
    Full,
    /// Left endpoint pinned to `lo`.
    LeftAnchored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    /// Neutral-only infixes inside gap `g` (between q_g and q_{g+1}).
    Neutral { g: usize, lp: usize, rp: usize },
    /// Scanning for the next subword infix `[i, j]` to emit.
    Seek { i: usize, j: usize },
    /// Emitting the endpoint rectangle of subword infix `[i, j]`.
    Rect { i: usize, j: usize, lp: usize, rp: usize },
    Done,
}

#[derive(Debug)]
pub struct Produce {
    mode: Mode,
    lo: usize,
    hi: usize,
    /// Positions and letters of the window's non-neutral subword.
    positions: Vec<usize>,
    letters: Vec<Letter>,
    eps_in_lang: bool,
    step: Step,
    active: bool,
}

impl Produce {
    pub fn new(capacity: usize) -> Produce {
        Produce {
            mode: Mode::Full,
            lo: 0,
            hi: 0,
            positions: Vec::with_capacity(capacity),
            letters: Vec::with_capacity(capacity),
            eps_in_lang: false,
            step: Step::Done,
            active: false,
        }
    }

    pub fn cells(&self) -> usize {
        self.positions.capacity() + self.letters.capacity() + 8
    }

    /// Starts a run over window `[lo, hi]`; `merged` must hold exactly the
    /// non-neutral positions of the window, ascending, with their letters.
    pub fn start(
        &mut self,
        left_anchored: bool,
        lo: usize,
        hi: usize,
        merged: &[usize],
        letters: &[Letter],
        eps_in_lang: bool,
    ) {
        instrument::tick();
        assert!(merged.len() <= self.positions.capacity(), "rare subword overflow");
        debug_assert!(merged.windows(2).all(|w| w[0] < w[1]));
        self.mode = if left_anchored { Mode::LeftAnchored } else { Mode::Full };
        self.lo = lo;
        self.hi = hi;
        self.positions.clear();
        self.positions.extend_from_slice(merged);
        self.letters.clear();
        self.letters.extend_from_slice(letters);
        self.eps_in_lang = eps_in_lang;
        self.step = Step::Neutral {
            g: 0,
            lp: lo,
            rp: lo,
        };
        self.active = hi >= lo;
        if !self.active {
            self.step = Step::Done;
        }
    }

    /// Position `q_g` with the window sentinels `q_0 = lo - 1` and
    /// `q_{m+1} = hi + 1`.
    fn q(&self, g: usize) -> usize {
        if g == 0 {
            self.lo - 1
        } else if g > self.positions.len() {
            self.hi + 1
        } else {
            self.positions[g - 1]
        }
    }

    /// Next remaining infix, or `None` once exhausted. Constant work per
    /// call: gap and subword scans are bounded by the (constant) subword
    /// capacity, and every rectangle step emits.
    pub fn next(&mut self, dfa: &Dfa) -> Option<Infix> {
        let m = self.positions.len();
        loop {
            instrument::tick();
            match self.step {
                Step::Done => {
                    self.active = false;
                    return None;
                }
                Step::Neutral { g, lp, rp } => {
                    // Neutral-only infixes live strictly between q_g and
                    // q_{g+1}; with a pinned left endpoint only the gap at
                    // the window start (g = 0, lp = lo) applies.
                    if !self.eps_in_lang || (self.mode == Mode::LeftAnchored && g > 0) {
                        self.step = self.after_neutral(g);
                        continue;
                    }
                    let gap_hi = self.q(g + 1).min(self.hi + 1) - 1;
                    if lp > gap_hi {
                        self.step = self.after_neutral(g);
                        continue;
                    }
                    if rp > gap_hi {
                        if self.mode == Mode::LeftAnchored {
                            self.step = self.after_neutral(g);
                        } else {
                            let lp = lp + 1;
                            self.step = Step::Neutral { g, lp, rp: lp };
                        }
                        continue;
                    }
                    self.step = Step::Neutral { g, lp, rp: rp + 1 };
                    return Some(Infix::new(lp, rp));
                }
                Step::Seek { i, j } => {
                    if i > m {
                        self.step = Step::Done;
                        continue;
                    }
                    if j > m {
                        if self.mode == Mode::LeftAnchored {
                            self.step = Step::Done;
                        } else {
                            self.step = Step::Seek { i: i + 1, j: i + 1 };
                        }
                        continue;
                    }
                    instrument::tick_n((j - i) as u64 + 1);
                    if dfa.accepts(&self.letters[i - 1..j]) {
                        self.step = Step::Rect {
                            i,
                            j,
                            lp: if self.mode == Mode::LeftAnchored {
                                self.lo
                            } else {
                                self.q(i - 1) + 1
                            },
                            rp: self.q(j),
                        };
                    } else {
                        self.step = Step::Seek { i, j: j + 1 };
                    }
                    continue;
                }
                Step::Rect { i, j, lp, rp } => {
                    let lp_hi = self.q(i);
                    let rp_hi = self.q(j + 1).min(self.hi + 1) - 1;
                    if rp > rp_hi {
                        // Advance the left endpoint of the rectangle.
                        if self.mode == Mode::Full && lp < lp_hi {
                            self.step = Step::Rect { i, j, lp: lp + 1, rp: self.q(j) };
                        } else {
                            self.step = Step::Seek { i, j: j + 1 };
                        }
                        continue;
                    }
                    self.step = Step::Rect { i, j, lp, rp: rp + 1 };
                    return Some(Infix::new(lp, rp));
                }
            }
        }
    }

    fn after_neutral(&self, g: usize) -> Step {
        let m = self.positions.len();
        if self.mode == Mode::LeftAnchored {
            // Only the leading gap is relevant; continue with subword
            // prefixes [1, j].
            Step::Seek { i: 1, j: 1 }
        } else if g < m {
            Step::Neutral {
                g: g + 1,
                lp: self.q(g + 1) + 1,
                rp: self.q(g + 1) + 1,
            }
        } else {
            Step::Seek { i: 1, j: 1 }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Word};
    use crate::dfa::compile_min_dfa;
    use crate::oracle::brute_enumerate;
    use crate::regex::parse_regex;
    use std::collections::BTreeSet;

    fn run(
        dfa: &Dfa,
        word: &Word,
        left_anchored: bool,
        lo: usize,
        hi: usize,
        nonneutral_positions: &[usize],
    ) -> Vec<Infix> {
        let letters: Vec<Letter> = nonneutral_positions.iter().map(|&q| word.at(q)).collect();
        let mut p = Produce::new(nonneutral_positions.len().max(1));
        p.start(
            left_anchored,
            lo,
            hi,
            nonneutral_positions,
            &letters,
            dfa.accepts(&[]),
        );
        let mut out = Vec::new();
        while let Some(x) = p.next(dfa) {
            out.push(x);
        }
        out
    }

    fn lang(expr: &str, letters: &str) -> (Dfa, Alphabet) {
        let a = Alphabet::new(letters.chars()).unwrap();
        let ast = parse_regex(expr, &a).unwrap();
        (compile_min_dfa(&ast, &a), a)
    }

    #[test]
    fn anchored_run_emits_prefix_rectangles() {
        // Window [1, 4] of "abab..." with rare letters a@{1,3}, b@{2,4}:
        // only [1, 2] realizes the exact word ab.
        let (dfa, a) = lang("e*ae*be*|.*a.*a.*a.*|.*b.*b.*b.*", "abe");
        let w = Word::new(a.intern("abababab").unwrap());
        let got = run(&dfa, &w, true, 1, 4, &[1, 2, 3, 4]);
        assert_eq!(got, vec![Infix::new(1, 2)]);
    }

    #[test]
    fn neutral_only_window_yields_nothing_without_empty_word() {
        let (dfa, a) = lang("e*ae*be*|.*a.*a.*a.*|.*b.*b.*b.*", "abe");
        let w = Word::new(a.intern("eeee").unwrap());
        assert_eq!(run(&dfa, &w, false, 1, 4, &[]), vec![]);
    }

    #[test]
    fn neutral_only_window_with_empty_word_in_language() {
        let (dfa, a) = lang("e*|.*a.*a.*", "ae");
        let w = Word::new(a.intern("eee").unwrap());
        let got: BTreeSet<Infix> = run(&dfa, &w, false, 1, 3, &[]).into_iter().collect();
        let want: BTreeSet<Infix> = brute_enumerate(&dfa, &w);
        assert_eq!(got, want);
    }

    #[test]
    fn full_run_matches_brute_force_on_random_windows() {
        use rand::{Rng, SeedableRng};
        let (dfa, _) = lang("e*ae*be*|.*a.*a.*a.*|.*b.*b.*b.*", "abe");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..300 {
            let n = rng.gen_range(1..=18);
            // Mostly neutral so the rare precondition (all non-neutral
            // letters rare, p = 3) holds.
            let letters: Vec<Letter> = (0..n)
                .map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..2) } else { 2 })
                .collect();
            let counts = letters.iter().filter(|&&x| x != 2).count();
            if counts > 4 {
                continue;
            }
            let w = Word::new(letters);
            let lo = rng.gen_range(1..=n);
            let hi = rng.gen_range(lo..=n);
            let qs: Vec<usize> = (lo..=hi).filter(|&i| w.at(i) != 2).collect();
            let left_anchored = rng.gen_bool(0.5);
            let got: BTreeSet<Infix> =
                run(&dfa, &w, left_anchored, lo, hi, &qs).into_iter().collect();
            let want: BTreeSet<Infix> = brute_enumerate(&dfa, &w)
                .into_iter()
                .filter(|x| x.r <= hi && x.l >= lo && (!left_anchored || x.l == lo))
                .collect();
            assert_eq!(got, want, "window [{lo}, {hi}] of {:?}", w.letters());
            // No duplicates either.
            let list = run(&dfa, &w, left_anchored, lo, hi, &qs);
            assert_eq!(list.len(), got.len());
        }
    }
}
