//! Constant-delay enumerators for a few fixed languages outside the reach
//! of the general session: a single final marker after free letters
//! (`(e|b)* a e*`), two anchors with anything between (`e* a .* a e*`),
//! and odd occurrence counts (`(aa)* a` up to neutrals).
//!
//! Each walks the occurrence list of its anchor letter and expands
//! endpoint rectangles around the anchors one step per emitted result, so
//! the state is a handful of scalars; no memory proportional to the word
//! is touched. The enumerators are selected by language fingerprint: the
//! candidate automaton is compared against a role-instantiated template
//! for every assignment of the non-neutral letters.

use crate::alphabet::{Infix, Letter};
use crate::classify::{letter_set, LetterSet};
use crate::dfa::{compile_min_dfa, Dfa};
use crate::instrument;
use crate::occlist::LetterIndex;
use crate::regex::parse_regex;
use crate::semiext::SessionError;

/// Which fixed language an index is enumerated under, with the letter
/// roles resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdhocKind {
    /// `(N|b)* a N*`: one `a`, nothing but `b`s and neutrals before it,
    /// neutrals after it.
    BStarA { a: Letter },
    /// `N* a .* a N*`: first and last non-neutral letters are `a`s.
    ASigmaA { a: Letter },
    /// Odd number of `a`s; every other letter neutral.
    OddA { a: Letter },
}

impl AdhocKind {
    pub fn strategy_name(&self) -> &'static str {
        match self {
            AdhocKind::BStarA { .. } => "b-star-a",
            AdhocKind::ASigmaA { .. } => "a-any-a",
            AdhocKind::OddA { .. } => "odd-a",
        }
    }
}

fn group(letters: &[char]) -> String {
    let inner: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
    format!("({})", inner.join("|"))
}

/// Recognizes the registered languages by minimal-automaton equivalence
/// against role-instantiated templates.
pub fn detect(dfa: &Dfa, neutral: &[Letter]) -> Option<AdhocKind> {
    let alphabet = dfa.alphabet();
    let neutral_mask = letter_set(neutral);
    let nonneutral: Vec<Letter> = (0..alphabet.len())
        .filter(|&x| neutral_mask & (1 << x) == 0)
        .collect();
    let neutral_chars: Vec<char> = neutral.iter().map(|&x| alphabet.symbol(x)).collect();
    let estar = if neutral_chars.is_empty() {
        String::new()
    } else {
        format!("{}*", group(&neutral_chars))
    };

    let compiled = |expr: &str| -> Dfa {
        let ast = parse_regex(expr, alphabet).expect("template expression must parse");
        compile_min_dfa(&ast, alphabet)
    };

    // Single marker: exactly two non-neutral roles.
    if nonneutral.len() == 2 {
        for (i, j) in [(0, 1), (1, 0)] {
            let (a, b) = (nonneutral[i], nonneutral[j]);
            let (ca, cb) = (alphabet.symbol(a), alphabet.symbol(b));
            let free = if neutral_chars.is_empty() {
                format!("{cb}*")
            } else {
                let mut all = neutral_chars.clone();
                all.push(cb);
                format!("{}*", group(&all))
            };
            if dfa.equivalent(&compiled(&format!("{free}{ca}{estar}"))) {
                return Some(AdhocKind::BStarA { a });
            }
        }
    }

    // Two anchors: any non-neutral letter may be the anchor.
    for &a in &nonneutral {
        let ca = alphabet.symbol(a);
        if dfa.equivalent(&compiled(&format!("{estar}{ca}.*{ca}{estar}"))) {
            return Some(AdhocKind::ASigmaA { a });
        }
    }

    // Odd count: a single non-neutral role.
    if nonneutral.len() == 1 {
        let a = nonneutral[0];
        let ca = alphabet.symbol(a);
        let odd = format!("{estar}{ca}({estar}{ca}{estar}{ca})*{estar}");
        if dfa.equivalent(&compiled(&odd)) {
            return Some(AdhocKind::OddA { a });
        }
    }

    None
}

#[derive(Debug, Clone, Copy)]
enum State {
    NextAnchor,
    /// Single-marker rectangle: anchor `k`, emitting `[i, j]`.
    Marker { k: usize, i: usize, j: usize },
    /// Pair rectangle for list cursors at `(k1, k2)`.
    Pair { k1: usize, k2: usize, i: usize, j: usize },
    /// Odd-count expansion: the level spans `[lo, hi]` of anchor
    /// occurrences; emitting `[i, j]`; discovered level boundaries.
    Level {
        lo: usize,
        hi: usize,
        i: usize,
        j: usize,
        left_next: Edge,
        right_next: Edge,
    },
    Done,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Edge {
    Unknown,
    At(usize),
    Blocked,
}

/// Read-only enumeration cursor for one of the fixed languages.
pub struct AdhocSession {
    kind: AdhocKind,
    uid: u64,
    version: u64,
    n: usize,
    neutral_mask: LetterSet,
    /// Raw cursor into the anchor's occurrence list (insertion order).
    cursor: usize,
    /// Second cursor for the pair enumerator.
    cursor2: usize,
    state: State,
}

const NIL: usize = usize::MAX;

impl AdhocSession {
    pub fn start(index: &LetterIndex, kind: AdhocKind, neutral: &[Letter]) -> AdhocSession {
        let anchor = match kind {
            AdhocKind::BStarA { a } | AdhocKind::ASigmaA { a } | AdhocKind::OddA { a } => a,
        };
        AdhocSession {
            kind,
            uid: index.uid(),
            version: index.version(),
            n: index.len(),
            neutral_mask: letter_set(neutral),
            cursor: index.list(anchor).head_raw(),
            cursor2: NIL,
            state: State::NextAnchor,
        }
    }

    fn is_neutral(&self, a: Letter) -> bool {
        self.neutral_mask & (1 << a) != 0
    }

    /// Pulls the next infix; constant work per call.
    pub fn next(&mut self, index: &LetterIndex) -> Result<Option<Infix>, SessionError> {
        if index.uid() != self.uid || index.version() != self.version {
            return Err(SessionError::Stale);
        }
        Ok(match self.kind {
            AdhocKind::BStarA { a } => self.next_marker(index, a),
            AdhocKind::ASigmaA { a } => self.next_pair(index, a),
            AdhocKind::OddA { a } => self.next_level(index, a),
        })
    }

    pub fn cells(&self) -> usize {
        16
    }

    fn next_marker(&mut self, index: &LetterIndex, a: Letter) -> Option<Infix> {
        let w = index.word();
        let list = index.list(a);
        loop {
            instrument::tick();
            match self.state {
                State::Done => return None,
                State::NextAnchor => {
                    if self.cursor == NIL {
                        self.state = State::Done;
                        continue;
                    }
                    let k = self.cursor;
                    self.cursor = list.next_raw(k);
                    self.state = State::Marker { k, i: k, j: k };
                }
                State::Marker { k, i, j } => {
                    // Emit, then extend right over neutrals; when blocked,
                    // extend left over anything that is not the marker.
                    self.state = if j < self.n && self.is_neutral(w.at(j + 1)) {
                        State::Marker { k, i, j: j + 1 }
                    } else if i > 1 && w.at(i - 1) != a {
                        State::Marker { k, i: i - 1, j: k }
                    } else {
                        State::NextAnchor
                    };
                    return Some(Infix::new(i, j));
                }
                _ => unreachable!("marker enumerator in foreign state"),
            }
        }
    }

    fn next_pair(&mut self, index: &LetterIndex, a: Letter) -> Option<Infix> {
        let w = index.word();
        let list = index.list(a);
        loop {
            instrument::tick();
            match self.state {
                State::Done => return None,
                State::NextAnchor => {
                    // Unordered pairs in list order: cursor stays, cursor2
                    // walks the remainder of the list.
                    if self.cursor == NIL {
                        self.state = State::Done;
                        continue;
                    }
                    if self.cursor2 == NIL {
                        // Entering a new outer anchor.
                        self.cursor2 = list.next_raw(self.cursor);
                        if self.cursor2 == NIL {
                            self.state = State::Done;
                            continue;
                        }
                    }
                    let (p1, p2) = (self.cursor, self.cursor2);
                    self.cursor2 = list.next_raw(p2);
                    if self.cursor2 == NIL {
                        self.cursor = list.next_raw(p1);
                        if self.cursor != NIL {
                            self.cursor2 = list.next_raw(self.cursor);
                            if self.cursor2 == NIL {
                                self.cursor = NIL;
                            }
                        }
                    }
                    let (k1, k2) = (p1.min(p2), p1.max(p2));
                    self.state = State::Pair { k1, k2, i: k1, j: k2 };
                }
                State::Pair { k1, k2, i, j } => {
                    self.state = if j < self.n && self.is_neutral(w.at(j + 1)) {
                        State::Pair { k1, k2, i, j: j + 1 }
                    } else if i > 1 && self.is_neutral(w.at(i - 1)) {
                        State::Pair { k1, k2, i: i - 1, j: k2 }
                    } else {
                        State::NextAnchor
                    };
                    return Some(Infix::new(i, j));
                }
                _ => unreachable!("pair enumerator in foreign state"),
            }
        }
    }

    fn next_level(&mut self, index: &LetterIndex, a: Letter) -> Option<Infix> {
        let w = index.word();
        let list = index.list(a);
        loop {
            instrument::tick();
            match self.state {
                State::Done => return None,
                State::NextAnchor => {
                    if self.cursor == NIL {
                        self.state = State::Done;
                        continue;
                    }
                    let m = self.cursor;
                    self.cursor = list.next_raw(m);
                    self.state = State::Level {
                        lo: m,
                        hi: m,
                        i: m,
                        j: m,
                        left_next: Edge::Unknown,
                        right_next: Edge::Unknown,
                    };
                }
                State::Level { lo, hi, i, j, mut left_next, mut right_next } => {
                    let out = Infix::new(i, j);
                    // Advance j over neutrals; discover the next anchor
                    // occurrence (or the boundary) on the way.
                    if j < self.n && w.at(j + 1) != a {
                        self.state = State::Level { lo, hi, i, j: j + 1, left_next, right_next };
                        return Some(out);
                    }
                    if right_next == Edge::Unknown {
                        right_next = if j < self.n { Edge::At(j + 1) } else { Edge::Blocked };
                    }
                    // Advance i leftwards, resetting j.
                    if i > 1 && w.at(i - 1) != a {
                        self.state = State::Level {
                            lo,
                            hi,
                            i: i - 1,
                            j: hi,
                            left_next,
                            right_next,
                        };
                        return Some(out);
                    }
                    if left_next == Edge::Unknown {
                        left_next = if i > 1 { Edge::At(i - 1) } else { Edge::Blocked };
                    }
                    // Level finished: grow symmetrically or move on.
                    self.state = match (left_next, right_next) {
                        (Edge::At(la), Edge::At(ra)) => State::Level {
                            lo: la,
                            hi: ra,
                            i: la,
                            j: ra,
                            left_next: Edge::Unknown,
                            right_next: Edge::Unknown,
                        },
                        _ => State::NextAnchor,
                    };
                    return Some(out);
                }
                _ => unreachable!("level enumerator in foreign state"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;
    use crate::monoid::syntactic_monoid;
    use crate::oracle::brute_enumerate;
    use crate::samples;
    use std::collections::BTreeSet;

    fn kind_and_neutral(lang: &samples::Lang) -> (AdhocKind, Vec<Letter>) {
        let m = syntactic_monoid(&lang.dfa).unwrap();
        let neutral = m.neutral_letters();
        let kind = detect(&lang.dfa, &neutral).expect("fingerprint must match");
        (kind, neutral)
    }

    fn run_all(lang: &samples::Lang, text: &str) -> BTreeSet<Infix> {
        let (kind, neutral) = kind_and_neutral(lang);
        let word = Word::new(lang.alphabet.intern(text).unwrap());
        let index = LetterIndex::build_over(word, lang.alphabet.len());
        let mut s = AdhocSession::start(&index, kind, &neutral);
        let mut out = Vec::new();
        while let Some(x) = s.next(&index).unwrap() {
            out.push(x);
        }
        let set: BTreeSet<Infix> = out.iter().copied().collect();
        assert_eq!(set.len(), out.len(), "duplicates on {text}");
        set
    }

    fn infixes(pairs: &[(usize, usize)]) -> BTreeSet<Infix> {
        pairs.iter().map(|&(l, r)| Infix::new(l, r)).collect()
    }

    #[test]
    fn detection_resolves_roles() {
        assert_eq!(
            kind_and_neutral(&samples::b_star_a()).0,
            AdhocKind::BStarA { a: 0 }
        );
        assert_eq!(
            kind_and_neutral(&samples::a_any_a()).0,
            AdhocKind::ASigmaA { a: 0 }
        );
        assert_eq!(kind_and_neutral(&samples::odd_a()).0, AdhocKind::OddA { a: 0 });
        // Non-registered languages do not fingerprint.
        let lang = samples::ab_or_triples();
        let m = syntactic_monoid(&lang.dfa).unwrap();
        assert_eq!(detect(&lang.dfa, &m.neutral_letters()), None);
    }

    #[test]
    fn marker_enumerator_hand_examples() {
        let lang = samples::b_star_a();
        assert_eq!(run_all(&lang, "ebea"), infixes(&[(1, 4), (2, 4), (3, 4), (4, 4)]));
        assert_eq!(run_all(&lang, "eee"), infixes(&[]));
        assert_eq!(run_all(&lang, "aa"), infixes(&[(1, 1), (2, 2)]));
    }

    #[test]
    fn pair_enumerator_hand_examples() {
        let lang = samples::a_any_a();
        assert_eq!(run_all(&lang, "aea"), infixes(&[(1, 3)]));
        assert_eq!(run_all(&lang, "a"), infixes(&[]));
        assert_eq!(run_all(&lang, "aaa"), infixes(&[(1, 2), (2, 3), (1, 3)]));
    }

    #[test]
    fn level_enumerator_hand_examples() {
        let lang = samples::odd_a();
        assert_eq!(run_all(&lang, "aea"), infixes(&[(1, 1), (1, 2), (2, 3), (3, 3)]));
        assert_eq!(run_all(&lang, "e"), infixes(&[]));
        assert_eq!(run_all(&lang, "aaa"), infixes(&[(1, 1), (2, 2), (3, 3), (1, 3)]));
    }

    #[test]
    fn all_three_match_brute_force_on_random_words() {
        use rand::{Rng, SeedableRng};
        for lang in [samples::b_star_a(), samples::a_any_a(), samples::odd_a()] {
            let (kind, neutral) = kind_and_neutral(&lang);
            let k = lang.alphabet.len();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xADC);
            for _ in 0..400 {
                let n = rng.gen_range(1..=50);
                let word = Word::new((0..n).map(|_| rng.gen_range(0..k)).collect());
                let index = LetterIndex::build_over(word.clone(), k);
                let mut s = AdhocSession::start(&index, kind, &neutral);
                let mut out = Vec::new();
                while let Some(x) = s.next(&index).unwrap() {
                    out.push(x);
                }
                let set: BTreeSet<Infix> = out.iter().copied().collect();
                assert_eq!(set.len(), out.len(), "{} duplicates", lang.name);
                assert_eq!(
                    set,
                    brute_enumerate(&lang.dfa, &word),
                    "{} on {:?}",
                    lang.name,
                    word.letters()
                );
            }
        }
    }

    #[test]
    fn updates_stale_the_session() {
        let lang = samples::b_star_a();
        let (kind, neutral) = kind_and_neutral(&lang);
        let word = Word::new(lang.alphabet.intern("ebea").unwrap());
        let mut index = LetterIndex::build_over(word, lang.alphabet.len());
        let mut s = AdhocSession::start(&index, kind, &neutral);
        assert!(s.next(&index).unwrap().is_some());
        index.apply_substitution(1, 0);
        assert_eq!(s.next(&index), Err(SessionError::Stale));
    }
}
