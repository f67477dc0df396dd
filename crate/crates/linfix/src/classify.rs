//! Algebraic classification of a language and the machinery built from it:
//! the equation checks that pick an enumeration strategy, a valid
//! rare/frequent threshold, and constant-time membership for the factor
//! languages `Cond(S)` queried on rare-letter subwords.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::alphabet::{Alphabet, Letter};
use crate::dfa::{self, Dfa};
use crate::instrument;
use crate::monoid::{syntactic_monoid, Monoid, MonoidError};

/// Outcome of classifying a language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub is_zg: bool,
    pub is_aperiodic: bool,
    pub is_extensible: bool,
    pub is_semi_extensible_zg: bool,
    /// Valid rare/frequent threshold, present iff semi-extensible.
    pub threshold: Option<usize>,
    /// Neutral letters, ascending.
    pub neutral: Vec<Letter>,
    pub monoid_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    MonoidTooLarge { size_bound: usize },
    NotSemiExtensible,
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::MonoidTooLarge { size_bound } => {
                write!(f, "syntactic monoid exceeds {size_bound} elements")
            }
            ClassifyError::NotSemiExtensible => {
                write!(f, "language is not semi-extensible; no threshold exists")
            }
        }
    }
}

impl std::error::Error for ClassifyError {}

impl From<MonoidError> for ClassifyError {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::TooLarge { size_bound } => ClassifyError::MonoidTooLarge { size_bound },
        }
    }
}

/// Whether `y * x^(omega+1) = x^(omega+1) * y` for all elements.
pub fn is_zg(m: &Monoid) -> bool {
    let w1: Vec<_> = m.elements().map(|x| m.pow(x, m.omega() + 1)).collect();
    m.elements().all(|x| {
        let xw = w1[x];
        m.elements().all(|y| m.mul(y, xw) == m.mul(xw, y))
    })
}

/// Whether `x^omega = x^(omega+1)` for all elements.
pub fn is_aperiodic(m: &Monoid) -> bool {
    m.elements()
        .all(|x| m.pow(x, m.omega()) == m.pow(x, m.omega() + 1))
}

/// Two-sided ideal generated by the accepting elements, i.e. all products
/// `s * m * t` with `m` accepting. Closing under one-letter factors on
/// both sides is enough because every element is a product of letters.
fn accepting_ideal(m: &Monoid) -> Vec<bool> {
    let mut in_ideal: Vec<bool> = m.elements().map(|x| m.is_accepting(x)).collect();
    let gens: Vec<usize> = (0..m.letter_len()).map(|a| m.letter(a)).collect();
    let mut stack: Vec<usize> = m.elements().filter(|&x| in_ideal[x]).collect();
    while let Some(x) = stack.pop() {
        for &g in &gens {
            for y in [m.mul(g, x), m.mul(x, g)] {
                if !in_ideal[y] {
                    in_ideal[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    in_ideal
}

/// Whether every extension of a language word stays in the language:
/// `s * m * t` is accepting for all `s`, `t` and accepting `m`.
pub fn is_extensible(m: &Monoid) -> bool {
    accepting_ideal(m)
        .iter()
        .enumerate()
        .all(|(x, &in_ideal)| !in_ideal || m.is_accepting(x))
}

/// Whether the language is semi-extensible and ZG: the ZG equation holds
/// and `x * y * z * a^omega` is accepting whenever `y` is, for every
/// non-neutral letter `a`.
pub fn is_semi_extensible_zg(m: &Monoid) -> bool {
    if !is_zg(m) {
        return false;
    }
    let ideal = accepting_ideal(m);
    let nonneutral_pows: Vec<_> = (0..m.letter_len())
        .filter(|&a| !m.is_neutral(a))
        .map(|a| m.pow(m.letter(a), m.omega()))
        .collect();
    m.elements().filter(|&x| ideal[x]).all(|x| {
        nonneutral_pows
            .iter()
            .all(|&aw| m.is_accepting(m.mul(x, aw)))
    })
}

/// A valid rare/frequent threshold: `max(2, |M| + 1)`. Any larger value is
/// also valid. Errors when the language is not semi-extensible ZG.
pub fn threshold(m: &Monoid) -> Result<usize, ClassifyError> {
    if !is_semi_extensible_zg(m) {
        return Err(ClassifyError::NotSemiExtensible);
    }
    Ok((m.len() + 1).max(2))
}

/// Runs every check and assembles the report.
pub fn classify(dfa: &Dfa) -> Result<ClassificationReport, ClassifyError> {
    let m = syntactic_monoid(dfa)?;
    let report = classify_monoid(&m);
    Ok(report)
}

pub fn classify_monoid(m: &Monoid) -> ClassificationReport {
    let zg = is_zg(m);
    let aperiodic = is_aperiodic(m);
    let extensible = is_extensible(m);
    let semi = is_semi_extensible_zg(m);
    let report = ClassificationReport {
        is_zg: zg,
        is_aperiodic: aperiodic,
        is_extensible: extensible,
        is_semi_extensible_zg: semi,
        threshold: if semi { Some((m.len() + 1).max(2)) } else { None },
        neutral: m.neutral_letters(),
        monoid_size: m.len(),
    };
    debug_assert!(!report.is_semi_extensible_zg || report.is_zg);
    debug_assert!(
        !(report.is_extensible && report.is_zg) || report.is_semi_extensible_zg,
        "extensible ZG language must be semi-extensible ZG"
    );
    debug_assert!(!report.is_semi_extensible_zg || report.is_aperiodic);
    report
}

// ---------------------------------------------------------------------------
// Cond(S) recognizers
// ---------------------------------------------------------------------------

/// Bitmask over letter ids; the alphabet is capped at the mask width.
pub type LetterSet = u32;

pub fn letter_set(letters: &[Letter]) -> LetterSet {
    letters.iter().fold(0, |m, &a| m | (1 << a))
}

/// Per-subset recognizers for the languages `Cond(S)`: the words whose
/// erased form contains, as a factor, the erased form of some language
/// word. `S` ranges over the non-empty sets of non-neutral letters; letters
/// of `S` and neutral letters are erased on both sides, so membership is
/// queried on subwords that avoid them entirely.
pub struct CondFamily {
    alphabet: Alphabet,
    dfa: Dfa,
    neutral_mask: LetterSet,
    nonneutral: Vec<Letter>,
    /// Recognizer per `S` mask (indexed into `recognizers` via `slot_of`).
    recognizers: Vec<Dfa>,
    slots: HashMap<LetterSet, usize>,
    /// Queries must stay below this many occurrences per letter.
    query_cap: usize,
    memo: Mutex<HashMap<(LetterSet, Vec<Letter>), bool>>,
}

impl fmt::Debug for CondFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CondFamily")
            .field("nonneutral", &self.nonneutral)
            .field("query_cap", &self.query_cap)
            .finish()
    }
}

impl CondFamily {
    /// Builds recognizers for every non-empty subset of the non-neutral
    /// letters. `query_cap` is the threshold the queries are capped by.
    pub fn build(dfa: &Dfa, neutral: &[Letter], query_cap: usize) -> CondFamily {
        let alphabet = dfa.alphabet().clone();
        let k = alphabet.len();
        assert!(k <= 32, "alphabets above 32 letters are not supported");
        let neutral_mask = letter_set(neutral);
        let nonneutral: Vec<Letter> = (0..k).filter(|&a| neutral_mask & (1 << a) == 0).collect();
        assert!(
            nonneutral.len() <= 16,
            "too many non-neutral letters for subset recognizers"
        );
        let mut recognizers = Vec::new();
        let mut slots = HashMap::new();
        for bits in 1u32..(1 << nonneutral.len()) {
            let mask: LetterSet = nonneutral
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits & (1 << i) != 0)
                .fold(0, |m, (_, &a)| m | (1 << a));
            slots.insert(mask, recognizers.len());
            recognizers.push(factor_closure_erased(dfa, mask | neutral_mask));
        }
        CondFamily {
            alphabet,
            dfa: dfa.clone(),
            neutral_mask,
            nonneutral,
            recognizers,
            slots,
            query_cap,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The language recognizer the family was built from.
    pub fn language(&self) -> &Dfa {
        &self.dfa
    }

    pub fn neutral_mask(&self) -> LetterSet {
        self.neutral_mask
    }

    pub fn nonneutral(&self) -> &[Letter] {
        &self.nonneutral
    }

    pub fn query_cap(&self) -> usize {
        self.query_cap
    }

    /// Memoized membership of `subword` in `Cond(S)`. The subword must
    /// avoid `S` and the neutral letters, and each letter must occur fewer
    /// than the query cap times.
    pub fn member(&self, s: LetterSet, subword: &[Letter]) -> bool {
        self.assert_query(s, subword, self.query_cap);
        instrument::tick();
        let key = (s, subword.to_vec());
        if let Some(&hit) = self.memo.lock().unwrap().get(&key) {
            return hit;
        }
        let answer = self.run(s, subword);
        self.memo.lock().unwrap().insert(key, answer);
        answer
    }

    /// Like [`CondFamily::member`] with an explicit occurrence cap; used
    /// when validating thresholds other than the one the family was built
    /// with.
    pub fn member_with_cap(&self, s: LetterSet, subword: &[Letter], cap: usize) -> bool {
        self.assert_query(s, subword, cap);
        self.run(s, subword)
    }

    /// Uncached recognizer run; constant time for capped subwords and free
    /// of allocation, which is what the enumeration hot path needs.
    pub(crate) fn member_uncached(&self, s: LetterSet, subword: &[Letter]) -> bool {
        debug_assert!(subword
            .iter()
            .all(|&a| (s | self.neutral_mask) & (1 << a) == 0));
        self.run(s, subword)
    }

    fn run(&self, s: LetterSet, subword: &[Letter]) -> bool {
        let slot = *self
            .slots
            .get(&s)
            .unwrap_or_else(|| panic!("Cond set {s:#b} contains neutral letters or is empty"));
        let d = &self.recognizers[slot];
        instrument::tick_n(subword.len() as u64 + 1);
        d.accepts(subword)
    }

    fn assert_query(&self, s: LetterSet, subword: &[Letter], cap: usize) {
        assert!(
            s != 0 && s & self.neutral_mask == 0,
            "Cond sets must be non-empty sets of non-neutral letters"
        );
        let erased = s | self.neutral_mask;
        let mut counts = [0usize; 32];
        for &a in subword {
            assert!(
                erased & (1 << a) == 0,
                "subword contains erased letter {a} in a Cond query"
            );
            counts[a] += 1;
            assert!(
                counts[a] < cap,
                "subword has {} occurrences of letter {a}, cap is {cap}",
                counts[a]
            );
        }
    }
}

/// Automaton for the words over `Sigma \ erased` that contain a factor of
/// the language with the erased letters removed. Erased letters act as
/// silent moves on the language side and as self-loops on the query side.
fn factor_closure_erased(lang: &Dfa, erased: LetterSet) -> Dfa {
    let k = lang.alphabet().len();
    let q = lang.num_states();
    let start = q;
    let fin = q + 1;
    let total = q + 2;

    // Epsilon edges: erased letters inside the language, plus entry/exit.
    let mut eps: Vec<Vec<usize>> = vec![Vec::new(); total];
    for st in 0..q {
        for a in 0..k {
            if erased & (1 << a) != 0 {
                let t = lang.step(st, a);
                if t != st {
                    eps[st].push(t);
                }
            }
        }
        if lang.is_accepting(st) {
            eps[st].push(fin);
        }
    }
    eps[start].push(lang.initial());

    let closure = |set: &mut std::collections::BTreeSet<usize>| {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = stack.pop() {
            for &t in &eps[x] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    };

    // Subset construction over the kept letters; erased letters self-loop.
    let mut init: std::collections::BTreeSet<usize> = [start].into();
    closure(&mut init);
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = vec![init.iter().copied().collect()];
    ids.insert(subsets[0].clone(), 0);
    let mut trans: Vec<usize> = Vec::new();
    let mut accepting: Vec<bool> = Vec::new();
    let mut head = 0;
    while head < subsets.len() {
        let cur = subsets[head].clone();
        head += 1;
        accepting.push(cur.contains(&fin));
        for a in 0..k {
            if erased & (1 << a) != 0 {
                trans.push(head - 1);
                continue;
            }
            let mut succ: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
            for &st in &cur {
                if st == start || st == fin {
                    succ.insert(st);
                }
                if st < q {
                    succ.insert(lang.step(st, a));
                }
            }
            closure(&mut succ);
            let flat: Vec<usize> = succ.iter().copied().collect();
            let next = subsets.len();
            let id = *ids.entry(flat.clone()).or_insert_with(|| {
                subsets.push(flat);
                next
            });
            trans.push(id);
        }
    }
    dfa::from_parts(lang.alphabet().clone(), trans, 0, accepting)
}

/// Checks a threshold candidate on sampled words: whenever the frequent
/// set `T` of a sample is non-empty, the erased sample must be in
/// `Cond(T)` exactly when the sample is in the language. Returns the first
/// violating word, or `None` when all samples are consistent.
pub fn find_threshold_counterexample(
    dfa: &Dfa,
    family: &CondFamily,
    p: usize,
    samples: &[Vec<Letter>],
) -> Option<Vec<Letter>> {
    assert!(p >= 2, "thresholds are normalized to at least 2");
    let mut counts = vec![0usize; dfa.alphabet().len()];
    for u in samples {
        counts.iter_mut().for_each(|c| *c = 0);
        for &a in u {
            counts[a] += 1;
        }
        let mut t: LetterSet = 0;
        for &a in family.nonneutral() {
            if counts[a] >= p {
                t |= 1 << a;
            }
        }
        if t == 0 {
            continue;
        }
        let erased = t | family.neutral_mask();
        let subword: Vec<Letter> = u
            .iter()
            .copied()
            .filter(|&a| erased & (1 << a) == 0)
            .collect();
        if family.member_with_cap(t, &subword, p) != dfa.accepts(u) {
            return Some(u.clone());
        }
    }
    None
}

/// Whether threshold `p` is consistent with all sampled words.
pub fn validate_threshold(
    dfa: &Dfa,
    family: &CondFamily,
    p: usize,
    samples: &[Vec<Letter>],
) -> bool {
    find_threshold_counterexample(dfa, family, p, samples).is_none()
}

/// Everything a constant-memory enumeration session needs about a
/// language: the recognizer, the neutral letters, a valid threshold and
/// the Cond recognizers.
#[derive(Debug)]
pub struct SemiextPlan {
    pub dfa: Dfa,
    pub neutral: Vec<Letter>,
    pub p: usize,
    pub family: CondFamily,
}

impl SemiextPlan {
    /// Classifies the language and uses the derived threshold.
    pub fn from_dfa(dfa: &Dfa) -> Result<SemiextPlan, ClassifyError> {
        let m = syntactic_monoid(dfa)?;
        if !is_semi_extensible_zg(&m) {
            return Err(ClassifyError::NotSemiExtensible);
        }
        let p = threshold(&m)?;
        Ok(SemiextPlan::assemble(dfa, m.neutral_letters(), p))
    }

    /// Uses a caller-supplied threshold instead of the derived one. The
    /// language must still be semi-extensible ZG; pair smaller thresholds
    /// with [`validate_threshold`].
    pub fn with_threshold(dfa: &Dfa, p: usize) -> Result<SemiextPlan, ClassifyError> {
        assert!(p >= 2, "thresholds are normalized to at least 2");
        let m = syntactic_monoid(dfa)?;
        if !is_semi_extensible_zg(&m) {
            return Err(ClassifyError::NotSemiExtensible);
        }
        Ok(SemiextPlan::assemble(dfa, m.neutral_letters(), p))
    }

    fn assemble(dfa: &Dfa, neutral: Vec<Letter>, p: usize) -> SemiextPlan {
        let family = CondFamily::build(dfa, &neutral, p);
        SemiextPlan {
            dfa: dfa.clone(),
            neutral,
            p,
            family,
        }
    }

    pub fn neutral_mask(&self) -> LetterSet {
        letter_set(&self.neutral)
    }
}
