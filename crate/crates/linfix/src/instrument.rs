//! Deterministic abstract cost model: an operation counter threaded through
//! the data structures, cell accounting, and the bench harness certifying
//! the per-phase bounds empirically.
//!
//! Costs are counted in abstract primitives rather than wall-clock time, so
//! constant-factor claims are falsifiable deterministically: identical
//! (language, n, seed, workload) inputs produce identical counts. Counting
//! can be switched off; measured and unmeasured runs must produce identical
//! outputs, which the tests check.

use std::cell::Cell;
use std::fmt;
use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adhoc::{AdhocKind, AdhocSession};
use crate::alphabet::{Letter, Word};
use crate::classify::SemiextPlan;
use crate::membership::MonoidTree;
use crate::monoid::Monoid;
use crate::occlist::LetterIndex;
use crate::semiext::EnumSession;
use crate::simple::SimpleSession;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
    static COUNTING: Cell<bool> = const { Cell::new(true) };
}

/// Counts one primitive step.
#[inline]
pub fn tick() {
    COUNTING.with(|c| {
        if c.get() {
            OPS.with(|o| o.set(o.get() + 1));
        }
    });
}

/// Counts `k` primitive steps at once.
#[inline]
pub fn tick_n(k: u64) {
    COUNTING.with(|c| {
        if c.get() {
            OPS.with(|o| o.set(o.get() + k));
        }
    });
}

/// Current value of the thread-local op counter.
pub fn ops() -> u64 {
    OPS.with(|o| o.get())
}

/// Enables or disables counting on this thread; returns the previous state.
pub fn set_counting(enabled: bool) -> bool {
    COUNTING.with(|c| c.replace(enabled))
}

/// Measures the ops spent between construction and [`Meter::elapsed`].
pub struct Meter {
    start: u64,
}

impl Meter {
    pub fn start() -> Meter {
        Meter { start: ops() }
    }

    pub fn elapsed(&self) -> u64 {
        ops() - self.start
    }

    pub fn restart(&mut self) -> u64 {
        let e = self.elapsed();
        self.start = ops();
        e
    }
}

// ---------------------------------------------------------------------------
// Bench harness
// ---------------------------------------------------------------------------

/// One measured configuration. Reproducible given (language, n, seed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub language: String,
    pub n: usize,
    pub seed: u64,
    pub preprocess_ops: u64,
    pub max_update_ops: u64,
    pub max_delay_ops: u64,
    pub extra_enum_cells: usize,
    pub total_cells: usize,
}

#[derive(Debug)]
pub enum BenchError {
    /// The strategy offers no complexity guarantees worth measuring.
    UnsupportedLanguage(String),
    EmptyReport,
    Io(std::io::Error),
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::UnsupportedLanguage(name) => {
                write!(f, "no measurable enumerator for language {name}")
            }
            BenchError::EmptyReport => write!(f, "refusing to write an empty report"),
            BenchError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<std::io::Error> for BenchError {
    fn from(e: std::io::Error) -> Self {
        BenchError::Io(e)
    }
}

/// Workload shape for [`profile_enumeration`].
#[derive(Debug, Clone, Copy)]
pub struct Workload {
    /// Number of non-neutral letters packed into the word's prefix; the
    /// rest of the word is neutral. Keeping this fixed across sizes makes
    /// the enumeration exercise identical phases at every `n`.
    pub block: usize,
    /// Measured substitution pairs (each applied and then reverted, so the
    /// word is intact for the following enumeration).
    pub substitutions: usize,
}

impl Default for Workload {
    fn default() -> Self {
        Workload { block: 24, substitutions: 50 }
    }
}

/// A language together with the enumerator measured for it.
pub enum Profiled<'a> {
    Semiext(&'a SemiextPlan),
    Adhoc {
        kind: AdhocKind,
        alphabet_len: usize,
        neutral: Vec<Letter>,
    },
}

impl Profiled<'_> {
    fn alphabet_len(&self) -> usize {
        match self {
            Profiled::Semiext(plan) => plan.dfa.alphabet().len(),
            Profiled::Adhoc { alphabet_len, .. } => *alphabet_len,
        }
    }

    fn neutral(&self) -> Vec<Letter> {
        match self {
            Profiled::Semiext(plan) => plan.neutral.clone(),
            Profiled::Adhoc { neutral, .. } => neutral.clone(),
        }
    }
}

/// Prefix block of shuffled non-neutral letters, neutral tail.
fn block_word(
    k: usize,
    neutral: &[Letter],
    n: usize,
    block: usize,
    rng: &mut ChaCha8Rng,
) -> Word {
    let nonneutral: Vec<Letter> = (0..k).filter(|a| !neutral.contains(a)).collect();
    assert!(!nonneutral.is_empty(), "bench words need a non-neutral letter");
    let block = block.min(n);
    assert!(
        block == n || !neutral.is_empty(),
        "bench words need a neutral letter to fill the tail"
    );
    let mut letters: Vec<Letter> = (0..block).map(|i| nonneutral[i % nonneutral.len()]).collect();
    letters.shuffle(rng);
    letters.extend((block..n).map(|i| neutral[i % neutral.len()]));
    Word::new(letters)
}

/// Measures preprocessing, update and enumeration costs of the
/// constant-delay enumerators on a block word: build, one full
/// enumeration, the substitution batch (reverted pairwise), and a second
/// full enumeration.
pub fn profile_enumeration(
    language: &str,
    profiled: &Profiled,
    n: usize,
    seed: u64,
    workload: Workload,
) -> Result<BenchRow, BenchError> {
    let k = profiled.alphabet_len();
    let neutral = profiled.neutral();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = block_word(k, &neutral, n, workload.block, &mut rng);

    let mut meter = Meter::start();
    let mut index = LetterIndex::build_over(word, k);
    let preprocess_ops = meter.restart();

    let mut max_delay_ops = 0;
    let mut extra_enum_cells = 0;
    let enumerate = |index: &LetterIndex,
                         max_delay: &mut u64,
                         cells: &mut usize|
     -> Result<(), BenchError> {
        match profiled {
            Profiled::Semiext(plan) => {
                let mut s = EnumSession::start(index, plan);
                *cells = s.cells();
                let mut m = Meter::start();
                while s.next(index).expect("no updates during bench").is_some() {
                    *max_delay = (*max_delay).max(m.restart());
                    debug_assert_eq!(*cells, s.cells());
                }
                *max_delay = (*max_delay).max(m.restart());
            }
            Profiled::Adhoc { kind, neutral, .. } => {
                let mut s = AdhocSession::start(index, *kind, neutral);
                *cells = s.cells();
                let mut m = Meter::start();
                while s.next(index).expect("no updates during bench").is_some() {
                    *max_delay = (*max_delay).max(m.restart());
                }
                *max_delay = (*max_delay).max(m.restart());
            }
        }
        Ok(())
    };

    enumerate(&index, &mut max_delay_ops, &mut extra_enum_cells)?;

    let mut max_update_ops = 0;
    for _ in 0..workload.substitutions {
        let pos = rng.gen_range(1..=n);
        let replacement = rng.gen_range(0..k);
        let mut m = Meter::start();
        let before = index.apply_substitution(pos, replacement);
        max_update_ops = max_update_ops.max(m.restart());
        index.apply_substitution(pos, before);
        max_update_ops = max_update_ops.max(m.restart());
    }

    enumerate(&index, &mut max_delay_ops, &mut extra_enum_cells)?;

    Ok(BenchRow {
        language: language.to_string(),
        n,
        seed,
        preprocess_ops,
        max_update_ops,
        max_delay_ops,
        extra_enum_cells,
        total_cells: index.cells() + extra_enum_cells,
    })
}

/// Measures the oracle-driven backtracking enumerator on a word with
/// anchors at both ends (linear in results, so full runs stay feasible).
/// Delay grows with the oracle's update cost; the additional cells include
/// the mutated oracle.
pub fn profile_simple_enum(
    language: &str,
    monoid: &std::sync::Arc<Monoid>,
    anchor: Letter,
    neutral: Letter,
    n: usize,
    seed: u64,
) -> Result<BenchRow, BenchError> {
    assert!(n >= 2);
    let mut letters = vec![neutral; n];
    letters[0] = anchor;
    letters[n - 1] = anchor;
    let word = Word::new(letters);

    let mut meter = Meter::start();
    let index = LetterIndex::build_over(word.clone(), monoid.letter_len());
    let mut psi = MonoidTree::build(&word, monoid.clone());
    let preprocess_ops = meter.restart();

    let before = psi.leaf_checksum();
    let mut s = SimpleSession::start(&word, &psi)
        .map_err(|e| BenchError::UnsupportedLanguage(format!("{language}: {e}")))?;
    let extra_enum_cells = s.cells() + psi.cells();
    let mut max_delay_ops = 0;
    let mut m = Meter::start();
    while s.next(&mut psi).expect("no updates during bench").is_some() {
        max_delay_ops = max_delay_ops.max(m.restart());
    }
    max_delay_ops = max_delay_ops.max(m.restart());
    assert_eq!(psi.leaf_checksum(), before, "oracle not restored after bench run");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_update_ops = 0;
    for _ in 0..50 {
        let pos = rng.gen_range(1..=n);
        let a = rng.gen_range(0..monoid.letter_len());
        let prev = word.at(pos);
        let mut m = Meter::start();
        psi.update(pos, a);
        max_update_ops = max_update_ops.max(m.restart());
        psi.update(pos, prev);
        max_update_ops = max_update_ops.max(m.restart());
    }

    Ok(BenchRow {
        language: language.to_string(),
        n,
        seed,
        preprocess_ops,
        max_update_ops,
        max_delay_ops,
        extra_enum_cells,
        total_cells: index.cells() + psi.cells() + s.cells(),
    })
}

pub const CSV_HEADER: &str =
    "language,n,seed,preprocess_ops,max_update_ops,max_delay_ops,extra_enum_cells,total_cells";

/// Writes the report as CSV; refuses an empty report.
pub fn emit_csv(rows: &[BenchRow], path: &Path) -> Result<(), BenchError> {
    let mut out = render_csv(rows)?;
    out.push('\n');
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

pub fn render_csv(rows: &[BenchRow]) -> Result<String, BenchError> {
    if rows.is_empty() {
        return Err(BenchError::EmptyReport);
    }
    let mut s = String::from(CSV_HEADER);
    for r in rows {
        s.push('\n');
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}",
            r.language,
            r.n,
            r.seed,
            r.preprocess_ops,
            r.max_update_ops,
            r.max_delay_ops,
            r.extra_enum_cells,
            r.total_cells
        ));
    }
    Ok(s)
}

/// Parses a report back; the inverse of [`render_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<BenchRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("bad header: {other:?}")),
    }
    let mut rows = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 8 {
            return Err(format!("bad row: {line}"));
        }
        let num = |i: usize| -> Result<u64, String> {
            parts[i].parse().map_err(|e| format!("{line}: {e}"))
        };
        rows.push(BenchRow {
            language: parts[0].to_string(),
            n: num(1)? as usize,
            seed: num(2)?,
            preprocess_ops: num(3)?,
            max_update_ops: num(4)?,
            max_delay_ops: num(5)?,
            extra_enum_cells: num(6)? as usize,
            total_cells: num(7)? as usize,
        });
    }
    Ok(rows)
}
