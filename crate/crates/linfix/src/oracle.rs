//! Brute-force reference implementations for differential testing: naive
//! infix enumeration, a recursive regex matcher, reachability-based
//! `Cond(S)` membership, and from-scratch recomputation of the range
//! summaries and loop limits maintained incrementally by the enumeration
//! session.
//!
//! None of these share a code path with the implementations they check,
//! and none of them have performance goals; quadratic is fine.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Infix, Letter, Word};
use crate::classify::{CondFamily, LetterSet};
use crate::dfa::Dfa;
use crate::regex::RegexAst;

/// All `[i, j]` whose factor the DFA accepts, by running it from every
/// start position. O(n^2).
pub fn brute_enumerate(dfa: &Dfa, word: &Word) -> BTreeSet<Infix> {
    let n = word.len();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        let mut q = dfa.initial();
        for j in i..=n {
            q = dfa.step(q, word.at(j));
            if dfa.is_accepting(q) {
                out.insert(Infix::new(i, j));
            }
        }
    }
    out
}

/// Internal consistency handle: the number of `L`-infixes equals the sum
/// over start positions of accepting prefix counts, which is how
/// [`brute_enumerate`] works; this recomputes the count independently per
/// start position.
pub fn brute_count(dfa: &Dfa, word: &Word) -> usize {
    (1..=word.len())
        .map(|i| {
            let mut q = dfa.initial();
            (i..=word.len())
                .filter(|&j| {
                    q = dfa.step(q, word.at(j));
                    dfa.is_accepting(q)
                })
                .count()
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Recursive regex matching
// ---------------------------------------------------------------------------

enum Flat {
    Empty,
    Any,
    Letter(Letter),
    Concat(usize, usize),
    Union(usize, usize),
    Star(usize),
}

fn flatten(ast: &RegexAst, nodes: &mut Vec<Flat>) -> usize {
    let flat = match ast {
        RegexAst::Empty => Flat::Empty,
        RegexAst::Any => Flat::Any,
        RegexAst::Letter(a) => Flat::Letter(*a),
        RegexAst::Concat(x, y) => {
            let (x, y) = (flatten(x, nodes), flatten(y, nodes));
            Flat::Concat(x, y)
        }
        RegexAst::Union(x, y) => {
            let (x, y) = (flatten(x, nodes), flatten(y, nodes));
            Flat::Union(x, y)
        }
        RegexAst::Star(x) => Flat::Star(flatten(x, nodes)),
        // x+ is xx*, x? is x|~; desugared so only Star needs care below.
        RegexAst::Plus(x) => {
            let inner = flatten(x, nodes);
            let star = push(nodes, Flat::Star(inner));
            Flat::Concat(inner, star)
        }
        RegexAst::Opt(x) => {
            let inner = flatten(x, nodes);
            let empty = push(nodes, Flat::Empty);
            Flat::Union(inner, empty)
        }
    };
    push(nodes, flat)
}

fn push(nodes: &mut Vec<Flat>, f: Flat) -> usize {
    nodes.push(f);
    nodes.len() - 1
}

/// Whether `w` matches `ast`, by memoized recursive decomposition.
/// Independent of the Thompson/subset/minimization pipeline.
pub fn regex_match(ast: &RegexAst, w: &[Letter]) -> bool {
    let mut nodes = Vec::new();
    let root = flatten(ast, &mut nodes);
    let mut memo: HashMap<(usize, usize, usize), bool> = HashMap::new();
    matches(&nodes, root, w, 0, w.len(), &mut memo)
}

fn matches(
    nodes: &[Flat],
    id: usize,
    w: &[Letter],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize, usize), bool>,
) -> bool {
    if let Some(&hit) = memo.get(&(id, i, j)) {
        return hit;
    }
    let answer = match nodes[id] {
        Flat::Empty => i == j,
        Flat::Any => j == i + 1,
        Flat::Letter(a) => j == i + 1 && w[i] == a,
        Flat::Concat(x, y) => {
            (i..=j).any(|mid| {
                matches(nodes, x, w, i, mid, memo) && matches(nodes, y, w, mid, j, memo)
            })
        }
        Flat::Union(x, y) => {
            matches(nodes, x, w, i, j, memo) || matches(nodes, y, w, i, j, memo)
        }
        Flat::Star(x) => {
            i == j
                || (i + 1..=j).any(|mid| {
                    matches(nodes, x, w, i, mid, memo) && matches(nodes, id, w, mid, j, memo)
                })
        }
    };
    memo.insert((id, i, j), answer);
    answer
}

// ---------------------------------------------------------------------------
// Cond(S) by reachability
// ---------------------------------------------------------------------------

/// Membership of `subword` in `Cond(S)` decided by breadth-first search
/// over (match-pointer, DFA state) configurations: the pointer walks a
/// factor of the subword with free choice of start and end, and letters of
/// `S` or neutral letters are free moves on the DFA side. This decides the
/// unbounded existential over language words exactly because the product
/// graph is finite.
pub fn cond_oracle(dfa: &Dfa, neutral: LetterSet, s: LetterSet, subword: &[Letter]) -> bool {
    let free = s | neutral;
    debug_assert!(subword.iter().all(|&a| free & (1 << a) == 0));
    let q_count = dfa.num_states();
    let idx = |j: usize, q: usize| j * q_count + q;
    let mut seen = vec![false; (subword.len() + 1) * q_count];
    let mut queue = VecDeque::new();
    for j in 0..=subword.len() {
        // Free start: begin the factor match at any offset.
        seen[idx(j, dfa.initial())] = true;
        queue.push_back((j, dfa.initial()));
    }
    while let Some((j, q)) = queue.pop_front() {
        if dfa.is_accepting(q) {
            return true; // free end
        }
        for a in 0..dfa.alphabet().len() {
            if free & (1 << a) != 0 {
                let t = dfa.step(q, a);
                if !seen[idx(j, t)] {
                    seen[idx(j, t)] = true;
                    queue.push_back((j, t));
                }
            }
        }
        if j < subword.len() {
            let t = dfa.step(q, subword[j]);
            if !seen[idx(j + 1, t)] {
                seen[idx(j + 1, t)] = true;
                queue.push_back((j + 1, t));
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Range summaries recomputed from scratch
// ---------------------------------------------------------------------------

/// Right information at `r` by direct scan: for each non-neutral letter,
/// the at most `p` first occurrences at or right of `r` (the tracked
/// positions), and for each tracked position and non-neutral letter the at
/// most `p` last occurrences between `r` and that position, both ends
/// inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiSnapshot {
    /// `tracked[k]`: ascending positions, per non-neutral letter slot.
    pub tracked: Vec<Vec<usize>>,
    /// `ctx[k][i][b]`: ascending positions of letter slot `b` in
    /// `[r, tracked[k][i]]`.
    pub ctx: Vec<Vec<Vec<Vec<usize>>>>,
}

/// Left information at a limit: for each non-neutral letter slot, the at
/// most `p` last occurrences in `[r1, rl]`, both ends inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiSnapshot {
    pub last: Vec<Vec<usize>>,
}

fn last_p_in_range(word: &Word, a: Letter, lo: usize, hi: usize, p: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (lo..=hi.min(word.len()))
        .rev()
        .filter(|&i| word.at(i) == a)
        .take(p)
        .collect();
    out.reverse();
    out
}

pub fn ri_oracle(word: &Word, r: usize, p: usize, nonneutral: &[Letter]) -> RiSnapshot {
    let n = word.len();
    let mut tracked = Vec::with_capacity(nonneutral.len());
    let mut ctx = Vec::with_capacity(nonneutral.len());
    for &a in nonneutral {
        let firsts: Vec<usize> = (r..=n).filter(|&i| word.at(i) == a).take(p).collect();
        let mut per_tracked = Vec::with_capacity(firsts.len());
        for &mu in &firsts {
            let lists: Vec<Vec<usize>> = nonneutral
                .iter()
                .map(|&b| last_p_in_range(word, b, r, mu, p))
                .collect();
            per_tracked.push(lists);
        }
        tracked.push(firsts);
        ctx.push(per_tracked);
    }
    RiSnapshot { tracked, ctx }
}

pub fn li_oracle(word: &Word, r1: usize, rl: usize, p: usize, nonneutral: &[Letter]) -> LiSnapshot {
    LiSnapshot {
        last: nonneutral
            .iter()
            .map(|&a| last_p_in_range(word, a, r1, rl, p))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Loop limits recomputed from scratch
// ---------------------------------------------------------------------------

/// For each left endpoint, scans the right endpoint downward from `n`
/// recomputing the frequent set and the rare subword from scratch, and
/// records one past the first failing right endpoint. Mirrors the
/// termination rules of the incremental session: stops after a failure at
/// `r = n`.
pub fn limits_oracle(
    dfa: &Dfa,
    family: &CondFamily,
    word: &Word,
    p: usize,
) -> Vec<(usize, usize)> {
    let _ = dfa;
    let n = word.len();
    let k = family.alphabet().len();
    let mut limits = Vec::new();
    for l in 1..=n {
        let mut exit_r = None;
        for r in (l - 1..=n).rev() {
            let mut counts = vec![0usize; k];
            for i in l..=r {
                counts[word.at(i)] += 1;
            }
            let mut t: LetterSet = 0;
            for &a in family.nonneutral() {
                if counts[a] >= p {
                    t |= 1 << a;
                }
            }
            let holds = t != 0 && {
                let erased = t | family.neutral_mask();
                let subword: Vec<Letter> = (l..=r)
                    .map(|i| word.at(i))
                    .filter(|&a| erased & (1 << a) == 0)
                    .collect();
                family.member_with_cap(t, &subword, p)
            };
            if !holds {
                exit_r = Some(r);
                break;
            }
        }
        let exit_r = exit_r.expect("the empty range always fails");
        if exit_r == n {
            // Immediate exit: the whole enumeration stops here.
            break;
        }
        limits.push((l, exit_r + 1));
    }
    limits
}

// ---------------------------------------------------------------------------
// Definitional cross-checks
// ---------------------------------------------------------------------------

fn is_factor(needle: &[Letter], hay: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// Checks the self-contained membership transfer on sampled pairs: if `v`
/// is in the language, the frequent set `T` of `u` is non-empty, and `v`
/// with `T` erased is a factor of `u` with `T` erased, then `u` must be in
/// the language. Returns the first violating pair.
pub fn find_transfer_counterexample(
    dfa: &Dfa,
    neutral: LetterSet,
    p: usize,
    pairs: &[(Vec<Letter>, Vec<Letter>)],
) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let k = dfa.alphabet().len();
    for (u, v) in pairs {
        if !dfa.accepts(v) {
            continue;
        }
        let mut counts = vec![0usize; k];
        for &a in u {
            counts[a] += 1;
        }
        let mut t: LetterSet = 0;
        for a in 0..k {
            if neutral & (1 << a) == 0 && counts[a] >= p {
                t |= 1 << a;
            }
        }
        if t == 0 {
            continue;
        }
        let erase = |w: &[Letter]| -> Vec<Letter> {
            w.iter().copied().filter(|&a| t & (1 << a) == 0).collect()
        };
        if is_factor(&erase(v), &erase(u)) && !dfa.accepts(u) {
            return Some((u.clone(), v.clone()));
        }
    }
    None
}

/// Whether the membership-transfer property holds on all sampled pairs.
pub fn crosscheck_definitions(
    dfa: &Dfa,
    neutral: LetterSet,
    p: usize,
    pairs: &[(Vec<Letter>, Vec<Letter>)],
) -> bool {
    find_transfer_counterexample(dfa, neutral, p, pairs).is_none()
}
