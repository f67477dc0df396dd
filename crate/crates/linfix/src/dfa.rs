//! Deterministic finite automata with a complete transition function,
//! compiled from the regex AST via Thompson construction and subset
//! construction, then minimized by partition refinement.
//!
//! Product combinators (`intersect`, `union_with`) are provided so that
//! languages given by several counting constraints can be assembled from
//! simple expressions without writing giant regexes.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Letter};
use crate::regex::RegexAst;

/// State id inside a [`Dfa`].
pub type State = usize;

/// A complete DFA: every state has a transition on every letter.
/// Minimized automata produced by [`compile_min_dfa`] have no unreachable
/// and no equivalent states.
#[derive(Debug, Clone)]
pub struct Dfa {
    pub(crate) alphabet: Alphabet,
    /// Row-major: `trans[q * k + a]` is the successor of `q` on letter `a`.
    pub(crate) trans: Vec<State>,
    pub(crate) initial: State,
    pub(crate) accepting: Vec<bool>,
}

impl Dfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: State, a: Letter) -> State {
        self.trans[q * self.alphabet.len() + a]
    }

    /// Runs the automaton over a letter sequence from the initial state.
    /// The empty sequence is allowed and reports acceptance of the empty word.
    pub fn accepts(&self, letters: &[Letter]) -> bool {
        let mut q = self.initial;
        for &a in letters {
            q = self.step(q, a);
        }
        self.accepting[q]
    }

    pub fn accepts_empty(&self) -> bool {
        self.accepting[self.initial]
    }

    /// Letter-wise transformation of all states; row `a` of the transition
    /// table read column-wise. Used to seed the syntactic monoid.
    pub fn letter_transform(&self, a: Letter) -> Vec<State> {
        (0..self.num_states()).map(|q| self.step(q, a)).collect()
    }

    /// Product automaton accepting the intersection of both languages.
    /// Panics if the alphabets differ.
    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x && y)
    }

    /// Product automaton accepting the union of both languages.
    pub fn union_with(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x || y)
    }

    fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(
            self.alphabet, other.alphabet,
            "product of automata over different alphabets"
        );
        let k = self.alphabet.len();
        let mut ids: HashMap<(State, State), State> = HashMap::new();
        let mut pairs: Vec<(State, State)> = Vec::new();
        let mut trans: Vec<State> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();
        let start = (self.initial, other.initial);
        ids.insert(start, 0);
        pairs.push(start);
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            head += 1;
            accepting.push(keep(self.accepting[p], other.accepting[q]));
            for a in 0..k {
                let succ = (self.step(p, a), other.step(q, a));
                let next = pairs.len();
                let id = *ids.entry(succ).or_insert_with(|| {
                    pairs.push(succ);
                    next
                });
                trans.push(id);
            }
        }
        minimize(&Dfa {
            alphabet: self.alphabet.clone(),
            trans,
            initial: 0,
            accepting,
        })
    }

    /// Whether both minimal automata accept the same language. Both sides
    /// must be over the same alphabet and minimized; this is a BFS pairing.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet || self.num_states() != other.num_states() {
            return false;
        }
        let k = self.alphabet.len();
        let mut map = vec![usize::MAX; self.num_states()];
        map[self.initial] = other.initial;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(p) = queue.pop_front() {
            let q = map[p];
            if self.accepting[p] != other.accepting[q] {
                return false;
            }
            for a in 0..k {
                let (ps, qs) = (self.step(p, a), other.step(q, a));
                if map[ps] == usize::MAX {
                    map[ps] = qs;
                    queue.push_back(ps);
                } else if map[ps] != qs {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Thompson construction
// ---------------------------------------------------------------------------

#[derive(Debug, Default)]
struct Nfa {
    /// eps[q] = epsilon successors, step[q] = labelled successors
    eps: Vec<Vec<usize>>,
    step: Vec<Vec<(Letter, usize)>>,
}

impl Nfa {
    fn add_state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.step.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, ast: &RegexAst, k: usize) -> (usize, usize) {
        match ast {
            RegexAst::Empty => {
                let s = self.add_state();
                let t = self.add_state();
                self.eps[s].push(t);
                (s, t)
            }
            RegexAst::Any => {
                let s = self.add_state();
                let t = self.add_state();
                for a in 0..k {
                    self.step[s].push((a, t));
                }
                (s, t)
            }
            RegexAst::Letter(a) => {
                let s = self.add_state();
                let t = self.add_state();
                self.step[s].push((*a, t));
                (s, t)
            }
            RegexAst::Concat(x, y) => {
                let (sx, tx) = self.build(x, k);
                let (sy, ty) = self.build(y, k);
                self.eps[tx].push(sy);
                (sx, ty)
            }
            RegexAst::Union(x, y) => {
                let s = self.add_state();
                let t = self.add_state();
                let (sx, tx) = self.build(x, k);
                let (sy, ty) = self.build(y, k);
                self.eps[s].push(sx);
                self.eps[s].push(sy);
                self.eps[tx].push(t);
                self.eps[ty].push(t);
                (s, t)
            }
            RegexAst::Star(x) => {
                let s = self.add_state();
                let t = self.add_state();
                let (sx, tx) = self.build(x, k);
                self.eps[s].push(sx);
                self.eps[s].push(t);
                self.eps[tx].push(sx);
                self.eps[tx].push(t);
                (s, t)
            }
            RegexAst::Plus(x) => {
                let (sx, tx) = self.build(x, k);
                let s = self.add_state();
                let t = self.add_state();
                self.eps[s].push(sx);
                self.eps[tx].push(sx);
                self.eps[tx].push(t);
                (s, t)
            }
            RegexAst::Opt(x) => {
                let s = self.add_state();
                let t = self.add_state();
                let (sx, tx) = self.build(x, k);
                self.eps[s].push(sx);
                self.eps[s].push(t);
                self.eps[tx].push(t);
                (s, t)
            }
        }
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
}

/// Compiles an AST into the minimal complete DFA for its language.
pub fn compile_min_dfa(ast: &RegexAst, alphabet: &Alphabet) -> Dfa {
    let k = alphabet.len();
    let mut nfa = Nfa::default();
    let (start, accept) = nfa.build(ast, k);

    // Subset construction. The empty subset is a valid (dead) state, which
    // keeps the transition function total.
    let mut init: BTreeSet<usize> = BTreeSet::from([start]);
    nfa.closure(&mut init);
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subsets: Vec<BTreeSet<usize>> = vec![init.clone()];
    ids.insert(init, 0);
    let mut trans: Vec<usize> = Vec::new();
    let mut accepting: Vec<bool> = Vec::new();
    let mut head = 0;
    while head < subsets.len() {
        let cur = subsets[head].clone();
        head += 1;
        accepting.push(cur.contains(&accept));
        for a in 0..k {
            let mut succ: BTreeSet<usize> = BTreeSet::new();
            for &q in &cur {
                for &(b, t) in &nfa.step[q] {
                    if b == a {
                        succ.insert(t);
                    }
                }
            }
            nfa.closure(&mut succ);
            let next = subsets.len();
            let id = *ids.entry(succ.clone()).or_insert_with(|| {
                subsets.push(succ);
                next
            });
            trans.push(id);
        }
    }

    minimize(&Dfa {
        alphabet: alphabet.clone(),
        trans,
        initial: 0,
        accepting,
    })
}

/// Builds a DFA directly from explicit parts; used by the Cond recognizers.
pub(crate) fn from_parts(
    alphabet: Alphabet,
    trans: Vec<State>,
    initial: State,
    accepting: Vec<bool>,
) -> Dfa {
    minimize(&Dfa { alphabet, trans, initial, accepting })
}

/// Removes unreachable states and merges equivalent ones (Moore-style
/// partition refinement). The result is the minimal complete DFA.
pub(crate) fn minimize(dfa: &Dfa) -> Dfa {
    let k = dfa.alphabet.len();
    // Reachability.
    let mut reach = vec![false; dfa.num_states()];
    let mut queue = VecDeque::from([dfa.initial]);
    reach[dfa.initial] = true;
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let t = dfa.step(q, a);
            if !reach[t] {
                reach[t] = true;
                queue.push_back(t);
            }
        }
    }
    let reachable: Vec<State> = (0..dfa.num_states()).filter(|&q| reach[q]).collect();

    // Moore partition refinement over reachable states: split by
    // (own class, successor classes) until the class count stabilizes.
    let mut class = vec![0usize; dfa.num_states()];
    for &q in &reachable {
        class[q] = dfa.accepting[q] as usize;
    }
    let mut num_classes = count_classes(&class, &reachable);
    loop {
        let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![0usize; dfa.num_states()];
        for &q in &reachable {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            for a in 0..k {
                sig.push(class[dfa.step(q, a)]);
            }
            let fresh = sig_ids.len();
            let id = *sig_ids.entry(sig).or_insert(fresh);
            next[q] = id;
        }
        let refined = sig_ids.len();
        class = next;
        if refined == num_classes {
            break;
        }
        num_classes = refined;
    }
    // Representative per class for transitions.
    let mut rep: Vec<Option<State>> = vec![None; num_classes];
    for &q in &reachable {
        if rep[class[q]].is_none() {
            rep[class[q]] = Some(q);
        }
    }
    let mut trans = vec![0usize; num_classes * k];
    let mut accepting = vec![false; num_classes];
    for (c, r) in rep.iter().enumerate() {
        let q = r.expect("class without representative");
        accepting[c] = dfa.accepting[q];
        for a in 0..k {
            trans[c * k + a] = class[dfa.step(q, a)];
        }
    }
    Dfa {
        alphabet: dfa.alphabet.clone(),
        trans,
        initial: class[dfa.initial],
        accepting,
    }
}

fn count_classes(class: &[usize], reachable: &[State]) -> usize {
    let mut seen = BTreeSet::new();
    for &q in reachable {
        seen.insert(class[q]);
    }
    seen.len()
}
