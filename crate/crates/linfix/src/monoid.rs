//! Syntactic monoid of a regular language, computed as the transition
//! monoid of its minimal DFA.
//!
//! Elements are represented canonically as total state transformations of
//! the minimal DFA, so equality is componentwise and the transition monoid
//! coincides with the syntactic monoid. The structure also records the
//! letter morphism, the accepting set, the idempotent power and the set of
//! neutral letters, which is everything the classification layer needs.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::Letter;
use crate::dfa::{Dfa, State};

/// Id of a monoid element.
pub type Elem = usize;

/// Hard cap on the monoid size; the classification tables are quadratic.
pub const MAX_MONOID_SIZE: usize = 10_000;

#[derive(Debug, Clone)]
pub struct Monoid {
    /// Transformation of each element, concatenated (`elems[x]` has one
    /// entry per DFA state).
    elems: Vec<Vec<State>>,
    /// Multiplication table, row-major (`table[x * n + y] = x * y`,
    /// meaning "apply x, then y").
    table: Vec<u32>,
    identity: Elem,
    /// Image of each letter under the syntactic morphism.
    morphism: Vec<Elem>,
    /// Elements mapping the initial state into an accepting state.
    accepting: Vec<bool>,
    /// Smallest `k >= 1` such that `x^k` is idempotent for every `x`.
    omega: usize,
    /// Letters whose image is the identity.
    neutral: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidError {
    TooLarge { size_bound: usize },
}

impl fmt::Display for MonoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidError::TooLarge { size_bound } => write!(
                f,
                "syntactic monoid exceeds {size_bound} elements; refusing to classify"
            ),
        }
    }
}

impl std::error::Error for MonoidError {}

/// Computes the transition monoid of `dfa`. The DFA must be minimal for the
/// result to be the syntactic monoid of its language.
pub fn syntactic_monoid(dfa: &Dfa) -> Result<Monoid, MonoidError> {
    let n_states = dfa.num_states();
    let k = dfa.alphabet().len();
    let identity_t: Vec<State> = (0..n_states).collect();
    let letter_ts: Vec<Vec<State>> = (0..k).map(|a| dfa.letter_transform(a)).collect();

    let mut ids: HashMap<Vec<State>, Elem> = HashMap::new();
    let mut elems: Vec<Vec<State>> = Vec::new();
    ids.insert(identity_t.clone(), 0);
    elems.push(identity_t);

    // BFS closure under right multiplication by letter images.
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for lt in &letter_ts {
            let composed: Vec<State> = cur.iter().map(|&q| lt[q]).collect();
            if !ids.contains_key(&composed) {
                if elems.len() >= MAX_MONOID_SIZE {
                    return Err(MonoidError::TooLarge { size_bound: MAX_MONOID_SIZE });
                }
                ids.insert(composed.clone(), elems.len());
                elems.push(composed);
            }
        }
    }

    let n = elems.len();
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let composed: Vec<State> = elems[x].iter().map(|&q| elems[y][q]).collect();
            table[x * n + y] = ids[&composed] as u32;
        }
    }

    let morphism: Vec<Elem> = letter_ts.iter().map(|t| ids[t]).collect();
    let accepting: Vec<bool> = elems
        .iter()
        .map(|t| dfa.is_accepting(t[dfa.initial()]))
        .collect();
    let neutral: Vec<bool> = morphism.iter().map(|&m| m == 0).collect();

    let mut monoid = Monoid {
        elems,
        table,
        identity: 0,
        morphism,
        accepting,
        omega: 1,
        neutral,
    };
    monoid.omega = idempotent_power(&monoid);
    Ok(monoid)
}

/// Smallest `k >= 1` with `x^k * x^k = x^k` for every element.
///
/// For each `x` the power sequence has a tail of length `t` entering a cycle
/// of length `c`; `x^k` is idempotent iff `k >= t` and `c` divides `k`. The
/// answer is the least common multiple of the cycle lengths, raised to the
/// smallest multiple covering every tail.
pub fn idempotent_power(m: &Monoid) -> usize {
    let mut max_tail = 1usize;
    let mut lcm_cycle = 1usize;
    for x in m.elements() {
        let (tail, cycle) = power_profile(m, x);
        max_tail = max_tail.max(tail);
        lcm_cycle = lcm(lcm_cycle, cycle);
    }
    let mut omega = lcm_cycle;
    while omega < max_tail {
        omega += lcm_cycle;
    }
    debug_assert!(m.elements().all(|x| {
        let p = m.pow(x, omega);
        m.mul(p, p) == p
    }));
    omega
}

/// Tail length and cycle length of the power sequence `x, x^2, x^3, ...`.
fn power_profile(m: &Monoid, x: Elem) -> (usize, usize) {
    let mut seen: HashMap<Elem, usize> = HashMap::new();
    let mut cur = x;
    let mut i = 1usize;
    loop {
        if let Some(&first) = seen.get(&cur) {
            return (first, i - first);
        }
        seen.insert(cur, i);
        cur = m.mul(cur, x);
        i += 1;
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl Monoid {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.elems.len()
    }

    /// `x * y`: apply `x`, then `y`.
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.elems.len() + y] as Elem
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        let mut acc = self.identity;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Image of a letter under the syntactic morphism.
    pub fn letter(&self, a: Letter) -> Elem {
        self.morphism[a]
    }

    /// Number of letters the morphism is defined on.
    pub fn letter_len(&self) -> usize {
        self.morphism.len()
    }

    /// Image of a word under the syntactic morphism.
    pub fn eval(&self, letters: &[Letter]) -> Elem {
        letters
            .iter()
            .fold(self.identity, |acc, &a| self.mul(acc, self.letter(a)))
    }

    /// Whether the element corresponds to words of the language.
    pub fn is_accepting(&self, x: Elem) -> bool {
        self.accepting[x]
    }

    /// Whether letter `a` is neutral (its image is the identity).
    pub fn is_neutral(&self, a: Letter) -> bool {
        self.neutral[a]
    }

    /// Set of neutral letter ids, ascending.
    pub fn neutral_letters(&self) -> Vec<Letter> {
        (0..self.neutral.len()).filter(|&a| self.neutral[a]).collect()
    }

    /// Transformation backing an element; exposed for tests.
    pub fn transform(&self, x: Elem) -> &[State] {
        &self.elems[x]
    }
}
