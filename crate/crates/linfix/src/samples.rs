//! Ready-made languages used by the examples, the test-suite and the
//! bench harness.
//!
//! Several of them are defined by counting constraints in multiple letters
//! at once; those are assembled from small expressions with the DFA
//! product combinators instead of one unreadable regex.

use crate::alphabet::Alphabet;
use crate::dfa::{compile_min_dfa, Dfa};
use crate::regex::parse_regex;

/// A named language over a fixed alphabet.
#[derive(Debug, Clone)]
pub struct Lang {
    pub name: &'static str,
    pub alphabet: Alphabet,
    pub dfa: Dfa,
    /// A known-valid rare/frequent threshold smaller than the derived one,
    /// when one is established for this language.
    pub hand_threshold: Option<usize>,
}

fn alphabet(letters: &str) -> Alphabet {
    Alphabet::new(letters.chars()).unwrap()
}

/// Compiles `expr` over `letters`.
pub fn regex_dfa(letters: &str, expr: &str) -> Dfa {
    let a = alphabet(letters);
    let ast = parse_regex(expr, &a).unwrap();
    compile_min_dfa(&ast, &a)
}

/// Expression for "at least `k` occurrences of `c`".
pub fn at_least_expr(c: char, k: usize) -> String {
    let mut s = String::from(".*");
    for _ in 0..k {
        s.push(c);
        s.push_str(".*");
    }
    s
}

/// Expression for "contains `first` somewhere before `second`".
pub fn before_expr(first: char, second: char) -> String {
    format!(".*{first}.*{second}.*")
}

/// `a*` over `{a, b}`: only `a`s (which are neutral here); `b` kills
/// membership.
pub fn a_star_ab() -> Lang {
    Lang {
        name: "a-star",
        alphabet: alphabet("ab"),
        dfa: regex_dfa("ab", "a*"),
        hand_threshold: None,
    }
}

/// `(aa)*` over `{a}`: even number of `a`s.
pub fn even_a() -> Lang {
    Lang {
        name: "even-a",
        alphabet: alphabet("a"),
        dfa: regex_dfa("a", "(aa)*"),
        hand_threshold: None,
    }
}

/// The two-word language `{ab}` over `{a, b}`.
pub fn ab_exact() -> Lang {
    Lang {
        name: "ab-exact",
        alphabet: alphabet("ab"),
        dfa: regex_dfa("ab", "ab"),
        hand_threshold: None,
    }
}

/// At least three `a`s and a number of `b`s divisible by three, over
/// `{a, b}`.
pub fn three_a_b_mod3() -> Lang {
    let a = alphabet("ab");
    let count_b = regex_dfa("ab", "(a*ba*ba*b)*a*");
    let three_a = regex_dfa("ab", &at_least_expr('a', 3));
    Lang {
        name: "three-a-b-mod3",
        alphabet: a,
        dfa: three_a.intersect(&count_b),
        hand_threshold: None,
    }
}

/// `(a+b)* c (a+b)* d (a+b)*` over `{a, b, c, d}`: exactly one `c` and one
/// `d`, in that order, with `a`/`b` neutral.
pub fn c_then_d() -> Lang {
    Lang {
        name: "c-then-d",
        alphabet: alphabet("abcd"),
        dfa: regex_dfa("abcd", "(a|b)*c(a|b)*d(a|b)*"),
        hand_threshold: None,
    }
}

/// Intersection of [`three_a_b_mod3`] (lifted to four letters) and
/// [`c_then_d`].
pub fn counted_c_then_d() -> Lang {
    let three_a = regex_dfa("abcd", &at_least_expr('a', 3));
    let count_b = regex_dfa("abcd", "((a|c|d)*b(a|c|d)*b(a|c|d)*b)*(a|c|d)*");
    let marked = regex_dfa("abcd", "(a|b)*c(a|b)*d(a|b)*");
    Lang {
        name: "counted-c-then-d",
        alphabet: alphabet("abcd"),
        dfa: three_a.intersect(&count_b).intersect(&marked),
        hand_threshold: None,
    }
}

/// Over `{a, b, e}` with `e` neutral: exactly `ab` up to neutrals, or at
/// least three `a`s, or at least three `b`s. Not extensible, but the
/// constant-memory session applies; threshold 3 is known to work.
pub fn ab_or_triples() -> Lang {
    Lang {
        name: "ab-or-triples",
        alphabet: alphabet("abe"),
        dfa: regex_dfa("abe", "e*ae*be*|.*a.*a.*a.*|.*b.*b.*b.*"),
        hand_threshold: Some(3),
    }
}

/// Over `{a, b, e}` with `e` neutral: exactly `aabb` up to neutrals, or at
/// least two `a`s and three `b`s, or three `a`s and two `b`s. Extensible;
/// threshold 3 is known to work.
pub fn aabb_or_heavy() -> Lang {
    let exact = regex_dfa("abe", "e*ae*ae*be*be*");
    let two_three = regex_dfa("abe", &at_least_expr('a', 2))
        .intersect(&regex_dfa("abe", &at_least_expr('b', 3)));
    let three_two = regex_dfa("abe", &at_least_expr('a', 3))
        .intersect(&regex_dfa("abe", &at_least_expr('b', 2)));
    Lang {
        name: "aabb-or-heavy",
        alphabet: alphabet("abe"),
        dfa: exact.union_with(&two_three).union_with(&three_two),
        hand_threshold: Some(3),
    }
}

/// Over `{a, e}` with `e` neutral: no `a` at all, or at least two `a`s.
pub fn zero_or_two_a() -> Lang {
    Lang {
        name: "zero-or-two-a",
        alphabet: alphabet("ae"),
        dfa: regex_dfa("ae", &format!("e*|{}", at_least_expr('a', 2))),
        hand_threshold: None,
    }
}

/// Over `{a, b, c, e}` with `e` neutral: two of `{a, b, c}` occur at least
/// five times and the third at least once, or one occurs at least five
/// times and the other two appear in a fixed cyclic order (`b` before `c`
/// when `a` is heavy, `c` before `a` when `b` is heavy, `a` before `b`
/// when `c` is heavy). Threshold 5 is known to work.
pub fn heavy_or_ordered() -> Lang {
    let al = "abce";
    let heavy = |c: char| regex_dfa(al, &at_least_expr(c, 5));
    let once = |c: char| regex_dfa(al, &at_least_expr(c, 1));
    let before = |x: char, y: char| regex_dfa(al, &before_expr(x, y));

    let cond1 = heavy('a').intersect(&before('b', 'c'));
    let cond2 = heavy('b').intersect(&before('c', 'a'));
    let cond3 = heavy('c').intersect(&before('a', 'b'));
    let pair = |x: char, y: char, z: char| heavy(x).intersect(&heavy(y)).intersect(&once(z));
    let cond4 = pair('a', 'b', 'c')
        .union_with(&pair('a', 'c', 'b'))
        .union_with(&pair('b', 'c', 'a'));

    Lang {
        name: "heavy-or-ordered",
        alphabet: alphabet(al),
        dfa: cond1.union_with(&cond2).union_with(&cond3).union_with(&cond4),
        hand_threshold: Some(5),
    }
}

/// `(e|b)* a e*` over `{a, b, e}`: a single `a` preceded by anything
/// neutral-or-`b` and followed only by neutrals.
pub fn b_star_a() -> Lang {
    Lang {
        name: "b-star-a",
        alphabet: alphabet("abe"),
        dfa: regex_dfa("abe", "(e|b)*ae*"),
        hand_threshold: None,
    }
}

/// `e* a .* a e*` over `{a, b, e}`: first and last non-neutral letters are
/// `a`s (and there are at least two of them).
pub fn a_any_a() -> Lang {
    Lang {
        name: "a-any-a",
        alphabet: alphabet("abe"),
        dfa: regex_dfa("abe", "e*a.*ae*"),
        hand_threshold: None,
    }
}

/// Odd number of `a`s over `{a, e}`.
pub fn odd_a() -> Lang {
    Lang {
        name: "odd-a",
        alphabet: alphabet("ae"),
        dfa: regex_dfa("ae", "e*a(e*ae*a)*e*"),
        hand_threshold: None,
    }
}

/// `.* a .*` over `{a, e}`: contains an `a`. Extensible with a neutral
/// letter, the reference case for the backtracking enumerator.
pub fn contains_a() -> Lang {
    Lang {
        name: "contains-a",
        alphabet: alphabet("ae"),
        dfa: regex_dfa("ae", ".*a.*"),
        hand_threshold: None,
    }
}

/// Contains an `a` and a `b`, over `{a, b, e}`. Extensible with a neutral
/// letter.
pub fn contains_a_and_b() -> Lang {
    let with_a = regex_dfa("abe", ".*a.*");
    let with_b = regex_dfa("abe", ".*b.*");
    Lang {
        name: "contains-a-and-b",
        alphabet: alphabet("abe"),
        dfa: with_a.intersect(&with_b),
        hand_threshold: None,
    }
}

/// The semi-extensible languages exercised by the enumeration test suites.
pub fn semiext_catalog() -> Vec<Lang> {
    vec![
        ab_or_triples(),
        aabb_or_heavy(),
        heavy_or_ordered(),
        zero_or_two_a(),
        contains_a(),
        contains_a_and_b(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_expressions() {
        assert_eq!(at_least_expr('a', 2), ".*a.*a.*");
        assert_eq!(before_expr('b', 'c'), ".*b.*c.*");
    }

    #[test]
    fn sample_membership_spot_checks() {
        let l = ab_or_triples();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("ab"));
        assert!(accepts("eaebe"));
        assert!(accepts("aaa"));
        assert!(accepts("babbb"));
        assert!(!accepts("abb"));
        assert!(!accepts("ba"));

        let l = aabb_or_heavy();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("aabb"));
        assert!(accepts("eaeaebebe"));
        assert!(accepts("ababb"));
        assert!(accepts("aabab"));
        assert!(!accepts("abab"));
        assert!(!accepts("bb"));

        let l = heavy_or_ordered();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("aaaaabc"));
        assert!(!accepts("aaaaacb"));
        assert!(accepts("bbbbbca"));
        assert!(accepts("cccccab"));
        assert!(!accepts("cccccba"));
        assert!(accepts("aaaaabbbbbc"));
        assert!(!accepts("aaaaabbbbb"));

        let l = zero_or_two_a();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts(""));
        assert!(accepts("ee"));
        assert!(!accepts("ea"));
        assert!(accepts("eaea"));

        let l = odd_a();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("a"));
        assert!(!accepts("e"));
        assert!(!accepts("aa"));
        assert!(accepts("eaeaea"));

        let l = b_star_a();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("ebea"));
        assert!(accepts("a"));
        assert!(!accepts("ab"));
        assert!(!accepts("aa"));

        let l = a_any_a();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("aea"));
        assert!(accepts("aba"));
        assert!(!accepts("a"));
        assert!(!accepts("ba"));
        assert!(accepts("eaabae"));
    }

    #[test]
    fn counted_languages_track_counts() {
        let l = three_a_b_mod3();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("aaa"));
        assert!(accepts("aaabbb"));
        assert!(!accepts("aaab"));
        assert!(!accepts("aabbb"));

        let l = counted_c_then_d();
        let accepts = |w: &str| l.dfa.accepts(&l.alphabet.intern(w).unwrap());
        assert!(accepts("aaacd"));
        assert!(!accepts("aaadc"));
        assert!(accepts("aaabbbcd"));
        assert!(!accepts("aaabbdcb"));
    }
}
