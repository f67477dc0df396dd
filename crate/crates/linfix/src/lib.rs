//! Dynamic enumeration of language infixes under letter substitution
//! updates.
//!
//! For a fixed regular language `L` and a word `w` of fixed length, this
//! crate maintains `w` under single-letter substitutions and streams all
//! infixes `[l, r]` of `w` whose factor belongs to `L`. The centerpiece is
//! a constant-delay, constant-additional-memory enumeration session that
//! applies to languages whose syntactic monoid sits in a class where
//! frequent letters commute with everything and saturate membership; two
//! companion enumerators cover a simpler backtracking scheme for extensible
//! languages and a handful of fixed languages with ad-hoc constant-delay
//! walks.
//!
//! The main layers:
//!
//! * [`regex`] / [`dfa`] / [`monoid`] — parse a language description,
//!   compile the minimal DFA and derive the syntactic monoid.
//! * [`classify`] — decide the algebraic properties that pick the
//!   enumeration strategy, compute a threshold and the per-subset factor
//!   languages used for constant-time membership of rare subwords.
//! * [`occlist`] — occurrence lists: O(1) insert/delete/count position sets
//!   with insertion-order traversal, one per letter.
//! * [`membership`] — a dynamic membership oracle over the monoid
//!   (balanced aggregation tree, logarithmic updates).
//! * [`simple`] — backtracking enumeration for extensible languages driven
//!   by the membership oracle.
//! * [`semiext`] — the constant-memory enumeration session.
//! * [`adhoc`] — fixed-language constant-delay enumerators.
//! * [`oracle`] — brute-force reference implementations for differential
//!   testing.
//! * [`instrument`] — deterministic op/cell counters and the bench harness.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `linfix` binary for the `classify`/`run`/`bench` commands.

pub mod adhoc;
pub mod alphabet;
pub mod classify;
pub mod cli;
pub mod dfa;
pub mod instrument;
pub mod langfile;
pub mod membership;
pub mod monoid;
pub mod occlist;
pub mod oracle;
pub mod regex;
pub mod samples;
pub mod script;
pub mod semiext;
pub mod simple;

pub use alphabet::{Alphabet, Infix, Letter, Word};
pub use dfa::Dfa;
pub use monoid::Monoid;

/// Entry point of the `linfix` binary; returns the process exit code.
pub fn run_cli() -> i32 {
    cli::main_with_args(std::env::args_os())
}
