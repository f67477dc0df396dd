//! Alphabets, words and infixes.
//!
//! Letters are interned to dense ids `0..k` so that the rest of the crate
//! can index per-letter tables with plain vectors. Word positions are
//! 1-based throughout, matching the `[l, r]` convention used for infixes.

use std::fmt;

/// Dense id of a letter in an [`Alphabet`].
pub type Letter = usize;

/// An ordered set of distinct printable symbols with dense letter ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from symbols in the given order.
    ///
    /// Returns an error if a symbol repeats or the list is empty.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, AlphabetError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(AlphabetError::Empty);
        }
        for (i, &c) in symbols.iter().enumerate() {
            if symbols[..i].contains(&c) {
                return Err(AlphabetError::Duplicate(c));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Letter id of a symbol, if present.
    pub fn index_of(&self, c: char) -> Option<Letter> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Symbol of a letter id.
    pub fn symbol(&self, a: Letter) -> char {
        self.symbols[a]
    }

    /// All letter ids.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.symbols.len()
    }

    /// Interns a string, failing on the first symbol outside the alphabet.
    pub fn intern(&self, text: &str) -> Result<Vec<Letter>, AlphabetError> {
        text.chars()
            .map(|c| self.index_of(c).ok_or(AlphabetError::UnknownSymbol(c)))
            .collect()
    }

    /// Renders a letter sequence back as a string.
    pub fn render(&self, letters: &[Letter]) -> String {
        letters.iter().map(|&a| self.symbol(a)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    Empty,
    Duplicate(char),
    UnknownSymbol(char),
}

impl fmt::Display for AlphabetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetError::Empty => write!(f, "alphabet must contain at least one symbol"),
            AlphabetError::Duplicate(c) => write!(f, "duplicate symbol {c:?} in alphabet"),
            AlphabetError::UnknownSymbol(c) => write!(f, "symbol {c:?} is not in the alphabet"),
        }
    }
}

impl std::error::Error for AlphabetError {}

/// A fixed-length word over an alphabet. Positions are 1-based and the
/// length never changes; letter substitution happens through
/// [`crate::occlist::LetterIndex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> Letter {
        debug_assert!(i >= 1 && i <= self.letters.len());
        self.letters[i - 1]
    }

    pub(crate) fn set(&mut self, i: usize, a: Letter) {
        self.letters[i - 1] = a;
    }

    /// The letters of the infix `[l, r]`, inclusive on both ends.
    pub fn slice(&self, l: usize, r: usize) -> &[Letter] {
        &self.letters[l - 1..r]
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

/// A pair of positions `1 <= l <= r <= n` realizing the factor `w[l..r]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Infix {
    pub l: usize,
    pub r: usize,
}

impl Infix {
    pub fn new(l: usize, r: usize) -> Self {
        debug_assert!(1 <= l && l <= r);
        Infix { l, r }
    }
}

impl fmt::Display for Infix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.l, self.r)
    }
}
