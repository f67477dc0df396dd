//! A small line-friendly regular-expression grammar.
//!
//! Grammar: single-symbol letters, juxtaposition for concatenation, `|` for
//! union, postfix `*`, `+`, `?`, parentheses, `~` for the empty word and `.`
//! for "any alphabet letter". Whitespace is ignored. Operator precedence is
//! the usual one: postfix binds tighter than concatenation, which binds
//! tighter than union.

use std::fmt;

use crate::alphabet::{Alphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexAst {
    /// `~`, the empty word.
    Empty,
    /// `.`, any single alphabet letter.
    Any,
    Letter(Letter),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Union(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    Opt(Box<RegexAst>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegexError {
    /// Byte offset into the input text.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for RegexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "regex error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for RegexError {}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
}

/// Parses `text` into an AST, resolving symbols against `alphabet`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<RegexAst, RegexError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|&(_, c)| !c.is_whitespace())
        .collect();
    let end = text.len();
    let mut p = Parser { chars, pos: 0, alphabet };
    let ast = p.union()?;
    if let Some(&(off, c)) = p.peek_raw() {
        return Err(RegexError {
            offset: off,
            message: format!("unexpected {c:?}"),
        });
    }
    let _ = end;
    Ok(ast)
}

impl<'a> Parser<'a> {
    fn peek_raw(&self) -> Option<&(usize, char)> {
        self.chars.get(self.pos)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or_else(|| self.chars.last().map(|&(o, c)| o + c.len_utf8()).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn union(&mut self) -> Result<RegexAst, RegexError> {
        let mut lhs = self.concat()?;
        while self.peek() == Some('|') {
            self.bump();
            let rhs = self.concat()?;
            lhs = RegexAst::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn concat(&mut self) -> Result<RegexAst, RegexError> {
        let mut lhs = self.postfix()?;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' || c == '*' || c == '+' || c == '?' {
                break;
            }
            let rhs = self.postfix()?;
            lhs = RegexAst::Concat(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<RegexAst, RegexError> {
        let mut node = self.atom()?;
        while let Some(c) = self.peek() {
            node = match c {
                '*' => RegexAst::Star(Box::new(node)),
                '+' => RegexAst::Plus(Box::new(node)),
                '?' => RegexAst::Opt(Box::new(node)),
                _ => break,
            };
            self.bump();
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<RegexAst, RegexError> {
        let offset = self.offset();
        match self.bump() {
            None => Err(RegexError {
                offset,
                message: "unexpected end of expression".into(),
            }),
            Some('(') => {
                let inner = self.union()?;
                if self.peek() == Some(')') {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(RegexError {
                        offset: self.offset(),
                        message: "missing closing parenthesis".into(),
                    })
                }
            }
            Some(')') => Err(RegexError {
                offset,
                message: "unbalanced closing parenthesis".into(),
            }),
            Some('~') => Ok(RegexAst::Empty),
            Some('.') => Ok(RegexAst::Any),
            Some(c @ ('*' | '+' | '?' | '|')) => Err(RegexError {
                offset,
                message: format!("operator {c:?} needs an operand"),
            }),
            Some(c) => match self.alphabet.index_of(c) {
                Some(a) => Ok(RegexAst::Letter(a)),
                None => Err(RegexError {
                    offset,
                    message: format!("symbol {c:?} is not in the alphabet"),
                }),
            },
        }
    }
}
