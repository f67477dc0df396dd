//! Plain-text language descriptions: a `letters:` line, a `regex:` line,
//! and an optional `neutral-hint:` line that is verified against the
//! computed neutral set, never trusted. Lines starting with `#` are
//! comments.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::dfa::{compile_min_dfa, Dfa};
use crate::regex::parse_regex;

#[derive(Debug, Clone)]
pub struct LangFile {
    pub alphabet: Alphabet,
    pub dfa: Dfa,
    pub neutral_hint: Vec<char>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangFileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LangFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "language file line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for LangFileError {}

fn err(line: usize, message: impl Into<String>) -> LangFileError {
    LangFileError { line, message: message.into() }
}

/// Parses the language file format.
pub fn parse_lang_file(text: &str) -> Result<LangFile, LangFileError> {
    let mut letters: Option<(usize, Vec<char>)> = None;
    let mut regex: Option<(usize, String)> = None;
    let mut hint: Vec<char> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(err(lineno, format!("expected `key: value`, got {line:?}")));
        };
        let value = value.trim();
        match key.trim() {
            "letters" => {
                let symbols: Vec<char> = value
                    .split(',')
                    .map(|s| {
                        let s = s.trim();
                        let mut chars = s.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => Ok(c),
                            _ => Err(err(lineno, format!("letters must be single symbols, got {s:?}"))),
                        }
                    })
                    .collect::<Result<_, _>>()?;
                letters = Some((lineno, symbols));
            }
            "regex" => regex = Some((lineno, value.to_string())),
            "neutral-hint" => {
                for s in value.split(',') {
                    let s = s.trim();
                    let mut chars = s.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => hint.push(c),
                        _ => {
                            return Err(err(
                                lineno,
                                format!("neutral-hint must list single symbols, got {s:?}"),
                            ))
                        }
                    }
                }
            }
            other => return Err(err(lineno, format!("unknown key {other:?}"))),
        }
    }

    let (letters_line, symbols) =
        letters.ok_or_else(|| err(0, "missing `letters:` line"))?;
    let alphabet =
        Alphabet::new(symbols).map_err(|e| err(letters_line, e.to_string()))?;
    let (regex_line, expr) = regex.ok_or_else(|| err(0, "missing `regex:` line"))?;
    let ast =
        parse_regex(&expr, &alphabet).map_err(|e| err(regex_line, e.to_string()))?;
    for &c in &hint {
        if alphabet.index_of(c).is_none() {
            return Err(err(0, format!("neutral-hint symbol {c:?} is not in the alphabet")));
        }
    }
    let dfa = compile_min_dfa(&ast, &alphabet);
    Ok(LangFile { alphabet, dfa, neutral_hint: hint })
}
