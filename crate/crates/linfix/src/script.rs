//! Update/query scripts executed by the `run` command: one command per
//! line, validated against the word length and alphabet at parse time.

use std::fmt;

use crate::alphabet::{Alphabet, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Substitute `letter` at 1-based `pos`.
    Sub { pos: usize, letter: Letter },
    /// Enumerate all language infixes of the current word.
    Enum,
    /// Print whether the current word is in the language.
    Member,
    /// Print the number of results an enumeration would produce.
    CountResults,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "script line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ScriptError {}

fn err(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError { line, message: message.into() }
}

/// Parses a script, checking positions against `n` and letters against the
/// alphabet.
pub fn parse_script(
    text: &str,
    alphabet: &Alphabet,
    n: usize,
) -> Result<Vec<Command>, ScriptError> {
    let mut commands = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("sub") => {
                let pos: usize = parts
                    .next()
                    .ok_or_else(|| err(lineno, "sub needs a position"))?
                    .parse()
                    .map_err(|e| err(lineno, format!("bad position: {e}")))?;
                if pos < 1 || pos > n {
                    return Err(err(lineno, format!("position out of range: {pos} not in 1..={n}")));
                }
                let sym = parts
                    .next()
                    .ok_or_else(|| err(lineno, "sub needs a letter"))?;
                let mut chars = sym.chars();
                let letter = match (chars.next(), chars.next()) {
                    (Some(c), None) => alphabet
                        .index_of(c)
                        .ok_or_else(|| err(lineno, format!("letter {c:?} is not in the alphabet")))?,
                    _ => return Err(err(lineno, format!("letters are single symbols, got {sym:?}"))),
                };
                commands.push(Command::Sub { pos, letter });
            }
            Some("enum") => commands.push(Command::Enum),
            Some("member") => commands.push(Command::Member),
            Some("count-results") => commands.push(Command::CountResults),
            Some(other) => return Err(err(lineno, format!("unknown command {other:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
        if let Some(extra) = parts.next() {
            return Err(err(lineno, format!("unexpected trailing token {extra:?}")));
        }
    }
    Ok(commands)
}
