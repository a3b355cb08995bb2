use std::cmp::Ordering;
use std::fmt;

use super::Graded;
use crate::forest::Letter;
use crate::{Error, Result};

/// A word over the alphabet; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    /// Word of plain letters from base indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().map(|&i| Letter::new(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of letters (contracted letters count once).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// Splits into prefix of length `k` and the remaining suffix.
    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec()))
    }

    /// Parses `bca`, `[b+c]a`, or `1` (empty word).
    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::empty());
        }
        let bytes = s.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c == '[' {
                let end = s[i..].find(']').ok_or(Error::Syntax {
                    pos: i,
                    msg: "unclosed contracted letter".into(),
                })? + i;
                let mut parts = Vec::new();
                for (k, piece) in s[i + 1..end].split('+').enumerate() {
                    let mut chars = piece.trim().chars();
                    match (chars.next(), chars.next()) {
                        (Some(ch), None) => {
                            let l = Letter::from_char(ch, alphabet)?;
                            parts.push(l.index().expect("plain letter"));
                        }
                        _ => {
                            return Err(Error::Syntax {
                                pos: i + 1 + k,
                                msg: "expected a single letter inside [..]".into(),
                            })
                        }
                    }
                }
                letters.push(Letter::contracted(parts));
                i = end + 1;
            } else if c.is_whitespace() {
                i += 1;
            } else {
                letters.push(Letter::from_char(c, alphabet).map_err(|e| match e {
                    Error::UnknownLetter { .. } if !c.is_ascii_lowercase() => Error::Syntax {
                        pos: i,
                        msg: format!("unexpected character {c:?}"),
                    },
                    other => other,
                })?);
                i += 1;
            }
        }
        Ok(Self(letters))
    }
}

impl Graded for Word {
    /// Total weight; contracted letters weigh as many base letters as they merge.
    fn degree(&self) -> usize {
        self.0.iter().map(Letter::weight).sum()
    }
}

impl Ord for Word {
    /// Degree first, then letter by letter.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
