use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::{Error, Result};

/// Largest supported alphabet: letters are written `a` to `z`.
pub const MAX_ALPHABET: usize = 26;

/// A decoration. Plain letters carry one base index; contracted letters
/// produced by a semigroup sum carry the sorted multiset of their parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    parts: SmallVec<[u8; 4]>,
}

impl Letter {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_ALPHABET, "letter index {index} out of range");
        Self {
            parts: SmallVec::from_slice(&[index as u8]),
        }
    }

    /// Contracted letter `[p+q+…]` from a non-empty multiset of base indices.
    pub fn contracted(parts: impl IntoIterator<Item = usize>) -> Self {
        let mut v: SmallVec<[u8; 4]> = parts
            .into_iter()
            .map(|i| {
                assert!(i < MAX_ALPHABET, "letter index {i} out of range");
                i as u8
            })
            .collect();
        assert!(!v.is_empty(), "a contracted letter needs at least one part");
        v.sort_unstable();
        Self { parts: v }
    }

    /// Multiset union: the free commutative semigroup sum.
    pub fn merge(&self, other: &Letter) -> Letter {
        Letter::contracted(
            self.parts
                .iter()
                .chain(other.parts.iter())
                .map(|&p| p as usize),
        )
    }

    /// Base index of a plain letter.
    pub fn index(&self) -> Option<usize> {
        (self.parts.len() == 1).then(|| self.parts[0] as usize)
    }

    pub fn parts(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().map(|&p| p as usize)
    }

    pub fn is_plain(&self) -> bool {
        self.parts.len() == 1
    }

    /// Number of base letters merged into this one.
    pub fn weight(&self) -> usize {
        self.parts.len()
    }

    pub fn from_char(c: char, alphabet: usize) -> Result<Self> {
        if !c.is_ascii_lowercase() {
            return Err(Error::UnknownLetter {
                letter: c.to_string(),
                alphabet,
            });
        }
        let i = (c as u8 - b'a') as usize;
        if i >= alphabet.min(MAX_ALPHABET) {
            return Err(Error::UnknownLetter {
                letter: c.to_string(),
                alphabet,
            });
        }
        Ok(Self::new(i))
    }

    fn base_char(i: u8) -> char {
        (b'a' + i) as char
    }
}

impl Ord for Letter {
    /// Plain letters come first, then contracted letters by weight.
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts
            .len()
            .cmp(&other.parts.len())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [p] = self.parts[..] {
            return write!(f, "{}", Self::base_char(p));
        }
        write!(f, "[")?;
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}", Self::base_char(p))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
