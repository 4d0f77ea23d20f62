use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A power of a single generator. Generators are vertex indices of the
/// presentation graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: usize, exp: i64) -> Self {
        Letter { gen, exp }
    }
}

/// A raw, possibly unreduced word. Exponents may be any integer, including 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Canonical representative of a group element: the lexicographically least
/// reduced word, with finite-order exponents in `1..c`.
///
/// Only [`crate::group::GraphProduct`] constructs these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub(crate) presentation: u64,
    pub(crate) letters: Vec<Letter>,
    pub(crate) length: u64,
}

impl NormalForm {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Word length: |exponent| for infinite-order letters, 1 for finite ones.
    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word(self.letters.clone())
    }

    /// Orders by length, then lexicographically by letters.
    pub fn shortlex_cmp(&self, other: &Self) -> Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| self.letters.cmp(&other.letters))
    }
}
