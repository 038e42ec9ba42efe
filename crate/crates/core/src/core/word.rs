use std::fmt;

use super::alphabet::{Alphabet, Sym};
use crate::error::{Result, SeqError};

/// A finite word over a declared alphabet. The empty word is Λ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Sym>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<Sym>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(SeqError::UnknownSymbol(format!("#{bad}")));
        }
        Ok(Word { alphabet, letters })
    }

    pub(crate) fn from_raw(alphabet: Alphabet, letters: Vec<Sym>) -> Self {
        debug_assert!(letters.iter().all(|&s| alphabet.contains(s)));
        Word { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, letters: Vec::new() }
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Ok(Word { alphabet: alphabet.clone(), letters: alphabet.parse(text)? })
    }

    /// Binary word from a `0`/`1` string.
    pub fn binary(text: &str) -> Result<Self> {
        Self::parse(&Alphabet::binary(), text)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Sym] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Sym> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `|u|_a`.
    pub fn count(&self, a: Sym) -> usize {
        self.letters.iter().filter(|&&s| s == a).count()
    }

    pub fn get(&self, i: usize) -> Option<Sym> {
        self.letters.get(i).copied()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same(other)?;
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        Ok(Word::from_raw(self.alphabet.clone(), v))
    }

    pub fn slice(&self, i: usize, j: usize) -> Word {
        Word::from_raw(self.alphabet.clone(), self.letters[i..j].to_vec())
    }

    /// Bitwise complement of a binary word.
    pub fn complement(&self) -> Result<Word> {
        if self.alphabet.len() != 2 {
            return Err(SeqError::AlphabetMismatch("complement needs a binary alphabet".into()));
        }
        Ok(Word::from_raw(self.alphabet.clone(), self.letters.iter().map(|&s| 1 - s).collect()))
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.letters.starts_with(&other.letters)
    }

    pub(crate) fn check_same(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(SeqError::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("Λ")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}
