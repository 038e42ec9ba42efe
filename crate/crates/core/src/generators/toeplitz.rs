use std::fmt;

use crate::core::{Alphabet, IndexOracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};

/// Characters accepted as holes when parsing patterns.
pub const HOLES: [char; 2] = ['?', '□'];

/// A pattern over `A ∪ {hole}` with `1 <= q < p` holes.
#[derive(Clone, PartialEq, Eq)]
pub struct ToeplitzPattern {
    alphabet: Alphabet,
    cells: Vec<Option<Sym>>,
    holes_before: Vec<usize>,
}

impl ToeplitzPattern {
    pub fn new(alphabet: Alphabet, cells: Vec<Option<Sym>>) -> Result<Self> {
        let q = cells.iter().filter(|c| c.is_none()).count();
        if q == 0 {
            return Err(SeqError::InvalidArgument("pattern without holes is plain periodic".into()));
        }
        if q == cells.len() {
            return Err(SeqError::InvalidArgument("pattern needs a non-hole symbol".into()));
        }
        if cells[0].is_none() {
            return Err(SeqError::InvalidArgument("pattern must not start with a hole".into()));
        }
        let mut holes_before = Vec::with_capacity(cells.len());
        let mut h = 0;
        for c in &cells {
            holes_before.push(h);
            if c.is_none() {
                h += 1;
            }
        }
        Ok(ToeplitzPattern { alphabet, cells, holes_before })
    }

    /// Parses a compact pattern such as `1?0?` or `1□0□`; letters form the alphabet in sorted order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = text.chars().filter(|c| !HOLES.contains(c)).map(String::from).collect();
        names.sort();
        names.dedup();
        if names.is_empty() {
            return Err(SeqError::InvalidArgument("pattern needs a non-hole symbol".into()));
        }
        let alphabet = Alphabet::new(names)?;
        let cells = text
            .chars()
            .map(|c| if HOLES.contains(&c) { None } else { alphabet.sym(&c.to_string()) })
            .collect();
        Self::new(alphabet, cells)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cells(&self) -> &[Option<Sym>] {
        &self.cells
    }

    pub fn period(&self) -> usize {
        self.cells.len()
    }

    pub fn holes(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    /// `T(n)`: with `n = m p + r`, a non-hole cell gives the answer, otherwise the hole is the
    /// `(m q + h)`-th hole overall and takes the value `T(m q + h)`.
    pub fn eval(&self, mut n: usize) -> Sym {
        let p = self.period();
        let q = self.holes();
        loop {
            let (m, r) = (n / p, n % p);
            match self.cells[r] {
                Some(s) => return s,
                None => n = m * q + self.holes_before[r],
            }
        }
    }
}

impl fmt::Display for ToeplitzPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            match c {
                Some(s) => f.write_str(self.alphabet.name(*s))?,
                None => f.write_str("?")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ToeplitzPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ToeplitzPattern({self})")
    }
}

pub fn toeplitz(pattern: &ToeplitzPattern) -> Sequence {
    let p = pattern.clone();
    Sequence::new(
        pattern.alphabet().clone(),
        IndexOracle(move |i: usize| Ok(p.eval(i))),
        Provenance::new("toeplitz").with("pattern", pattern),
    )
}
