use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SeqError};

/// Symbols are indices into an [`Alphabet`].
pub type Sym = u32;

/// An ordered finite set of printable symbol names.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    names: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(SeqError::InvalidArgument("alphabet must be nonempty".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(SeqError::InvalidArgument("empty symbol name".into()));
            }
            if names[..i].contains(a) {
                return Err(SeqError::InvalidArgument(format!("duplicate symbol `{a}`")));
            }
        }
        Ok(Alphabet { names: names.into() })
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Self::digits(2)
    }

    /// `{0, 1, ..., k-1}` with decimal names.
    pub fn digits(k: usize) -> Self {
        Alphabet::new((0..k.max(1)).map(|i| i.to_string())).expect("distinct digits")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.names.iter().position(|n| n == name).map(|i| i as Sym)
    }

    pub fn sym_or_err(&self, name: &str) -> Result<Sym> {
        self.sym(name).ok_or_else(|| SeqError::UnknownSymbol(name.to_string()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> {
        0..self.names.len() as Sym
    }

    pub fn contains(&self, s: Sym) -> bool {
        (s as usize) < self.names.len()
    }

    /// True when every name is a single character, so words print without separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn is_binary(&self) -> bool {
        self.names.len() == 2 && self.names[0] == "0" && self.names[1] == "1"
    }

    /// Pair alphabet `A x B` with names `a:b`, ordered lexicographically by (a, b).
    pub fn product(&self, other: &Alphabet) -> Alphabet {
        let mut v = Vec::with_capacity(self.len() * other.len());
        for a in self.names.iter() {
            for b in other.names.iter() {
                v.push(format!("{a}:{b}"));
            }
        }
        Alphabet::new(v).expect("pairs of distinct names are distinct")
    }

    pub fn pair(&self, other: &Alphabet, a: Sym, b: Sym) -> Sym {
        a * other.len() as Sym + b
    }

    /// Renders a symbol string, concatenated for compact alphabets and comma separated otherwise.
    pub fn render(&self, syms: &[Sym]) -> String {
        if self.is_compact() {
            syms.iter().map(|&s| self.name(s)).collect()
        } else {
            syms.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(",")
        }
    }

    /// Inverse of [`Alphabet::render`].
    pub fn parse(&self, text: &str) -> Result<Vec<Sym>> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if self.is_compact() && !text.contains(',') {
            text.chars().map(|c| self.sym_or_err(&c.to_string())).collect()
        } else {
            text.split(',').map(|t| self.sym_or_err(t.trim())).collect()
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}
