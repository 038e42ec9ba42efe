use std::fmt;

use crate::core::{find_all, Alphabet, Sym, Word};
use crate::error::{Result, SeqError};
use crate::generators::HOLES;

/// Largest word length accepted by the exhaustive enumerations.
pub const DESK_LIMIT: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiperiodReport {
    /// All quasiperiods by increasing length; the word itself is always last.
    pub all: Vec<Word>,
    /// The shortest quasiperiod.
    pub minimal: Word,
    /// Quasiperiods that have no quasiperiod other than themselves.
    pub superprimitive: Vec<Word>,
}

impl QuasiperiodReport {
    /// True when some proper quasiperiod exists.
    pub fn is_quasiperiodic(&self) -> bool {
        self.all.len() > 1
    }
}

/// Occurrences of `q` in `w` cover every position.
pub fn is_quasiperiod(w: &[Sym], q: &[Sym]) -> bool {
    if q.is_empty() || q.len() > w.len() {
        return false;
    }
    let mut reach = 0;
    for i in find_all(w, q) {
        if i > reach {
            return false;
        }
        reach = reach.max(i + q.len());
    }
    reach == w.len()
}

fn quasiperiod_list(w: &[Sym]) -> Vec<usize> {
    // A quasiperiod is a border, so only prefix lengths need checking.
    (1..=w.len()).filter(|&l| w.ends_with(&w[..l]) && is_quasiperiod(w, &w[..l])).collect()
}

pub fn quasiperiods(w: &Word) -> Result<QuasiperiodReport> {
    if w.is_empty() {
        return Err(SeqError::InvalidArgument("word must be nonempty".into()));
    }
    let s = w.letters();
    let lens = quasiperiod_list(s);
    let all: Vec<Word> = lens.iter().map(|&l| w.slice(0, l)).collect();
    let superprimitive = lens
        .iter()
        .filter(|&&l| quasiperiod_list(&s[..l]).len() == 1)
        .map(|&l| w.slice(0, l))
        .collect();
    Ok(QuasiperiodReport { minimal: all[0].clone(), all, superprimitive })
}

/// A word over `A ∪ {□}` whose first and last cells are letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    alphabet: Alphabet,
    cells: Vec<Option<Sym>>,
}

impl Pattern {
    pub fn new(alphabet: Alphabet, cells: Vec<Option<Sym>>) -> Result<Self> {
        if cells.first().copied().flatten().is_none() || cells.last().copied().flatten().is_none() {
            return Err(SeqError::InvalidArgument("pattern must start and end with a letter".into()));
        }
        if cells.iter().flatten().any(|&s| !alphabet.contains(s)) {
            return Err(SeqError::UnknownSymbol("pattern letter outside the alphabet".into()));
        }
        Ok(Pattern { alphabet, cells })
    }

    /// Reads `0□1` or `0?1` over a compact alphabet.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let cells = text
            .chars()
            .map(|c| if HOLES.contains(&c) { Ok(None) } else { alphabet.sym_or_err(&c.to_string()).map(Some) })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.clone(), cells)
    }

    pub fn cells(&self) -> &[Option<Sym>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Offsets of the letter cells.
    pub fn support(&self) -> Vec<usize> {
        self.cells.iter().enumerate().filter(|(_, c)| c.is_some()).map(|(i, _)| i).collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            match c {
                Some(s) => f.write_str(self.alphabet.name(*s))?,
                None => f.write_str("□")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

/// Exact cover of the letter cells of `target` by translated copies of `v`. The leftmost
/// uncovered cell must be covered by the first cell of `v`, so the placement is forced.
fn tiles(target: &[Option<Sym>], v: &[Option<Sym>]) -> bool {
    let mut covered: Vec<bool> = target.iter().map(Option::is_none).collect();
    let mut i = 0;
    loop {
        while i < covered.len() && covered[i] {
            i += 1;
        }
        if i == covered.len() {
            return true;
        }
        for (d, c) in v.iter().enumerate() {
            if let Some(a) = c {
                let j = i + d;
                if j >= target.len() || covered[j] || target[j] != Some(*a) {
                    return false;
                }
                covered[j] = true;
            }
        }
    }
}

/// Copies of `v` cover every position of `u` exactly once, holes covering nothing.
pub fn is_tiling_period(u: &Word, v: &Pattern) -> Result<bool> {
    if u.alphabet() != &v.alphabet {
        return Err(SeqError::AlphabetMismatch("pattern and word alphabets differ".into()));
    }
    let target: Vec<Option<Sym>> = u.letters().iter().map(|&a| Some(a)).collect();
    Ok(tiles(&target, &v.cells))
}

/// Ordered factorizations of `l` into factors `>= 2`.
fn factorizations(l: usize) -> Vec<Vec<usize>> {
    if l == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for d in 2..=l {
        if l.is_multiple_of(d) {
            for mut rest in factorizations(l / d) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
    }
    out
}

/// Supports `S` with `S ⊕ T = {0, ..., l-1}`: for a factorization `l = m_1 ... m_k`, `S` collects
/// the mixed-radix digits in odd or in even positions.
fn interval_tilings(l: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for f in factorizations(l) {
        for parity in 0..2 {
            let mut s = vec![0usize];
            let mut t = vec![0usize];
            let mut scale = 1;
            for (i, &m) in f.iter().enumerate() {
                let target = if i % 2 == parity { &mut s } else { &mut t };
                let base = target.clone();
                target.clear();
                for d in 0..m {
                    target.extend(base.iter().map(|&b| b + d * scale));
                }
                scale *= m;
            }
            s.sort_unstable();
            t.sort_unstable();
            out.push((s, t));
        }
    }
    if l == 1 {
        out.push((vec![0], vec![0]));
    }
    out.sort();
    out.dedup();
    out
}

/// All tiling periods of `u` and the minimal ones (not tiled by another tiling period of `u`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub all: Vec<Pattern>,
    pub minimal: Vec<Pattern>,
}

pub fn tiling_periods(u: &Word) -> Result<TilingReport> {
    let l = u.len();
    if l == 0 || l > DESK_LIMIT {
        return Err(SeqError::InvalidArgument(format!("word length must be in 1..={DESK_LIMIT}")));
    }
    let w = u.letters();
    let mut all = Vec::new();
    for (s, t) in interval_tilings(l) {
        let consistent = t.iter().all(|&o| s.iter().all(|&d| w[o + d] == w[d]));
        if !consistent {
            continue;
        }
        let width = s.last().unwrap() + 1;
        let mut cells = vec![None; width];
        for &d in &s {
            cells[d] = Some(w[d]);
        }
        all.push(Pattern::new(u.alphabet().clone(), cells)?);
    }
    all.sort();
    all.dedup();
    let minimal = all
        .iter()
        .filter(|v| !all.iter().any(|o| o != *v && o.len() <= v.len() && tiles(&v.cells, &o.cells)))
        .cloned()
        .collect();
    Ok(TilingReport { all, minimal })
}
