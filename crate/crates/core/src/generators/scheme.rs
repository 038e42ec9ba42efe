use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{check_cap, Alphabet, BoundFunction, Oracle, Provenance, Sequence, Sym, Word};
use crate::error::{Result, SeqError};

/// One level of a scheme: block length `l_n`, blocks `B_n`, and the pair set `C_n` for GAP schemes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub block_len: usize,
    pub blocks: Vec<Word>,
    pub pairs: Option<Vec<Word>>,
}

/// A level-indexed family `(l_n, B_n[, C_n])`.
pub trait LevelSource: Send + Sync {
    fn alphabet(&self) -> &Alphabet;
    fn level(&self, n: usize) -> Result<Level>;
    /// Index of the last level, or `None` for an infinite scheme.
    fn depth(&self) -> Option<usize>;
    /// True for GAP schemes (with `C_n`), false for AP schemes.
    fn has_pairs(&self) -> bool;
    /// `l_n` without materializing the blocks.
    fn block_len(&self, n: usize) -> Option<u64>;
    fn describe(&self) -> String;
    /// Each `B_{n+1}` block as a list of `B_n` block indices, when the scheme knows it.
    fn decomposition(&self, _n: usize) -> Option<Vec<Vec<usize>>> {
        None
    }
}

pub type Scheme = Arc<dyn LevelSource>;

/// Scheme whose level `n+1` blocks are fixed concatenations of level `n` blocks, chosen by a
/// uniform index rule that is the same at every level. The pair set, when present, is the same
/// set of index pairs at every level.
pub struct SubstitutiveScheme {
    alphabet: Alphabet,
    level0: Vec<Vec<Sym>>,
    rule: Vec<Vec<usize>>,
    pairs: Option<Vec<(usize, usize)>>,
    cache: Mutex<Vec<Arc<Vec<Vec<Sym>>>>>,
}

impl SubstitutiveScheme {
    pub fn new(
        alphabet: Alphabet,
        level0: Vec<Word>,
        rule: Vec<Vec<usize>>,
        pairs: Option<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let b = level0.len();
        if b == 0 || rule.len() != b {
            return Err(SeqError::InvalidArgument("one rule per level-0 block is required".into()));
        }
        let l0 = level0[0].len();
        if l0 == 0 || level0.iter().any(|w| w.len() != l0 || w.alphabet() != &alphabet) {
            return Err(SeqError::InvalidArgument("level-0 blocks must share a positive length".into()));
        }
        let r = rule[0].len();
        if r < 2 || rule.iter().any(|x| x.len() != r || x.iter().any(|&i| i >= b)) {
            return Err(SeqError::InvalidArgument("rule must be uniform of length >= 2 over block indices".into()));
        }
        if let Some(p) = &pairs {
            if p.is_empty() || p.iter().any(|&(a, c)| a >= b || c >= b) {
                return Err(SeqError::InvalidArgument("pairs must index blocks".into()));
            }
        }
        let level0 = level0.into_iter().map(Word::into_letters).collect::<Vec<_>>();
        Ok(SubstitutiveScheme { alphabet, level0: level0.clone(), rule, pairs, cache: Mutex::new(vec![Arc::new(level0)]) })
    }

    /// AP scheme `B_n = {a_n, ā_n}` with `a_{n+1} = a_n ā_n`.
    pub fn thue_morse_ap() -> Self {
        let a = Alphabet::binary();
        Self::new(a.clone(), words(&a, &["0", "1"]), vec![vec![0, 1], vec![1, 0]], None).unwrap()
    }

    /// GAP scheme with blocks `a -> a b b a`, `b -> b a b b` and `C_n = {ab, ba, bb}`.
    pub fn fixture_gap() -> Self {
        let a = Alphabet::binary();
        Self::new(
            a.clone(),
            words(&a, &["0", "1"]),
            vec![vec![0, 1, 1, 0], vec![1, 0, 1, 1]],
            Some(vec![(0, 1), (1, 0), (1, 1)]),
        )
        .unwrap()
    }

    /// Single-block GAP scheme `B_n = {0^(2^n)}`.
    pub fn constant_zero() -> Self {
        let a = Alphabet::binary();
        Self::new(a.clone(), words(&a, &["0"]), vec![vec![0, 0]], Some(vec![(0, 0)])).unwrap()
    }

    fn blocks(&self, n: usize) -> Result<Arc<Vec<Vec<Sym>>>> {
        let mut cache = self.cache.lock();
        while cache.len() <= n {
            let prev = cache.last().unwrap().clone();
            let len = prev[0].len() * self.rule[0].len();
            check_cap(len)?;
            let next = self
                .rule
                .iter()
                .map(|r| {
                    let mut w = Vec::with_capacity(len);
                    for &i in r {
                        w.extend_from_slice(&prev[i]);
                    }
                    w
                })
                .collect();
            cache.push(Arc::new(next));
        }
        Ok(cache[n].clone())
    }
}

fn words(a: &Alphabet, w: &[&str]) -> Vec<Word> {
    w.iter().map(|t| Word::parse(a, t).unwrap()).collect()
}

impl LevelSource for SubstitutiveScheme {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn level(&self, n: usize) -> Result<Level> {
        let blocks = self.blocks(n)?;
        let ws: Vec<Word> = blocks.iter().map(|b| Word::from_raw(self.alphabet.clone(), b.clone())).collect();
        let pairs = self.pairs.as_ref().map(|p| {
            p.iter()
                .map(|&(a, c)| {
                    let mut v = blocks[a].clone();
                    v.extend_from_slice(&blocks[c]);
                    Word::from_raw(self.alphabet.clone(), v)
                })
                .collect()
        });
        Ok(Level { block_len: blocks[0].len(), blocks: ws, pairs })
    }

    fn depth(&self) -> Option<usize> {
        None
    }

    fn has_pairs(&self) -> bool {
        self.pairs.is_some()
    }

    fn decomposition(&self, _n: usize) -> Option<Vec<Vec<usize>>> {
        Some(self.rule.clone())
    }

    fn block_len(&self, n: usize) -> Option<u64> {
        (self.rule[0].len() as u64)
            .checked_pow(n as u32)
            .and_then(|r| r.checked_mul(self.level0[0].len() as u64))
    }

    fn describe(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("alphabet: {}\n", self.alphabet.names().join(" ")));
        let l0: Vec<String> = self.level0.iter().map(|w| self.alphabet.render(w)).collect();
        out.push_str(&format!("level0: {}\n", l0.join(" ")));
        for r in &self.rule {
            let s: Vec<String> = r.iter().map(usize::to_string).collect();
            out.push_str(&format!("rule: {}\n", s.join(" ")));
        }
        if let Some(p) = &self.pairs {
            let s: Vec<String> = p.iter().map(|(a, b)| format!("{a} {b}")).collect();
            out.push_str(&format!("pairs: {}\n", s.join(", ")));
        }
        out
    }
}

/// Finitely many explicit levels.
pub struct ListedScheme {
    alphabet: Alphabet,
    levels: Vec<Level>,
}

impl ListedScheme {
    pub fn new(alphabet: Alphabet, levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(SeqError::InvalidArgument("scheme needs at least one level".into()));
        }
        let gap = levels[0].pairs.is_some();
        for l in &levels {
            if l.blocks.is_empty() || l.pairs.is_some() != gap {
                return Err(SeqError::InvalidArgument("every level needs blocks, and pairs on all or none".into()));
            }
        }
        Ok(ListedScheme { alphabet, levels })
    }
}

impl LevelSource for ListedScheme {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn level(&self, n: usize) -> Result<Level> {
        self.levels
            .get(n)
            .cloned()
            .ok_or_else(|| SeqError::InvalidArgument(format!("scheme has no level {n}")))
    }

    fn depth(&self) -> Option<usize> {
        Some(self.levels.len() - 1)
    }

    fn has_pairs(&self) -> bool {
        self.levels[0].pairs.is_some()
    }

    fn block_len(&self, n: usize) -> Option<u64> {
        self.levels.get(n).map(|l| l.block_len as u64)
    }

    fn describe(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet.names().join(" "));
        for l in &self.levels {
            let b: Vec<String> = l.blocks.iter().map(Word::to_string).collect();
            out.push_str(&format!("level: {}", b.join(" ")));
            if let Some(p) = &l.pairs {
                let p: Vec<String> = p.iter().map(Word::to_string).collect();
                out.push_str(&format!(" | {}", p.join(" ")));
            }
            out.push('\n');
        }
        out
    }
}

/// Reads a scheme file. Substitutive form:
///
/// ```text
/// alphabet: 0 1
/// level0: 0 1
/// rule: 0 1 1 0
/// rule: 1 0 1 1
/// pairs: 0 1, 1 0, 1 1
/// ```
///
/// Listed form uses `level: B words | C words` lines instead of `level0`/`rule`.
pub fn parse_scheme(text: &str) -> Result<Scheme> {
    let mut alphabet = None;
    let mut level0 = None;
    let mut rules = Vec::new();
    let mut pairs = None;
    let mut listed = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |m: &str| SeqError::Parse { line: ln + 1, msg: m.to_string() };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, val) = line.split_once(':').ok_or_else(|| err("expected `key: value`"))?;
        let val = val.trim();
        match key.trim() {
            "alphabet" => alphabet = Some(Alphabet::new(val.split_whitespace())?),
            "level0" | "rule" | "pairs" | "level" if alphabet.is_none() => {
                return Err(err("alphabet must come first"))
            }
            "level0" => {
                let a = alphabet.as_ref().unwrap();
                level0 = Some(val.split_whitespace().map(|w| Word::parse(a, w)).collect::<Result<Vec<_>>>()?);
            }
            "rule" => rules.push(
                val.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| err("rule entries are block indices")))
                    .collect::<Result<Vec<_>>>()?,
            ),
            "pairs" => {
                let mut v = Vec::new();
                for p in val.split(',') {
                    let t: Vec<&str> = p.split_whitespace().collect();
                    if t.len() != 2 {
                        return Err(err("pairs are `i j` separated by commas"));
                    }
                    let a = t[0].parse().map_err(|_| err("bad pair index"))?;
                    let b = t[1].parse().map_err(|_| err("bad pair index"))?;
                    v.push((a, b));
                }
                pairs = Some(v);
            }
            "level" => {
                let a = alphabet.as_ref().unwrap();
                let (b, c) = match val.split_once('|') {
                    Some((b, c)) => (b, Some(c)),
                    None => (val, None),
                };
                let blocks = b.split_whitespace().map(|w| Word::parse(a, w)).collect::<Result<Vec<_>>>()?;
                let pairs = c
                    .map(|c| c.split_whitespace().map(|w| Word::parse(a, w)).collect::<Result<Vec<_>>>())
                    .transpose()?;
                let block_len = blocks.first().map(Word::len).unwrap_or(0);
                listed.push(Level { block_len, blocks, pairs });
            }
            other => return Err(err(&format!("unknown key `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or(SeqError::Parse { line: 0, msg: "missing alphabet".into() })?;
    if !listed.is_empty() {
        return Ok(Arc::new(ListedScheme::new(alphabet, listed)?));
    }
    let level0 = level0.ok_or(SeqError::Parse { line: 0, msg: "missing level0".into() })?;
    Ok(Arc::new(SubstitutiveScheme::new(alphabet, level0, rules, pairs)?))
}

/// A failed scheme condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub level: usize,
    pub condition: u8,
    pub words: Vec<Word>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.words.iter().map(Word::to_string).collect();
        write!(f, "level {}, condition ({}): {} [{}]", self.level, self.condition, self.detail, w.join(", "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn split_blocks(w: &Word, l: usize) -> Option<Vec<&[Sym]>> {
    if l == 0 || !w.len().is_multiple_of(l) {
        return None;
    }
    Some(w.letters().chunks(l).collect())
}

/// Checks the scheme conditions for levels `0..=depth`.
///
/// GAP schemes: (1) block lengths, (2) pairs are `v1 v2` over `B_n` with every block used in both
/// positions, (3) each `B_{n+1}` word is a chain of `B_n` blocks whose adjacent pairs lie in `C_n`
/// and realize all of `C_n`, (4) the straddling pair of each `C_{n+1}` word lies in `C_n`.
/// AP schemes: (1), and (3) each `B_{n+1}` word is a concatenation of `B_n` words using all of them.
pub fn scheme_validate(scheme: &dyn LevelSource, depth: usize) -> Result<ValidationReport> {
    if depth == 0 {
        return Err(SeqError::InvalidArgument("validation depth must be at least 1".into()));
    }
    let top = scheme.depth().map_or(depth, |d| d.min(depth));
    let mut report = ValidationReport::default();
    let mut levels = Vec::new();
    for n in 0..=top {
        levels.push(scheme.level(n)?);
    }
    let mut push = |level, condition, words: Vec<Word>, detail: &str| {
        report.violations.push(Violation { level, condition, words, detail: detail.to_string() })
    };
    for (n, lv) in levels.iter().enumerate() {
        for w in &lv.blocks {
            if w.len() != lv.block_len {
                push(n, 1, vec![w.clone()], &format!("length {} differs from l_n = {}", w.len(), lv.block_len));
            }
        }
        let block_set: BTreeSet<&[Sym]> = lv.blocks.iter().map(Word::letters).collect();
        if let Some(pairs) = &lv.pairs {
            let mut first = BTreeSet::new();
            let mut second = BTreeSet::new();
            for c in pairs {
                let l = lv.block_len;
                if c.len() != 2 * l || !block_set.contains(&c.letters()[..l]) || !block_set.contains(&c.letters()[l..]) {
                    push(n, 2, vec![c.clone()], "pair is not v1 v2 with v1, v2 in B_n");
                    continue;
                }
                first.insert(&c.letters()[..l]);
                second.insert(&c.letters()[l..]);
            }
            for b in &lv.blocks {
                if !first.contains(b.letters()) {
                    push(n, 2, vec![b.clone()], "block never used as first element of a pair");
                }
                if !second.contains(b.letters()) {
                    push(n, 2, vec![b.clone()], "block never used as second element of a pair");
                }
            }
        }
    }
    for n in 0..top {
        let (lv, next) = (&levels[n], &levels[n + 1]);
        let l = lv.block_len;
        let block_set: BTreeSet<&[Sym]> = lv.blocks.iter().map(Word::letters).collect();
        match &lv.pairs {
            Some(pairs) => {
                let pair_set: BTreeSet<&[Sym]> = pairs.iter().map(Word::letters).collect();
                for u in &next.blocks {
                    let Some(parts) = split_blocks(u, l) else {
                        push(n + 1, 3, vec![u.clone()], "length is not a multiple of l_n");
                        continue;
                    };
                    if let Some(p) = parts.iter().find(|p| !block_set.contains(*p)) {
                        push(n + 1, 3, vec![u.clone(), Word::from_raw(u.alphabet().clone(), p.to_vec())], "piece not in B_n");
                        continue;
                    }
                    let mut seen = BTreeSet::new();
                    for w in parts.windows(2) {
                        let mut c = w[0].to_vec();
                        c.extend_from_slice(w[1]);
                        if !pair_set.contains(c.as_slice()) {
                            push(n + 1, 3, vec![u.clone(), Word::from_raw(u.alphabet().clone(), c.clone())], "adjacent pair not in C_n");
                        }
                        seen.insert(c);
                    }
                    for c in pairs {
                        if !seen.contains(c.letters()) {
                            push(n + 1, 3, vec![u.clone(), c.clone()], "pair of C_n not realized");
                        }
                    }
                }
                if let Some(next_pairs) = &next.pairs {
                    let ln = next.block_len;
                    for c in next_pairs {
                        if c.len() != 2 * ln || ln < l {
                            continue;
                        }
                        let mut s = c.letters()[ln - l..ln].to_vec();
                        s.extend_from_slice(&c.letters()[ln..ln + l]);
                        if !pair_set.contains(s.as_slice()) {
                            push(n + 1, 4, vec![c.clone(), Word::from_raw(c.alphabet().clone(), s)], "straddling pair not in C_n");
                        }
                    }
                }
            }
            None => {
                for u in &next.blocks {
                    let Some(parts) = split_blocks(u, l) else {
                        push(n + 1, 3, vec![u.clone()], "length is not a multiple of l_n");
                        continue;
                    };
                    if parts.iter().any(|p| !block_set.contains(*p)) {
                        push(n + 1, 3, vec![u.clone()], "not a concatenation of B_n words");
                        continue;
                    }
                    let used: BTreeSet<&[Sym]> = parts.into_iter().collect();
                    for b in &lv.blocks {
                        if !used.contains(b.letters()) {
                            push(n + 1, 3, vec![u.clone(), b.clone()], "B_n word missing");
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

pub type ChoiceFn = Arc<dyn Fn(usize, &[Word]) -> usize + Send + Sync>;

/// How the nondeterministic choice of the next block is resolved.
#[derive(Clone)]
pub enum Policy {
    /// Lexicographically least viable continuation.
    Least,
    /// Uniform among viable continuations, seeded.
    Random(u64),
    /// `f(level, candidates) -> index`.
    Callback(ChoiceFn),
}

impl fmt::Debug for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Least => f.write_str("least"),
            Policy::Random(s) => write!(f, "random({s})"),
            Policy::Callback(_) => f.write_str("callback"),
        }
    }
}

/// Which generation constraint is realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `x[i l_n, (i+1) l_n - 1] ∈ B_n` (and pairs in `C_n` for GAP schemes).
    Ap,
    /// `x[k + i l_n, k + (i+2) l_n - 1] ∈ C_n` with an arbitrary preamble of length `k`.
    Gap { preamble: Word },
}

const LOOKAHEAD: usize = 2;

struct ChainState {
    chain: Vec<Word>,
    rng: ChaCha8Rng,
    /// Block indices of a top-level choice too long to materialize.
    top: Option<Vec<usize>>,
}

struct SchemeOracle {
    scheme: Scheme,
    preamble: Vec<Sym>,
    policy: Policy,
    state: Mutex<ChainState>,
}

impl SchemeOracle {
    fn viable(&self, n: usize, w: &Word, depth: usize) -> Result<bool> {
        if depth == 0 || self.scheme.depth() == Some(n) {
            return Ok(true);
        }
        if self.scheme.block_len(n + 1).is_none_or(|l| l > crate::core::horizon_cap() as u64) {
            return Ok(true);
        }
        let next = self.scheme.level(n + 1)?;
        for c in next.blocks.iter().filter(|c| c.starts_with(w)) {
            if self.viable(n + 1, c, depth - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn choose(&self, level: usize, mut cands: Vec<Word>, rng: &mut ChaCha8Rng) -> Result<Word> {
        if cands.is_empty() {
            return Err(SeqError::GenerationStuck { level });
        }
        cands.sort();
        cands.dedup();
        let i = match &self.policy {
            Policy::Least => 0,
            Policy::Random(_) => rng.gen_range(0..cands.len()),
            Policy::Callback(f) => f(level, &cands),
        };
        cands.get(i).cloned().ok_or_else(|| SeqError::InvalidArgument("policy picked a missing candidate".into()))
    }

    fn extend(&self, chain: &mut Vec<Word>, rng: &mut ChaCha8Rng, level: usize) -> Result<()> {
        if chain.is_empty() {
            let l0 = self.scheme.level(0)?;
            let mut cands = Vec::new();
            for w in l0.blocks {
                if self.viable(0, &w, LOOKAHEAD)? {
                    cands.push(w);
                }
            }
            let w = self.choose(0, cands, rng)?;
            chain.push(w);
        }
        while chain.len() <= level {
            let n = chain.len() - 1;
            let next = self.scheme.level(n + 1).map_err(|e| match e {
                SeqError::InvalidArgument(_) => SeqError::GenerationStuck { level: n + 1 },
                e => e,
            })?;
            let mut cands = Vec::new();
            for c in next.blocks.into_iter().filter(|c| c.starts_with(&chain[n])) {
                if self.viable(n + 1, &c, LOOKAHEAD)? {
                    cands.push(c);
                }
            }
            let w = self.choose(n + 1, cands, rng)?;
            chain.push(w);
        }
        Ok(())
    }
}

impl SchemeOracle {
    /// Chooses `w_{n+1}` as a list of `B_n` indices without building `B_{n+1}`.
    fn choose_top(&self, n: usize, parts: &[Word], rule: Vec<Vec<usize>>, w: &Word, need: usize, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
        let mut cands: Vec<Vec<usize>> = rule.into_iter().filter(|r| parts[r[0]] == *w).collect();
        if cands.is_empty() {
            return Err(SeqError::GenerationStuck { level: n + 1 });
        }
        cands.sort_by(|a, b| a.iter().map(|&i| &parts[i]).cmp(b.iter().map(|&i| &parts[i])));
        cands.dedup();
        let i = match &self.policy {
            Policy::Least => 0,
            Policy::Random(_) => rng.gen_range(0..cands.len()),
            Policy::Callback(f) => {
                // Candidates are shown cut to the requested length.
                let shown: Vec<Word> = cands.iter().map(|c| assemble(parts, c, need)).collect();
                f(n + 1, &shown)
            }
        };
        cands.get(i).cloned().ok_or_else(|| SeqError::InvalidArgument("policy picked a missing candidate".into()))
    }
}

fn assemble(parts: &[Word], idx: &[usize], len: usize) -> Word {
    let mut v = Vec::with_capacity(len);
    for &i in idx {
        if v.len() >= len {
            break;
        }
        v.extend_from_slice(parts[i].letters());
    }
    v.truncate(len);
    Word::from_raw(parts[0].alphabet().clone(), v)
}

impl Oracle for SchemeOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        let k = self.preamble.len();
        let need = len.saturating_sub(k) as u64;
        let mut level = 0;
        while self.scheme.block_len(level).ok_or(SeqError::GenerationStuck { level })? < need {
            level += 1;
            if self.scheme.depth().is_some_and(|d| level > d) {
                return Err(SeqError::InvalidArgument(format!(
                    "scheme levels end before {len} symbols are determined"
                )));
            }
        }
        let mut st = self.state.lock();
        let ChainState { chain, rng, top } = &mut *st;
        let too_long = self.scheme.block_len(level).is_none_or(|l| l > crate::core::horizon_cap() as u64);
        let body = match (too_long && level > 0).then(|| self.scheme.decomposition(level - 1)).flatten() {
            Some(rule) => {
                self.extend(chain, rng, level - 1)?;
                let parts = self.scheme.level(level - 1)?.blocks;
                if top.is_none() {
                    *top = Some(self.choose_top(level - 1, &parts, rule, &chain[level - 1], need as usize, rng)?);
                }
                assemble(&parts, top.as_ref().unwrap(), need as usize)
            }
            None => {
                self.extend(chain, rng, level)?;
                chain[level].clone()
            }
        };
        let mut out = self.preamble.clone();
        out.extend_from_slice(body.letters());
        let from = buf.len();
        buf.extend_from_slice(&out[from..out.len().max(from)]);
        Ok(())
    }
}

/// `k + 4 l_{m+1}` with `m` least such that `l_m >= n`.
fn scheme_bound(scheme: &Scheme, k: usize) -> BoundFunction {
    let s = scheme.clone();
    BoundFunction::new(format!("{k}+4*l_(m+1)"), move |n| {
        let mut m = 0;
        while s.block_len(m)? < n {
            m += 1;
        }
        s.block_len(m + 1)?.checked_mul(4)?.checked_add(k as u64)
    })
}

/// Generates a sequence from a scheme by a nested chain `w_n ∈ B_n`, each `w_{n+1}` starting with
/// `w_n`. GAP schemes attach the bound `k + 4 l_{m+1}`; AP schemes carry none.
pub fn scheme_generate(scheme: &Scheme, mode: Mode, policy: Policy) -> Result<Sequence> {
    let preamble = match &mode {
        Mode::Ap => Vec::new(),
        Mode::Gap { preamble } => {
            if !scheme.has_pairs() {
                return Err(SeqError::InvalidArgument("GAP generation needs a scheme with pairs".into()));
            }
            if preamble.alphabet() != scheme.alphabet() {
                return Err(SeqError::AlphabetMismatch("preamble alphabet differs from the scheme's".into()));
            }
            preamble.letters().to_vec()
        }
    };
    let seed = match policy {
        Policy::Random(s) => s,
        _ => 0,
    };
    let bound = scheme.has_pairs().then(|| scheme_bound(scheme, preamble.len()));
    let mut prov = Provenance::new("scheme").with("policy", format!("{policy:?}"));
    if let Mode::Gap { preamble } = &mode {
        prov = prov.with("preamble", preamble);
    }
    let oracle = SchemeOracle {
        scheme: scheme.clone(),
        preamble,
        policy,
        state: Mutex::new(ChainState { chain: Vec::new(), rng: ChaCha8Rng::seed_from_u64(seed), top: None }),
    };
    Ok(Sequence::new(scheme.alphabet().clone(), oracle, prov).with_bound(bound))
}
