use std::fmt;

use crate::core::{Alphabet, IndexOracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};

/// Deterministic finite automaton with output reading base-`k` digits, most significant first.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfao {
    base: usize,
    states: Vec<String>,
    start: usize,
    delta: Vec<Vec<usize>>,
    output: Vec<Sym>,
    out_alphabet: Alphabet,
}

impl Dfao {
    pub fn new(
        base: usize,
        states: Vec<String>,
        start: usize,
        delta: Vec<Vec<usize>>,
        output: Vec<Sym>,
        out_alphabet: Alphabet,
    ) -> Result<Self> {
        if base < 2 {
            return Err(SeqError::InvalidArgument("DFAO base must be at least 2".into()));
        }
        let q = states.len();
        if q == 0 || start >= q || delta.len() != q || output.len() != q {
            return Err(SeqError::InvalidArgument("DFAO tables do not match the state count".into()));
        }
        if delta.iter().any(|row| row.len() != base || row.iter().any(|&t| t >= q)) {
            return Err(SeqError::InvalidArgument("DFAO transition must be total".into()));
        }
        if output.iter().any(|&o| !out_alphabet.contains(o)) {
            return Err(SeqError::InvalidArgument("DFAO output outside its alphabet".into()));
        }
        Ok(Dfao { base, states, start, delta, output, out_alphabet })
    }

    /// Two-state parity automaton giving Thue–Morse.
    pub fn thue_morse() -> Self {
        Dfao::new(2, names(2), 0, vec![vec![0, 1], vec![1, 0]], vec![0, 1], Alphabet::binary()).unwrap()
    }

    /// Outputs 1 exactly at indices `2^n`.
    pub fn powers_of_two() -> Self {
        Dfao::new(
            2,
            names(3),
            0,
            vec![vec![0, 1], vec![1, 2], vec![2, 2]],
            vec![0, 1, 0],
            Alphabet::binary(),
        )
        .unwrap()
    }

    /// One state with fixed output.
    pub fn constant(base: usize, out: Sym, alphabet: Alphabet) -> Result<Self> {
        Dfao::new(base, names(1), 0, vec![vec![0; base]], vec![out], alphabet)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn out_alphabet(&self) -> &Alphabet {
        &self.out_alphabet
    }

    /// Output after reading the base-`k` digits of `n` (`0` reads the single digit 0).
    pub fn eval(&self, mut n: usize) -> Sym {
        let mut digits = Vec::new();
        loop {
            digits.push(n % self.base);
            n /= self.base;
            if n == 0 {
                break;
            }
        }
        let mut q = self.start;
        for &d in digits.iter().rev() {
            q = self.delta[q][d];
        }
        self.output[q]
    }

    /// Text form:
    ///
    /// ```text
    /// base: 2
    /// states: s0 s1
    /// start: s0
    /// output: s0=0 s1=1
    /// s0 0 -> s0
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut base = None;
        let mut states: Vec<String> = Vec::new();
        let mut start = None;
        let mut outputs: Vec<(String, String)> = Vec::new();
        let mut rules = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: &str| SeqError::Parse { line: ln + 1, msg: msg.to_string() };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("base:") {
                base = Some(v.trim().parse::<usize>().map_err(|_| err("bad base"))?);
            } else if let Some(v) = line.strip_prefix("states:") {
                states = v.split_whitespace().map(String::from).collect();
            } else if let Some(v) = line.strip_prefix("start:") {
                start = Some(v.trim().to_string());
            } else if let Some(v) = line.strip_prefix("output:") {
                for t in v.split_whitespace() {
                    let (q, o) = t.split_once('=').ok_or_else(|| err("output entries are q=symbol"))?;
                    outputs.push((q.to_string(), o.to_string()));
                }
            } else {
                let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected `q d -> q'`"))?;
                let l: Vec<&str> = lhs.split_whitespace().collect();
                if l.len() != 2 {
                    return Err(err("expected `q d -> q'`"));
                }
                let d = l[1].parse::<usize>().map_err(|_| err("digit expected"))?;
                rules.push((ln + 1, l[0].to_string(), d, rhs.trim().to_string()));
            }
        }
        let base = base.ok_or(SeqError::Parse { line: 0, msg: "missing base".into() })?;
        let idx = |name: &str, line: usize| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or(SeqError::Parse { line, msg: format!("unknown state `{name}`") })
        };
        let start = idx(&start.ok_or(SeqError::Parse { line: 0, msg: "missing start".into() })?, 0)?;
        let mut out_names: Vec<String> = Vec::new();
        for (_, o) in &outputs {
            if !out_names.contains(o) {
                out_names.push(o.clone());
            }
        }
        out_names.sort();
        let alphabet = Alphabet::new(out_names)?;
        let mut output = vec![None; states.len()];
        for (q, o) in &outputs {
            output[idx(q, 0)?] = alphabet.sym(o);
        }
        let output = output
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(SeqError::Parse { line: 0, msg: "every state needs an output".into() })?;
        let mut delta = vec![vec![usize::MAX; base]; states.len()];
        for (line, q, d, t) in rules {
            if d >= base {
                return Err(SeqError::Parse { line, msg: "digit out of range".into() });
            }
            delta[idx(&q, line)?][d] = idx(&t, line)?;
        }
        if delta.iter().flatten().any(|&t| t == usize::MAX) {
            return Err(SeqError::Parse { line: 0, msg: "transition function is not total".into() });
        }
        Dfao::new(base, states, start, delta, output, alphabet)
    }
}

impl fmt::Display for Dfao {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base: {}", self.base)?;
        writeln!(f, "states: {}", self.states.join(" "))?;
        writeln!(f, "start: {}", self.states[self.start])?;
        let outs: Vec<String> = self
            .states
            .iter()
            .zip(&self.output)
            .map(|(q, &o)| format!("{q}={}", self.out_alphabet.name(o)))
            .collect();
        writeln!(f, "output: {}", outs.join(" "))?;
        for (q, row) in self.delta.iter().enumerate() {
            for (d, &t) in row.iter().enumerate() {
                writeln!(f, "{} {d} -> {}", self.states[q], self.states[t])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Dfao {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dfao(base {}, {} states)", self.base, self.states.len())
    }
}

fn names(q: usize) -> Vec<String> {
    (0..q).map(|i| format!("s{i}")).collect()
}

/// `x(n) = output(δ*(start, digits of n))`.
pub fn automatic(dfao: &Dfao) -> Sequence {
    let d = dfao.clone();
    Sequence::new(
        dfao.out_alphabet().clone(),
        IndexOracle(move |i: usize| Ok(d.eval(i))),
        Provenance::new("automatic").with("base", dfao.base()),
    )
}
