use std::collections::BTreeSet;
use std::fmt;

use super::apply::apply_morphism;
use super::bounds::image_bound;
use crate::core::{Alphabet, Oracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};
use crate::generators::Morphism;

/// A finite transducer `⟨A, B, Q, q0, λ, μ⟩`.
#[derive(Clone, PartialEq, Eq)]
pub struct Transducer {
    input: Alphabet,
    output: Alphabet,
    states: Vec<String>,
    start: usize,
    lambda: Vec<Vec<Vec<Sym>>>,
    mu: Vec<Vec<usize>>,
}

impl Transducer {
    /// `lambda[q][a]` and `mu[q][a]` must be total on `Q × A`.
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        states: Vec<String>,
        start: usize,
        lambda: Vec<Vec<Vec<Sym>>>,
        mu: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let q = states.len();
        if q == 0 || start >= q {
            return Err(SeqError::InvalidArgument("need at least one state and a valid start".into()));
        }
        let distinct: BTreeSet<&String> = states.iter().collect();
        if distinct.len() != q || states.iter().any(|s| s.is_empty() || s.contains(char::is_whitespace)) {
            return Err(SeqError::InvalidArgument("state names must be distinct single tokens".into()));
        }
        if lambda.len() != q || mu.len() != q {
            return Err(SeqError::InvalidArgument("λ and μ need one row per state".into()));
        }
        for (l, m) in lambda.iter().zip(&mu) {
            if l.len() != input.len() || m.len() != input.len() {
                return Err(SeqError::InvalidArgument("λ and μ must be total on Q × A".into()));
            }
            if m.iter().any(|&t| t >= q) {
                return Err(SeqError::InvalidArgument("transition to an unknown state".into()));
            }
            if l.iter().flatten().any(|&s| !output.contains(s)) {
                return Err(SeqError::UnknownSymbol("output symbol outside B".into()));
            }
        }
        Ok(Transducer { input, output, states, start, lambda, mu })
    }

    /// One state copying its input.
    pub fn identity(alphabet: &Alphabet) -> Self {
        let lambda = vec![alphabet.symbols().map(|a| vec![a]).collect()];
        let mu = vec![vec![0; alphabet.len()]];
        Transducer::new(alphabet.clone(), alphabet.clone(), vec!["q0".into()], 0, lambda, mu).unwrap()
    }

    /// `m` states cycling on every letter, emitting `⟨a, q⟩` over `A × {0..m-1}`.
    pub fn cyclic_counter(input: &Alphabet, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(SeqError::InvalidArgument("counter needs at least one state".into()));
        }
        let digits = Alphabet::digits(m);
        let output = input.product(&digits);
        let states = (0..m).map(|i| format!("q{i}")).collect();
        let lambda = (0..m)
            .map(|q| input.symbols().map(|a| vec![input.pair(&digits, a, q as Sym)]).collect())
            .collect();
        let mu = (0..m).map(|q| vec![(q + 1) % m; input.len()]).collect();
        Transducer::new(input.clone(), output, states, 0, lambda, mu)
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn lambda(&self, q: usize, a: Sym) -> &[Sym] {
        &self.lambda[q][a as usize]
    }

    pub fn mu(&self, q: usize, a: Sym) -> usize {
        self.mu[q][a as usize]
    }

    /// Every output has length one.
    pub fn is_uniform(&self) -> bool {
        self.lambda.iter().flatten().all(|w| w.len() == 1)
    }

    pub fn is_erasing(&self) -> bool {
        self.lambda.iter().flatten().any(Vec::is_empty)
    }

    /// Runs the machine on a finite word, returning the output and the final state.
    pub fn run_word(&self, w: &[Sym]) -> (Vec<Sym>, usize) {
        let mut q = self.start;
        let mut out = Vec::new();
        for &a in w {
            out.extend_from_slice(self.lambda(q, a));
            q = self.mu(q, a);
        }
        (out, q)
    }

    /// Reads the text format:
    ///
    /// ```text
    /// states: q0 q1
    /// start: q0
    /// input: 0 1
    /// output: 0 1
    /// q0 0 -> 0 q0
    /// q0 1 -> 1 q1
    /// ```
    ///
    /// `input:` and `output:` may be omitted, in which case the letters used are taken in sorted
    /// order and output words are read one character per letter. `-` is the empty output.
    pub fn parse(text: &str) -> Result<Self> {
        let mut states: Option<Vec<String>> = None;
        let mut start = None;
        let mut input: Option<Alphabet> = None;
        let mut output: Option<Alphabet> = None;
        let mut rules = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |m: String| SeqError::Parse { line: ln + 1, msg: m };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((lhs, rhs)) = line.split_once("->") {
                let l: Vec<&str> = lhs.split_whitespace().collect();
                let r: Vec<&str> = rhs.split_whitespace().collect();
                if l.len() != 2 || r.len() != 2 {
                    return Err(err("expected `q a -> w q'`".into()));
                }
                rules.push((ln + 1, l[0].to_string(), l[1].to_string(), r[0].to_string(), r[1].to_string()));
                continue;
            }
            let (key, val) = line.split_once(':').ok_or_else(|| err("expected `key: value` or a rule".into()))?;
            let toks: Vec<String> = val.split_whitespace().map(String::from).collect();
            match key.trim() {
                "states" => states = Some(toks),
                "start" => {
                    if toks.len() != 1 {
                        return Err(err("start takes one state".into()));
                    }
                    start = Some(toks[0].clone());
                }
                "input" => input = Some(Alphabet::new(toks).map_err(|e| err(e.to_string()))?),
                "output" => output = Some(Alphabet::new(toks).map_err(|e| err(e.to_string()))?),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let states = states.ok_or(SeqError::Parse { line: 0, msg: "missing `states:`".into() })?;
        let start = start.ok_or(SeqError::Parse { line: 0, msg: "missing `start:`".into() })?;
        let input = match input {
            Some(a) => a,
            None => {
                let set: BTreeSet<&String> = rules.iter().map(|r| &r.2).collect();
                Alphabet::new(set.into_iter().cloned()).map_err(|e| SeqError::Parse { line: 0, msg: e.to_string() })?
            }
        };
        let output = match output {
            Some(a) => a,
            None => {
                let set: BTreeSet<String> = rules
                    .iter()
                    .filter(|r| r.3 != "-")
                    .flat_map(|r| r.3.chars().map(String::from).collect::<Vec<_>>())
                    .collect();
                Alphabet::new(set).map_err(|e| SeqError::Parse { line: 0, msg: e.to_string() })?
            }
        };
        let qi = |name: &str, line| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or(SeqError::Parse { line, msg: format!("unknown state `{name}`") })
        };
        let q0 = qi(&start, 0)?;
        let n = states.len();
        let mut lambda = vec![vec![None; input.len()]; n];
        let mut mu = vec![vec![None; input.len()]; n];
        for (line, q, a, w, t) in &rules {
            let q = qi(q, *line)?;
            let t = qi(t, *line)?;
            let a = input
                .sym(a)
                .ok_or(SeqError::Parse { line: *line, msg: format!("unknown input letter `{a}`") })?;
            let w = if w == "-" {
                Vec::new()
            } else {
                output.parse(w).map_err(|e| SeqError::Parse { line: *line, msg: e.to_string() })?
            };
            if mu[q][a as usize].is_some() {
                return Err(SeqError::Parse { line: *line, msg: "duplicate rule".into() });
            }
            lambda[q][a as usize] = Some(w);
            mu[q][a as usize] = Some(t);
        }
        let mut lam = Vec::with_capacity(n);
        let mut m = Vec::with_capacity(n);
        for q in 0..n {
            let mut lr = Vec::new();
            let mut mr = Vec::new();
            for a in 0..input.len() {
                match (&lambda[q][a], mu[q][a]) {
                    (Some(w), Some(t)) => {
                        lr.push(w.clone());
                        mr.push(t);
                    }
                    _ => {
                        return Err(SeqError::Parse {
                            line: 0,
                            msg: format!("no rule for state `{}` on `{}`", states[q], input.name(a as Sym)),
                        })
                    }
                }
            }
            lam.push(lr);
            m.push(mr);
        }
        Transducer::new(input, output, states, q0, lam, m)
    }
}

impl fmt::Display for Transducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.states.join(" "))?;
        writeln!(f, "start: {}", self.states[self.start])?;
        writeln!(f, "input: {}", self.input.names().join(" "))?;
        writeln!(f, "output: {}", self.output.names().join(" "))?;
        for q in 0..self.states.len() {
            for a in self.input.symbols() {
                let w = self.lambda(q, a);
                let w = if w.is_empty() { "-".to_string() } else { self.output.render(w) };
                writeln!(f, "{} {} -> {} {}", self.states[q], self.input.name(a), w, self.states[self.mu(q, a)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Transducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transducer({} states, {} -> {})", self.states.len(), self.input.len(), self.output.len())
    }
}

/// `p_0 = q0`, `p_{n+1} = μ(p_n, x(n))` over the state names.
pub fn run_states(m: &Transducer, x: &Sequence) -> Result<Sequence> {
    check_input(m, x)?;
    let states = Alphabet::new(m.states.iter().cloned())?;
    let mach = m.clone();
    let base = x.clone();
    let oracle = move |buf: &mut Vec<Sym>, len: usize| -> Result<()> {
        if buf.is_empty() && len > 0 {
            buf.push(mach.start as Sym);
        }
        if buf.len() >= len {
            return Ok(());
        }
        let xs = base.range(buf.len() - 1, len - 1)?;
        for a in xs {
            let q = *buf.last().unwrap() as usize;
            buf.push(mach.mu(q, a) as Sym);
        }
        Ok(())
    };
    let prov = Provenance::new("run_states").with("x", x.provenance());
    Ok(Sequence::new(states, oracle, prov))
}

fn check_input(m: &Transducer, x: &Sequence) -> Result<()> {
    if m.input() != x.alphabet() {
        return Err(SeqError::AlphabetMismatch(format!(
            "transducer reads {:?}, sequence is over {:?}",
            m.input(),
            x.alphabet()
        )));
    }
    Ok(())
}

struct UniformOracle {
    machine: Transducer,
    x: Sequence,
    states: Sequence,
}

impl Oracle for UniformOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        let from = buf.len();
        let xs = self.x.range(from, len)?;
        let qs = self.states.range(from, len)?;
        buf.extend(qs.iter().zip(&xs).map(|(&q, &a)| self.machine.lambda(q as usize, a)[0]));
        Ok(())
    }
}

/// `M(x) = λ(p_0, x(0)) λ(p_1, x(1)) ...`.
///
/// A uniform machine applied to a sequence with a certified bound `g` gives the bound
/// `h(h(n))`, `h = (g+1)^{|Q|} - 1`. Non-uniform machines are run as `φ(M'(x))` and carry no bound.
pub fn transduce(m: &Transducer, x: &Sequence) -> Result<Sequence> {
    check_input(m, x)?;
    if !m.is_uniform() {
        let (tagger, phi) = decompose(m);
        let tagged = transduce(&tagger, x)?;
        return Ok(apply_morphism(&phi, &tagged)?
            .with_provenance(Provenance::new("transduce").with("x", x.provenance())));
    }
    let states = run_states(m, x)?;
    let bound = x.certified_bound().map(|g| image_bound(g, m.state_count()));
    let prov = Provenance::new("transduce").with("states", m.state_count()).with("x", x.provenance());
    let oracle = UniformOracle { machine: m.clone(), x: x.clone(), states };
    Ok(Sequence::new(m.output.clone(), oracle, prov).with_bound(bound))
}

/// Output sequence together with the run-state stream.
pub fn transduce_with_states(m: &Transducer, x: &Sequence) -> Result<(Sequence, Sequence)> {
    Ok((transduce(m, x)?, run_states(m, x)?))
}

/// `M = φ ∘ M'` where `M'` has the same transitions and emits `⟨q, a⟩`, and `φ(⟨q, a⟩) = λ(q, a)`.
pub fn decompose(m: &Transducer) -> (Transducer, Morphism) {
    let states = Alphabet::new(m.states.iter().cloned()).unwrap();
    let pairs = states.product(&m.input);
    let lambda = (0..m.states.len())
        .map(|q| m.input.symbols().map(|a| vec![states.pair(&m.input, q as Sym, a)]).collect())
        .collect();
    let tagger = Transducer::new(m.input.clone(), pairs.clone(), m.states.clone(), m.start, lambda, m.mu.clone()).unwrap();
    let mut images = Vec::with_capacity(pairs.len());
    for q in 0..m.states.len() {
        for a in m.input.symbols() {
            images.push(m.lambda(q, a).to_vec());
        }
    }
    let phi = Morphism::erasing(pairs, m.output.clone(), images).unwrap();
    (tagger, phi)
}

fn is_bijection(m: &Transducer, a: Sym) -> bool {
    let image: BTreeSet<usize> = (0..m.states.len()).map(|q| m.mu(q, a)).collect();
    image.len() == m.states.len()
}

/// Every letter permutes the states.
pub fn is_reversible(m: &Transducer) -> bool {
    m.input.symbols().all(|a| is_bijection(m, a))
}

/// Every letter in `recurrent` permutes the states.
pub fn is_almost_reversible(m: &Transducer, recurrent: &[Sym]) -> Result<bool> {
    if let Some(a) = recurrent.iter().find(|&&a| !m.input.contains(a)) {
        return Err(SeqError::UnknownSymbol(format!("letter #{a} is not an input letter")));
    }
    Ok(recurrent.iter().all(|&a| is_bijection(m, a)))
}
