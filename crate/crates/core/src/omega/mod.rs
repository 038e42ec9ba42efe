//! Deterministic Muller and Büchi automata and the acceptance decision for sequences with a
//! certified regulator bound.

use std::collections::BTreeSet;
use std::fmt;

use crate::core::{horizon_cap, Alphabet, BoundFunction, Segment, Sequence, Sym};
use crate::error::{Result, SeqError};
use crate::transforms::{run_states, transduce, Transducer};

/// States, start, alphabet and a deterministic total transition function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetCore {
    alphabet: Alphabet,
    states: Vec<String>,
    start: usize,
    delta: Vec<Vec<usize>>,
}

impl DetCore {
    pub fn new(alphabet: Alphabet, states: Vec<String>, start: usize, delta: Vec<Vec<usize>>) -> Result<Self> {
        check_states(&states, start)?;
        if delta.len() != states.len() || delta.iter().any(|r| r.len() != alphabet.len() || r.iter().any(|&t| t >= states.len())) {
            return Err(SeqError::InvalidArgument("δ must be total on Q × A".into()));
        }
        Ok(DetCore { alphabet, states, start, delta })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn delta(&self, q: usize, a: Sym) -> usize {
        self.delta[q][a as usize]
    }

    /// The uniform transducer that emits its current state: `λ(q, a) = q`, `μ = δ`.
    pub fn state_emitter(&self) -> Transducer {
        let out = Alphabet::new(self.states.iter().cloned()).expect("state names are distinct");
        let lambda = (0..self.states.len())
            .map(|q| vec![vec![q as Sym]; self.alphabet.len()])
            .collect();
        Transducer::new(self.alphabet.clone(), out, self.states.clone(), self.start, lambda, self.delta.clone())
            .expect("δ is total")
    }
}

fn check_states(states: &[String], start: usize) -> Result<()> {
    let set: BTreeSet<&String> = states.iter().collect();
    if states.is_empty() || set.len() != states.len() || start >= states.len() {
        return Err(SeqError::InvalidArgument("need distinct states and a valid start".into()));
    }
    if states.iter().any(|s| s.is_empty() || s.contains(|c: char| c.is_whitespace() || "{},".contains(c))) {
        return Err(SeqError::InvalidArgument("state names must be plain tokens".into()));
    }
    Ok(())
}

/// Deterministic Muller automaton with accepting family `𝓕`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MullerAutomaton {
    core: DetCore,
    family: Vec<BTreeSet<usize>>,
}

impl MullerAutomaton {
    pub fn new(core: DetCore, family: Vec<BTreeSet<usize>>) -> Result<Self> {
        if family.iter().flatten().any(|&q| q >= core.states.len()) {
            return Err(SeqError::InvalidArgument("accepting set names an unknown state".into()));
        }
        let mut family = family;
        family.sort();
        family.dedup();
        Ok(MullerAutomaton { core, family })
    }

    /// Two states recording the last letter read; `𝓕 = {{q0, q1}}` accepts sequences with both
    /// letters infinitely often.
    pub fn both_letters_tracker() -> Self {
        let core = DetCore::new(Alphabet::binary(), vec!["q0".into(), "q1".into()], 0, vec![vec![0, 1], vec![0, 1]]).unwrap();
        MullerAutomaton::new(core, vec![[0, 1].into()]).unwrap()
    }

    pub fn core(&self) -> &DetCore {
        &self.core
    }

    pub fn family(&self) -> &[BTreeSet<usize>] {
        &self.family
    }

    pub fn accepts_set(&self, limit: &BTreeSet<usize>) -> bool {
        self.family.iter().any(|f| f == limit)
    }
}

/// Büchi automaton; the transition relation is kept as listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    alphabet: Alphabet,
    states: Vec<String>,
    start: usize,
    transitions: Vec<(usize, Sym, usize)>,
    accept: BTreeSet<usize>,
}

impl BuchiAutomaton {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        start: usize,
        transitions: Vec<(usize, Sym, usize)>,
        accept: BTreeSet<usize>,
    ) -> Result<Self> {
        check_states(&states, start)?;
        let q = states.len();
        if transitions.iter().any(|&(p, a, t)| p >= q || t >= q || !alphabet.contains(a)) || accept.iter().any(|&s| s >= q) {
            return Err(SeqError::InvalidArgument("transition or accepting state out of range".into()));
        }
        let mut transitions = transitions;
        transitions.sort_unstable();
        transitions.dedup();
        Ok(BuchiAutomaton { alphabet, states, start, transitions, accept })
    }

    pub fn from_core(core: DetCore, accept: BTreeSet<usize>) -> Result<Self> {
        let mut tr = Vec::new();
        for q in 0..core.states.len() {
            for a in core.alphabet.symbols() {
                tr.push((q, a, core.delta(q, a)));
            }
        }
        Self::new(core.alphabet, core.states, core.start, tr, accept)
    }

    /// Exactly one transition for every state and letter.
    pub fn is_deterministic(&self) -> bool {
        self.as_deterministic().is_some()
    }

    pub fn as_deterministic(&self) -> Option<DetCore> {
        let mut delta = vec![vec![None; self.alphabet.len()]; self.states.len()];
        for &(p, a, t) in &self.transitions {
            let cell = &mut delta[p][a as usize];
            if cell.is_some() {
                return None;
            }
            *cell = Some(t);
        }
        let delta = delta.into_iter().map(|r| r.into_iter().collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?;
        DetCore::new(self.alphabet.clone(), self.states.clone(), self.start, delta).ok()
    }

    pub fn accept(&self) -> &BTreeSet<usize> {
        &self.accept
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }
}

/// A parsed automaton file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Muller(MullerAutomaton),
    Buchi(BuchiAutomaton),
}

impl Automaton {
    /// Reads
    ///
    /// ```text
    /// states: q0 q1
    /// start: q0
    /// alphabet: 0 1
    /// q0 0 -> q0
    /// q0 1 -> q1
    /// q1 0 -> q0
    /// q1 1 -> q1
    /// accept-sets: {q0,q1}
    /// ```
    ///
    /// with `accept: q0 q1` instead of `accept-sets:` for a Büchi automaton.
    pub fn parse(text: &str) -> Result<Self> {
        let mut states: Option<Vec<String>> = None;
        let mut start = None;
        let mut alphabet = None;
        let mut trans = Vec::new();
        let mut sets: Option<String> = None;
        let mut accept: Option<Vec<String>> = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |m: String| SeqError::Parse { line: ln + 1, msg: m };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((l, r)) = line.split_once("->") {
                let l: Vec<&str> = l.split_whitespace().collect();
                let r: Vec<&str> = r.split_whitespace().collect();
                if l.len() != 2 || r.len() != 1 {
                    return Err(err("expected `q a -> q'`".into()));
                }
                trans.push((ln + 1, l[0].to_string(), l[1].to_string(), r[0].to_string()));
                continue;
            }
            let (key, val) = line.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
            let toks: Vec<String> = val.split_whitespace().map(String::from).collect();
            match key.trim() {
                "states" => states = Some(toks),
                "start" if toks.len() == 1 => start = Some(toks[0].clone()),
                "start" => return Err(err("start takes one state".into())),
                "alphabet" => alphabet = Some(Alphabet::new(toks).map_err(|e| err(e.to_string()))?),
                "accept-sets" => sets = Some(val.trim().to_string()),
                "accept" => accept = Some(toks),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let missing = |k: &str| SeqError::Parse { line: 0, msg: format!("missing `{k}:`") };
        let states = states.ok_or_else(|| missing("states"))?;
        let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
        let start = start.ok_or_else(|| missing("start"))?;
        let qi = |name: &str, line: usize| {
            states.iter().position(|s| s == name).ok_or(SeqError::Parse { line, msg: format!("unknown state `{name}`") })
        };
        let q0 = qi(&start, 0)?;
        let mut tr = Vec::new();
        for (line, p, a, t) in &trans {
            let a = alphabet.sym(a).ok_or(SeqError::Parse { line: *line, msg: format!("unknown letter `{a}`") })?;
            tr.push((qi(p, *line)?, a, qi(t, *line)?));
        }
        match (sets, accept) {
            (Some(_), Some(_)) => Err(SeqError::Parse { line: 0, msg: "give either `accept-sets:` or `accept:`".into() }),
            (None, None) => Err(missing("accept-sets")),
            (Some(sets), None) => {
                let mut family = Vec::new();
                let mut rest = sets.as_str();
                while let Some(open) = rest.find('{') {
                    if !rest[..open].trim().is_empty() {
                        return Err(SeqError::Parse { line: 0, msg: "accepting sets are written `{q0,q1}`".into() });
                    }
                    let close = rest[open..]
                        .find('}')
                        .ok_or(SeqError::Parse { line: 0, msg: "unclosed `{`".into() })?
                        + open;
                    let mut set = BTreeSet::new();
                    for name in rest[open + 1..close].split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        set.insert(qi(name, 0)?);
                    }
                    family.push(set);
                    rest = &rest[close + 1..];
                }
                if !rest.trim().is_empty() {
                    return Err(SeqError::Parse { line: 0, msg: format!("unexpected `{}`", rest.trim()) });
                }
                let buchi = BuchiAutomaton::new(alphabet, states, q0, tr, BTreeSet::new())?;
                let core = buchi
                    .as_deterministic()
                    .ok_or(SeqError::Parse { line: 0, msg: "Muller automata must be deterministic and total".into() })?;
                Ok(Automaton::Muller(MullerAutomaton::new(core, family)?))
            }
            (None, Some(acc)) => {
                let acc = acc.iter().map(|s| qi(s, 0)).collect::<Result<BTreeSet<_>>>()?;
                Ok(Automaton::Buchi(BuchiAutomaton::new(alphabet, states, q0, tr, acc)?))
            }
        }
    }
}

fn write_header(f: &mut fmt::Formatter<'_>, states: &[String], start: usize, alphabet: &Alphabet) -> fmt::Result {
    writeln!(f, "states: {}", states.join(" "))?;
    writeln!(f, "start: {}", states[start])?;
    writeln!(f, "alphabet: {}", alphabet.names().join(" "))
}

impl fmt::Display for MullerAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.core;
        write_header(f, &c.states, c.start, &c.alphabet)?;
        for q in 0..c.states.len() {
            for a in c.alphabet.symbols() {
                writeln!(f, "{} {} -> {}", c.states[q], c.alphabet.name(a), c.states[c.delta(q, a)])?;
            }
        }
        let sets: Vec<String> = self
            .family
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|&q| c.states[q].as_str()).collect::<Vec<_>>().join(",")))
            .collect();
        if sets.is_empty() {
            writeln!(f, "accept-sets:")
        } else {
            writeln!(f, "accept-sets: {}", sets.join(" "))
        }
    }
}

impl fmt::Display for BuchiAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_header(f, &self.states, self.start, &self.alphabet)?;
        for &(p, a, t) in &self.transitions {
            writeln!(f, "{} {} -> {}", self.states[p], self.alphabet.name(a), self.states[t])?;
        }
        let acc: Vec<&str> = self.accept.iter().map(|&q| self.states[q].as_str()).collect();
        if acc.is_empty() {
            writeln!(f, "accept:")
        } else {
            writeln!(f, "accept: {}", acc.join(" "))
        }
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automaton::Muller(m) => m.fmt(f),
            Automaton::Buchi(b) => b.fmt(f),
        }
    }
}

fn check_alphabet(core: &DetCore, x: &Sequence) -> Result<()> {
    if core.alphabet() != x.alphabet() {
        return Err(SeqError::AlphabetMismatch("automaton alphabet differs from the sequence alphabet".into()));
    }
    Ok(())
}

/// `ρ(0) = q0`, `ρ(i+1) = δ(ρ(i), x(i))` for `i < steps`.
pub fn run(core: &DetCore, x: &Sequence, steps: usize) -> Result<Vec<usize>> {
    check_alphabet(core, x)?;
    let rho = run_states(&core.state_emitter(), x)?;
    Ok(rho.symbols(steps)?.into_iter().map(|q| q as usize).collect())
}

/// States visited in `ρ[T/2, T)`.
pub fn limit_set_oracle(core: &DetCore, x: &Sequence, t: usize) -> Result<BTreeSet<usize>> {
    if t < 2 {
        return Err(SeqError::InvalidArgument("T must be at least 2".into()));
    }
    let rho = run(core, x, t)?;
    Ok(rho[t / 2..].iter().copied().collect())
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub accept: bool,
    /// Infinitely visited states.
    pub limit_macrostate: BTreeSet<usize>,
    /// The inspected window `[g(1), 2 g(1) - 1]` of the state stream.
    pub window: Segment,
    /// Bound on the regulator of the state stream.
    pub bound_trace: BoundFunction,
}

impl Verdict {
    pub fn state_names<'a>(&self, states: &'a [String]) -> Vec<&'a str> {
        self.limit_macrostate.iter().map(|&q| states[q].as_str()).collect()
    }
}

/// Infinitely visited states read off the window `[g(1), 2 g(1) - 1]` of the state stream, where
/// `g` is the propagated bound for the state-emitting transducer.
fn limit_macrostate(core: &DetCore, x: &Sequence) -> Result<(BTreeSet<usize>, Segment, BoundFunction)> {
    if x.certified_bound().is_none() {
        return Err(SeqError::MissingBound(
            "acceptance is decidable for effectively generalized almost periodic sequences; this sequence carries no certified regulator bound".into(),
        ));
    }
    check_alphabet(core, x)?;
    let stream = transduce(&core.state_emitter(), x)?;
    let g = stream.certified_bound().cloned().ok_or_else(|| SeqError::MissingBound("bound was not propagated".into()))?;
    let cap = horizon_cap();
    let g1 = g.eval(1).ok_or_else(|| SeqError::CostRefused { required: format!("g(1) overflows for {}", g.provenance()), cap })?;
    let end = g1.checked_mul(2).ok_or_else(|| SeqError::CostRefused { required: format!("2*{g1}"), cap })?;
    if end > cap as u64 {
        return Err(SeqError::CostRefused { required: format!("window [{g1}, {}]", end - 1), cap });
    }
    let (lo, hi) = (g1 as usize, end as usize);
    let states: BTreeSet<usize> = stream.range(lo, hi)?.into_iter().map(|q| q as usize).collect();
    Ok((states, Segment::new(lo, hi - 1)?, g))
}

/// Accept iff the infinitely visited states form a member of `𝓕`.
pub fn decide_muller(aut: &MullerAutomaton, x: &Sequence) -> Result<Verdict> {
    let (limit, window, bound) = limit_macrostate(&aut.core, x)?;
    Ok(Verdict { accept: aut.accepts_set(&limit), limit_macrostate: limit, window, bound_trace: bound })
}

/// Accept iff some accepting state is visited infinitely often. Deterministic automata only.
pub fn decide_buchi_det(aut: &BuchiAutomaton, x: &Sequence) -> Result<Verdict> {
    let core = aut.as_deterministic().ok_or_else(|| {
        SeqError::Unsupported("nondeterministic Büchi automata would need determinization first".into())
    })?;
    let (limit, window, bound) = limit_macrostate(&core, x)?;
    Ok(Verdict {
        accept: limit.iter().any(|q| aut.accept.contains(q)),
        limit_macrostate: limit,
        window,
        bound_trace: bound,
    })
}
