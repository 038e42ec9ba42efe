use std::fmt;

use parking_lot::Mutex;

use super::transducer::Transducer;
use crate::core::{Alphabet, Oracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};

/// What a rule expects on top of the stack.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Top {
    Any,
    Empty,
    Is(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StackAction {
    Push(usize),
    Pop,
    Noop,
}

/// `(state, input, top) -> (output, next, action)`, optionally switching to `on_empty` when the
/// stack is empty after the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushdownRule {
    pub state: usize,
    pub input: Sym,
    pub top: Top,
    pub output: Vec<Sym>,
    pub next: usize,
    pub action: StackAction,
    pub on_empty: Option<usize>,
}

/// A transducer with a stack. The first matching rule fires.
#[derive(Clone, Debug)]
pub struct PushdownTransducer {
    states: Vec<String>,
    input: Alphabet,
    output: Alphabet,
    stack: Vec<String>,
    start: usize,
    rules: Vec<PushdownRule>,
}

impl PushdownTransducer {
    pub fn new(
        states: Vec<String>,
        input: Alphabet,
        output: Alphabet,
        stack: Vec<String>,
        start: usize,
        rules: Vec<PushdownRule>,
    ) -> Result<Self> {
        let q = states.len();
        if start >= q {
            return Err(SeqError::InvalidArgument("start state out of range".into()));
        }
        for r in &rules {
            let bad_stack = |s: usize| s >= stack.len();
            if r.state >= q || r.next >= q || r.on_empty.is_some_and(|s| s >= q) {
                return Err(SeqError::InvalidArgument("rule names an unknown state".into()));
            }
            if !input.contains(r.input) || r.output.iter().any(|&s| !output.contains(s)) {
                return Err(SeqError::UnknownSymbol("rule letter outside its alphabet".into()));
            }
            if matches!(r.top, Top::Is(s) if bad_stack(s)) || matches!(r.action, StackAction::Push(s) if bad_stack(s)) {
                return Err(SeqError::InvalidArgument("rule names an unknown stack symbol".into()));
            }
        }
        Ok(PushdownTransducer { states, input, output, stack, start, rules })
    }

    /// Two modes `a`, `b`. In mode `a` a `0` pushes and a `1` pops; mode `b` is the mirror image.
    /// Reaching the empty stack toggles the mode, and a letter that cannot pop switches mode and
    /// pushes. The output is the mode before each step.
    pub fn counterexample_machine() -> Self {
        let out = Alphabet::new(["a", "b"]).unwrap();
        let rule = |state, input, top, next, action, on_empty| PushdownRule {
            state,
            input,
            top,
            output: vec![state as Sym],
            next,
            action,
            on_empty,
        };
        let rules = vec![
            rule(0, 0, Top::Any, 0, StackAction::Push(0), None),
            rule(0, 1, Top::Is(0), 0, StackAction::Pop, Some(1)),
            rule(0, 1, Top::Empty, 1, StackAction::Push(0), None),
            rule(1, 1, Top::Any, 1, StackAction::Push(0), None),
            rule(1, 0, Top::Is(0), 1, StackAction::Pop, Some(0)),
            rule(1, 0, Top::Empty, 0, StackAction::Push(0), None),
        ];
        PushdownTransducer::new(
            vec!["a".into(), "b".into()],
            Alphabet::binary(),
            out,
            vec!["z".into()],
            0,
            rules,
        )
        .unwrap()
    }

    /// The finite-state machine run with a stack that is never touched.
    pub fn from_transducer(m: &Transducer) -> Self {
        let mut rules = Vec::new();
        for q in 0..m.state_count() {
            for a in m.input().symbols() {
                rules.push(PushdownRule {
                    state: q,
                    input: a,
                    top: Top::Any,
                    output: m.lambda(q, a).to_vec(),
                    next: m.mu(q, a),
                    action: StackAction::Noop,
                    on_empty: None,
                });
            }
        }
        PushdownTransducer::new(
            m.states().to_vec(),
            m.input().clone(),
            m.output().clone(),
            vec!["z".into()],
            m.start(),
            rules,
        )
        .unwrap()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn stack_alphabet(&self) -> &[String] {
        &self.stack
    }

    pub fn rules(&self) -> &[PushdownRule] {
        &self.rules
    }

    fn step(&self, cfg: &mut Config, a: Sym, out: &mut Vec<Sym>) -> Result<()> {
        let top = cfg.stack.last().copied();
        let rule = self
            .rules
            .iter()
            .find(|r| {
                r.state == cfg.state
                    && r.input == a
                    && match r.top {
                        Top::Any => true,
                        Top::Empty => top.is_none(),
                        Top::Is(s) => top == Some(s),
                    }
            })
            .ok_or_else(|| {
                SeqError::MachineFault(format!(
                    "no rule for state `{}` on `{}`",
                    self.states[cfg.state],
                    self.input.name(a)
                ))
            })?;
        out.extend_from_slice(&rule.output);
        match rule.action {
            StackAction::Push(s) => cfg.stack.push(s),
            StackAction::Pop => {
                cfg.stack
                    .pop()
                    .ok_or_else(|| SeqError::MachineFault("pop on empty stack".into()))?;
            }
            StackAction::Noop => {}
        }
        cfg.state = rule.next;
        if cfg.stack.is_empty() {
            if let Some(s) = rule.on_empty {
                cfg.state = s;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PushdownTransducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pushdown({} states, {} rules)", self.states.len(), self.rules.len())
    }
}

#[derive(Clone, Debug, Default)]
struct Config {
    state: usize,
    stack: Vec<usize>,
    read: usize,
}

struct PushdownOracle {
    machine: PushdownTransducer,
    x: Sequence,
    cfg: Mutex<(Config, usize)>,
}

impl Oracle for PushdownOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        let mut guard = self.cfg.lock();
        let (cfg, produced) = &mut *guard;
        if *produced != buf.len() {
            *cfg = Config { state: self.machine.start, ..Config::default() };
            *produced = 0;
            buf.clear();
        }
        while buf.len() < len {
            let a = self.x.get(cfg.read)?;
            self.machine.step(cfg, a, buf)?;
            cfg.read += 1;
            *produced = buf.len();
        }
        Ok(())
    }
}

/// Steps the configuration along `x`, concatenating the outputs.
pub fn pushdown_transduce(pm: &PushdownTransducer, x: &Sequence) -> Result<Sequence> {
    if pm.input() != x.alphabet() {
        return Err(SeqError::AlphabetMismatch("pushdown machine input differs from the sequence alphabet".into()));
    }
    if pm.rules.iter().all(|r| r.output.is_empty()) {
        return Err(SeqError::ImageCollapse);
    }
    let oracle = PushdownOracle {
        machine: pm.clone(),
        x: x.clone(),
        cfg: Mutex::new((Config { state: pm.start, ..Config::default() }, 0)),
    };
    let prov = Provenance::new("pushdown_transduce").with("x", x.provenance());
    Ok(Sequence::new(pm.output().clone(), oracle, prov))
}
