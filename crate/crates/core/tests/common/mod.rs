#![allow(dead_code)]

use std::sync::Arc;

use apseq::generators::{scheme_generate, thue_morse, Mode, Policy, Scheme, SubstitutiveScheme, TmDefinition};
use apseq::transforms::Transducer;
use apseq::{Alphabet, Sequence, Sym, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bin(s: &str) -> Word {
    Word::binary(s).unwrap()
}

pub fn tm() -> Sequence {
    thue_morse(TmDefinition::Morphic)
}

/// GAP-generated fixture: preamble `111`, then the abba/babb scheme.
pub fn gap_fixture() -> Sequence {
    let s: Scheme = Arc::new(SubstitutiveScheme::fixture_gap());
    scheme_generate(&s, Mode::Gap { preamble: bin("111") }, Policy::Least).unwrap()
}

/// Random machine over `input` with `q` states; output words of length `1..=max_out` over binary.
pub fn random_machine(seed: u64, input: &Alphabet, q: usize, max_out: usize) -> Transducer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = Alphabet::binary();
    let states = (0..q).map(|i| format!("q{i}")).collect();
    let lambda = (0..q)
        .map(|_| {
            input
                .symbols()
                .map(|_| {
                    let len = rng.gen_range(1..=max_out);
                    (0..len).map(|_| rng.gen_range(0..2) as Sym).collect()
                })
                .collect()
        })
        .collect();
    let mu = (0..q).map(|_| input.symbols().map(|_| rng.gen_range(0..q)).collect()).collect();
    Transducer::new(input.clone(), out, states, 0, lambda, mu).unwrap()
}

/// Two states; letter `0` merges both into `q0`, letter `1` swaps them. Emits the state.
pub fn merger() -> Transducer {
    Transducer::parse(
        "states: q0 q1\nstart: q0\ninput: 0 1\noutput: 0 1\n\
         q0 0 -> 0 q0\nq0 1 -> 0 q1\nq1 0 -> 1 q0\nq1 1 -> 1 q0\n",
    )
    .unwrap()
}

/// Two-state parity machine emitting `⟨state, letter⟩`.
pub fn parity_tagger() -> Transducer {
    let m = Transducer::parse(
        "states: q0 q1\nstart: q0\ninput: 0 1\noutput: 0 1\n\
         q0 0 -> 0 q0\nq0 1 -> 0 q1\nq1 0 -> 1 q1\nq1 1 -> 1 q0\n",
    )
    .unwrap();
    apseq::transforms::decompose(&m).0
}

/// Largest run of one letter in `s`.
pub fn max_run(s: &[Sym]) -> usize {
    let mut best = 0;
    let mut cur = 0;
    for i in 0..s.len() {
        cur = if i > 0 && s[i] == s[i - 1] { cur + 1 } else { 1 };
        best = best.max(cur);
    }
    best
}

/// `bound(n)` with overflow read as unbounded.
pub fn bound_at(x: &Sequence, n: usize) -> u64 {
    x.certified_bound().unwrap().eval(n as u64).unwrap_or(u64::MAX)
}

fn muller(text: &str) -> apseq::omega::MullerAutomaton {
    match apseq::omega::Automaton::parse(text).unwrap() {
        apseq::omega::Automaton::Muller(m) => m,
        _ => unreachable!(),
    }
}

/// Binary Muller automata with at most three states.
pub fn automata() -> Vec<(&'static str, apseq::omega::MullerAutomaton)> {
    vec![
        ("both-letters", apseq::omega::MullerAutomaton::both_letters_tracker()),
        ("single", muller("states: s\nstart: s\nalphabet: 0 1\ns 0 -> s\ns 1 -> s\naccept-sets: {s}\n")),
        (
            "parity",
            muller("states: e o\nstart: e\nalphabet: 0 1\ne 0 -> e\ne 1 -> o\no 0 -> o\no 1 -> e\naccept-sets: {e,o}\n"),
        ),
        (
            "seen-00",
            muller(
                "states: a b z\nstart: a\nalphabet: 0 1\na 0 -> b\na 1 -> a\nb 0 -> z\nb 1 -> a\nz 0 -> z\nz 1 -> z\n\
                 accept-sets: {z} {a,b}\n",
            ),
        ),
        (
            "ones-mod-3",
            muller(
                "states: r0 r1 r2\nstart: r0\nalphabet: 0 1\nr0 0 -> r0\nr0 1 -> r1\nr1 0 -> r1\nr1 1 -> r2\n\
                 r2 0 -> r2\nr2 1 -> r0\naccept-sets: {r0,r1,r2} {r0}\n",
            ),
        ),
    ]
}
