mod common;

use std::collections::BTreeSet;

use apseq::generators::*;
use apseq::omega::*;
use apseq::{Alphabet, SeqError};
use common::*;

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

#[test]
fn runs() {
    let one = DetCore::new(Alphabet::binary(), vec!["s".into()], 0, vec![vec![0, 0]]).unwrap();
    assert!(run(&one, &tm(), 50).unwrap().iter().all(|&q| q == 0));

    let parity = automata().remove(2).1;
    let rho = run(parity.core(), &periodic(&bin("01")).unwrap(), 100).unwrap();
    // e e o o e e o o ...: period 4
    assert!((0..96).all(|i| rho[i] == rho[i + 4]));
    assert_eq!(&rho[..4], [0, 0, 1, 1]);

    // ρ(i) is the parity of ones in t_0..t_{i-1}
    let rho = run(parity.core(), &tm(), 4096).unwrap();
    let t = tm().symbols(4096).unwrap();
    let mut p = 0;
    for i in 0..4096 {
        assert_eq!(rho[i], p);
        p ^= t[i] as usize;
    }
}

#[test]
fn limit_sets() {
    let sink = DetCore::new(Alphabet::binary(), vec!["a".into(), "sink".into()], 0, vec![vec![1, 1], vec![1, 1]]).unwrap();
    assert_eq!(limit_set_oracle(&sink, &tm(), 100).unwrap(), set(&[1]));
    let tr = MullerAutomaton::both_letters_tracker();
    assert_eq!(limit_set_oracle(tr.core(), &tm(), 100_000).unwrap(), set(&[0, 1]));
    let e = eventually_periodic(&bin("01"), &bin("0")).unwrap();
    assert_eq!(limit_set_oracle(tr.core(), &e, 100_000).unwrap(), set(&[0]));
    assert!(limit_set_oracle(tr.core(), &tm(), 1).is_err());
}

#[test]
fn muller_decisions() {
    let tr = MullerAutomaton::both_letters_tracker();
    let v = decide_muller(&tr, &tm()).unwrap();
    assert!(v.accept);
    assert_eq!(v.limit_macrostate, limit_set_oracle(tr.core(), &tm(), 1_000_000).unwrap());
    assert_eq!(v.state_names(tr.core().states()), ["q0", "q1"]);

    let e = eventually_periodic(&bin("01"), &bin("0")).unwrap();
    let v = decide_muller(&tr, &e).unwrap();
    assert!(!v.accept);
    assert_eq!(v.limit_macrostate, set(&[0]));

    let empty = MullerAutomaton::new(tr.core().clone(), vec![]).unwrap();
    for x in [tm(), periodic(&bin("01")).unwrap(), e] {
        assert!(!decide_muller(&empty, &x).unwrap().accept);
    }
}

#[test]
fn buchi_decisions() {
    let tr = MullerAutomaton::both_letters_tracker();
    let all = BuchiAutomaton::from_core(tr.core().clone(), set(&[0, 1])).unwrap();
    let sees_one = BuchiAutomaton::from_core(tr.core().clone(), set(&[1])).unwrap();
    for x in [tm(), periodic(&bin("01")).unwrap(), constant(&Alphabet::binary(), "0").unwrap()] {
        assert!(decide_buchi_det(&all, &x).unwrap().accept);
    }
    let fib = fibonacci().with_bound(Some(apseq::BoundFunction::linear(4)));
    assert!(decide_buchi_det(&sees_one, &fib).unwrap().accept);
    assert!(!decide_buchi_det(&sees_one, &constant(&Alphabet::binary(), "0").unwrap()).unwrap().accept);

    let nd = BuchiAutomaton::new(
        Alphabet::binary(),
        vec!["p".into(), "q".into()],
        0,
        vec![(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 1)],
        set(&[1]),
    )
    .unwrap();
    assert!(!nd.is_deterministic());
    assert!(matches!(decide_buchi_det(&nd, &tm()), Err(SeqError::Unsupported(_))));
}

#[test]
fn refusals() {
    let tr = MullerAutomaton::both_letters_tracker();
    assert!(matches!(decide_muller(&tr, &kolakoski()), Err(SeqError::MissingBound(_))));
    let ternary = periodic(&apseq::Word::parse(&Alphabet::digits(3), "012").unwrap()).unwrap();
    assert!(matches!(decide_muller(&tr, &ternary), Err(SeqError::AlphabetMismatch(_))));
    let k01 = apseq::transforms::apply_morphism(
        &Morphism::new(kolakoski_alphabet(), Alphabet::binary(), vec![vec![0], vec![1]]).unwrap(),
        &kolakoski(),
    )
    .unwrap();
    match decide_muller(&tr, &k01) {
        Err(SeqError::MissingBound(msg)) => assert!(msg.contains("decidable")),
        other => panic!("{other:?}"),
    }
    let three = automata().remove(4).1;
    assert!(matches!(decide_muller(&three, &tm()), Err(SeqError::CostRefused { .. })));
}

#[test]
fn certified_matches_oracle_on_fixtures() {
    let fixtures = [
        ("tm", tm()),
        ("periodic", periodic(&bin("011")).unwrap()),
        ("eventually-periodic", eventually_periodic(&bin("0"), &bin("1")).unwrap()),
        ("gap", gap_fixture()),
    ];
    let mut decided = 0;
    for (xn, x) in &fixtures {
        for (an, a) in automata() {
            match decide_muller(&a, x) {
                Ok(v) => {
                    let oracle = limit_set_oracle(a.core(), x, 1_000_000).unwrap();
                    assert_eq!(v.limit_macrostate, oracle, "{an} on {xn}");
                    assert_eq!(v.accept, a.accepts_set(&oracle));
                    let w = v.window.end() + 1;
                    let t = (2 * w).min(apseq::core::horizon_cap());
                    let rho = run(a.core(), x, t).unwrap();
                    let later: BTreeSet<usize> = rho[if t == 2 * w { w } else { t - 1000 }..].iter().copied().collect();
                    assert!(v.limit_macrostate.is_subset(&later), "{an} on {xn}");
                    decided += 1;
                }
                Err(SeqError::CostRefused { .. }) => {}
                Err(e) => panic!("{an} on {xn}: {e}"),
            }
        }
    }
    assert!(decided >= 14, "{decided}");
}

#[test]
fn verdicts_are_deterministic() {
    let tr = MullerAutomaton::both_letters_tracker();
    let a = decide_muller(&tr, &gap_fixture()).unwrap();
    let b = decide_muller(&tr, &gap_fixture()).unwrap();
    assert_eq!(a.limit_macrostate, b.limit_macrostate);
    assert_eq!(a.window, b.window);
    assert_eq!(a.bound_trace.provenance(), b.bound_trace.provenance());
}

#[test]
fn automaton_text_round_trip() {
    for (_, a) in automata() {
        let text = a.to_string();
        let back = Automaton::parse(&text).unwrap();
        assert_eq!(back, Automaton::Muller(a));
        assert_eq!(back.to_string(), text);
    }
    let b = "states: p q\nstart: p\nalphabet: 0 1\np 0 -> p\np 0 -> q\np 1 -> p\nq 0 -> q\nq 1 -> q\naccept: q\n";
    let parsed = Automaton::parse(b).unwrap();
    assert_eq!(parsed.to_string(), b);
    let empty = "states: s\nstart: s\nalphabet: 0 1\ns 0 -> s\ns 1 -> s\naccept-sets:\n";
    assert_eq!(Automaton::parse(empty).unwrap().to_string(), empty);
    assert!(Automaton::parse("states: s\nstart: s\nalphabet: 0\ns 0 -> s\n").is_err());
    assert!(Automaton::parse("states: s\nstart: s\nalphabet: 0\ns 0 -> s\naccept-sets: {t}\n").is_err());
}
