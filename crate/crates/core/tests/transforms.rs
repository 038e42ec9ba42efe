mod common;

use apseq::analysis::empirical_regulator;
use apseq::core::{agreement_length, Agreement};
use apseq::generators::*;
use apseq::transforms::*;
use apseq::{Alphabet, BoundFunction, SeqError, Sequence, Sym, Word};
use common::*;

#[test]
fn morphism_application() {
    let a = Alphabet::binary();
    let x = tm();
    let img = apply_morphism(&Morphism::endo(&a, &["01", "10"]).unwrap(), &x).unwrap();
    assert_eq!(img.symbols(10_000).unwrap(), x.symbols(10_000).unwrap());
    let id = Morphism::endo(&a, &["0", "1"]).unwrap();
    assert_eq!(apply_morphism(&id, &fibonacci()).unwrap().render(500).unwrap(), fibonacci().render(500).unwrap());
    let one = Alphabet::new(["a"]).unwrap();
    let proj = Morphism::new(a.clone(), one, vec![vec![0], vec![0]]).unwrap();
    assert_eq!(apply_morphism(&proj, &x).unwrap().render(6).unwrap(), "aaaaaa");
    assert!(apply_morphism(&id, &x).unwrap().certified_bound().is_none());
}

#[test]
fn erasing_collapse_is_reported() {
    let a = Alphabet::binary();
    let kill_one = Morphism::erasing(a.clone(), a.clone(), vec![vec![0], vec![]]).unwrap();
    let ones = periodic(&bin("1")).unwrap();
    assert!(matches!(apply_morphism(&kill_one, &ones), Err(SeqError::ImageCollapse)));
    let y = apply_morphism(&kill_one, &tm()).unwrap();
    assert!(y.symbols(100).unwrap().iter().all(|&s| s == 0));
}

#[test]
fn bound_formula_examples() {
    let g = BoundFunction::new("n+1", |n| n.checked_add(1));
    let f2 = bound_formulas(&g, 2).unwrap();
    for n in 1..20 {
        assert_eq!(f2.image_bound.eval(n), Some(n + 6));
        assert_eq!(f2.reversible_bound.eval(n), Some(n + 3));
    }
    assert_eq!(bound_formulas(&g, 3).unwrap().prefix_bound, Some(9));
    let lin = bound_formulas(&BoundFunction::linear(2), 1).unwrap().linear_bound.unwrap();
    for n in 1..20 {
        assert_eq!(lin.eval(n), Some(4 * n + 3));
    }
    assert!(bound_formulas(&g, 0).is_err());
    assert!(bound_formulas(&BoundFunction::new("n/2", |n| Some(n / 2)), 1).is_err());
}

#[test]
fn identity_transducer() {
    let x = fibonacci();
    let m = Transducer::identity(x.alphabet());
    let y = transduce(&m, &x).unwrap();
    assert_eq!(y.render(1000).unwrap(), x.render(1000).unwrap());
    let p = periodic(&bin("01")).unwrap();
    let yb = transduce(&m, &p).unwrap();
    let g = p.certified_bound().unwrap();
    for n in 1..10 {
        assert_eq!(yb.certified_bound().unwrap().eval(n), g.eval(g.eval(n).unwrap()));
    }
}

#[test]
fn state_tagger_alphabet() {
    let y = transduce(&parity_tagger(), &tm()).unwrap();
    assert_eq!(y.alphabet().len(), 4);
    let seen: std::collections::BTreeSet<Sym> = y.symbols(1000).unwrap().into_iter().collect();
    assert!(seen.len() <= 4);
}

#[test]
fn cyclic_counter_matches_product() {
    let x = fibonacci();
    let a = transduce(&Transducer::cyclic_counter(x.alphabet(), 3).unwrap(), &x).unwrap();
    let b = cyclic(&x, 3).unwrap();
    assert_eq!(a.symbols(10_000).unwrap(), b.symbols(10_000).unwrap());
    assert_eq!(a.alphabet(), b.alphabet());
}

#[test]
fn decompose_structure() {
    let m = Transducer::identity(&Alphabet::binary());
    let (tagger, phi) = decompose(&m);
    assert!(tagger.is_uniform());
    assert!(phi.is_coding());
    let three = Transducer::parse(
        "states: s t\nstart: s\ninput: 0 1\noutput: 0 1\ns 0 -> 010 t\ns 1 -> 111 s\nt 0 -> 000 s\nt 1 -> 101 t\n",
    )
    .unwrap();
    assert_eq!(decompose(&three).1.uniform_length(), Some(3));
}

#[test]
fn decompose_composes_back() {
    let x = random_sequence(5, 2).unwrap();
    let input = x.symbols(10_000).unwrap();
    for seed in 0..20 {
        let m = random_machine(seed, x.alphabet(), 2 + (seed as usize % 3), 3);
        let (out, _) = m.run_word(&input);
        let (tagger, phi) = decompose(&m);
        let via = apply_morphism(&phi, &transduce(&tagger, &x).unwrap()).unwrap();
        assert_eq!(via.symbols(out.len()).unwrap(), out, "seed {seed}");
        assert_eq!(transduce(&m, &x).unwrap().symbols(out.len()).unwrap(), out);
    }
    for seed in 0..5 {
        let m = random_machine(100 + seed, x.alphabet(), 3, 1);
        let (out, _) = m.run_word(&input);
        assert_eq!(transduce(&m, &x).unwrap().symbols(10_000).unwrap(), out);
    }
}

#[test]
fn run_states_stream() {
    let m = Transducer::parse(
        "states: e o\nstart: e\ninput: 0 1\noutput: 0 1\ne 0 -> 0 e\ne 1 -> 0 o\no 0 -> 1 o\no 1 -> 1 e\n",
    )
    .unwrap();
    let p = run_states(&m, &tm()).unwrap();
    // state after reading t_0..t_{i-1} is the parity of their ones
    let s = tm().symbols(2001).unwrap();
    let mut parity = 0;
    let states = p.symbols(2000).unwrap();
    for i in 0..2000 {
        assert_eq!(states[i], parity);
        parity ^= s[i];
    }
}

#[test]
fn reversibility() {
    let c = Transducer::cyclic_counter(&Alphabet::binary(), 4).unwrap();
    assert!(is_reversible(&c));
    let m = merger();
    assert!(!is_reversible(&m));
    assert!(is_almost_reversible(&m, &[1]).unwrap());
    assert!(!is_almost_reversible(&m, &[0, 1]).unwrap());
    assert!(is_almost_reversible(&m, &[7]).is_err());
}

#[test]
fn transducer_text_round_trip() {
    for m in [merger(), random_machine(3, &Alphabet::binary(), 3, 3), Transducer::cyclic_counter(&Alphabet::digits(3), 2).unwrap()] {
        let text = m.to_string();
        let back = Transducer::parse(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_string(), text);
    }
    assert!(matches!(Transducer::parse("states: a\nstart: b\n"), Err(SeqError::Parse { .. })));
    assert!(matches!(Transducer::parse("states: a\nstart: a\na 0 -> 0\n"), Err(SeqError::Parse { .. })));
}

#[test]
fn products() {
    let x = fibonacci();
    let c = constant(&Alphabet::new(["c"]).unwrap(), "c").unwrap();
    let p = product(&x, &c);
    let back: Vec<Sym> = p.symbols(10_000).unwrap();
    assert_eq!(back, x.symbols(10_000).unwrap());

    let cp = cyclic(&periodic(&bin("01")).unwrap(), 3).unwrap();
    let s = cp.symbols(100).unwrap();
    let least = (1..=50).find(|&t| (0..100 - t).all(|i| s[i] == s[i + t])).unwrap();
    assert_eq!(least, 6);
    assert_eq!(cp.period_info().unwrap().period, 6);
    assert!(cyclic(&tm(), 3).unwrap().certified_bound().is_some());
}

#[test]
fn cyclic_fibonacci_is_recurrent() {
    let y = cyclic(&fibonacci(), 3).unwrap();
    for n in 1..=6 {
        let r = empirical_regulator(&y, n, 100_000).unwrap();
        assert!(r.finite.is_empty(), "n = {n}");
        assert!(r.value < 1000, "n = {n}: {}", r.value);
    }
}

#[test]
fn splits() {
    let a = Alphabet::digits(5);
    let word = Word::parse(&a, "3200122403100110").unwrap();
    let x = eventually_periodic(&word, &Word::parse(&a, "0").unwrap()).unwrap();
    let sp = split(&x, 0, 16).unwrap();
    assert_eq!(sp.first.to_string(), "320");
    let blocks: Vec<String> =
        sp.blocks.symbols(4).unwrap().iter().map(|&b| sp.blocks.alphabet().name(b).to_string()).collect();
    assert_eq!(blocks, ["0", "12240", "310", "0"]);

    let sp = split(&periodic(&bin("01")).unwrap(), 1, 100).unwrap();
    assert_eq!(sp.blocks.alphabet().names(), ["01"]);

    let sp = split(&tm(), 0, 10_000).unwrap();
    assert!(sp.blocks.alphabet().names().iter().all(|b| b.len() <= 3));
    assert!(matches!(sp.blocks.symbols(100_000), Err(SeqError::HorizonExhausted { .. })));
    assert!(split(&periodic(&bin("1")).unwrap(), 0, 100).is_err());
}

#[test]
fn split_round_trip() {
    for x in [tm(), fibonacci(), kolakoski()] {
        let sp = split(&x, 0, 20_000).unwrap();
        let y = unsplit(&sp).unwrap();
        let k = sp.first.len();
        let n = 15_000;
        assert_eq!(y.symbols(n).unwrap(), x.range(k, k + n).unwrap());
    }
}

#[test]
fn pushdown_fixtures() {
    let pm = PushdownTransducer::counterexample_machine();
    let y = pushdown_transduce(&pm, &periodic(&bin("01")).unwrap()).unwrap();
    let s = y.symbols(200).unwrap();
    assert_eq!(y.render(7).unwrap(), "aababab");
    assert!((1..200 - 2).all(|i| s[i] == s[i + 2]));

    let z = pushdown_transduce(&pm, &alternating_prefix_example()).unwrap();
    assert!(max_run(&z.symbols(100_000).unwrap()) >= 8);

    for seed in 0..3 {
        let m = random_machine(seed, &Alphabet::binary(), 3, 2);
        let proj = PushdownTransducer::from_transducer(&m);
        let x = random_sequence(seed, 2).unwrap();
        assert_eq!(
            pushdown_transduce(&proj, &x).unwrap().symbols(10_000).unwrap(),
            transduce(&m, &x).unwrap().symbols(10_000).unwrap()
        );
    }
}

#[test]
fn pushdown_fault_on_missing_rule() {
    let a = Alphabet::binary();
    let rules = vec![PushdownRule {
        state: 0,
        input: 0,
        top: Top::Any,
        output: vec![0],
        next: 0,
        action: StackAction::Pop,
        on_empty: None,
    }];
    let pm = PushdownTransducer::new(vec!["s".into()], a.clone(), a, vec!["z".into()], 0, rules).unwrap();
    let y = pushdown_transduce(&pm, &periodic(&bin("0")).unwrap()).unwrap();
    assert!(matches!(y.symbols(3), Err(SeqError::MachineFault(_))));
}

fn matrix() -> Vec<(String, Sequence, Transducer)> {
    let mut v = Vec::new();
    let b = Alphabet::binary();
    for m in 2..=5 {
        v.push((format!("tm x cyclic{m}"), tm(), Transducer::cyclic_counter(&b, m).unwrap()));
    }
    v.push(("tm x merger".into(), tm(), merger()));
    v.push(("tm x tagger".into(), tm(), parity_tagger()));
    for seed in 0..4 {
        v.push((format!("gap x random{seed}"), gap_fixture(), random_machine(seed, &b, 2 + seed as usize % 2, 1)));
    }
    v.push(("periodic x random".into(), periodic(&bin("011")).unwrap(), random_machine(9, &b, 3, 1)));
    v
}

#[test]
fn image_bound_soundness_matrix() {
    for (name, x, m) in matrix() {
        let y = transduce(&m, &x).unwrap();
        let g = x.certified_bound().unwrap();
        let rev = reversible_bound(g, m.state_count());
        for n in 1..=8 {
            let r = empirical_regulator(&y, n, 1_000_000).unwrap().value as u64;
            assert!(r <= bound_at(&y, n), "{name} n={n}: {r}");
            if is_reversible(&m) {
                assert!(r <= rev.eval(n as u64).unwrap_or(u64::MAX), "{name} reversible n={n}: {r}");
            }
        }
    }
}

#[test]
fn prefix_bound_dominates_stabilization() {
    for (name, x, m) in matrix() {
        let y = transduce(&m, &x).unwrap();
        let pb = prefix_bound(x.certified_bound().unwrap(), m.state_count()).unwrap_or(u64::MAX);
        let h = 1_000_000;
        let mut stab = 0usize;
        for n in 1..=4 {
            let rep = empirical_regulator(&y, n, h).unwrap();
            let s = y.symbols(h).unwrap();
            for f in &rep.finite {
                let last = (0..=h - n).rev().find(|&i| &s[i..i + n] == f.letters()).unwrap();
                stab = stab.max(last + n - 1);
            }
        }
        assert!(stab as u64 <= pb, "{name}: {stab} > {pb}");
    }
}

#[test]
fn agreement_of_transducer_and_product() {
    let x = tm();
    let y = product(&x, &counter(4).unwrap());
    let z = transduce(&Transducer::cyclic_counter(x.alphabet(), 4).unwrap(), &x).unwrap();
    assert_eq!(agreement_length(&y, &z, 50_000).unwrap(), Agreement::AtLeast(50_000));
}
