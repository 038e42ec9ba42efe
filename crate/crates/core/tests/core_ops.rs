use apseq::core::{agreement_length, factors, occurrences, prefix, segment, shift, word_factors, Agreement};
use apseq::generators::{fibonacci, periodic, thue_morse, TmDefinition};
use apseq::{Alphabet, Segment, SeqError, Word};

fn tm() -> apseq::Sequence {
    thue_morse(TmDefinition::Morphic)
}

fn w(s: &str) -> Word {
    Word::binary(s).unwrap()
}

#[test]
fn prefix_examples() {
    assert_eq!(prefix(&tm(), 16).unwrap().to_string(), "0110100110010110");
    assert!(prefix(&tm(), 0).unwrap().is_empty());
    assert_eq!(prefix(&periodic(&w("01")).unwrap(), 5).unwrap().to_string(), "01010");
}

#[test]
fn segment_examples() {
    assert_eq!(segment(&tm(), Segment::new(0, 3).unwrap()).unwrap().to_string(), "0110");
    let x = tm();
    for k in [0, 5, 77] {
        let s = segment(&x, Segment::new(k, k).unwrap()).unwrap();
        assert_eq!(s.letters(), &[x.get(k).unwrap()]);
    }
    assert_eq!(
        segment(&fibonacci(), Segment::new(0, 20).unwrap()).unwrap().to_string(),
        "010010100100101001010"
    );
    assert!(Segment::new(3, 2).is_err());
}

#[test]
fn factor_sets() {
    let f: Vec<String> = word_factors(&w("0110"), 2).iter().map(Word::to_string).collect();
    assert_eq!(f, ["01", "10", "11"]);
    assert!(word_factors(&w("01"), 3).is_empty());
    assert_eq!(factors(&fibonacci(), 200, 4).unwrap().len(), 5);
    assert_eq!(factors(&tm(), 1000, 3).unwrap().len(), 6);
}

#[test]
fn occurrence_examples() {
    // brute-force scan: 0110 also starts at 6
    assert_eq!(occurrences(&w("0110100110010110"), &w("0110")).unwrap(), [0, 6, 12]);
    let a = Alphabet::new(["a"]).unwrap();
    let aaaa = Word::parse(&a, "aaaa").unwrap();
    let aa = Word::parse(&a, "aa").unwrap();
    assert_eq!(occurrences(&aaaa, &aa).unwrap(), [0, 1, 2]);
    let two = Word::parse(&Alphabet::digits(3), "2").unwrap();
    assert!(matches!(occurrences(&w("01"), &two), Err(SeqError::AlphabetMismatch(_))));
    assert!(occurrences(&w("01"), &w("011")).unwrap().is_empty());
}

#[test]
fn agreement_examples() {
    let x = tm();
    assert_eq!(agreement_length(&x, &x, 100).unwrap(), Agreement::AtLeast(100));
    assert_eq!(agreement_length(&x, &periodic(&w("01")).unwrap(), 100).unwrap(), Agreement::At(2));
    // fib = 01001..., TM = 01101...: first difference at index 2.
    assert_eq!(agreement_length(&fibonacci(), &x, 100).unwrap(), Agreement::At(2));
    let other = periodic(&Word::parse(&Alphabet::digits(3), "2").unwrap()).unwrap();
    assert!(agreement_length(&x, &other, 10).is_err());
}

#[test]
fn shift_examples() {
    let x = tm();
    assert_eq!(shift(&x, 0).render(50).unwrap(), x.render(50).unwrap());
    assert_eq!(shift(&periodic(&w("01")).unwrap(), 1).render(4).unwrap(), "1010");
    assert_eq!(shift(&x, 1).render(5).unwrap(), "11010");
    assert!(shift(&x, 3).certified_bound().is_none());
}

#[test]
fn cache_matches_fresh_oracle() {
    for x in [tm(), fibonacci(), thue_morse(TmDefinition::Recurrence)] {
        let cached = x.symbols(10_000).unwrap();
        assert_eq!(x.uncached(10_000).unwrap(), cached);
        assert_eq!(segment(&x, Segment::new(0, 9_999).unwrap()).unwrap(), prefix(&x, 10_000).unwrap());
    }
}

#[test]
fn concurrent_readers_agree() {
    let x = fibonacci();
    let handles: Vec<_> = (0..4)
        .map(|k| {
            let x = x.clone();
            std::thread::spawn(move || x.symbols(5_000 * (k + 1)).unwrap())
        })
        .collect();
    let outs: Vec<Vec<u32>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for o in &outs {
        assert_eq!(&outs[3][..o.len()], &o[..]);
    }
}

#[test]
fn horizon_cap_is_enforced() {
    let x = tm();
    let too_far = apseq::core::horizon_cap() + 1;
    assert!(matches!(x.get(too_far), Err(SeqError::HorizonExhausted { .. })));
}

#[test]
fn alphabet_and_word_basics() {
    assert!(Alphabet::new(Vec::<String>::new()).is_err());
    assert!(Alphabet::new(["a", "a"]).is_err());
    let a = Alphabet::new(["a", "b", "c"]).unwrap();
    let u = Word::parse(&a, "abca").unwrap();
    let total: usize = a.symbols().map(|s| u.count(s)).sum();
    assert_eq!(total, u.len());
    assert_eq!(u.count(0), 2);
    let p = a.product(&Alphabet::binary());
    assert_eq!(p.name(a.pair(&Alphabet::binary(), 2, 1)), "c:1");
    assert_eq!(p.render(&[0, 5]), "a:0,c:1");
    assert_eq!(p.parse("a:0,c:1").unwrap(), [0, 5]);
    assert_eq!(format!("{:?}", Word::empty(a)), "Λ");
}
