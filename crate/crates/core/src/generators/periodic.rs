use crate::core::{BoundFunction, IndexOracle, PeriodInfo, Provenance, Sequence, Word};
use crate::error::{Result, SeqError};

/// `period^ω`. Bound `n + |period| - 1`.
pub fn periodic(period: &Word) -> Result<Sequence> {
    eventually_periodic(&Word::empty(period.alphabet().clone()), period)
}

/// `pre · period^ω`. Bound `|pre| + n + |period| - 1`.
pub fn eventually_periodic(pre: &Word, period: &Word) -> Result<Sequence> {
    if period.is_empty() {
        return Err(SeqError::InvalidArgument("period must be nonempty".into()));
    }
    if pre.alphabet() != period.alphabet() {
        return Err(SeqError::AlphabetMismatch("preperiod and period alphabets differ".into()));
    }
    let k = pre.len();
    let p = period.len();
    let a = pre.letters().to_vec();
    let b = period.letters().to_vec();
    let oracle = IndexOracle(move |i: usize| Ok(if i < k { a[i] } else { b[(i - k) % p] }));
    let (prov, form) = if k == 0 {
        (Provenance::new("periodic").with("period", period), format!("n+{}", p - 1))
    } else {
        (
            Provenance::new("eventually_periodic").with("pre", pre).with("period", period),
            format!("n+{}", k + p - 1),
        )
    };
    let extra = (k + p - 1) as u64;
    let bound = BoundFunction::new(form, move |n| n.checked_add(extra));
    Ok(Sequence::new(period.alphabet().clone(), oracle, prov)
        .with_bound(Some(bound))
        .with_period(Some(PeriodInfo { preperiod: k, period: p })))
}

/// The constant sequence on letter `a` of `alphabet`.
pub fn constant(alphabet: &crate::core::Alphabet, a: &str) -> Result<Sequence> {
    periodic(&Word::parse(alphabet, a)?)
}

/// The counter `C_m = 0 1 ... (m-1) 0 1 ...` over digit names.
pub fn counter(m: usize) -> Result<Sequence> {
    if m == 0 {
        return Err(SeqError::InvalidArgument("counter modulus must be positive".into()));
    }
    let alpha = crate::core::Alphabet::digits(m);
    let w = Word::new(alpha, (0..m as u32).collect())?;
    Ok(periodic(&w)?.with_provenance(Provenance::new("counter").with("m", m)))
}
