use crate::core::{find_all, Sequence, Word};
use crate::error::{Result, SeqError};

/// Fraction of `i < t` with `x(i) != y(i)`.
pub fn besicovitch_density(x: &Sequence, y: &Sequence, t: usize) -> Result<f64> {
    if x.alphabet() != y.alphabet() {
        return Err(SeqError::AlphabetMismatch("sequences are over different alphabets".into()));
    }
    if t == 0 {
        return Err(SeqError::InvalidArgument("T must be at least 1".into()));
    }
    let a = x.symbols(t)?;
    let b = y.symbols(t)?;
    Ok(a.iter().zip(&b).filter(|(p, q)| p != q).count() as f64 / t as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmReport {
    /// `densities[s-1]` is the mismatch fraction between `x` and its shift by `s`.
    pub densities: Vec<f64>,
    pub min: f64,
    pub argmin: usize,
    pub shifts: usize,
    pub t: usize,
}

/// `min_{1 <= s <= N}` of the mismatch fraction between `x` and `L^s x` over `[0, T)`.
pub fn am_estimate(x: &Sequence, shifts: usize, t: usize) -> Result<AmReport> {
    if shifts == 0 || t == 0 {
        return Err(SeqError::InvalidArgument("N and T must be at least 1".into()));
    }
    let s = x.symbols(t + shifts)?;
    let mut densities = Vec::with_capacity(shifts);
    for d in 1..=shifts {
        let diff = (0..t).filter(|&i| s[i] != s[i + d]).count();
        densities.push(diff as f64 / t as f64);
    }
    let (argmin, min) = densities
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i + 1, v) } else { acc });
    Ok(AmReport { densities, min, argmin, shifts, t })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyReport {
    pub u: Word,
    pub i: usize,
    pub j: usize,
    pub count: usize,
    pub density: f64,
}

/// Occurrences of `u` starting in `[i, j]`, divided by `j - i + 1`.
pub fn frequency(x: &Sequence, u: &Word, i: usize, j: usize) -> Result<FrequencyReport> {
    if u.is_empty() {
        return Err(SeqError::InvalidArgument("block must be nonempty".into()));
    }
    if j < i {
        return Err(SeqError::InvalidArgument(format!("empty interval [{i}, {j}]")));
    }
    if u.alphabet() != x.alphabet() {
        return Err(SeqError::AlphabetMismatch("block is over a different alphabet".into()));
    }
    let s = x.range(i, j + u.len())?;
    let count = find_all(&s, u.letters()).len();
    Ok(FrequencyReport { u: u.clone(), i, j, count, density: count as f64 / (j - i + 1) as f64 })
}

/// `(t, T_u(x, 0, t - 1))` for `t = 1, 2, 4, ...` and finally `t = T`.
pub fn cesaro_estimate(x: &Sequence, u: &Word, t: usize) -> Result<Vec<(usize, f64)>> {
    if u.is_empty() || t == 0 {
        return Err(SeqError::InvalidArgument("need a nonempty block and T >= 1".into()));
    }
    if u.alphabet() != x.alphabet() {
        return Err(SeqError::AlphabetMismatch("block is over a different alphabet".into()));
    }
    let s = x.symbols(t + u.len() - 1)?;
    let starts = find_all(&s, u.letters());
    let mut out = Vec::new();
    let mut grid = 1usize;
    let mut k = 0;
    loop {
        let point = grid.min(t);
        while k < starts.len() && starts[k] < point {
            k += 1;
        }
        out.push((point, k as f64 / point as f64));
        if point == t {
            break;
        }
        grid = grid.saturating_mul(2);
    }
    Ok(out)
}
