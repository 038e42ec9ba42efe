use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use parking_lot::Mutex;

use crate::core::{Alphabet, Oracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};

/// Default number of enclosure refinements per symbol.
pub const REFINEMENT_BUDGET: u32 = 256;

type EnclosureFn = dyn Fn(u32) -> (BigRational, BigRational) + Send + Sync;

/// A real parameter: exact rational, continued fraction, or an arbitrary refinable enclosure.
#[derive(Clone)]
pub enum Real {
    Rational(BigRational),
    ContinuedFraction(ContinuedFraction),
    /// `level -> [lo, hi]` with widths shrinking as the level grows.
    Enclosure(Arc<EnclosureFn>),
}

/// `[a0; a1, a2, ...]` with a finite head followed by a repeating period.
#[derive(Clone)]
pub struct ContinuedFraction {
    head: Vec<u64>,
    period: Vec<u64>,
    label: Option<String>,
    convergents: Arc<Mutex<Vec<(BigInt, BigInt)>>>,
}

impl ContinuedFraction {
    pub fn new(head: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if head.is_empty() {
            return Err(SeqError::InvalidArgument("continued fraction needs a0".into()));
        }
        if period.iter().chain(head.iter().skip(1)).any(|&t| t == 0) {
            return Err(SeqError::InvalidArgument("partial quotients after a0 must be positive".into()));
        }
        Ok(ContinuedFraction { head, period, label: None, convergents: Arc::new(Mutex::new(Vec::new())) })
    }

    fn labelled(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    fn term(&self, i: usize) -> Option<u64> {
        if i < self.head.len() {
            Some(self.head[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.head.len()) % self.period.len()])
        }
    }

    /// `p_i / q_i`, or the last one for a finite expansion.
    pub fn convergent(&self, i: usize) -> BigRational {
        let mut cache = self.convergents.lock();
        while cache.len() <= i {
            let k = cache.len();
            let Some(a) = self.term(k) else { break };
            let a = BigInt::from(a);
            let (p, q) = match k {
                0 => (a.clone(), BigInt::one()),
                1 => {
                    let (p0, q0) = &cache[0];
                    (&a * p0 + BigInt::one(), &a * q0)
                }
                _ => {
                    let (p1, q1) = &cache[k - 1];
                    let (p2, q2) = &cache[k - 2];
                    (&a * p1 + p2, &a * q1 + q2)
                }
            };
            cache.push((p, q));
        }
        let (p, q) = &cache[i.min(cache.len() - 1)];
        BigRational::new(p.clone(), q.clone())
    }
}

impl Real {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(SeqError::InvalidArgument("zero denominator".into()));
        }
        Ok(Real::Rational(BigRational::new(p.into(), q.into())))
    }

    /// `1/φ² = [0; 2, 1, 1, ...]`.
    pub fn inv_phi2() -> Self {
        Real::ContinuedFraction(ContinuedFraction::new(vec![0, 2], vec![1]).unwrap().labelled("inv_phi2"))
    }

    /// `1/φ = [0; 1, 1, ...]`.
    pub fn inv_phi() -> Self {
        Real::ContinuedFraction(ContinuedFraction::new(vec![0], vec![1]).unwrap().labelled("inv_phi"))
    }

    /// `√2 - 1 = [0; 2, 2, ...]`.
    pub fn sqrt2_minus_1() -> Self {
        Real::ContinuedFraction(ContinuedFraction::new(vec![0], vec![2]).unwrap().labelled("sqrt2m1"))
    }

    /// Exact value when it is rational.
    pub fn exact(&self) -> Option<BigRational> {
        match self {
            Real::Rational(r) => Some(r.clone()),
            Real::ContinuedFraction(cf) if cf.is_finite() => Some(cf.convergent(cf.head.len() - 1)),
            _ => None,
        }
    }

    /// An interval containing the value; narrower for larger `level`.
    pub fn enclosure(&self, level: u32) -> (BigRational, BigRational) {
        if let Some(r) = self.exact() {
            return (r.clone(), r);
        }
        match self {
            Real::ContinuedFraction(cf) => {
                let a = cf.convergent(level as usize);
                let b = cf.convergent(level as usize + 1);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            Real::Enclosure(f) => f(level),
            Real::Rational(_) => unreachable!(),
        }
    }

    pub fn approx(&self) -> f64 {
        let (lo, hi) = self.enclosure(40);
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Real::ContinuedFraction(cf) => match &cf.label {
                Some(l) => f.write_str(l),
                None => {
                    let h: Vec<String> = cf.head.iter().map(u64::to_string).collect();
                    let p: Vec<String> = cf.period.iter().map(u64::to_string).collect();
                    write!(f, "cf:{};{}", h.join(","), p.join(","))
                }
            },
            Real::Enclosure(_) => f.write_str("<enclosure>"),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({self})")
    }
}

impl FromStr for Real {
    type Err = SeqError;

    /// `p/q`, an integer, `inv_phi2`, `inv_phi`, `sqrt2m1`, or `cf:a0,a1,...;p1,p2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || SeqError::InvalidArgument(format!("cannot read real parameter `{s}`"));
        match s {
            "inv_phi2" => return Ok(Real::inv_phi2()),
            "inv_phi" => return Ok(Real::inv_phi()),
            "sqrt2m1" => return Ok(Real::sqrt2_minus_1()),
            _ => {}
        }
        if let Some(body) = s.strip_prefix("cf:") {
            let (h, p) = body.split_once(';').unwrap_or((body, ""));
            let parse = |t: &str| -> Result<Vec<u64>> {
                t.split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
                    .collect()
            };
            return Ok(Real::ContinuedFraction(ContinuedFraction::new(parse(h)?, parse(p)?)?));
        }
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Real::Rational(BigRational::new(p, q)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    /// `⌊α(n+1)+ρ⌋ - ⌊αn+ρ⌋`.
    #[default]
    Lower,
    /// `⌈α(n+1)+ρ⌉ - ⌈αn+ρ⌉`.
    Upper,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Lower => "lower",
            Variant::Upper => "upper",
        })
    }
}

impl FromStr for Variant {
    type Err = SeqError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Variant::Lower),
            "upper" => Ok(Variant::Upper),
            _ => Err(SeqError::InvalidArgument(format!("unknown variant `{s}`"))),
        }
    }
}

struct MechanicalOracle {
    alpha: Real,
    rho: Real,
    variant: Variant,
    budget: u32,
    level: Mutex<u32>,
}

impl MechanicalOracle {
    fn round(&self, v: &BigRational) -> BigInt {
        match self.variant {
            Variant::Lower => v.floor().to_integer(),
            Variant::Upper => v.ceil().to_integer(),
        }
    }

    /// `⌊αn+ρ⌋` (or the ceiling), refining until both ends of the enclosure agree.
    fn f(&self, n: usize) -> Result<BigInt> {
        let nn = BigRational::from_integer(BigInt::from(n));
        let mut level = self.level.lock();
        let start = *level;
        loop {
            let (a_lo, a_hi) = self.alpha.enclosure(*level);
            let (r_lo, r_hi) = self.rho.enclosure(*level);
            let lo = self.round(&(&a_lo * &nn + r_lo));
            let hi = self.round(&(&a_hi * &nn + r_hi));
            if lo == hi {
                return Ok(lo);
            }
            if *level - start >= self.budget {
                return Err(SeqError::PrecisionExhausted { index: n });
            }
            *level += 1;
        }
    }
}

impl Oracle for MechanicalOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        let mut n = buf.len();
        let mut prev = self.f(n)?;
        while n < len {
            let next = self.f(n + 1)?;
            let d = (&next - &prev).to_i64().unwrap_or(-1);
            if !(0..=1).contains(&d) {
                return Err(SeqError::InvalidArgument("slope outside [0, 1]".into()));
            }
            buf.push(d as Sym);
            prev = next;
            n += 1;
        }
        Ok(())
    }
}

/// Mechanical sequence `s_{α,ρ}` over `{0, 1}`.
pub fn mechanical(alpha: Real, rho: Real, variant: Variant) -> Result<Sequence> {
    mechanical_with_budget(alpha, rho, variant, REFINEMENT_BUDGET)
}

pub fn mechanical_with_budget(alpha: Real, rho: Real, variant: Variant, budget: u32) -> Result<Sequence> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let (a_lo, a_hi) = alpha.enclosure(30);
    let (r_lo, r_hi) = rho.enclosure(30);
    if a_hi < zero || a_lo > one {
        return Err(SeqError::InvalidArgument("need 0 <= alpha <= 1".into()));
    }
    if r_hi < zero || r_lo >= one {
        return Err(SeqError::InvalidArgument("need 0 <= rho < 1".into()));
    }
    if let Some(r) = rho.exact() {
        if r >= one || r < zero {
            return Err(SeqError::InvalidArgument("need 0 <= rho < 1".into()));
        }
    }
    if let Some(a) = alpha.exact() {
        if a > one || a < zero {
            return Err(SeqError::InvalidArgument("need 0 <= alpha <= 1".into()));
        }
    }
    let prov = Provenance::new("mechanical")
        .with("alpha", &alpha)
        .with("rho", &rho)
        .with("variant", variant);
    let oracle = MechanicalOracle { alpha, rho, variant, budget, level: Mutex::new(0) };
    Ok(Sequence::new(Alphabet::binary(), oracle, prov))
}
