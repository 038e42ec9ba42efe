use std::fmt;
use std::str::FromStr;

use super::morphic::FixedPointOracle;
use crate::core::{Alphabet, BoundFunction, IndexOracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TmDefinition {
    /// `t_0 = 0, t_{2n} = t_n, t_{2n+1} = 1 - t_n`.
    Recurrence,
    /// Parity of the binary digit sum.
    DigitSum,
    /// Fixed point of `0 -> 01, 1 -> 10`.
    #[default]
    Morphic,
}

impl fmt::Display for TmDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TmDefinition::Recurrence => "recurrence",
            TmDefinition::DigitSum => "digit_sum",
            TmDefinition::Morphic => "morphic",
        })
    }
}

impl FromStr for TmDefinition {
    type Err = SeqError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recurrence" => Ok(TmDefinition::Recurrence),
            "digit_sum" => Ok(TmDefinition::DigitSum),
            "morphic" => Ok(TmDefinition::Morphic),
            _ => Err(SeqError::InvalidArgument(format!("unknown Thue–Morse definition `{s}`"))),
        }
    }
}

/// `2^(ceil(log2 n) + 4)`.
///
/// Every factor of length at most `2^k` lies in two adjacent aligned blocks of length `2^k`, and
/// all four block pairs occur inside each aligned block of length `2^(k+3)`. A window of length
/// `2^(k+4)` always contains such a block.
pub fn thue_morse_bound() -> BoundFunction {
    BoundFunction::new("2^(ceil(log2 n)+4)", |n| {
        let k = n.max(1).next_power_of_two().trailing_zeros();
        1u64.checked_shl(k + 4)
    })
}

pub fn thue_morse(definition: TmDefinition) -> Sequence {
    let alpha = Alphabet::binary();
    let prov = Provenance::new("thue_morse").with("definition", definition);
    let seq = match definition {
        TmDefinition::Recurrence => {
            let oracle = |buf: &mut Vec<Sym>, len: usize| -> Result<()> {
                if buf.is_empty() && len > 0 {
                    buf.push(0);
                }
                while buf.len() < len {
                    let n = buf.len();
                    let t = buf[n / 2];
                    buf.push(if n.is_multiple_of(2) { t } else { 1 - t });
                }
                Ok(())
            };
            Sequence::new(alpha, oracle, prov)
        }
        TmDefinition::DigitSum => Sequence::new(
            alpha,
            IndexOracle(|i: usize| Ok((i.count_ones() % 2) as Sym)),
            prov,
        ),
        TmDefinition::Morphic => Sequence::new(
            alpha,
            FixedPointOracle::new(vec![vec![vec![0, 1], vec![1, 0]]], 0, None),
            prov,
        ),
    };
    seq.with_bound(Some(thue_morse_bound()))
}
