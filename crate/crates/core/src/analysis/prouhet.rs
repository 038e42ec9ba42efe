use num_bigint::BigUint;

use crate::error::{Result, SeqError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProuhetPartition {
    /// `i < 2^N` with `t_i = 0`.
    pub evil: Vec<u64>,
    /// `j < 2^N` with `t_j = 1`.
    pub odious: Vec<u64>,
    /// `(k, Σ i^k, Σ j^k)` for `k = 0..N-1`.
    pub sums: Vec<(u32, BigUint, BigUint)>,
}

impl ProuhetPartition {
    pub fn sums_agree(&self) -> bool {
        self.sums.iter().all(|(_, a, b)| a == b)
    }
}

pub const PROUHET_MAX_N: u32 = 24;

/// Splits `0..2^N` by the Thue–Morse parity and sums powers on each side.
pub fn prouhet_partition(n: u32) -> Result<ProuhetPartition> {
    if n == 0 || n > PROUHET_MAX_N {
        return Err(SeqError::InvalidArgument(format!("N must be in 1..={PROUHET_MAX_N}")));
    }
    let (evil, odious): (Vec<u64>, Vec<u64>) = (0..1u64 << n).partition(|i| i.count_ones() % 2 == 0);
    let power_sum = |v: &[u64], k: u32| v.iter().map(|&i| BigUint::from(i).pow(k)).sum::<BigUint>();
    let sums = (0..n).map(|k| (k, power_sum(&evil, k), power_sum(&odious, k))).collect();
    Ok(ProuhetPartition { evil, odious, sums })
}
