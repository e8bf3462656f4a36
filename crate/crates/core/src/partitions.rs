//! Partition combinatorics and the two closed-form polynomials with
//! partition-number coefficients.
//!
//! `P(n, r)` counts partitions of `n` into exactly `r` parts. The two
//! generating polynomials built here are
//! `sum_{m=0}^{n-1} P(n, n-m) q^{-m}` (the weighted-count side) and
//! `sum_{m=0}^{n-1} P(n, n-m) q^{m}` (the point-count side); they are
//! exchanged by `q <-> q^{-1}`.

use std::fmt;

use thiserror::Error;

use crate::qlaurent::{rat_int, MassPoly, Rat};

/// Largest `n` for which partition counts are guaranteed to fit in `u64`.
pub const MAX_PARTITION_N: u32 = 400;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing")]
    NotDecreasing,
    #[error("parts sum to {got}, expected {expected}")]
    WrongSum { expected: u64, got: u64 },
    #[error("n = {0} exceeds the supported bound {MAX_PARTITION_N}")]
    TooLarge(u32),
}

/// A partition of `n`: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing);
        }
        Ok(Partition { parts })
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl Partition {
    /// Checks that `parts` is weakly decreasing, positive, and sums to `n`.
    pub fn new(parts: Vec<u32>, n: u32) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing);
        }
        let sum: u64 = parts.iter().map(|&p| p as u64).sum();
        if sum != n as u64 {
            return Err(PartitionError::WrongSum { expected: n as u64, got: sum });
        }
        Ok(Partition { parts })
    }

    /// Builds from unsorted positive parts, sorting them decreasingly.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::NotDecreasing);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Multiplicity of each distinct part, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All partitions of `n`, each exactly once, in lexicographic descending
/// order: `[4], [3,1], [2,2], [2,1,1], [1,1,1,1]`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    assert!(n >= 1, "n must be positive");
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            descend(remaining - part, part, current, out);
            current.pop();
        }
    }
    descend(n, n, &mut current, &mut out);
    out
}

/// Table of `P(i, r)` for `0 <= i, r <= n` via the recurrence
/// `P(i, r) = P(i-1, r-1) + P(i-r, r)`.
struct PartsTable {
    n: usize,
    table: Vec<u64>,
}

impl PartsTable {
    fn new(n: u32) -> Result<Self, PartitionError> {
        if n > MAX_PARTITION_N {
            return Err(PartitionError::TooLarge(n));
        }
        let n = n as usize;
        let w = n + 1;
        let mut table = vec![0u64; w * w];
        table[0] = 1; // P(0, 0) = 1
        for i in 1..=n {
            for r in 1..=i {
                let mut v = table[(i - 1) * w + (r - 1)];
                if i >= r {
                    v += table[(i - r) * w + r];
                }
                table[i * w + r] = v;
            }
        }
        Ok(PartsTable { n, table })
    }

    fn get(&self, i: u32, r: u32) -> u64 {
        let (i, r) = (i as usize, r as usize);
        if i > self.n || r > self.n {
            return 0;
        }
        self.table[i * (self.n + 1) + r]
    }
}

/// `P(n, r)`: the number of partitions of `n` into exactly `r` parts.
/// Zero when `r > n`, and when `r = 0 < n`.
pub fn count_partitions_into_parts(n: u32, r: u32) -> u64 {
    if r > n {
        return 0;
    }
    if n == 0 {
        return u64::from(r == 0);
    }
    if r == 0 {
        return 0;
    }
    let table = PartsTable::new(n).expect("n within supported bound");
    table.get(n, r)
}

/// `p(n)`, the total number of partitions of `n`, as `sum_r P(n, r)`.
pub fn partition_count(n: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    let table = PartsTable::new(n).expect("n within supported bound");
    (1..=n).map(|r| table.get(n, r)).sum()
}

/// `sum_{m=0}^{n-1} P(n, n-m) q^{-m}`.
pub fn bhargava_rhs(n: u32) -> MassPoly {
    partition_poly(n, -1)
}

/// `sum_{m=0}^{n-1} P(n, n-m) q^{m}`: the count of length-`n` punctual
/// subschemes of the plane supported at the origin.
pub fn hilbert_origin_count(n: u32) -> MassPoly {
    partition_poly(n, 1)
}

fn partition_poly(n: u32, sign: i64) -> MassPoly {
    assert!(n >= 1, "n must be positive");
    let table = PartsTable::new(n).expect("n within supported bound");
    MassPoly::from_terms(
        1,
        (0..n).map(|m| {
            let coeff = table.get(n, n - m);
            (rat_int(sign * m as i64), Rat::from_integer(coeff.into()))
        }),
    )
}
