//! Sidon sets, the Erdős–Turán construction and difference sequences whose
//! contiguous block sums are pairwise distinct.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

/// Largest prime accepted by [`erdos_turan`]; keeps every element and block
/// sum far below `2^63`.
pub const MAX_PRIME: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SidonError {
    #[error("sequence is not strictly increasing at position {0}")]
    NotIncreasing(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported maximum {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("a difference sequence needs at least two elements, got {0}")]
    TooShort(usize),
}

/// Strictly increasing positive integers with pairwise-distinct sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SidonSequence(Vec<u64>);

impl SidonSequence {
    /// Checks the Sidon property by brute force.
    pub fn new(elements: Vec<u64>) -> Result<Option<Self>, SidonError> {
        Ok(is_sidon(&elements)?.then_some(SidonSequence(elements)))
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }
}

/// Consecutive differences `b_i = a_{i+1} - a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DifferenceSequence(Vec<u64>);

impl DifferenceSequence {
    pub fn from_values(b: Vec<u64>) -> Self {
        DifferenceSequence(b)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Sums of all contiguous blocks `b_k + ... + b_l`, `k <= l`, in
    /// `(k, l)` lexicographic order.
    pub fn contiguous_sums(&self) -> Vec<u64> {
        let b = &self.0;
        let mut out = Vec::with_capacity(b.len() * (b.len() + 1) / 2);
        for k in 0..b.len() {
            let mut s = 0u64;
            for &v in &b[k..] {
                s = s.checked_add(v).expect("block sum overflow");
                out.push(s);
            }
        }
        out
    }
}

fn check_increasing(a: &[u64]) -> Result<(), SidonError> {
    match a.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(SidonError::NotIncreasing(i + 1)),
        None => Ok(()),
    }
}

/// True iff all sums `a_i + a_j` with `i <= j` are distinct.
pub fn is_sidon(a: &[u64]) -> Result<bool, SidonError> {
    check_increasing(a)?;
    let mut sums = HashSet::with_capacity(a.len() * (a.len() + 1) / 2);
    for i in 0..a.len() {
        for j in i..a.len() {
            let s = a[i].checked_add(a[j]).expect("pair sum overflow");
            if !sums.insert(s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// `(2pk + (k^2 mod p))` for `k = 1..p-1`.
pub fn erdos_turan(p: u64) -> Result<SidonSequence, SidonError> {
    if !is_prime(p) {
        return Err(SidonError::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(SidonError::PrimeTooLarge(p));
    }
    let elements = (1..p)
        .map(|k| {
            let r = k % p;
            2 * p * k + (r * r) % p
        })
        .collect();
    Ok(SidonSequence(elements))
}

pub fn difference_sequence(a: &SidonSequence) -> Result<DifferenceSequence, SidonError> {
    let e = a.elements();
    if e.len() < 2 {
        return Err(SidonError::TooShort(e.len()));
    }
    Ok(DifferenceSequence(
        e.windows(2).map(|w| w[1] - w[0]).collect(),
    ))
}

/// True iff all contiguous block sums of `b` are pairwise distinct.
pub fn check_contiguous_sums(b: &DifferenceSequence) -> bool {
    let sums = b.contiguous_sums();
    let distinct: HashSet<u64> = sums.iter().copied().collect();
    distinct.len() == sums.len()
}
