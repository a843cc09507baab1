//! Rank subsets of `[1,n]` encoded as bitmasks (bit `i-1` holds rank `i`).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported `n` (posets of rank at most `MAX_N + 1`).
pub const MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankSubset {
    bits: u32,
    n: usize,
}

impl RankSubset {
    pub fn new(bits: u32, n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::RankOverflow(n));
        }
        if bits & !full(n) != 0 {
            return Err(Error::Parse(format!("subset {bits:#b} not contained in [1,{n}]")));
        }
        Ok(Self { bits, n })
    }

    pub fn from_ranks(ranks: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &r in ranks {
            if r == 0 || r > n {
                return Err(Error::Parse(format!("rank {r} outside [1,{n}]")));
            }
            bits |= bit(r);
        }
        Self::new(bits, n)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn ranks(self) -> Vec<usize> {
        ranks_of(self.bits)
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn complement(self) -> Self {
        Self { bits: full(self.n) & !self.bits, n: self.n }
    }

    /// `{n+1-s : s in S}`.
    pub fn reverse(self) -> Self {
        Self { bits: reverse(self.bits, self.n), n: self.n }
    }

    pub fn is_even(self) -> bool {
        is_even_set(self.bits)
    }
}

impl fmt::Display for RankSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", key(self.bits))
    }
}

pub fn bit(rank: usize) -> u32 {
    1u32 << (rank - 1)
}

/// Mask of `[1,n]`.
pub fn full(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Mask of the interval `[a,b]` (empty when `a > b`).
pub fn interval_mask(a: usize, b: usize) -> u32 {
    if a > b {
        0
    } else {
        full(b) & !full(a - 1)
    }
}

pub fn ranks_of(bits: u32) -> Vec<usize> {
    (0..32).filter(|i| bits >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn reverse(bits: u32, n: usize) -> u32 {
    ranks_of(bits).into_iter().fold(0, |acc, r| acc | bit(n + 1 - r))
}

/// Comma-joined ascending ranks; the empty set is the empty string.
pub fn key(bits: u32) -> String {
    ranks_of(bits).iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_key(s: &str, n: usize) -> Result<u32> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(0);
    }
    let mut bits = 0;
    for part in s.split(',') {
        let r: usize = part.trim().parse().map_err(|_| Error::Parse(format!("bad subset key {s:?}")))?;
        if r == 0 || r > n {
            return Err(Error::Parse(format!("rank {r} outside [1,{n}] in key {s:?}")));
        }
        bits |= bit(r);
    }
    Ok(bits)
}

/// Maximal runs of consecutive ranks, as `(a, b)` pairs in increasing order.
pub fn runs(bits: u32) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut r = 1;
    while r <= 32 && (bits >> (r - 1)) != 0 {
        if bits & bit(r) != 0 {
            let a = r;
            while r < 32 && bits & bit(r + 1) != 0 {
                r += 1;
            }
            out.push((a, r));
        }
        r += 1;
    }
    out
}

/// A set is even when each of its maximal intervals has even length.
pub fn is_even_set(bits: u32) -> bool {
    runs(bits).iter().all(|&(a, b)| (b - a + 1) % 2 == 0)
}

/// All masks of `[1,n]` in increasing numeric order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = u32> {
    0..=full(n)
}

/// Iterates the submasks of `mask`, including `mask` and `0`.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// Fixed-size bitset used for reachability rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip() {
        let m = bit(1) | bit(4) | bit(7);
        assert_eq!(key(m), "1,4,7");
        assert_eq!(parse_key("1,4,7", 9).unwrap(), m);
        assert_eq!(key(0), "");
        assert_eq!(parse_key("", 3).unwrap(), 0);
        assert!(parse_key("4", 3).is_err());
    }

    #[test]
    fn runs_and_evenness() {
        let s = interval_mask(1, 2) | interval_mask(4, 5);
        assert_eq!(runs(s), vec![(1, 2), (4, 5)]);
        assert!(is_even_set(s));
        assert!(!is_even_set(interval_mask(1, 3)));
        assert!(is_even_set(0));
    }

    #[test]
    fn reverse_and_complement() {
        let s = RankSubset::from_ranks(&[1, 2], 5).unwrap();
        assert_eq!(s.reverse().ranks(), vec![4, 5]);
        assert_eq!(s.complement().ranks(), vec![3, 4, 5]);
        assert!(RankSubset::new(0, 21).is_err());
        assert!(RankSubset::new(bit(4), 3).is_err());
    }

    #[test]
    fn submask_enumeration() {
        let mut v: Vec<u32> = submasks(0b101).collect();
        v.sort();
        assert_eq!(v, vec![0, 1, 4, 5]);
    }
}
