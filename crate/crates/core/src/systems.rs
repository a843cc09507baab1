//! Interval systems on `[1,n]`: evenness, the λ-sequence bijection, limit
//! ℓ- and L-vectors, and the systems attached to cd-words and rank sets.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag::{Basis, FlagVector};
use crate::index::{ce_index, ce_to_cd, d_positions, weight, IndexPolynomial};
use crate::rational::{q, Q};
use crate::subset::{interval_mask, runs, MAX_N};

/// An antichain of subintervals `[a,b]` of `[1,n]`, sorted by left endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSystem {
    n: usize,
    intervals: Vec<(usize, usize)>,
}

impl IntervalSystem {
    pub fn new(n: usize, mut intervals: Vec<(usize, usize)>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::RankOverflow(n));
        }
        for &(a, b) in &intervals {
            if a < 1 || a > b || b > n {
                return Err(Error::IntervalOutOfRange(a, b, n));
            }
        }
        intervals.sort();
        for (i, &(a, b)) in intervals.iter().enumerate() {
            for &(c, d) in &intervals[i + 1..] {
                if (a <= c && d <= b) || (c <= a && b <= d) {
                    return Err(Error::NotAntichain(a, b, c, d));
                }
            }
        }
        Ok(Self { n, intervals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Every interval and every pairwise intersection has even cardinality.
    pub fn is_even(&self) -> bool {
        let size = |a: usize, b: usize| if a > b { 0 } else { b - a + 1 };
        self.intervals.iter().enumerate().all(|(i, &(a, b))| {
            size(a, b) % 2 == 0
                && self.intervals[i + 1..].iter().all(|&(c, d)| size(a.max(c), b.min(d)) % 2 == 0)
        })
    }

    pub fn masks(&self) -> Vec<u32> {
        self.intervals.iter().map(|&(a, b)| interval_mask(a, b)).collect()
    }

    /// Intervals contained in `[lo+1, hi-1]`, shifted down by `lo`, as a
    /// system on `[1, hi-lo-1]`.
    pub fn restrict(&self, lo: usize, hi: usize) -> IntervalSystem {
        let intervals = self.intervals.iter().filter(|&&(a, b)| a > lo && b < hi).map(|&(a, b)| (a - lo, b - lo)).collect();
        IntervalSystem::new(hi - lo - 1, intervals).expect("restriction of an antichain")
    }

    /// Image under `i -> n+1-i`.
    pub fn reversed(&self) -> IntervalSystem {
        let n = self.n;
        IntervalSystem::new(n, self.intervals.iter().map(|&(a, b)| (n + 1 - b, n + 1 - a)).collect())
            .expect("reversal of an antichain")
    }

    pub fn to_json(&self) -> IntervalSystemJson {
        IntervalSystemJson { n: self.n, intervals: self.intervals.iter().map(|&(a, b)| [a, b]).collect() }
    }

    pub fn from_json(j: &IntervalSystemJson) -> Result<Self> {
        Self::new(j.n, j.intervals.iter().map(|&[a, b]| (a, b)).collect())
    }
}

impl fmt::Display for IntervalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Wire format: `{ "n", "intervals": [[a, b], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSystemJson {
    pub n: usize,
    pub intervals: Vec<[usize; 2]>,
}

/// A sequence in `{-1, +1}^n` summing to `0` (n even) or `1` (n odd).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaSequence(pub Vec<i8>);

impl LambdaSequence {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidLambda("entries must be +1 or -1".into()));
        }
        let sum: i64 = entries.iter().map(|&x| x as i64).sum();
        let want = (entries.len() % 2) as i64;
        if sum != want {
            return Err(Error::InvalidLambda(format!("sum is {sum}, expected {want}")));
        }
        Ok(Self(entries))
    }
}

impl fmt::Display for LambdaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.0.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
        f.write_str(&s.concat())
    }
}

fn alt(i: usize) -> i8 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `λ_i = (-1)^i` at interval endpoints, `(-1)^{i-1}` elsewhere.
pub fn lambda_encode(system: &IntervalSystem) -> Result<LambdaSequence> {
    if !system.is_even() {
        return Err(Error::NotEven);
    }
    let mut endpoint = vec![false; system.n + 1];
    for &(a, b) in system.intervals() {
        endpoint[a] = true;
        endpoint[b] = true;
    }
    LambdaSequence::new((1..=system.n).map(|i| if endpoint[i] { alt(i) } else { alt(i - 1) }).collect())
}

/// Inverse of [`lambda_encode`]: pair each flipped index with the next
/// flipped index of opposite parity.
pub fn lambda_decode(lambda: &LambdaSequence) -> Result<IntervalSystem> {
    let lambda = LambdaSequence::new(lambda.0.clone())?;
    let n = lambda.0.len();
    let mut flipped: Vec<usize> = (1..=n).filter(|&i| lambda.0[i - 1] == alt(i)).collect();
    let mut intervals = Vec::new();
    while let Some(&a) = flipped.first() {
        let j = flipped
            .iter()
            .position(|&s| s % 2 != a % 2)
            .ok_or_else(|| Error::InvalidLambda("unbalanced endpoint parities".into()))?;
        intervals.push((a, flipped[j]));
        flipped.remove(j);
        flipped.remove(0);
    }
    IntervalSystem::new(n, intervals)
}

/// All even interval systems on `[1,n]`, by backtracking over even
/// intervals with increasing endpoints; ordered by λ-encoding.
pub fn enumerate_even_systems(n: usize) -> Vec<IntervalSystem> {
    assert!(n <= MAX_N, "n too large");
    fn extend(n: usize, chosen: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(chosen.clone());
        let (min_a, min_b) = chosen.last().map_or((1, 1), |&(a, b)| (a + 1, b + 1));
        for a in min_a..=n {
            let mut b = (a + 1).max(min_b);
            if (b - a) % 2 == 0 {
                b += 1;
            }
            while b <= n {
                let ok = chosen.iter().all(|&(c, d)| {
                    let (lo, hi) = (a.max(c), b.min(d));
                    lo > hi || (hi - lo + 1) % 2 == 0
                });
                if ok {
                    chosen.push((a, b));
                    extend(n, chosen, out);
                    chosen.pop();
                }
                b += 2;
            }
        }
    }
    let mut raw = Vec::new();
    extend(n, &mut Vec::new(), &mut raw);
    let mut systems: Vec<(LambdaSequence, IntervalSystem)> = raw
        .into_iter()
        .map(|iv| {
            let s = IntervalSystem::new(n, iv).expect("increasing endpoints give an antichain");
            (lambda_encode(&s).expect("even by construction"), s)
        })
        .collect();
    systems.sort_by(|a, b| a.0.cmp(&b.0));
    systems.into_iter().map(|(_, s)| s).collect()
}

/// Compares systems by λ-encoding when both are even, otherwise by their
/// sorted interval lists.
pub fn system_order(a: &IntervalSystem, b: &IntervalSystem) -> Ordering {
    match (lambda_encode(a), lambda_encode(b)) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.intervals.cmp(&b.intervals),
    }
}

fn union_subset_sum(system: &IntervalSystem, basis: Basis) -> FlagVector {
    let masks = system.masks();
    let k = masks.len();
    assert!(k < 32, "too many intervals");
    let mut v = FlagVector::zero(system.n, basis).expect("n within range");
    for choice in 0u32..(1 << k) {
        let union = (0..k).filter(|&i| choice >> i & 1 == 1).fold(0u32, |u, i| u | masks[i]);
        let sign = if choice.count_ones() % 2 == 0 { q(1) } else { q(-1) };
        let cur = v.get(union) + sign;
        v.set(union, cur);
    }
    v
}

/// `lim ℓ_S(P(n,I,N)) / N^k = Σ_j (-1)^j #{j-subsets of I with union S}`.
pub fn limit_ell_vector(system: &IntervalSystem) -> FlagVector {
    union_subset_sum(system, Basis::Ell)
}

/// L-vector of the doubled limit poset `D P(n,I)`; equal to the limit ℓ-vector.
pub fn doubled_limit_l_vector(system: &IntervalSystem) -> FlagVector {
    union_subset_sum(system, Basis::L)
}

/// The system `{[i, i+1]}` over the `d` positions of a cd-word.
pub fn system_for_cd_word(word: &str) -> Result<IntervalSystem> {
    let n = weight(word);
    let mut intervals = Vec::new();
    let mut pos = 1;
    d_positions(word)?;
    for ch in word.chars() {
        if ch == 'd' {
            intervals.push((pos, pos + 1));
            pos += 2;
        } else {
            pos += 1;
        }
    }
    IntervalSystem::new(n, intervals)
}

/// cd-index of `D P(n, I_w)`.
pub fn cd_index_of_doubled_limit(word: &str) -> Result<IndexPolynomial> {
    let system = system_for_cd_word(word)?;
    ce_to_cd(&ce_index(&doubled_limit_l_vector(&system))?)
}

/// The maximal intervals contained in `S`.
pub fn maximal_interval_system(s: u32, n: usize) -> IntervalSystem {
    IntervalSystem::new(n, runs(s)).expect("maximal runs form an antichain")
}

/// Entrywise sum of limit ℓ-vectors.
pub fn extreme_sum_vector(n: usize, systems: &[IntervalSystem]) -> Result<FlagVector> {
    let mut total = FlagVector::zero(n, Basis::Ell)?;
    for s in systems {
        if s.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: s.n() });
        }
        total = total.add(&limit_ell_vector(s))?;
    }
    Ok(total)
}

/// The summand systems of the four additional rank-7 extremes.
pub fn rank7_extreme_systems() -> [Vec<IntervalSystem>; 4] {
    let sys = |iv: &[(usize, usize)]| IntervalSystem::new(6, iv.to_vec()).expect("fixed antichain");
    [
        vec![sys(&[(1, 2), (2, 6)]), sys(&[(2, 5), (5, 6)])],
        vec![sys(&[(1, 3), (3, 4), (4, 6)]), sys(&[(1, 2), (2, 3)]), sys(&[(4, 5), (5, 6)])],
        vec![sys(&[(1, 2), (3, 4), (4, 5)]), sys(&[(3, 5), (5, 6)]), sys(&[(1, 2), (2, 5)])],
        vec![sys(&[(1, 2), (2, 4)]), sys(&[(2, 5), (5, 6)]), sys(&[(2, 3), (3, 4), (5, 6)])],
    ]
}

/// ℓ-vectors of Extremes 1-4 (the fourth is the reversal of the third).
pub fn rank7_extreme_vectors() -> Vec<FlagVector> {
    rank7_extreme_systems().iter().map(|s| extreme_sum_vector(6, s).expect("n = 6")).collect()
}

/// True when `v` is supported on even sets only.
pub fn has_even_support(v: &FlagVector) -> bool {
    (0..v.entries().len()).all(|m| crate::subset::is_even_set(m as u32) || v.get(m as u32).is_zero())
}

/// Helper for tests and reports: `Σ_S` of all entries.
pub fn entry_sum(v: &FlagVector) -> Q {
    v.entries().iter().fold(Q::zero(), |a, b| a + b)
}
