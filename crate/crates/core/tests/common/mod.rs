//! Independent reference implementations and poset corpora shared by the
//! integration tests. The oracles here deliberately avoid the library's
//! fast paths: chains are enumerated one by one over a transitive closure
//! computed from the cover graph, and basis changes are summed straight from
//! their definitions.

#![allow(dead_code)]

use flagcone::constructions::{
    appendix_a1, boolean_lattice, horizontal_double, limit_family_poset, random_graded_poset,
};
use flagcone::flag::{Basis, FlagVector};
use flagcone::poset::GradedPoset;
use flagcone::rational::{q, q_frac, Q};
use flagcone::systems::{enumerate_even_systems, IntervalSystem};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Strict order relation from a depth-first search over upper covers.
pub fn strict_above(p: &GradedPoset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut above = vec![vec![false; n]; n];
    for x in 0..n {
        let mut stack: Vec<usize> = p.upper_covers(x).to_vec();
        while let Some(y) = stack.pop() {
            if !above[x][y] {
                above[x][y] = true;
                stack.extend_from_slice(p.upper_covers(y));
            }
        }
    }
    above
}

/// Flag f-vector by listing every chain of `P ∖ {0̂, 1̂}`.
pub fn brute_flag_vector(p: &GradedPoset) -> FlagVector {
    let above = strict_above(p);
    let n = p.n();
    let mut counts = vec![0u64; 1 << n];
    fn walk(p: &GradedPoset, above: &[Vec<bool>], from: usize, mask: u32, counts: &mut [u64]) {
        counts[mask as usize] += 1;
        for y in 0..p.len() {
            let r = p.rank_of(y);
            if above[from][y] && r >= 1 && r <= p.n() {
                walk(p, above, y, mask | 1 << (r - 1), counts);
            }
        }
    }
    walk(p, &above, p.bottom(), 0, &mut counts);
    FlagVector::from_entries(n, Basis::F, counts.into_iter().map(|c| q(c as i64)).collect()).unwrap()
}

/// `μ(x,y)` as the alternating count of chains from `x` to `y`.
pub fn hall_mobius(p: &GradedPoset, above: &[Vec<bool>], x: usize, y: usize) -> i64 {
    if x == y {
        return 1;
    }
    fn walk(p: &GradedPoset, above: &[Vec<bool>], from: usize, y: usize, steps: i64) -> i64 {
        let mut total = 0;
        for z in 0..p.len() {
            if above[from][z] && (z == y || above[z][y]) {
                total += if z == y { if steps % 2 == 0 { -1 } else { 1 } } else { walk(p, above, z, y, steps + 1) };
            }
        }
        total
    }
    walk(p, above, x, y, 0)
}

fn masks(n: usize) -> std::ops::Range<u32> {
    0..(1u32 << n)
}

/// `h_S = Σ_{T ⊆ S} (-1)^{|S∖T|} f_T`.
pub fn direct_h(f: &FlagVector) -> Vec<Q> {
    masks(f.n())
        .map(|s| {
            masks(f.n())
                .filter(|t| t & !s == 0)
                .map(|t| if (s & !t).count_ones() % 2 == 0 { f.get(t).clone() } else { -f.get(t).clone() })
                .fold(Q::zero(), |a, b| a + b)
        })
        .collect()
}

/// `(-1)^{n-|S|} Σ_{T ⊇ [1,n]∖S} w^{|T|} f_T`; `w = -1` gives ℓ, `w = -1/2` gives L.
pub fn direct_complement(f: &FlagVector, w: &Q) -> Vec<Q> {
    let n = f.n();
    let full = (1u32 << n) - 1;
    masks(n)
        .map(|s| {
            let comp = full & !s;
            let sum = masks(n)
                .filter(|t| t & comp == comp)
                .map(|t| num_traits::pow(w.clone(), t.count_ones() as usize) * f.get(t))
                .fold(Q::zero(), |a, b| a + b);
            if (n - s.count_ones() as usize) % 2 == 0 {
                sum
            } else {
                -sum
            }
        })
        .collect()
}

pub fn direct_ell(f: &FlagVector) -> Vec<Q> {
    direct_complement(f, &q(-1))
}

pub fn direct_l(f: &FlagVector) -> Vec<Q> {
    direct_complement(f, &q_frac(-1, 2))
}

/// ℓ-vector of a poset computed from the brute-force flag vector.
pub fn brute_ell(p: &GradedPoset) -> Vec<Q> {
    direct_ell(&brute_flag_vector(p))
}

/// Number of even antichain systems on `[1,n]` by testing every set of even
/// intervals.
pub fn brute_even_system_count(n: usize) -> usize {
    let intervals: Vec<(usize, usize)> =
        (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).filter(|(a, b)| (b - a + 1) % 2 == 0).collect();
    let k = intervals.len();
    let mut count = 0;
    for choice in 0u64..(1u64 << k) {
        let chosen: Vec<(usize, usize)> = (0..k).filter(|i| choice >> i & 1 == 1).map(|i| intervals[i]).collect();
        let ok = chosen.iter().enumerate().all(|(i, &(a, b))| {
            chosen[i + 1..].iter().all(|&(c, d)| {
                let nested = (a <= c && d <= b) || (c <= a && b <= d);
                let (lo, hi) = (a.max(c), b.min(d));
                let meet = if lo > hi { 0 } else { hi - lo + 1 };
                !nested && meet % 2 == 0
            })
        });
        if ok {
            count += 1;
        }
    }
    count
}

pub fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Leading coefficient (of `N^k`, `k = |I|`) of `ℓ_S(P(n,I,N))`, from the
/// `k`-th finite difference of actual posets at `N = 1..=k+1`.
pub fn leading_ell_coefficients(system: &IntervalSystem) -> Vec<Q> {
    let k = system.len();
    let samples: Vec<Vec<Q>> =
        (1..=k + 1).map(|copies| brute_ell(&limit_family_poset(system, copies).unwrap())).collect();
    let size = samples[0].len();
    let mut factorial = Q::one();
    for i in 1..=k {
        factorial *= q(i as i64);
    }
    (0..size)
        .map(|s| {
            let mut diffs: Vec<Q> = samples.iter().map(|v| v[s].clone()).collect();
            for _ in 0..k {
                diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
            }
            &diffs[0] / &factorial
        })
        .collect()
}

/// Chains of `P ∖ {0̂,1̂}` with rank set exactly `s`, as element lists.
pub fn chains_with_ranks(p: &GradedPoset, s: u32) -> Vec<Vec<usize>> {
    let above = strict_above(p);
    let ranks: Vec<usize> = (1..=p.n()).filter(|r| s >> (r - 1) & 1 == 1).collect();
    let mut out = Vec::new();
    fn extend(
        p: &GradedPoset,
        above: &[Vec<bool>],
        ranks: &[usize],
        chain: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(&r) = ranks.get(chain.len()) else {
            out.push(chain.clone());
            return;
        };
        let last = chain.last().copied().unwrap_or(p.bottom());
        for &y in p.layer(r) {
            if above[last][y] {
                chain.push(y);
                extend(p, above, ranks, chain, out);
                chain.pop();
            }
        }
    }
    extend(p, &above, &ranks, &mut Vec::new(), &mut out);
    out
}

/// `Σ_C Π_{t ∈ T} (n_t(C) - offset)` over chains `C` with rank set
/// `S = [1,n]∖V`, where `n_t(C)` counts the rank-`t` elements between the
/// chain elements surrounding rank `t`.
pub fn lemma_chain_product(p: &GradedPoset, v: u32, t: u32, offset: i64) -> Q {
    let above = strict_above(p);
    let n = p.n();
    let s = ((1u32 << n) - 1) & !v;
    let mut total = 0i64;
    for chain in chains_with_ranks(p, s) {
        let mut product = 1i64;
        for tr in (1..=n).filter(|r| t >> (r - 1) & 1 == 1) {
            let below = chain.iter().rev().find(|&&x| p.rank_of(x) < tr).copied().unwrap_or(p.bottom());
            let upper = chain.iter().find(|&&x| p.rank_of(x) > tr).copied().unwrap_or(p.top());
            let count = p.layer(tr).iter().filter(|&&z| above[below][z] && above[z][upper]).count() as i64;
            product *= count - offset;
        }
        total += product;
    }
    q(total)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` random graded posets of rank `2..=max_rank` and width at most 3.
pub fn random_posets(seed: u64, count: usize, max_rank: usize) -> Vec<GradedPoset> {
    use rand::Rng;
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let rank = r.gen_range(2..=max_rank);
            random_graded_poset(&mut r, rank, 3)
        })
        .collect()
}

/// Eulerian posets used to test the inequality families: doubled limit
/// posets for every even system with `n <= 5` and `N <= 3`, Boolean
/// lattices of rank at most 5, and doubles of the glued rank-7 fixture.
pub fn eulerian_corpus() -> Vec<(String, GradedPoset)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for system in enumerate_even_systems(n) {
            for copies in 1..=3 {
                let p = horizontal_double(&limit_family_poset(&system, copies).unwrap());
                out.push((format!("D P({n},{system},{copies})"), p));
            }
        }
    }
    for r in 1..=5 {
        out.push((format!("B{r}"), boolean_lattice(r)));
    }
    for copies in [2, 3] {
        out.push((format!("D A1({copies})"), horizontal_double(&appendix_a1(copies).unwrap())));
    }
    out
}

/// Noncommutative expansion of a cd-word in `a` and `b` with `c = a + b` and
/// `d = ab + ba`; every coefficient is 1 or more.
pub fn expand_cd_in_ab(word: &str) -> std::collections::BTreeMap<String, i64> {
    let mut terms = std::collections::BTreeMap::from([(String::new(), 1i64)]);
    for ch in word.chars() {
        let pieces: &[&str] = if ch == 'c' { &["a", "b"] } else { &["ab", "ba"] };
        let mut next = std::collections::BTreeMap::new();
        for (w, c) in &terms {
            for piece in pieces {
                *next.entry(format!("{w}{piece}")).or_insert(0) += c;
            }
        }
        terms = next;
    }
    terms
}

/// ab-index of a flag f-vector as a map from words to coefficients, with `b`
/// at the ranks of `S` and zero coefficients dropped.
pub fn ab_terms(f: &FlagVector) -> std::collections::BTreeMap<String, Q> {
    let n = f.n();
    direct_h(f)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| ((1..=n).map(|i| if s >> (i - 1) & 1 == 1 { 'b' } else { 'a' }).collect(), c))
        .collect()
}

/// `f_S = 2^{|S|} Σ_{T ⊆ [1,n]∖S} L_T`, summed directly.
pub fn direct_f_from_l(n: usize, l: &[Q]) -> FlagVector {
    let entries = masks(n)
        .map(|s| {
            let sum = masks(n).filter(|t| t & s == 0).fold(Q::zero(), |a, t| a + &l[t as usize]);
            sum * q(1i64 << s.count_ones())
        })
        .collect::<Vec<_>>();
    FlagVector::from_entries(n, Basis::F, entries).unwrap()
}
