//! Poset constructions: chains, Boolean lattices, the interval doubling
//! operator, horizontal doubles, limit-family posets and rank-level gluing.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::poset::GradedPoset;
use crate::systems::IntervalSystem;

/// Replace every element with rank in `[lo, hi]` by `copies` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoublingSpec {
    pub lo: usize,
    pub hi: usize,
    pub copies: usize,
}

impl DoublingSpec {
    pub fn new(lo: usize, hi: usize, copies: usize) -> Self {
        Self { lo, hi, copies }
    }

    fn contains(&self, r: usize) -> bool {
        self.lo <= r && r <= self.hi
    }
}

/// Two posets of equal rank glued along `ranks`. Bottom and top are always
/// identified. `bijection[i]`, when given, maps the position of each element
/// of `left.layer(ranks[i])` to a position in `right.layer(ranks[i])`.
#[derive(Clone, Debug)]
pub struct GlueSpec {
    pub left: GradedPoset,
    pub right: GradedPoset,
    pub ranks: Vec<usize>,
    pub bijection: Option<Vec<Vec<usize>>>,
}

fn label_of(p: &GradedPoset, x: usize) -> String {
    p.label(x).map_or_else(|| format!("e{x}"), str::to_string)
}

/// Chain of rank `r` (`r + 1` elements).
pub fn chain(r: usize) -> GradedPoset {
    assert!(r >= 1, "chain rank must be positive");
    let ranks: Vec<usize> = (0..=r).collect();
    let labels = (0..=r).map(|i| Some(format!("x@r{i}"))).collect();
    let covers: Vec<(usize, usize)> = (0..r).map(|i| (i, i + 1)).collect();
    GradedPoset::new(r, ranks, labels, &covers).expect("chain is valid")
}

/// Boolean lattice of subsets of an `r`-element set, ids ordered by rank then
/// by bitmask.
pub fn boolean_lattice(r: usize) -> GradedPoset {
    assert!((1..=12).contains(&r), "boolean lattice rank out of range");
    let mut masks: Vec<u32> = (0..(1u32 << r)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut index = vec![0usize; 1 << r];
    for (i, &m) in masks.iter().enumerate() {
        index[m as usize] = i;
    }
    let ranks = masks.iter().map(|m| m.count_ones() as usize).collect();
    let labels = masks.iter().map(|&m| Some(format!("{{{}}}", crate::subset::key(m)))).collect();
    let mut covers = Vec::new();
    for &m in &masks {
        for b in 0..r {
            if m & (1 << b) == 0 {
                covers.push((index[m as usize], index[(m | (1 << b)) as usize]));
            }
        }
    }
    GradedPoset::new(r, ranks, labels, &covers).expect("boolean lattice is valid")
}

/// The operator `D_I^k`: each element with rank in `I` becomes `k` copies;
/// copies are comparable to elements outside `I` as the original was, and
/// copies inside `I` are comparable only to copies with the same index.
pub fn double_interval(p: &GradedPoset, spec: DoublingSpec) -> Result<GradedPoset> {
    let n = p.n();
    if spec.lo < 1 || spec.lo > spec.hi || spec.hi > n {
        return Err(Error::IntervalOutOfRange(spec.lo, spec.hi, n));
    }
    if spec.copies == 0 {
        return Err(Error::Parse("multiplicity must be at least 1".into()));
    }
    // new ids: by rank, copy-major, then original order
    let mut new_id = vec![Vec::new(); p.len()];
    let mut ranks = Vec::new();
    let mut labels = Vec::new();
    for r in 0..=p.rank() {
        let copies = if spec.contains(r) { spec.copies } else { 1 };
        for c in 0..copies {
            for &x in p.layer(r) {
                new_id[x].push(ranks.len());
                ranks.push(r);
                labels.push(Some(if spec.contains(r) {
                    format!("{}#{}", label_of(p, x), c + 1)
                } else {
                    label_of(p, x)
                }));
            }
        }
    }
    let mut covers = Vec::new();
    for (x, y) in p.covers() {
        let (ix, iy) = (spec.contains(p.rank_of(x)), spec.contains(p.rank_of(y)));
        if ix && iy {
            for c in 0..spec.copies {
                covers.push((new_id[x][c], new_id[y][c]));
            }
        } else {
            for &a in &new_id[x] {
                for &b in &new_id[y] {
                    covers.push((a, b));
                }
            }
        }
    }
    GradedPoset::new(p.rank(), ranks, labels, &covers)
}

/// Every element strictly between bottom and top split into two incomparable
/// copies; equal to applying `D_{[i,i]}^2` for every `i` in `[1,n]`.
pub fn horizontal_double(p: &GradedPoset) -> GradedPoset {
    let mut out = p.clone();
    for i in 1..=p.n() {
        out = double_interval(&out, DoublingSpec::new(i, i, 2)).expect("rank within range");
    }
    out
}

/// Sequential application of `double_interval`, left to right.
pub fn generalized_double(p: &GradedPoset, specs: &[DoublingSpec]) -> Result<GradedPoset> {
    specs.iter().try_fold(p.clone(), |acc, &s| double_interval(&acc, s))
}

/// `P(n, I, N)`: a chain of rank `n+1` with `D_J^N` applied for every `J` in
/// the system, in order of left endpoints.
pub fn limit_family_poset(system: &IntervalSystem, copies: usize) -> Result<GradedPoset> {
    let specs: Vec<DoublingSpec> = system.intervals().iter().map(|&(a, b)| DoublingSpec::new(a, b, copies)).collect();
    generalized_double(&chain(system.n() + 1), &specs)
}

/// Disjoint union of two posets of equal rank with bottoms, tops and the
/// listed ranks identified.
pub fn glue(spec: &GlueSpec) -> Result<GradedPoset> {
    let (left, right) = (&spec.left, &spec.right);
    if left.rank() != right.rank() {
        return Err(Error::DimensionMismatch { expected: left.n(), found: right.n() });
    }
    let rank = left.rank();
    let mut glued: BTreeSet<usize> = spec.ranks.iter().copied().collect();
    glued.insert(0);
    glued.insert(rank);
    for &r in &glued {
        if r > rank {
            return Err(Error::IntervalOutOfRange(r, r, left.n()));
        }
        let (a, b) = (left.layer(r).len(), right.layer(r).len());
        if a != b {
            return Err(Error::RankCardinalityMismatch { rank: r, left: a, right: b });
        }
    }
    let mut left_id = vec![0usize; left.len()];
    let mut right_id = vec![usize::MAX; right.len()];
    let mut ranks = Vec::new();
    let mut labels = Vec::new();
    for r in 0..=rank {
        let llayer = left.layer(r);
        let rlayer = right.layer(r);
        let map: Vec<usize> = match (&spec.bijection, glued.contains(&r)) {
            (Some(bij), true) if r != 0 && r != rank => {
                let pos = spec.ranks.iter().position(|&x| x == r).expect("glued rank listed");
                let m = bij.get(pos).cloned().unwrap_or_else(|| (0..llayer.len()).collect());
                let mut sorted = m.clone();
                sorted.sort_unstable();
                if sorted != (0..llayer.len()).collect::<Vec<_>>() {
                    return Err(Error::Parse(format!("glue map at rank {r} is not a bijection")));
                }
                m
            }
            _ => (0..llayer.len()).collect(),
        };
        for (i, &x) in llayer.iter().enumerate() {
            left_id[x] = ranks.len();
            ranks.push(r);
            if glued.contains(&r) {
                let y = rlayer[map[i]];
                right_id[y] = ranks.len() - 1;
                let (la, lb) = (label_of(left, x), label_of(right, y));
                labels.push(Some(if la == lb { la } else { format!("{la}|{lb}") }));
            } else {
                labels.push(Some(label_of(left, x)));
            }
        }
        if !glued.contains(&r) {
            for &y in rlayer {
                right_id[y] = ranks.len();
                ranks.push(r);
                labels.push(Some(label_of(right, y)));
            }
        }
    }
    let mut covers: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (x, y) in left.covers() {
        covers.insert((left_id[x], left_id[y]));
    }
    for (x, y) in right.covers() {
        covers.insert((right_id[x], right_id[y]));
    }
    let covers: Vec<(usize, usize)> = covers.into_iter().collect();
    GradedPoset::new(rank, ranks, labels, &covers)
}

/// Half-Eulerian rank-7 poset glued from `D^N_[1,2] D^N_[2,6] C^7` and
/// `D^N_[1,5] D^N_[5,6] C^7` at ranks 1 and 6.
pub fn appendix_a1(copies: usize) -> Result<GradedPoset> {
    let c7 = chain(7);
    let left = generalized_double(&c7, &[DoublingSpec::new(1, 2, copies), DoublingSpec::new(2, 6, copies)])?;
    let right = generalized_double(&c7, &[DoublingSpec::new(1, 5, copies), DoublingSpec::new(5, 6, copies)])?;
    glue(&GlueSpec { left, right, ranks: vec![1, 6], bijection: None })
}

/// Random graded poset: layers of width `1..=max_width`, random bipartite
/// covers between consecutive layers with every element keeping at least one
/// upper and one lower cover.
pub fn random_graded_poset<R: Rng>(rng: &mut R, rank: usize, max_width: usize) -> GradedPoset {
    assert!(rank >= 1 && max_width >= 1);
    let widths: Vec<usize> =
        (0..=rank).map(|r| if r == 0 || r == rank { 1 } else { rng.gen_range(1..=max_width) }).collect();
    let mut ranks = Vec::new();
    let mut start = Vec::new();
    for (r, &w) in widths.iter().enumerate() {
        start.push(ranks.len());
        ranks.extend(std::iter::repeat(r).take(w));
    }
    let mut covers = Vec::new();
    for r in 0..rank {
        let (lw, uw) = (widths[r], widths[r + 1]);
        let mut edges = vec![vec![false; uw]; lw];
        for row in edges.iter_mut() {
            for e in row.iter_mut() {
                *e = rng.gen_bool(0.5);
            }
        }
        for row in edges.iter_mut() {
            if !row.iter().any(|&e| e) {
                let j = rng.gen_range(0..uw);
                row[j] = true;
            }
        }
        for j in 0..uw {
            if !(0..lw).any(|i| edges[i][j]) {
                let i = rng.gen_range(0..lw);
                edges[i][j] = true;
            }
        }
        for (i, row) in edges.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e {
                    covers.push((start[r] + i, start[r + 1] + j));
                }
            }
        }
    }
    let labels = vec![None; ranks.len()];
    GradedPoset::new(rank, ranks, labels, &covers).expect("random layered poset is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::subset::{all_subsets, interval_mask};

    #[test]
    fn chains() {
        let c = chain(1);
        assert_eq!(c.len(), 2);
        let f = chain(3).flag_f_vector().unwrap();
        assert!(f.entries().iter().all(|v| *v == q(1)));
        assert_eq!(chain(7).rank(), 7);
    }

    #[test]
    fn doubling_chain4() {
        let p = double_interval(&chain(4), DoublingSpec::new(1, 2, 3)).unwrap();
        let f = p.flag_f_vector().unwrap();
        assert_eq!(f.at(&[1]), &q(3));
        assert_eq!(f.at(&[3]), &q(1));
        assert_eq!(f.at(&[1, 3]), &q(3));
        assert_eq!(f.at(&[1, 2]), &q(3));
        assert_eq!(p.label(1), Some("x@r1#1"));
    }

    #[test]
    fn doubling_identity_and_errors() {
        let c = chain(4);
        let same = double_interval(&c, DoublingSpec::new(2, 3, 1)).unwrap();
        assert_eq!(same.flag_f_vector().unwrap(), c.flag_f_vector().unwrap());
        assert!(double_interval(&c, DoublingSpec::new(0, 2, 2)).is_err());
        assert!(double_interval(&c, DoublingSpec::new(2, 4, 2)).is_err());
    }

    #[test]
    fn doubling_order_commutes() {
        let c = chain(4);
        let a = generalized_double(&c, &[DoublingSpec::new(1, 1, 2), DoublingSpec::new(3, 3, 2)]).unwrap();
        let b = generalized_double(&c, &[DoublingSpec::new(3, 3, 2), DoublingSpec::new(1, 1, 2)]).unwrap();
        assert_eq!(a.flag_f_vector().unwrap(), b.flag_f_vector().unwrap());
    }

    #[test]
    fn horizontal_doubles() {
        let d = horizontal_double(&chain(2));
        assert_eq!(d.len(), 4);
        assert!(d.is_eulerian().holds);
        let d3 = horizontal_double(&chain(3));
        assert_eq!(d3.flag_f_vector().unwrap().entries(), &[q(1), q(2), q(2), q(4)]);
        assert!(d3.is_eulerian().holds);
    }

    #[test]
    fn limit_family_flags() {
        let sys = IntervalSystem::new(2, vec![(1, 2)]).unwrap();
        for n_copies in 1..4 {
            let f = limit_family_poset(&sys, n_copies).unwrap().flag_f_vector().unwrap();
            for m in 1..4u32 {
                assert_eq!(f.get(m), &q(n_copies as i64));
            }
        }
        let empty = IntervalSystem::new(3, vec![]).unwrap();
        assert_eq!(limit_family_poset(&empty, 5).unwrap(), chain(4));
    }

    #[test]
    fn generalized_double_scales_by_meeting_intervals() {
        let specs = [DoublingSpec::new(1, 2, 2), DoublingSpec::new(2, 6, 3)];
        let f = generalized_double(&chain(7), &specs).unwrap().flag_f_vector().unwrap();
        for s in all_subsets(6) {
            let mut expected = 1;
            if s & interval_mask(1, 2) != 0 {
                expected *= 2;
            }
            if s & interval_mask(2, 6) != 0 {
                expected *= 3;
            }
            assert_eq!(f.get(s), &q(expected));
        }
    }

    #[test]
    fn glue_to_itself() {
        let p = generalized_double(&chain(4), &[DoublingSpec::new(1, 2, 2)]).unwrap();
        let g = glue(&GlueSpec { left: p.clone(), right: p.clone(), ranks: vec![1, 2, 3], bijection: None }).unwrap();
        assert_eq!(g, p);
    }

    #[test]
    fn glue_mismatch() {
        let a = double_interval(&chain(4), DoublingSpec::new(1, 1, 2)).unwrap();
        let b = chain(4);
        let err = glue(&GlueSpec { left: a, right: b, ranks: vec![1], bijection: None }).unwrap_err();
        assert_eq!(err, Error::RankCardinalityMismatch { rank: 1, left: 2, right: 1 });
    }

    #[test]
    fn random_posets_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_graded_poset(&mut rng, 5, 4);
            assert_eq!(p.flag_f_vector().unwrap().get(0), &q(1));
        }
    }
}
