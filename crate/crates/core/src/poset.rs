//! Graded posets: validation, chain counting, Möbius function, intervals,
//! rank selection, duality and the Eulerian / half-Eulerian tests.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag::{Basis, FlagVector};
use crate::rational::Q;
use crate::subset::{bit, full, BitSet, MAX_N};

/// Wire format of a poset: `{ "rank", "elements": [{id, rank, label?}], "covers": [[lo, hi]] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub rank: usize,
    pub elements: Vec<ElementJson>,
    pub covers: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub id: usize,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Lists every violated invariant of a raw poset description; empty iff valid.
pub fn validate(p: &PosetJson) -> Vec<String> {
    let mut diag = Vec::new();
    let len = p.elements.len();
    if p.rank == 0 {
        diag.push("rank must be positive".to_string());
    }
    let mut seen = vec![false; len];
    let mut ranks = vec![usize::MAX; len];
    for e in &p.elements {
        if e.id >= len || seen[e.id] {
            diag.push(format!("element ids are not dense (id {})", e.id));
            continue;
        }
        seen[e.id] = true;
        ranks[e.id] = e.rank;
        if e.rank > p.rank {
            diag.push(format!("element {} has rank {} above the top rank {}", e.id, e.rank, p.rank));
        }
    }
    let bottoms = p.elements.iter().filter(|e| e.rank == 0).count();
    let tops = p.elements.iter().filter(|e| e.rank == p.rank).count();
    if bottoms != 1 {
        diag.push("no unique minimum".to_string());
    }
    if tops != 1 {
        diag.push("no unique maximum".to_string());
    }
    let mut has_up = vec![false; len];
    let mut has_down = vec![false; len];
    let mut pairs = BTreeSet::new();
    for &[lo, hi] in &p.covers {
        if lo >= len || hi >= len || ranks[lo] == usize::MAX || ranks[hi] == usize::MAX {
            diag.push(format!("cover ({lo},{hi}) references an unknown element"));
            continue;
        }
        if !pairs.insert((lo, hi)) {
            diag.push(format!("duplicate cover ({lo},{hi})"));
        }
        if ranks[hi] != ranks[lo] + 1 {
            let gap = ranks[hi] as i64 - ranks[lo] as i64;
            diag.push(format!("cover ({lo},{hi}) spans rank gap {gap}"));
        }
        has_up[lo] = true;
        has_down[hi] = true;
    }
    for e in &p.elements {
        if e.id >= len {
            continue;
        }
        if e.rank != p.rank && !has_up[e.id] {
            diag.push(format!("element {} has no upper cover", e.id));
        }
        if e.rank != 0 && !has_down[e.id] {
            diag.push(format!("element {} has no lower cover", e.id));
        }
    }
    diag
}

/// A finite graded poset with unique bottom and top. Always valid once built.
#[derive(Clone, Debug)]
pub struct GradedPoset {
    rank: usize,
    ranks: Vec<usize>,
    labels: Vec<Option<String>>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    layers: Vec<Vec<usize>>,
    reach: OnceLock<Vec<BitSet>>,
}

impl PartialEq for GradedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.ranks == other.ranks && self.labels == other.labels && self.upper == other.upper
    }
}

impl Eq for GradedPoset {}

/// Outcome of an Eulerian-type test; `witness` is the first failing interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalCheck {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

impl GradedPoset {
    /// Builds a poset from element ranks, optional labels and cover pairs.
    pub fn new(rank: usize, ranks: Vec<usize>, labels: Vec<Option<String>>, covers: &[(usize, usize)]) -> Result<Self> {
        let json = PosetJson {
            rank,
            elements: ranks
                .iter()
                .enumerate()
                .map(|(id, &r)| ElementJson { id, rank: r, label: labels.get(id).cloned().flatten() })
                .collect(),
            covers: covers.iter().map(|&(a, b)| [a, b]).collect(),
        };
        Self::from_json(&json)
    }

    pub fn from_json(p: &PosetJson) -> Result<Self> {
        let diag = validate(p);
        if !diag.is_empty() {
            return Err(Error::InvalidPoset(diag));
        }
        let len = p.elements.len();
        let mut ranks = vec![0; len];
        let mut labels = vec![None; len];
        for e in &p.elements {
            ranks[e.id] = e.rank;
            labels[e.id] = e.label.clone();
        }
        let mut upper = vec![Vec::new(); len];
        let mut lower = vec![Vec::new(); len];
        for &[lo, hi] in &p.covers {
            upper[lo].push(hi);
            lower[hi].push(lo);
        }
        for v in upper.iter_mut().chain(lower.iter_mut()) {
            v.sort_unstable();
        }
        let mut layers = vec![Vec::new(); p.rank + 1];
        for (id, &r) in ranks.iter().enumerate() {
            layers[r].push(id);
        }
        Ok(Self { rank: p.rank, ranks, labels, upper, lower, layers, reach: OnceLock::new() })
    }

    pub fn to_json(&self) -> PosetJson {
        let mut covers = Vec::new();
        for (lo, ups) in self.upper.iter().enumerate() {
            for &hi in ups {
                covers.push([lo, hi]);
            }
        }
        PosetJson {
            rank: self.rank,
            elements: (0..self.len())
                .map(|id| ElementJson { id, rank: self.ranks[id], label: self.labels[id].clone() })
                .collect(),
            covers,
        }
    }

    /// Rank of the top element (`n + 1`).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `n`, the number of intermediate ranks.
    pub fn n(&self) -> usize {
        self.rank - 1
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels[x].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Elements of rank `r` in id order.
    pub fn layer(&self, r: usize) -> &[usize] {
        &self.layers[r]
    }

    pub fn bottom(&self) -> usize {
        self.layers[0][0]
    }

    pub fn top(&self) -> usize {
        self.layers[self.rank][0]
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.upper.iter().enumerate().flat_map(|(lo, ups)| ups.iter().map(move |&hi| (lo, hi))).collect()
    }

    fn reach(&self) -> &[BitSet] {
        self.reach.get_or_init(|| {
            let mut up = vec![BitSet::new(self.len()); self.len()];
            for r in (0..=self.rank).rev() {
                for &x in &self.layers[r] {
                    let mut row = BitSet::new(self.len());
                    row.insert(x);
                    for &y in &self.upper[x] {
                        row.union_with(&up[y]);
                    }
                    up[x] = row;
                }
            }
            up
        })
    }

    /// `x <= y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.reach()[x].contains(y)
    }

    /// Elements `z` with `x <= z`, in id order.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        self.reach()[x].iter().collect()
    }

    fn check_id(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            return Err(Error::UnknownElement(x));
        }
        Ok(())
    }

    /// Number of chains through each rank set, indexed by mask.
    pub fn flag_counts(&self) -> Result<Vec<u128>> {
        let n = self.n();
        if n > MAX_N {
            return Err(Error::RankOverflow(n));
        }
        let reach = self.reach();
        let size = 1usize << n;
        // per mask: chain counts ending at each element of the top selected layer
        let mut table: Vec<Vec<u128>> = vec![Vec::new(); size];
        let mut counts = vec![0u128; size];
        counts[0] = 1;
        for s in 1..size {
            let top_rank = 32 - (s as u32).leading_zeros() as usize;
            let prev = s & !(1 << (top_rank - 1));
            let layer = &self.layers[top_rank];
            let row: Vec<u128> = if prev == 0 {
                vec![1; layer.len()]
            } else {
                let prev_rank = 32 - (prev as u32).leading_zeros() as usize;
                let prev_layer = &self.layers[prev_rank];
                let prev_row = &table[prev];
                let mut row = Vec::with_capacity(layer.len());
                for &z in layer {
                    let mut c: u128 = 0;
                    for (i, &y) in prev_layer.iter().enumerate() {
                        if prev_row[i] != 0 && reach[y].contains(z) {
                            c = c.checked_add(prev_row[i]).ok_or(Error::CountOverflow)?;
                        }
                    }
                    row.push(c);
                }
                row
            };
            let mut total: u128 = 0;
            for &c in &row {
                total = total.checked_add(c).ok_or(Error::CountOverflow)?;
            }
            counts[s] = total;
            table[s] = row;
        }
        Ok(counts)
    }

    /// The flag f-vector: `f_S` counts chains with rank set exactly `S`.
    pub fn flag_f_vector(&self) -> Result<FlagVector> {
        let counts = self.flag_counts()?;
        let entries = counts.into_iter().map(|c| Q::from_integer(c.into())).collect();
        FlagVector::from_entries(self.n(), Basis::F, entries)
    }

    /// Möbius values `μ(x, z)` for every `z >= x` (zero elsewhere).
    fn mobius_row(&self, x: usize) -> Vec<i64> {
        let reach = self.reach();
        let mut mu = vec![0i64; self.len()];
        let mut seen: Vec<usize> = Vec::new();
        for r in self.ranks[x]..=self.rank {
            for &z in &self.layers[r] {
                if !reach[x].contains(z) {
                    continue;
                }
                if z == x {
                    mu[z] = 1;
                } else {
                    mu[z] = -seen.iter().filter(|&&w| reach[w].contains(z)).map(|&w| mu[w]).sum::<i64>();
                }
                seen.push(z);
            }
        }
        mu
    }

    /// `μ([x, y])` by the defining recursion.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        self.check_id(x)?;
        self.check_id(y)?;
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        Ok(self.mobius_row(x)[y])
    }

    /// The closed interval `[x, y]` as a graded poset with ranks rebased to `x`.
    pub fn interval(&self, x: usize, y: usize) -> Result<GradedPoset> {
        self.check_id(x)?;
        self.check_id(y)?;
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        if x == y {
            return Err(Error::Degenerate(x));
        }
        let base = self.ranks[x];
        let mut keep: Vec<usize> = Vec::new();
        for r in base..=self.ranks[y] {
            keep.extend(self.layers[r].iter().copied().filter(|&z| self.leq(x, z) && self.leq(z, y)));
        }
        self.induced(&keep, |z| self.ranks[z] - base, self.ranks[y] - base)
    }

    /// Sub-poset on `keep` (listed in the new id order) with covers taken
    /// from comparabilities between consecutive new ranks.
    fn induced(&self, keep: &[usize], new_rank: impl Fn(usize) -> usize, top: usize) -> Result<GradedPoset> {
        let mut index = vec![usize::MAX; self.len()];
        for (i, &z) in keep.iter().enumerate() {
            index[z] = i;
        }
        let ranks: Vec<usize> = keep.iter().map(|&z| new_rank(z)).collect();
        let labels = keep.iter().map(|&z| self.labels[z].clone()).collect();
        let mut covers = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if ranks[j] == ranks[i] + 1 && self.leq(a, b) {
                    covers.push((i, j));
                }
            }
        }
        GradedPoset::new(top, ranks, labels, &covers)
    }

    /// Elements with rank in `S`, plus bottom and top, re-ranked `1..=|S|`.
    pub fn rank_selected(&self, s: u32) -> Result<GradedPoset> {
        let n = self.n();
        let s = s & full(n);
        let selected: Vec<usize> = (1..=n).filter(|&r| s & bit(r) != 0).collect();
        let mut new_rank = vec![0usize; self.rank + 1];
        for (i, &r) in selected.iter().enumerate() {
            new_rank[r] = i + 1;
        }
        let top = selected.len() + 1;
        new_rank[self.rank] = top;
        let mut keep = vec![self.bottom()];
        for &r in &selected {
            keep.extend_from_slice(&self.layers[r]);
        }
        keep.push(self.top());
        self.induced(&keep, |z| new_rank[self.ranks[z]], top)
    }

    /// Order dual: covers reversed, `ρ'(x) = n + 1 - ρ(x)`; ids and labels kept.
    pub fn dual(&self) -> GradedPoset {
        let ranks = self.ranks.iter().map(|&r| self.rank - r).collect();
        let covers: Vec<(usize, usize)> = self.covers().into_iter().map(|(a, b)| (b, a)).collect();
        GradedPoset::new(self.rank, ranks, self.labels.clone(), &covers).expect("dual of a valid poset is valid")
    }

    /// Pairs `x <= y` ordered by decreasing rank difference, then by ids.
    fn pairs_by_length(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> =
            (0..self.len()).flat_map(|x| self.up_set(x).into_iter().map(move |y| (x, y))).collect();
        pairs.sort_by_key(|&(x, y)| (std::cmp::Reverse(self.ranks[y] - self.ranks[x]), x, y));
        pairs
    }

    /// Every interval `[x, y]` has `μ = (-1)^{ρ(x,y)}`. The witness is a
    /// longest failing interval.
    pub fn is_eulerian(&self) -> IntervalCheck {
        let rows: Vec<Vec<i64>> = (0..self.len()).map(|x| self.mobius_row(x)).collect();
        for (x, y) in self.pairs_by_length() {
            let d = self.ranks[y] - self.ranks[x];
            let expected = if d % 2 == 0 { 1 } else { -1 };
            if rows[x][y] != expected {
                return IntervalCheck { holds: false, witness: Some((x, y)) };
            }
        }
        IntervalCheck { holds: true, witness: None }
    }

    /// Every interval satisfies `Σ_i (-1)^{i-1} f_i = (1 + (-1)^ρ) / 2`.
    pub fn is_half_eulerian(&self) -> IntervalCheck {
        let reach = self.reach();
        for (x, y) in self.pairs_by_length() {
            let d = self.ranks[y] - self.ranks[x];
            if d == 0 {
                continue;
            }
            let alt: i64 = reach[x]
                .iter()
                .filter(|&z| z != x && z != y && reach[z].contains(y))
                .map(|z| if (self.ranks[z] - self.ranks[x]) % 2 == 1 { 1 } else { -1 })
                .sum();
            let expected = if d % 2 == 0 { 1 } else { 0 };
            if alt != expected {
                return IntervalCheck { holds: false, witness: Some((x, y)) };
            }
        }
        IntervalCheck { holds: true, witness: None }
    }

    /// All pairs `x < y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|x| self.up_set(x).into_iter().filter(move |&y| y != x).map(move |y| (x, y))).collect()
    }
}

/// `Σ_S (-1)^{|S|+1} f_S`: the Möbius value of the whole poset via the
/// reduced Euler characteristic of its order complex.
pub fn euler_characteristic_mobius(f: &FlagVector) -> Q {
    let mut total = Q::from_integer(0.into());
    for (m, v) in f.entries().iter().enumerate() {
        if (m as u32).count_ones() % 2 == 1 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_lattice, chain};
    use crate::rational::q;

    fn raw_chain(r: usize) -> PosetJson {
        chain(r).to_json()
    }

    #[test]
    fn validate_chain() {
        assert!(validate(&raw_chain(3)).is_empty());
    }

    #[test]
    fn validate_missing_top() {
        let mut p = raw_chain(3);
        p.elements.pop();
        p.covers.retain(|c| c[1] != 3);
        let d = validate(&p);
        assert!(d.contains(&"no unique maximum".to_string()), "{d:?}");
    }

    #[test]
    fn validate_rank_gap() {
        let mut p = raw_chain(3);
        p.covers.push([0, 2]);
        let d = validate(&p);
        assert!(d.iter().any(|m| m.ends_with("spans rank gap 2")), "{d:?}");
    }

    #[test]
    fn boolean_rank3_flags() {
        let f = boolean_lattice(3).flag_f_vector().unwrap();
        assert_eq!(f.entries(), &[q(1), q(3), q(3), q(6)]);
    }

    #[test]
    fn mobius_examples() {
        let c = chain(2);
        assert_eq!(c.mobius(0, 0).unwrap(), 1);
        assert_eq!(c.mobius(0, 2).unwrap(), 0);
        let diamond = boolean_lattice(2);
        assert_eq!(diamond.mobius(diamond.bottom(), diamond.top()).unwrap(), 1);
        assert_eq!(c.mobius(2, 0), Err(Error::NotComparable(2, 0)));
    }

    #[test]
    fn intervals() {
        let c = chain(5);
        let whole = c.interval(c.bottom(), c.top()).unwrap();
        assert_eq!(whole.flag_f_vector().unwrap(), c.flag_f_vector().unwrap());
        assert_eq!(c.interval(2, 2), Err(Error::Degenerate(2)));
        let b = boolean_lattice(3);
        let atom = b.layer(1)[0];
        let iv = b.interval(atom, b.top()).unwrap();
        assert_eq!(iv.rank(), 2);
        assert_eq!(iv.flag_f_vector().unwrap().entries(), &[q(1), q(2)]);
    }

    #[test]
    fn rank_selection() {
        let b = boolean_lattice(3);
        assert_eq!(b.rank_selected(0b11).unwrap().flag_f_vector().unwrap(), b.flag_f_vector().unwrap());
        let e = b.rank_selected(0).unwrap();
        assert_eq!((e.rank(), e.len()), (1, 2));
        let s = b.rank_selected(0b01).unwrap();
        assert_eq!((s.rank(), s.layer(1).len()), (2, 3));
    }

    #[test]
    fn duality() {
        let b = boolean_lattice(3);
        let d = b.dual();
        assert_eq!(d.dual(), b);
        assert_eq!(d.flag_f_vector().unwrap().at(&[1]), &q(3));
        assert_eq!(chain(4).dual().flag_f_vector().unwrap(), chain(4).flag_f_vector().unwrap());
    }

    #[test]
    fn eulerian_examples() {
        assert!(boolean_lattice(3).is_eulerian().holds);
        let c = chain(3);
        let chk = c.is_eulerian();
        assert_eq!(chk, IntervalCheck { holds: false, witness: Some((c.bottom(), c.top())) });
        assert!(c.is_half_eulerian().holds);
    }

    #[test]
    fn euler_characteristic_matches_recursion() {
        let b = boolean_lattice(4);
        for (x, y) in b.strict_pairs() {
            let iv = b.interval(x, y).unwrap();
            let alt = euler_characteristic_mobius(&iv.flag_f_vector().unwrap());
            assert_eq!(alt, q(b.mobius(x, y).unwrap()));
        }
    }
}
