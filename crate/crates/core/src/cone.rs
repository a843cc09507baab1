//! Exact polyhedral cones in the even-set L-coordinates: the double
//! description method, extremality and membership tests, and the
//! verification of the small-rank cone theorems.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::flag::{Basis, FlagVector};
use crate::forms::{
    basic_atom, basic_zero, convolve_f, facet_theorem_candidates, ijk_form, inequality_lemma_form, LinearForm,
    Provenance,
};
use crate::rational::{dot_int, primitive, primitive_int, rank, rank_int, to_q, Q};
use crate::subset::{full, is_even_set, key, ranks_of, runs, submasks};
use crate::systems::{doubled_limit_l_vector, enumerate_even_systems, rank7_extreme_systems, extreme_sum_vector};
use crate::transforms::convert;

/// The even subsets of `[1,n]` ordered by cardinality, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenCoordinateFrame {
    n: usize,
    sets: Vec<u32>,
    index: BTreeMap<u32, usize>,
}

impl EvenCoordinateFrame {
    pub fn new(n: usize) -> Result<Self> {
        if n > 10 {
            return Err(Error::RankOverflow(n));
        }
        let mut sets: Vec<u32> = (0..=full(n)).filter(|&s| is_even_set(s)).collect();
        sets.sort_by_key(|&s| (s.count_ones(), ranks_of(s)));
        let index = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(Self { n, sets, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[u32] {
        &self.sets
    }

    pub fn position(&self, s: u32) -> Option<usize> {
        self.index.get(&s).copied()
    }

    /// L-coordinates of `v` on the frame; fails if `v` has weight off the
    /// even sets.
    pub fn project(&self, v: &FlagVector) -> Result<Vec<Q>> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.n() });
        }
        let l = convert(v, Basis::L)?;
        if let Some(s) = (0..=full(self.n)).find(|&s| !is_even_set(s) && !l.get(s).is_zero()) {
            return Err(Error::OutsideSubspace(format!("L_{{{}}} = {} on a non-even set", key(s), l.get(s))));
        }
        Ok(self.sets.iter().map(|&s| l.get(s).clone()).collect())
    }

    /// Primitive integer ray of a flag vector.
    pub fn ray(&self, v: &FlagVector) -> Result<Vec<BigInt>> {
        Ok(primitive(&self.project(v)?))
    }

    /// A form's coefficients on the frame after restricting to even L-sets.
    pub fn normal(&self, form: &LinearForm) -> Result<Vec<Q>> {
        if form.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: form.n() });
        }
        let even = form.even_l_part()?;
        Ok(self.sets.iter().map(|&s| even.coefficient(s)).collect())
    }

    /// The frame vector back as an L-basis flag vector.
    pub fn lift(&self, x: &[BigInt]) -> Result<FlagVector> {
        let mut v = FlagVector::zero(self.n, Basis::L)?;
        for (&s, c) in self.sets.iter().zip(x) {
            v.set(s, Q::from_integer(c.clone()));
        }
        Ok(v)
    }

    pub fn labels(&self) -> Vec<String> {
        self.sets.iter().map(|&s| key(s)).collect()
    }
}

struct Generator {
    vector: Vec<BigInt>,
    tight: Vec<bool>,
}

fn independent_prefix(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(to_q(r));
        if rank(&trial) > basis.len() {
            basis = trial;
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    chosen
}

/// Inverse of a square invertible rational matrix, by Gauss-Jordan.
fn inverse(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let d = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..d {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * d {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[d..].to_vec()).collect()
}

fn check_rows(rows: &[Vec<BigInt>]) -> Result<usize> {
    let dim = rows.first().ok_or(Error::EmptyInput)?.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
    }
    Ok(dim)
}

/// Extreme rays of the pointed cone `{x : a·x >= 0 for every row a}` by the
/// double description method. Constraints are inserted in the given order
/// after an initial simplicial cone on the first independent rows.
pub fn extreme_rays_of(constraints: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let dim = check_rows(constraints)?;
    let start = independent_prefix(constraints, dim);
    if start.len() < dim {
        return Err(Error::DegenerateCone { rank: start.len(), dim });
    }
    let a0: Vec<Vec<Q>> = start.iter().map(|&i| to_q(&constraints[i])).collect();
    let inv = inverse(&a0);
    let total = constraints.len();
    let mut gens: Vec<Generator> = (0..dim)
        .map(|j| {
            let column: Vec<Q> = (0..dim).map(|i| inv[i][j].clone()).collect();
            let vector = primitive(&column);
            let tight = constraints.iter().map(|a| dot_int(a, &vector).is_zero()).collect();
            Generator { vector, tight }
        })
        .collect();
    let mut processed = vec![false; total];
    for &i in &start {
        processed[i] = true;
    }
    for c in 0..total {
        if processed[c] {
            continue;
        }
        let a = &constraints[c];
        let values: Vec<BigInt> = gens.iter().map(|g| dot_int(a, &g.vector)).collect();
        let pos: Vec<usize> = (0..gens.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..gens.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Generator> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = (0..total)
                    .filter(|&k| processed[k] && gens[p].tight[k] && gens[q].tight[k])
                    .collect();
                if common.len() + 2 < dim {
                    continue;
                }
                let rows: Vec<Vec<BigInt>> = common.iter().map(|&k| constraints[k].clone()).collect();
                if rank_int(&rows) + 2 != dim {
                    continue;
                }
                let combined: Vec<BigInt> = gens[q]
                    .vector
                    .iter()
                    .zip(&gens[p].vector)
                    .map(|(xq, xp)| &values[p] * xq - &values[q] * xp)
                    .collect();
                let vector = primitive_int(combined);
                let tight = constraints.iter().map(|a| dot_int(a, &vector).is_zero()).collect();
                next.push(Generator { vector, tight });
            }
        }
        processed[c] = true;
        let kept = gens.into_iter().zip(values).filter(|(_, v)| !v.is_negative()).map(|(g, _)| g);
        gens = kept.chain(next).collect();
    }
    let mut out: Vec<Vec<BigInt>> = gens.into_iter().map(|g| g.vector).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Facet normals (inequalities `normal·x >= 0`) of the cone spanned by `rays`.
pub fn facets_from_rays(rays: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    extreme_rays_of(rays)
}

/// Extreme rays of the cone cut out by `facets`.
pub fn rays_from_facets(facets: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    extreme_rays_of(facets)
}

fn tight_indices(v: &[BigInt], facets: &[Vec<BigInt>]) -> Result<Vec<usize>> {
    let mut tight = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        if f.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: f.len(), found: v.len() });
        }
        if dot_int(f, v).is_zero() {
            tight.push(i);
        }
    }
    Ok(tight)
}

/// Position of a vector relative to a cone given by facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Interior,
    Boundary { tight: Vec<usize>, tight_rank: usize },
    Outside { violated: usize },
}

pub fn membership(v: &[BigInt], facets: &[Vec<BigInt>]) -> Result<Membership> {
    check_rows(facets)?;
    if let Some(i) = facets.iter().position(|f| dot_int(f, v).is_negative()) {
        return Ok(Membership::Outside { violated: i });
    }
    let tight = tight_indices(v, facets)?;
    if tight.is_empty() {
        return Ok(Membership::Interior);
    }
    let rows: Vec<Vec<BigInt>> = tight.iter().map(|&i| facets[i].clone()).collect();
    Ok(Membership::Boundary { tight_rank: rank_int(&rows), tight })
}

/// True iff `v` lies in the cone and its tight facets have rank `dim - 1`.
pub fn is_extreme(v: &[BigInt], facets: &[Vec<BigInt>]) -> Result<bool> {
    Ok(match membership(v, facets)? {
        Membership::Boundary { tight_rank, .. } => tight_rank + 1 == v.len() && v.iter().any(|x| !x.is_zero()),
        _ => false,
    })
}

/// A cone with both descriptions and a label for every ray and facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    pub frame: EvenCoordinateFrame,
    pub rays: Vec<Vec<BigInt>>,
    pub ray_labels: Vec<String>,
    pub facets: Vec<Vec<BigInt>>,
    pub facet_labels: Vec<String>,
}

impl PolyhedralCone {
    /// Builds the cone spanned by labelled rays; non-extreme generators are
    /// dropped.
    pub fn from_rays(frame: EvenCoordinateFrame, labelled: Vec<(String, Vec<BigInt>)>) -> Result<Self> {
        let vectors: Vec<Vec<BigInt>> = labelled.iter().map(|(_, r)| r.clone()).collect();
        let facets = facets_from_rays(&vectors)?;
        let mut rays = Vec::new();
        let mut ray_labels = Vec::new();
        for (label, r) in labelled {
            if is_extreme(&r, &facets)? && !rays.contains(&r) {
                rays.push(r);
                ray_labels.push(label);
            }
        }
        let facet_labels = vec![String::new(); facets.len()];
        Ok(Self { frame, rays, ray_labels, facets, facet_labels })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }
}

/// How a computed facet was recognised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FacetClass {
    #[serde(rename = "FACET_THM")]
    FacetTheorem,
    #[serde(rename = "INEQ_LEMMA")]
    InequalityLemma,
    #[serde(rename = "IJK")]
    Ijk,
    #[serde(rename = "UNCLASSIFIED")]
    Unclassified,
}

impl FacetClass {
    pub fn name(self) -> &'static str {
        match self {
            FacetClass::FacetTheorem => "FACET_THM",
            FacetClass::InequalityLemma => "INEQ_LEMMA",
            FacetClass::Ijk => "IJK",
            FacetClass::Unclassified => "UNCLASSIFIED",
        }
    }
}

/// The known inequality families at rank `n+1`, keyed by primitive normal
/// in the frame; the first family to produce a normal claims it.
pub struct CandidateCatalog {
    entries: BTreeMap<Vec<BigInt>, (FacetClass, Provenance)>,
}

/// Compositions of `total` into positive parts.
fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn convolve_all(parts: &[LinearForm]) -> LinearForm {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = convolve_f(&acc, p).expect("F-basis factors");
    }
    acc
}

/// Products of one choice of factor per part, over every composition of
/// `rank`; `factors(m)` lists the admissible forms of rank `m` together with
/// a flag marking them as special. With `need_special`, only products with
/// at least one special factor are kept.
fn products(rank: usize, factors: &dyn Fn(usize) -> Vec<(LinearForm, bool)>, need_special: bool) -> Vec<LinearForm> {
    let mut out = Vec::new();
    for comp in compositions(rank) {
        let choices: Vec<Vec<(LinearForm, bool)>> = comp.iter().map(|&m| factors(m)).collect();
        if choices.iter().any(|c| c.is_empty()) || comp.len() < 2 && !need_special {
            continue;
        }
        let mut idx = vec![0usize; comp.len()];
        loop {
            let picked: Vec<&(LinearForm, bool)> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
            if !need_special || picked.iter().any(|(_, s)| *s) {
                let parts: Vec<LinearForm> = picked.iter().map(|(f, _)| f.clone()).collect();
                out.push(convolve_all(&parts));
            }
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    out
}

fn basic_generators(m: usize) -> Vec<(LinearForm, bool)> {
    let mut out = vec![(basic_zero(m), false)];
    if let Ok(atom) = basic_atom(m) {
        out.push((atom, false));
    }
    out
}

/// Every valid Inequality-Lemma F-form on `[1,n]`.
pub fn all_lemma_forms(n: usize) -> Vec<LinearForm> {
    let mut out = Vec::new();
    for v in 0..=full(n) {
        for t in submasks(v) {
            if runs(v).iter().all(|&(a, b)| (t & crate::subset::interval_mask(a, b)).count_ones() <= 1) {
                out.push(inequality_lemma_form(n, v, t).expect("hypothesis checked"));
            }
        }
    }
    out
}

/// Every ijk form on `[1,n]`.
pub fn all_ijk_forms(n: usize) -> Vec<LinearForm> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(ijk_form(n, i, j, k).expect("ordered indices"));
            }
        }
    }
    out
}

impl CandidateCatalog {
    pub fn new(frame: &EvenCoordinateFrame) -> Result<Self> {
        let n = frame.n();
        let rank = n + 1;
        let mut catalog = Self { entries: BTreeMap::new() };
        for form in facet_theorem_candidates(n, false) {
            catalog.insert(frame, &form, FacetClass::FacetTheorem)?;
        }
        for form in all_lemma_forms(n) {
            catalog.insert(frame, &form, FacetClass::InequalityLemma)?;
        }
        for form in products(rank, &basic_generators, false) {
            catalog.insert(frame, &form, FacetClass::InequalityLemma)?;
        }
        for form in all_ijk_forms(n) {
            catalog.insert(frame, &form, FacetClass::Ijk)?;
        }
        let with_ijk = |m: usize| {
            let mut f = basic_generators(m);
            if m >= 4 {
                f.extend(all_ijk_forms(m - 1).into_iter().map(|g| (g, true)));
            }
            f
        };
        for form in products(rank, &with_ijk, true) {
            catalog.insert(frame, &form, FacetClass::Ijk)?;
        }
        Ok(catalog)
    }

    fn insert(&mut self, frame: &EvenCoordinateFrame, form: &LinearForm, class: FacetClass) -> Result<()> {
        let normal = primitive(&frame.normal(form)?);
        if normal.iter().any(|x| !x.is_zero()) {
            self.entries.entry(normal).or_insert_with(|| (class, form.provenance().clone()));
        }
        Ok(())
    }

    pub fn lookup(&self, normal: &[BigInt]) -> Option<&(FacetClass, Provenance)> {
        self.entries.get(normal)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Labelled generating rays of the Eulerian cone at rank `n+1`: the doubled
/// limit posets of every even system, plus the four sums at `n = 6`.
pub fn eulerian_generators(frame: &EvenCoordinateFrame) -> Result<Vec<(String, Vec<BigInt>)>> {
    let n = frame.n();
    let mut out = Vec::new();
    for system in enumerate_even_systems(n) {
        out.push((format!("DP({n},{system})"), frame.ray(&doubled_limit_l_vector(&system))?));
    }
    if n == 6 {
        for (i, summands) in rank7_extreme_systems().iter().enumerate() {
            let ell = extreme_sum_vector(6, summands)?;
            // The doubled poset's L-vector has the same entries as the ℓ-vector.
            let l = FlagVector::from_entries(6, Basis::L, ell.into_entries())?;
            out.push((format!("EXTREME{}", i + 1), frame.ray(&l)?));
        }
    }
    Ok(out)
}

/// Outcome of [`verify_rank`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub cone: PolyhedralCone,
    pub classes: Vec<FacetClass>,
    pub round_trip: bool,
}

impl RankReport {
    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn count(&self, class: FacetClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    pub fn to_json(&self) -> Value {
        let cone = &self.cone;
        let rays: Vec<Value> = cone
            .rays
            .iter()
            .zip(&cone.ray_labels)
            .map(|(r, label)| json!({ "label": label, "coords": int_array(r) }))
            .collect();
        let facets: Vec<Value> = cone
            .facets
            .iter()
            .zip(&cone.facet_labels)
            .zip(&self.classes)
            .map(|((f, label), class)| json!({ "class": class.name(), "provenance": label, "normal": int_array(f) }))
            .collect();
        json!({
            "rank": self.rank,
            "dim": self.dim(),
            "coordinates": cone.frame.labels(),
            "n_rays": cone.rays.len(),
            "n_facets": cone.facets.len(),
            "facet_classes": {
                "FACET_THM": self.count(FacetClass::FacetTheorem),
                "INEQ_LEMMA": self.count(FacetClass::InequalityLemma),
                "IJK": self.count(FacetClass::Ijk),
                "UNCLASSIFIED": self.count(FacetClass::Unclassified),
            },
            "round_trip": self.round_trip,
            "rays": rays,
            "facets": facets,
        })
    }
}

fn int_array(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from))
            .collect(),
    )
}

/// Computes the Eulerian cone at `rank` from its known generators, and
/// attributes each facet to the first matching inequality family.
pub fn verify_rank(rank: usize) -> Result<RankReport> {
    if !(2..=8).contains(&rank) {
        return Err(Error::RankOverflow(rank));
    }
    let frame = EvenCoordinateFrame::new(rank - 1)?;
    let mut cone = PolyhedralCone::from_rays(frame.clone(), eulerian_generators(&frame)?)?;
    let back = rays_from_facets(&cone.facets)?;
    let mut sorted = cone.rays.clone();
    sorted.sort();
    let round_trip = back == sorted;
    let catalog = CandidateCatalog::new(&frame)?;
    let mut classes = Vec::new();
    for (f, label) in cone.facets.iter().zip(cone.facet_labels.iter_mut()) {
        match catalog.lookup(f) {
            Some((class, provenance)) => {
                classes.push(*class);
                *label = provenance.to_string();
            }
            None => {
                classes.push(FacetClass::Unclassified);
                *label = "UNCLASSIFIED".into();
            }
        }
    }
    Ok(RankReport { rank, cone, classes, round_trip })
}

/// PORTA `.ieq` text for facet normals `a` read as `a·x >= 0`.
pub fn porta_ieq(dim: usize, facets: &[Vec<BigInt>]) -> String {
    let mut s = format!("DIM = {dim}\n\nINEQUALITIES_SECTION\n");
    for (i, f) in facets.iter().enumerate() {
        let mut terms = String::new();
        for (j, c) in f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            if mag == BigInt::from(1) {
                let _ = write!(terms, "{sign}x{}", j + 1);
            } else {
                let _ = write!(terms, "{sign}{mag}x{}", j + 1);
            }
        }
        let _ = writeln!(s, "({:>3}) {} >= 0", i + 1, terms);
    }
    s.push_str("\nEND\n");
    s
}

/// PORTA `.poi` text: the origin as the only point and `rays` as the cone
/// section.
pub fn porta_poi(dim: usize, rays: &[Vec<BigInt>]) -> String {
    let row = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = format!("DIM = {dim}\n\nCONV_SECTION\n{}\n\nCONE_SECTION\n", row(&vec![BigInt::zero(); dim]));
    for r in rays {
        let _ = writeln!(s, "{}", row(r));
    }
    s.push_str("\nEND\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn frames() {
        let f = EvenCoordinateFrame::new(2).unwrap();
        assert_eq!(f.sets(), &[0, 0b11]);
        assert_eq!(EvenCoordinateFrame::new(0).unwrap().dim(), 1);
        assert_eq!(EvenCoordinateFrame::new(6).unwrap().dim(), 13);
        let f4 = EvenCoordinateFrame::new(4).unwrap();
        assert_eq!(f4.labels(), vec!["", "1,2", "2,3", "3,4", "1,2,3,4"]);
    }

    #[test]
    fn two_dimensional_dual() {
        let facets = facets_from_rays(&[ints(&[1, 0]), ints(&[1, 1])]).unwrap();
        assert_eq!(facets, vec![ints(&[0, 1]), ints(&[1, -1])]);
        let back = rays_from_facets(&facets).unwrap();
        assert_eq!(back, vec![ints(&[1, 0]), ints(&[1, 1])]);
    }

    #[test]
    fn simplicial_cone() {
        let id: Vec<Vec<BigInt>> = (0..4).map(|i| ints(&(0..4).map(|j| (i == j) as i64).collect::<Vec<_>>())).collect();
        let mut facets = facets_from_rays(&id).unwrap();
        facets.sort();
        let mut expected = id.clone();
        expected.sort();
        assert_eq!(facets, expected);
        assert!(is_extreme(&id[0], &facets).unwrap());
        assert!(!is_extreme(&ints(&[1, 1, 1, 1]), &facets).unwrap());
        assert_eq!(membership(&ints(&[1, 1, 1, 1]), &facets).unwrap(), Membership::Interior);
        assert!(matches!(membership(&ints(&[-1, 0, 0, 0]), &facets).unwrap(), Membership::Outside { .. }));
        assert!(matches!(membership(&ints(&[0, 0, 0, 0]), &facets).unwrap(), Membership::Boundary { .. }));
    }

    #[test]
    fn square_pyramid() {
        let rays = vec![ints(&[1, 1, 1]), ints(&[1, -1, 1]), ints(&[1, 1, -1]), ints(&[1, -1, -1]), ints(&[1, 0, 0])];
        let facets = facets_from_rays(&rays).unwrap();
        assert_eq!(facets.len(), 4);
        let back = rays_from_facets(&facets).unwrap();
        assert_eq!(back.len(), 4);
        assert!(!back.contains(&ints(&[1, 0, 0])));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(facets_from_rays(&[]), Err(Error::EmptyInput));
        assert!(matches!(facets_from_rays(&[ints(&[1, 0, 0]), ints(&[0, 1, 0])]), Err(Error::DegenerateCone { .. })));
        assert!(facets_from_rays(&[ints(&[1, 0]), ints(&[1])]).is_err());
    }

    #[test]
    fn rank_four_and_five() {
        let r4 = verify_rank(4).unwrap();
        assert_eq!((r4.dim(), r4.cone.rays.len(), r4.cone.facets.len()), (3, 3, 3));
        assert_eq!(r4.count(FacetClass::FacetTheorem), 3);
        assert!(r4.round_trip);
        let r5 = verify_rank(5).unwrap();
        assert_eq!((r5.cone.rays.len(), r5.cone.facets.len()), (6, 6));
        assert_eq!(r5.count(FacetClass::FacetTheorem), 6);
    }

    #[test]
    fn porta_text() {
        let ieq = porta_ieq(2, &[ints(&[0, 1]), ints(&[1, -2])]);
        assert!(ieq.contains("(  1) +x2 >= 0"));
        assert!(ieq.contains("(  2) +x1-2x2 >= 0"));
        let poi = porta_poi(2, &[ints(&[1, 0])]);
        assert!(poi.starts_with("DIM = 2\n\nCONV_SECTION\n0 0\n\nCONE_SECTION\n1 0\n"));
    }
}
