//! Changes of basis between the flag f-, h-, ℓ- and L-vectors, and the
//! generalized Dehn–Sommerville test.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::flag::{Basis, FlagVector};
use crate::rational::{q_frac, sign, Q};
use crate::subset::{bit, full, is_even_set, runs};

/// In place: `v[S] <- Σ_{T ⊆ S} v[T]`.
fn subset_sum(v: &mut [Q], n: usize) {
    for i in 0..n {
        let b = 1usize << i;
        for m in 0..v.len() {
            if m & b != 0 {
                let t = v[m ^ b].clone();
                v[m] += t;
            }
        }
    }
}

/// In place: `v[S] <- Σ_{T ⊆ S} (-1)^{|S \ T|} v[T]`.
fn subset_mobius(v: &mut [Q], n: usize) {
    for i in 0..n {
        let b = 1usize << i;
        for m in 0..v.len() {
            if m & b != 0 {
                let t = v[m ^ b].clone();
                v[m] -= t;
            }
        }
    }
}

/// In place: `v[S] <- Σ_{T ⊇ S} v[T]`.
fn superset_sum(v: &mut [Q], n: usize) {
    for i in 0..n {
        let b = 1usize << i;
        for m in 0..v.len() {
            if m & b == 0 {
                let t = v[m | b].clone();
                v[m] += t;
            }
        }
    }
}

fn build(v: &FlagVector, basis: Basis, entries: Vec<Q>) -> FlagVector {
    FlagVector::from_entries(v.n(), basis, entries).expect("same dimension")
}

pub fn f_to_h(v: &FlagVector) -> Result<FlagVector> {
    v.expect_basis(Basis::F)?;
    let mut e = v.entries().to_vec();
    subset_mobius(&mut e, v.n());
    Ok(build(v, Basis::H, e))
}

pub fn h_to_f(v: &FlagVector) -> Result<FlagVector> {
    v.expect_basis(Basis::H)?;
    let mut e = v.entries().to_vec();
    subset_sum(&mut e, v.n());
    Ok(build(v, Basis::F, e))
}

/// `ℓ_S = (-1)^{n-|S|} Σ_{T ⊇ [1,n]∖S} (-1)^{|T|} f_T`.
pub fn f_to_ell(v: &FlagVector) -> Result<FlagVector> {
    v.expect_basis(Basis::F)?;
    Ok(complement_transform(v, Basis::Ell, &-Q::one()))
}

/// `L_S = (-1)^{n-|S|} Σ_{T ⊇ [1,n]∖S} (-1/2)^{|T|} f_T`.
pub fn f_to_l(v: &FlagVector) -> Result<FlagVector> {
    v.expect_basis(Basis::F)?;
    Ok(complement_transform(v, Basis::L, &q_frac(-1, 2)))
}

fn complement_transform(v: &FlagVector, basis: Basis, weight: &Q) -> FlagVector {
    let n = v.n();
    let mut g: Vec<Q> = v
        .entries()
        .iter()
        .enumerate()
        .map(|(m, f)| f * num_traits::pow(weight.clone(), (m as u32).count_ones() as usize))
        .collect();
    superset_sum(&mut g, n);
    let all = full(n) as usize;
    let e = (0..=all).map(|s| sign(n - (s as u32).count_ones() as usize) * &g[all ^ s]).collect();
    build(v, basis, e)
}

/// `f_S = Σ_{T ⊆ [1,n]∖S} ℓ_T`.
pub fn ell_to_f(v: &FlagVector) -> Result<FlagVector> {
    v.expect_basis(Basis::Ell)?;
    let n = v.n();
    let mut z = v.entries().to_vec();
    subset_sum(&mut z, n);
    let all = full(n) as usize;
    Ok(build(v, Basis::F, (0..=all).map(|s| z[all ^ s].clone()).collect()))
}

/// `f_S = 2^{|S|} Σ_{T ⊆ [1,n]∖S} L_T`.
pub fn l_to_f(v: &FlagVector) -> Result<FlagVector> {
    v.expect_basis(Basis::L)?;
    let n = v.n();
    let mut z = v.entries().to_vec();
    subset_sum(&mut z, n);
    let all = full(n) as usize;
    let e = (0..=all).map(|s| crate::rational::pow2((s as u32).count_ones() as usize) * &z[all ^ s]).collect();
    Ok(build(v, Basis::F, e))
}

pub fn to_f(v: &FlagVector) -> Result<FlagVector> {
    match v.basis() {
        Basis::F => Ok(v.clone()),
        Basis::H => h_to_f(v),
        Basis::Ell => ell_to_f(v),
        Basis::L => l_to_f(v),
    }
}

/// Converts between any two bases (through the f-basis).
pub fn convert(v: &FlagVector, target: Basis) -> Result<FlagVector> {
    if v.basis() == target {
        return Ok(v.clone());
    }
    let f = to_f(v)?;
    match target {
        Basis::F => Ok(f),
        Basis::H => f_to_h(&f),
        Basis::Ell => f_to_ell(&f),
        Basis::L => f_to_l(&f),
    }
}

/// Result of the Dehn–Sommerville test; `witness` is the first failing set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnSommerville {
    pub holds: bool,
    pub witness: Option<u32>,
}

/// True iff `L_S = 0` for every non-even `S`.
pub fn check_dehn_sommerville(v: &FlagVector) -> Result<DehnSommerville> {
    v.expect_basis(Basis::L)?;
    let witness = (0..=full(v.n())).find(|&s| !is_even_set(s) && !v.get(s).is_zero());
    Ok(DehnSommerville { holds: witness.is_none(), witness })
}

/// One generalized Dehn–Sommerville relation: `S` together with a maximal
/// interval `[i,k]` of `[1,n]∖S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BayerBilleraRelation {
    pub set: u32,
    pub lo: usize,
    pub hi: usize,
}

/// Evaluates `((-1)^{i-1} + (-1)^{k+1}) f_S + Σ_{j=i}^k (-1)^j f_{S∪{j}}`.
pub fn bayer_billera_value(f: &FlagVector, rel: BayerBilleraRelation) -> Q {
    let mut total = (sign(rel.lo - 1) + sign(rel.hi + 1)) * f.get(rel.set);
    for j in rel.lo..=rel.hi {
        total += sign(j) * f.get(rel.set | bit(j));
    }
    total
}

/// The first relation violated by an f-vector, if any.
pub fn bayer_billera_violation(f: &FlagVector) -> Result<Option<BayerBilleraRelation>> {
    f.expect_basis(Basis::F)?;
    let n = f.n();
    for s in 0..=full(n) {
        for (lo, hi) in runs(full(n) & !s) {
            let rel = BayerBilleraRelation { set: s, lo, hi };
            if !bayer_billera_value(f, rel).is_zero() {
                return Ok(Some(rel));
            }
        }
    }
    Ok(None)
}

/// Number of even subsets of `[1,n]`: `e_0 = e_1 = 1`, `e_n = e_{n-1} + e_{n-2}`.
pub fn fibonacci_dimension(n: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 1..n.max(1) {
        (a, b) = (b, a + b);
    }
    if n == 0 {
        1
    } else {
        b
    }
}
