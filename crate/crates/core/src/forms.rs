//! Linear forms on flag vectors: the Inequality-Lemma and ijk families,
//! their graded analogues, the facet candidates of the even cone, and the
//! convolution product that splits a poset at a middle rank.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag::{Basis, FlagVector};
use crate::poset::GradedPoset;
use crate::rational::{format_q, parse_q, pow2, primitive, q, sign, Q};
use crate::subset::{bit, full, interval_mask, is_even_set, key, parse_key, runs, submasks, MAX_N};
use crate::transforms::convert;

/// Where a form comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    InequalityLemma { t: u32, v: u32 },
    GradedInequalityLemma { t: u32, v: u32 },
    Ijk { i: usize, j: usize, k: usize },
    GradedIjk { i: usize, j: usize, k: usize },
    FacetTheorem { m: u32, v: u32 },
    Ineq0,
    Convolution(Box<Provenance>, Box<Provenance>),
    Custom,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::InequalityLemma { t, v } => write!(f, "INEQ_LEMMA(T={{{}}};V={{{}}})", key(*t), key(*v)),
            Provenance::GradedInequalityLemma { t, v } => {
                write!(f, "GRADED_INEQ_LEMMA(T={{{}}};V={{{}}})", key(*t), key(*v))
            }
            Provenance::Ijk { i, j, k } => write!(f, "IJK({i},{j},{k})"),
            Provenance::GradedIjk { i, j, k } => write!(f, "GRADED_IJK({i},{j},{k})"),
            Provenance::FacetTheorem { m, v } => write!(f, "FACET_THM(M={{{}}};V={{{}}})", key(*m), key(*v)),
            Provenance::Ineq0 => f.write_str("INEQ0"),
            Provenance::Convolution(a, b) => write!(f, "CONVOLUTION({a}*{b})"),
            Provenance::Custom => f.write_str("CUSTOM"),
        }
    }
}

fn parse_named_set(s: &str, name: &str) -> Result<u32> {
    let body = s
        .strip_prefix(name)
        .and_then(|r| r.strip_prefix("={"))
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {name}={{...}} in {s:?}")))?;
    parse_key(body, MAX_N)
}

fn parse_two_sets(body: &str, first: &str, second: &str) -> Result<(u32, u32)> {
    let (a, b) = body.split_once(';').ok_or_else(|| Error::Parse(format!("bad provenance arguments {body:?}")))?;
    Ok((parse_named_set(a, first)?, parse_named_set(b, second)?))
}

fn parse_triple(body: &str) -> Result<(usize, usize, usize)> {
    let parts: Vec<usize> = body
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad index in {body:?}"))))
        .collect::<Result<_>>()?;
    match parts[..] {
        [i, j, k] => Ok((i, j, k)),
        _ => Err(Error::Parse(format!("expected three indices in {body:?}"))),
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "INEQ0" => return Ok(Provenance::Ineq0),
            "CUSTOM" => return Ok(Provenance::Custom),
            _ => {}
        }
        let (head, body) = s
            .split_once('(')
            .and_then(|(h, rest)| rest.strip_suffix(')').map(|b| (h, b)))
            .ok_or_else(|| Error::Parse(format!("unknown provenance {s:?}")))?;
        match head {
            "INEQ_LEMMA" => parse_two_sets(body, "T", "V").map(|(t, v)| Provenance::InequalityLemma { t, v }),
            "GRADED_INEQ_LEMMA" => {
                parse_two_sets(body, "T", "V").map(|(t, v)| Provenance::GradedInequalityLemma { t, v })
            }
            "FACET_THM" => parse_two_sets(body, "M", "V").map(|(m, v)| Provenance::FacetTheorem { m, v }),
            "IJK" => parse_triple(body).map(|(i, j, k)| Provenance::Ijk { i, j, k }),
            "GRADED_IJK" => parse_triple(body).map(|(i, j, k)| Provenance::GradedIjk { i, j, k }),
            "CONVOLUTION" => {
                let mut depth = 0i32;
                for (idx, ch) in body.char_indices() {
                    match ch {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        '*' if depth == 0 => {
                            let a = body[..idx].parse()?;
                            let b = body[idx + 1..].parse()?;
                            return Ok(Provenance::Convolution(Box::new(a), Box::new(b)));
                        }
                        _ => {}
                    }
                }
                Err(Error::Parse(format!("convolution without '*': {s:?}")))
            }
            _ => Err(Error::Parse(format!("unknown provenance {s:?}"))),
        }
    }
}

/// `Σ_S coeffs[S] · v_S` for flag vectors `v` of size `n` in `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    n: usize,
    basis: Basis,
    coeffs: BTreeMap<u32, Q>,
    provenance: Provenance,
}

impl LinearForm {
    pub fn new(n: usize, basis: Basis, provenance: Provenance) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::RankOverflow(n));
        }
        Ok(Self { n, basis, coeffs: BTreeMap::new(), provenance })
    }

    pub fn from_coeffs(
        n: usize,
        basis: Basis,
        coeffs: impl IntoIterator<Item = (u32, Q)>,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut form = Self::new(n, basis, provenance)?;
        for (s, c) in coeffs {
            form.add_term(s, c)?;
        }
        Ok(form)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The rank of the posets this form applies to.
    pub fn rank(&self) -> usize {
        self.n + 1
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Q> {
        &self.coeffs
    }

    pub fn coefficient(&self, s: u32) -> Q {
        self.coeffs.get(&s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn add_term(&mut self, s: u32, c: Q) -> Result<()> {
        if s & !full(self.n) != 0 {
            return Err(Error::Parse(format!("set {{{}}} outside [1,{}]", key(s), self.n)));
        }
        let entry = self.coeffs.entry(s).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), ..self.clone() };
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(s, v)| (*s, v * c)).collect();
        }
        out
    }

    /// Sum of two forms in the same basis; the provenance of `self` is kept.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.expect_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(*s, c.clone())?;
        }
        Ok(out)
    }

    fn expect_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.basis != other.basis {
            return Err(Error::WrongBasis { expected: self.basis.to_string(), found: other.basis.to_string() });
        }
        Ok(())
    }

    /// Evaluates on `v`, converting `v` to this form's basis first.
    pub fn evaluate(&self, v: &FlagVector) -> Result<Q> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.n() });
        }
        let w = convert(v, self.basis)?;
        Ok(self.coeffs.iter().fold(Q::zero(), |acc, (s, c)| acc + c * w.get(*s)))
    }

    pub fn evaluate_poset(&self, p: &GradedPoset) -> Result<Q> {
        self.evaluate(&p.flag_f_vector()?)
    }

    /// The same functional written in another basis.
    pub fn to_basis(&self, target: Basis) -> Result<Self> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut out = Self::new(self.n, target, self.provenance.clone())?;
        let mut unit = FlagVector::zero(self.n, target)?;
        for s in 0..=full(self.n) {
            unit.set(s, Q::one());
            out.add_term(s, self.evaluate(&unit)?)?;
            unit.set(s, Q::zero());
        }
        Ok(out)
    }

    /// Restriction to the even-set coordinates of the L-basis, where the
    /// Eulerian flag vectors live.
    pub fn even_l_part(&self) -> Result<Self> {
        let l = self.to_basis(Basis::L)?;
        let coeffs = l.coeffs.into_iter().filter(|(s, _)| is_even_set(*s)).collect();
        Ok(Self { coeffs, ..l })
    }

    /// Primitive integer coefficients on the even L-coordinates. Two forms
    /// define the same inequality on Eulerian posets iff these agree.
    pub fn normal_key(&self) -> Result<Vec<(u32, BigInt)>> {
        let even = self.even_l_part()?;
        let values: Vec<Q> = even.coeffs.values().cloned().collect();
        Ok(even.coeffs.keys().copied().zip(primitive(&values)).collect())
    }

    pub fn to_json(&self) -> LinearFormJson {
        LinearFormJson {
            n: self.n,
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(s, c)| (key(*s), format_q(c))).collect(),
            provenance: self.provenance.to_string(),
        }
    }

    pub fn from_json(j: &LinearFormJson) -> Result<Self> {
        let mut form = Self::new(j.n, j.basis, j.provenance.parse()?)?;
        for (k, c) in &j.coeffs {
            form.add_term(parse_key(k, j.n)?, parse_q(c)?)?;
        }
        Ok(form)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let letter = match self.basis {
            Basis::F => "f",
            Basis::H => "h",
            Basis::Ell => "ℓ",
            Basis::L => "L",
        };
        for (idx, (s, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "{letter}_{{{}}}", key(*s))?;
        }
        Ok(())
    }
}

/// Wire format: `{ "n", "basis", "coeffs": { "1,4": "-2", ... }, "provenance" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFormJson {
    pub n: usize,
    pub basis: Basis,
    pub coeffs: BTreeMap<String, String>,
    pub provenance: String,
}

fn check_lemma_hypothesis(n: usize, v: u32, t: u32) -> Result<()> {
    if v & !full(n) != 0 {
        return Err(Error::Hypothesis(format!("V={{{}}} is not a subset of [1,{n}]", key(v))));
    }
    if t & !v != 0 {
        return Err(Error::Hypothesis(format!("T={{{}}} is not a subset of V={{{}}}", key(t), key(v))));
    }
    for (a, b) in runs(v) {
        if (t & interval_mask(a, b)).count_ones() > 1 {
            return Err(Error::Hypothesis(format!("T meets the interval [{a},{b}] of V more than once")));
        }
    }
    Ok(())
}

fn lemma_f_form(n: usize, v: u32, t: u32, weight: i64, provenance: Provenance) -> Result<LinearForm> {
    check_lemma_hypothesis(n, v, t)?;
    let s = full(n) & !v;
    let mut form = LinearForm::new(n, Basis::F, provenance)?;
    for r in submasks(t) {
        let missing = (t & !r).count_ones();
        let c = num_traits::pow(q(weight), missing as usize);
        form.add_term(s | r, c)?;
    }
    Ok(form)
}

/// `Σ_{R ⊆ T} (-2)^{|T∖R|} f_{S ∪ R}` with `S = [1,n] ∖ V`; nonnegative on
/// Eulerian posets when each maximal interval of `V` meets `T` at most once.
pub fn inequality_lemma_form(n: usize, v: u32, t: u32) -> Result<LinearForm> {
    lemma_f_form(n, v, t, -2, Provenance::InequalityLemma { t, v })
}

/// The L-basis version `(-1)^{|T|} Σ_{T ⊆ Q ⊆ V} L_Q`. It is the F-form
/// divided by `2^{|S|+|T|}`.
pub fn inequality_lemma_l_form(n: usize, v: u32, t: u32) -> Result<LinearForm> {
    check_lemma_hypothesis(n, v, t)?;
    let sgn = sign(t.count_ones() as usize);
    let coeffs = submasks(v & !t).map(|extra| (t | extra, sgn.clone()));
    LinearForm::from_coeffs(n, Basis::L, coeffs, Provenance::InequalityLemma { t, v })
}

/// `Σ_{R ⊆ T} (-1)^{|T∖R|} f_{S ∪ R}`, nonnegative on every graded poset.
pub fn graded_inequality_lemma_form(n: usize, v: u32, t: u32) -> Result<LinearForm> {
    lemma_f_form(n, v, t, -1, Provenance::GradedInequalityLemma { t, v })
}

fn check_ijk(n: usize, i: usize, j: usize, k: usize) -> Result<()> {
    if !(1 <= i && i < j && j < k && k <= n) {
        return Err(Error::Hypothesis(format!("need 1 <= i < j < k <= {n}, got ({i},{j},{k})")));
    }
    Ok(())
}

/// `f_{ik} - 2f_i - 2f_k + 2f_j`.
pub fn ijk_form(n: usize, i: usize, j: usize, k: usize) -> Result<LinearForm> {
    check_ijk(n, i, j, k)?;
    let coeffs = [(bit(i) | bit(k), q(1)), (bit(i), q(-2)), (bit(k), q(-2)), (bit(j), q(2))];
    LinearForm::from_coeffs(n, Basis::F, coeffs, Provenance::Ijk { i, j, k })
}

/// `f_{ik} - f_i - f_k + f_j`, nonnegative on every graded poset.
pub fn graded_ijk_form(n: usize, i: usize, j: usize, k: usize) -> Result<LinearForm> {
    check_ijk(n, i, j, k)?;
    let coeffs = [(bit(i) | bit(k), q(1)), (bit(i), q(-1)), (bit(k), q(-1)), (bit(j), q(1))];
    LinearForm::from_coeffs(n, Basis::F, coeffs, Provenance::GradedIjk { i, j, k })
}

/// Whether `(M, V)` satisfies the hypotheses of the facet theorem, and
/// with `strict` also the condition guaranteeing distinct facets.
pub fn is_facet_pair(n: usize, m: u32, v: u32, strict: bool) -> bool {
    if v & !full(n) != 0 || m & !v != 0 {
        return false;
    }
    // Positions 0..=n+1 shifted up by one so that 0 gets a bit.
    let shifted_complement = full(n + 2) & !(v << 1);
    let gaps_small = runs(shifted_complement).iter().all(|&(a, b)| b - a < 3);
    if !gaps_small {
        return false;
    }
    let in_m = |x: isize| x >= 1 && x <= n as isize && m & bit(x as usize) != 0;
    runs(v).into_iter().all(|(a, b)| {
        if b - a < 1 {
            return false;
        }
        let part = m & interval_mask(a, b);
        let shape_ok = part == 0 || part == interval_mask(a, a + 1) || part == interval_mask(b - 1, b);
        let (ai, bi) = (a as isize, b as isize);
        let left_ok = in_m(ai) || ai - 2 == -1 || in_m(ai - 2);
        let right_ok = in_m(bi) || bi + 2 == n as isize + 2 || in_m(bi + 2);
        let strict_ok = !strict || b - a != 2 || part == 0;
        shape_ok && left_ok && right_ok && strict_ok
    })
}

/// `(-1)^{|M|/2} Σ_{M ⊆ Q ⊆ V} L_Q`.
pub fn facet_theorem_form(n: usize, m: u32, v: u32) -> Result<LinearForm> {
    let provenance = if m == 0 { Provenance::Ineq0 } else { Provenance::FacetTheorem { m, v } };
    let sgn = sign((m.count_ones() / 2) as usize);
    let coeffs = submasks(v & !m).map(|extra| (m | extra, sgn.clone()));
    LinearForm::from_coeffs(n, Basis::L, coeffs, provenance)
}

/// Every facet-theorem form on `[1,n]`, ordered by `(V, M)`. In strict mode
/// the forms are pairwise distinct.
pub fn facet_theorem_candidates(n: usize, strict: bool) -> Vec<LinearForm> {
    assert!(n <= MAX_N, "n too large");
    let mut out = Vec::new();
    for v in 0..=full(n) {
        for m in submasks(v) {
            if is_facet_pair(n, m, v, strict) {
                out.push(facet_theorem_form(n, m, v).expect("n within range"));
            }
        }
    }
    out
}

fn expect_basis(a: &LinearForm, b: &LinearForm, basis: Basis) -> Result<()> {
    for form in [a, b] {
        if form.basis != basis {
            return Err(Error::WrongBasis { expected: basis.to_string(), found: form.basis.to_string() });
        }
    }
    Ok(())
}

fn convolve_with(a: &LinearForm, b: &LinearForm, join: impl Fn(u32, u32) -> u32, factor: Q) -> Result<LinearForm> {
    let n = a.rank() + b.rank() - 1;
    let provenance = Provenance::Convolution(Box::new(a.provenance.clone()), Box::new(b.provenance.clone()));
    let mut out = LinearForm::new(n, a.basis, provenance)?;
    for (s, x) in &a.coeffs {
        for (t, y) in &b.coeffs {
            out.add_term(join(*s, *t), x * y * &factor)?;
        }
    }
    Ok(out)
}

/// `f^m_S · f^{m'}_T = f^{m+m'}_{S ∪ {m} ∪ (T+m)}`, where `m` is the rank of `a`.
pub fn convolve_f(a: &LinearForm, b: &LinearForm) -> Result<LinearForm> {
    expect_basis(a, b, Basis::F)?;
    let m = a.rank();
    convolve_with(a, b, |s, t| s | bit(m) | (t << m), Q::one())
}

/// `ℓ^m_S · ℓ^{m'}_T = ℓ^{m+m'}_{S ∪ (T+m)}`.
pub fn convolve_ell(a: &LinearForm, b: &LinearForm) -> Result<LinearForm> {
    expect_basis(a, b, Basis::Ell)?;
    let m = a.rank();
    convolve_with(a, b, |s, t| s | (t << m), Q::one())
}

/// `L^m_S · L^{m'}_T = 2 L^{m+m'}_{S ∪ (T+m)}`.
pub fn convolve_l(a: &LinearForm, b: &LinearForm) -> Result<LinearForm> {
    expect_basis(a, b, Basis::L)?;
    let m = a.rank();
    convolve_with(a, b, |s, t| s | (t << m), q(2))
}

/// Dispatches on the common basis of the operands.
pub fn convolve(a: &LinearForm, b: &LinearForm) -> Result<LinearForm> {
    match a.basis {
        Basis::F => convolve_f(a, b),
        Basis::Ell => convolve_ell(a, b),
        Basis::L => convolve_l(a, b),
        Basis::H => {
            let fa = a.to_basis(Basis::F)?;
            let fb = b.to_basis(Basis::F)?;
            convolve_f(&fa, &fb)?.to_basis(Basis::H)
        }
    }
}

/// `f^m_∅`, the form counting nothing but the chain `0̂ < 1̂` at rank `m`.
pub fn basic_zero(rank: usize) -> LinearForm {
    LinearForm::from_coeffs(rank - 1, Basis::F, [(0, q(1))], Provenance::InequalityLemma { t: 0, v: full(rank - 1) })
        .expect("rank within range")
}

/// `f^m_1 - 2f^m_∅`, the smallest Inequality-Lemma form with `T = {1}`.
pub fn basic_atom(rank: usize) -> Result<LinearForm> {
    if rank < 2 {
        return Err(Error::Hypothesis("f_1 needs rank at least 2".into()));
    }
    inequality_lemma_form(rank - 1, full(rank - 1), bit(1))
}

/// `Σ_{x of rank m} a([0̂,x]) · b([x,1̂])`, the interval-splitting value that a
/// convolution product must reproduce.
pub fn split_evaluation(a: &LinearForm, b: &LinearForm, p: &GradedPoset) -> Result<Q> {
    let m = a.rank();
    if m + b.rank() != p.rank() {
        return Err(Error::DimensionMismatch { expected: p.rank(), found: m + b.rank() });
    }
    let mut total = Q::zero();
    for &x in p.layer(m) {
        let lower = p.interval(p.bottom(), x)?;
        let upper = p.interval(x, p.top())?;
        total += a.evaluate_poset(&lower)? * b.evaluate_poset(&upper)?;
    }
    Ok(total)
}

/// The factor `2^{|S|+|T|}` between an Inequality-Lemma F-form and its L-twin.
pub fn lemma_twin_scale(n: usize, v: u32, t: u32) -> Q {
    let s = full(n) & !v;
    pow2((s.count_ones() + t.count_ones()) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_lattice, chain, horizontal_double};
    use crate::rational::q_frac;

    #[test]
    fn lemma_example_at_n9() {
        let s = bit(1) | bit(7) | bit(9);
        let v = full(9) & !s;
        let form = inequality_lemma_form(9, v, bit(4)).unwrap();
        assert_eq!(form.coefficient(s | bit(4)), q(1));
        assert_eq!(form.coefficient(s), q(-2));
        assert_eq!(form.coeffs().len(), 2);
    }

    #[test]
    fn lemma_hypothesis() {
        assert!(inequality_lemma_form(4, 0b1111, 0b0011).is_err());
        assert!(inequality_lemma_form(4, 0b1011, 0b1001).is_ok());
        assert!(inequality_lemma_form(4, 0b0011, 0b0100).is_err());
        let f0 = inequality_lemma_form(3, full(3), 0).unwrap();
        assert_eq!(f0.coeffs().iter().collect::<Vec<_>>(), vec![(&0, &q(1))]);
    }

    #[test]
    fn lemma_twins_agree() {
        for (n, v, t) in [(3, 0b111, 0b010), (4, 0b1011, 0b1001), (5, 0b11011, 0b00010), (4, 0b0110, 0)] {
            let f = inequality_lemma_form(n, v, t).unwrap();
            let l = inequality_lemma_l_form(n, v, t).unwrap();
            let converted = f.to_basis(Basis::L).unwrap();
            assert_eq!(converted, l.scale(&lemma_twin_scale(n, v, t)).with_provenance(f.provenance().clone()));
        }
    }

    #[test]
    fn ijk_on_boolean_and_chain() {
        let form = ijk_form(3, 1, 2, 3).unwrap();
        assert_eq!(form.evaluate_poset(&boolean_lattice(4)).unwrap(), q(8));
        assert_eq!(form.evaluate_poset(&horizontal_double(&chain(4))).unwrap(), q(0));
        assert!(ijk_form(3, 2, 2, 3).is_err());
    }

    #[test]
    fn graded_forms_on_chains() {
        let c = chain(5);
        assert_eq!(graded_ijk_form(4, 1, 2, 4).unwrap().evaluate_poset(&c).unwrap(), q(0));
        let g = graded_inequality_lemma_form(4, full(4), bit(2)).unwrap();
        assert_eq!(g.evaluate_poset(&c).unwrap(), q(0));
    }

    #[test]
    fn facet_candidate_counts() {
        let distinct = |n: usize| {
            let mut keys: Vec<_> = facet_theorem_candidates(n, true).iter().map(|f| f.normal_key().unwrap()).collect();
            let total = keys.len();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), total, "strict candidates must be distinct at n={n}");
            total
        };
        assert_eq!(distinct(1), 1);
        assert_eq!(distinct(2), 2);
        assert_eq!(distinct(3), 3);
        assert_eq!(distinct(4), 6);
        assert_eq!(distinct(5), 10);
        assert_eq!(distinct(6), 15);
    }

    #[test]
    fn empty_m_forces_full_v() {
        for n in 2..7 {
            let zero: Vec<_> = facet_theorem_candidates(n, false).into_iter().filter(|f| f.provenance() == &Provenance::Ineq0).collect();
            assert_eq!(zero.len(), 1);
            assert_eq!(zero[0].coeffs().len(), 1 << n);
        }
    }

    #[test]
    fn convolution_rules() {
        let f2 = basic_zero(2);
        let prod = convolve_f(&f2, &f2).unwrap();
        assert_eq!(prod.n(), 3);
        assert_eq!(prod.coeffs().iter().collect::<Vec<_>>(), vec![(&bit(2), &q(1))]);

        let a = LinearForm::from_coeffs(1, Basis::L, [(bit(1), q(1))], Provenance::Custom).unwrap();
        let b = LinearForm::from_coeffs(2, Basis::L, [(bit(2), q(1))], Provenance::Custom).unwrap();
        let p = convolve_l(&a, &b).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.coefficient(bit(1) | bit(4)), q(2));
        let a = a.with_provenance(Provenance::Custom);
        assert!(convolve_f(&a, &b).is_err());
    }

    #[test]
    fn convolution_commutes_with_basis_change() {
        let a = basic_atom(3).unwrap();
        let b = ijk_form(3, 1, 2, 3).unwrap();
        let fl = convolve_f(&a, &b).unwrap().to_basis(Basis::L).unwrap();
        let lf = convolve_l(&a.to_basis(Basis::L).unwrap(), &b.to_basis(Basis::L).unwrap()).unwrap();
        assert_eq!(fl, lf);
        let fe = convolve_f(&a, &b).unwrap().to_basis(Basis::Ell).unwrap();
        let ef = convolve_ell(&a.to_basis(Basis::Ell).unwrap(), &b.to_basis(Basis::Ell).unwrap()).unwrap();
        assert_eq!(fe, ef);
    }

    #[test]
    fn split_identity_on_boolean() {
        let a = basic_atom(2).unwrap();
        let b = basic_zero(2);
        let p = boolean_lattice(4);
        let prod = convolve_f(&a, &b).unwrap();
        assert_eq!(prod.evaluate_poset(&p).unwrap(), split_evaluation(&a, &b, &p).unwrap());
    }

    #[test]
    fn provenance_round_trip() {
        let p = Provenance::Convolution(
            Box::new(Provenance::InequalityLemma { t: 0b1, v: 0b1111 }),
            Box::new(Provenance::Convolution(Box::new(Provenance::Ijk { i: 1, j: 2, k: 3 }), Box::new(Provenance::Ineq0))),
        );
        assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        let f = p.to_string();
        assert!(f.starts_with("CONVOLUTION(INEQ_LEMMA(T={1};V={1,2,3,4})*"));
        assert!("BOGUS(1)".parse::<Provenance>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut form = ijk_form(4, 1, 3, 4).unwrap();
        form.add_term(0, q_frac(1, 2)).unwrap();
        let s = serde_json::to_string(&form.to_json()).unwrap();
        assert!(s.contains("\"provenance\":\"IJK(1,3,4)\""));
        let back: LinearFormJson = serde_json::from_str(&s).unwrap();
        assert_eq!(LinearForm::from_json(&back).unwrap(), form);
    }
}
