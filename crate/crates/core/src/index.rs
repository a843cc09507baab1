//! Index polynomials in noncommuting letters: the ab-, ce- and cd-indices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag::{Basis, FlagVector};
use crate::rational::{format_q, parse_q, pow2, sign, Q};
use crate::subset::{bit, full, is_even_set, runs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    AB,
    CE,
    CD,
}

impl Alphabet {
    fn letters(self) -> [char; 2] {
        match self {
            Alphabet::AB => ['a', 'b'],
            Alphabet::CE => ['c', 'e'],
            Alphabet::CD => ['c', 'd'],
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Alphabet::AB => "AB",
            Alphabet::CE => "CE",
            Alphabet::CD => "CD",
        };
        f.write_str(s)
    }
}

/// Weight of a word: string positions, with `d` counting two.
pub fn weight(word: &str) -> usize {
    word.chars().map(|c| if c == 'd' { 2 } else { 1 }).sum()
}

/// A formal sum of words of equal weight with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPolynomial {
    alphabet: Alphabet,
    n: usize,
    terms: BTreeMap<String, Q>,
}

impl IndexPolynomial {
    pub fn new(alphabet: Alphabet, n: usize) -> Self {
        Self { alphabet, n, terms: BTreeMap::new() }
    }

    pub fn from_terms(alphabet: Alphabet, n: usize, terms: impl IntoIterator<Item = (String, Q)>) -> Result<Self> {
        let mut p = Self::new(alphabet, n);
        for (w, c) in terms {
            p.add_term(&w, c)?;
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<String, Q> {
        &self.terms
    }

    pub fn coefficient(&self, word: &str) -> Q {
        self.terms.get(word).cloned().unwrap_or_else(Q::zero)
    }

    fn check_word(&self, word: &str) -> Result<()> {
        let letters = self.alphabet.letters();
        if let Some(c) = word.chars().find(|c| !letters.contains(c)) {
            return Err(Error::InvalidWord { word: word.into(), reason: format!("letter {c:?} not in {}", self.alphabet) });
        }
        if weight(word) != self.n {
            return Err(Error::InvalidWord { word: word.into(), reason: format!("weight {} != {}", weight(word), self.n) });
        }
        Ok(())
    }

    /// Adds `c * word`, dropping the term if it cancels.
    pub fn add_term(&mut self, word: &str, c: Q) -> Result<()> {
        self.check_word(word)?;
        let entry = self.terms.entry(word.to_string()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(word);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::new(self.alphabet, self.n);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect();
        }
        out
    }

    pub fn to_json(&self) -> IndexPolynomialJson {
        IndexPolynomialJson {
            alphabet: self.alphabet,
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), format_q(c))).collect(),
        }
    }

    pub fn from_json(j: &IndexPolynomialJson) -> Result<Self> {
        let mut p = Self::new(j.alphabet, j.n);
        for (w, c) in &j.terms {
            p.add_term(w, parse_q(c)?)?;
        }
        Ok(p)
    }
}

impl fmt::Display for IndexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}){w}")?;
            }
        }
        Ok(())
    }
}

/// Wire format: `{ "alphabet": "AB"|"CE"|"CD", "n", "terms": { "ccd": "p/q" } }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexPolynomialJson {
    pub alphabet: Alphabet,
    pub n: usize,
    pub terms: BTreeMap<String, String>,
}

/// `u_S`: letter `off` at positions outside `S`, `on` at positions in `S`.
pub fn subset_word(s: u32, n: usize, off: char, on: char) -> String {
    (1..=n).map(|i| if s & bit(i) != 0 { on } else { off }).collect()
}

fn word_subset(word: &str, on: char) -> u32 {
    word.chars().enumerate().filter(|&(_, c)| c == on).fold(0, |m, (i, _)| m | bit(i + 1))
}

fn from_vector(v: &FlagVector, alphabet: Alphabet) -> IndexPolynomial {
    let [off, on] = alphabet.letters();
    let mut p = IndexPolynomial::new(alphabet, v.n());
    for s in 0..=full(v.n()) {
        let c = v.get(s);
        if !c.is_zero() {
            p.terms.insert(subset_word(s, v.n(), off, on), c.clone());
        }
    }
    p
}

/// `Ψ(a,b) = Σ_S h_S u_S`.
pub fn ab_index(v: &FlagVector) -> Result<IndexPolynomial> {
    v.expect_basis(Basis::H)?;
    Ok(from_vector(v, Alphabet::AB))
}

/// ce-index: the coefficient of `u_S` (c off `S`, e on `S`) is `L_S`.
pub fn ce_index(v: &FlagVector) -> Result<IndexPolynomial> {
    v.expect_basis(Basis::L)?;
    Ok(from_vector(v, Alphabet::CE))
}

/// Reads the coefficients of an AB or CE polynomial back into a flag vector
/// (H or L basis respectively).
pub fn coefficients(p: &IndexPolynomial) -> Result<FlagVector> {
    let (basis, on) = match p.alphabet {
        Alphabet::AB => (Basis::H, 'b'),
        Alphabet::CE => (Basis::L, 'e'),
        Alphabet::CD => return Err(Error::WrongBasis { expected: "AB or CE".into(), found: "CD".into() }),
    };
    let mut v = FlagVector::zero(p.n, basis)?;
    for (w, c) in &p.terms {
        v.set(word_subset(w, on), c.clone());
    }
    Ok(v)
}

/// Start positions of the canonical pair decomposition of an even set: each
/// maximal run `[a,b]` splits as `[a,a+1], [a+2,a+3], ...`.
fn pair_starts(even: u32) -> u32 {
    let mut starts = 0;
    for (a, b) in runs(even) {
        let mut i = a;
        while i < b {
            starts |= bit(i);
            i += 2;
        }
    }
    starts
}

fn pairs_to_set(starts: u32) -> u32 {
    starts | (starts << 1)
}

/// cd-word whose `d`s occupy the pairs starting at `starts`.
pub fn cd_word_from_starts(starts: u32, n: usize) -> String {
    let mut w = String::new();
    let mut i = 1;
    while i <= n {
        if starts & bit(i) != 0 {
            w.push('d');
            i += 2;
        } else {
            w.push('c');
            i += 1;
        }
    }
    w
}

/// Positions occupied by `d`s in a cd-word (the even set `S(w)`).
pub fn d_positions(word: &str) -> Result<u32> {
    let mut set = 0;
    let mut pos = 1;
    for ch in word.chars() {
        match ch {
            'c' => pos += 1,
            'd' => {
                set |= bit(pos) | bit(pos + 1);
                pos += 2;
            }
            _ => return Err(Error::InvalidWord { word: word.into(), reason: format!("letter {ch:?} is not c or d") }),
        }
    }
    Ok(set)
}

/// Expands a cd-polynomial with `c = c` and `d = (cc - ee)/2`.
pub fn cd_to_ce(p: &IndexPolynomial) -> Result<IndexPolynomial> {
    if p.alphabet != Alphabet::CD {
        return Err(Error::WrongBasis { expected: "CD".into(), found: p.alphabet.to_string() });
    }
    let n = p.n;
    let mut out = IndexPolynomial::new(Alphabet::CE, n);
    for (w, c) in &p.terms {
        let starts = pair_starts(d_positions(w)?);
        let k = starts.count_ones() as usize;
        let scale = c / pow2(k);
        for sub in crate::subset::submasks(starts) {
            let e_set = pairs_to_set(sub);
            let coeff = &scale * sign(sub.count_ones() as usize);
            out.add_term(&subset_word(e_set, n, 'c', 'e'), coeff)?;
        }
    }
    Ok(out)
}

/// Rewrites a ce-polynomial in `c` and `d`. Every e-set must be even; the
/// cd-coefficients are then recovered by triangular elimination, starting
/// from the words with the most `d`s.
pub fn ce_to_cd(p: &IndexPolynomial) -> Result<IndexPolynomial> {
    if p.alphabet != Alphabet::CE {
        return Err(Error::WrongBasis { expected: "CE".into(), found: p.alphabet.to_string() });
    }
    let n = p.n;
    let mut beta: BTreeMap<u32, Q> = BTreeMap::new();
    for (w, c) in &p.terms {
        let e = word_subset(w, 'e');
        if !is_even_set(e) {
            return Err(Error::NotCdExpressible(w.clone()));
        }
        beta.insert(pair_starts(e), sign(e.count_ones() as usize / 2) * c);
    }
    // every cd-word of weight n, keyed by its pair starts
    let mut words: Vec<u32> = (0..=full(n)).filter(|&s| is_even_set(s)).map(pair_starts).collect();
    words.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    // gamma_w = alpha_w / 2^{k(w)}; beta'_E = Σ_{w ⊇ E} gamma_w
    let mut gamma: BTreeMap<u32, Q> = BTreeMap::new();
    for &e in &words {
        let mut g = beta.get(&e).cloned().unwrap_or_else(Q::zero);
        for (&w, gw) in &gamma {
            if w != e && w & e == e {
                g -= gw;
            }
        }
        if !g.is_zero() {
            gamma.insert(e, g);
        }
    }
    let mut out = IndexPolynomial::new(Alphabet::CD, n);
    for (starts, g) in gamma {
        out.add_term(&cd_word_from_starts(starts, n), g * pow2(starts.count_ones() as usize))?;
    }
    Ok(out)
}
