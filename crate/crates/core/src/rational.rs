//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn pow2(k: usize) -> Q {
    Q::from_integer(BigInt::one() << k)
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn format_q(v: &Q) -> String {
    v.to_string()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(num, den))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to itself.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    primitive_int(ints)
}

pub fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

pub fn to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= t;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let q: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    rank(&q)
}

pub fn is_nonnegative(v: &Q) -> bool {
    !v.is_negative()
}
