//! Exact integer and rational helpers: extended gcd, modular inverses,
//! negative (Hirzebruch-Jung) continued fractions and binomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Extended gcd: returns `(g, u, v)` with `g > 0` and `a*u + b*v = g`.
pub fn egcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Inverse of `b` modulo `a`, in `[1, a)`.
pub fn mod_inverse(b: &BigInt, a: &BigInt) -> Result<BigInt> {
    if *a < BigInt::from(2) {
        return Err(Error::Precondition(format!("modulus {a} must be at least 2")));
    }
    let not_invertible = || Error::NotInvertible {
        value: b.clone(),
        modulus: a.clone(),
    };
    let (g, u, _) = egcd(b, a).map_err(|_| not_invertible())?;
    if !g.is_one() {
        return Err(not_invertible());
    }
    Ok(u.mod_floor(a))
}

/// A negative continued fraction `[x1, ..., xm] = x1 - 1/(x2 - 1/(... - 1/xm))`
/// with every entry at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NegContFrac(Vec<BigInt>);

impl NegContFrac {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition("empty continued fraction".into()));
        }
        if let Some(bad) = entries.iter().find(|x| **x < BigInt::from(2)) {
            return Err(Error::InvalidContinuedFraction(bad.clone()));
        }
        Ok(NegContFrac(entries))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<BigInt>> for NegContFrac {
    type Error = Error;

    fn try_from(v: Vec<BigInt>) -> Result<Self> {
        NegContFrac::new(v)
    }
}

impl From<NegContFrac> for Vec<BigInt> {
    fn from(c: NegContFrac) -> Self {
        c.0
    }
}

impl fmt::Display for NegContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Expands `a/b` (with `a > b >= 1` coprime) by the ceiling recursion
/// `x = ceil(a/b)`, `a/b = x - b/(x*b - a)`.
pub fn neg_cont_frac(a: &BigInt, b: &BigInt) -> Result<NegContFrac> {
    if !b.is_positive() || b >= a || !a.gcd(b).is_one() {
        return Err(Error::InvalidFraction {
            numerator: a.clone(),
            denominator: b.clone(),
        });
    }
    let (mut num, mut den) = (a.clone(), b.clone());
    let mut entries = Vec::new();
    while !den.is_zero() {
        let x = num.div_ceil(&den);
        let next = &x * &den - &num;
        entries.push(x);
        num = std::mem::replace(&mut den, next);
    }
    NegContFrac::new(entries)
}

/// Evaluates a negative continued fraction back to a reduced rational.
pub fn eval_cont_frac(c: &NegContFrac) -> Rational {
    let mut entries = c.entries().iter().rev();
    // Entries are >= 2, so every tail value is > 1 and the reciprocal is safe.
    let mut acc = Rational::from_integer(entries.next().expect("non-empty").clone());
    for x in entries {
        acc = Rational::from_integer(x.clone()) - acc.recip();
    }
    acc
}

/// Binomial coefficient `C(k, j)`; zero when `j > k`.
pub fn binomial(k: u64, j: u64) -> BigInt {
    if j > k {
        return BigInt::zero();
    }
    let j = j.min(k - j);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    acc
}
