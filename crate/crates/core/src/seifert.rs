//! Seifert invariants of integral homology spheres `Σ(a_1, ..., a_n)`.
//!
//! Invariants are stored in the orientation where
//! `a_1 ⋯ a_n (Σ b_j/a_j − e) = −1`, with `1 <= b_j < a_j` for singular
//! fibers and `(1, 0)` for a regular fiber slot.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{mod_inverse, Rational};
use crate::error::{Error, Result};

/// Fiber orders `(a_1, ..., a_n)`: pairwise coprime, `a_j >= 2` for all but
/// the last entry, which may be 1 (a regular fiber).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>")]
pub struct Multiplicities(#[serde(with = "crate::serde_int::vec")] Vec<BigInt>);

impl Multiplicities {
    pub fn new(orders: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        for (j, a) in orders.iter().enumerate() {
            let last = j + 1 == orders.len();
            if !a.is_positive() || (!last && *a < two) {
                return Err(Error::InvalidMultiplicity(a.clone()));
            }
        }
        check_pairwise_coprime(&orders)?;
        Ok(Multiplicities(orders))
    }

    pub fn from_i64s(orders: &[i64]) -> Result<Self> {
        Self::new(orders.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fiber(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Product of all orders but the last (the `α` of surgery on the last fiber).
    pub fn alpha(&self) -> BigInt {
        match self.0.split_last() {
            Some((_, rest)) => rest.iter().product(),
            None => BigInt::one(),
        }
    }

    pub fn singular_count(&self) -> usize {
        self.0.iter().filter(|a| !a.is_one()).count()
    }

    /// A homology sphere with fewer than three singular fibers is `S^3`.
    pub fn is_s3(&self) -> bool {
        self.singular_count() < 3
    }
}

impl TryFrom<Vec<i64>> for Multiplicities {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Multiplicities::from_i64s(&v)
    }
}

impl fmt::Display for Multiplicities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for Multiplicities {
    type Err = Error;

    /// Parses `"a1,a2,...,an"` keeping the given order.
    fn from_str(s: &str) -> Result<Self> {
        Multiplicities::new(parse_orders(s)?)
    }
}

/// Parses a comma separated list of positive integers (no spaces).
pub fn parse_orders(s: &str) -> Result<Vec<BigInt>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            if tok.is_empty() || !tok.bytes().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad multiplicity {tok:?} in {s:?}")));
            }
            let a: BigInt = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {tok:?}")))?;
            if a.is_zero() {
                return Err(Error::InvalidMultiplicity(a));
            }
            Ok(a)
        })
        .collect()
}

fn check_pairwise_coprime(orders: &[BigInt]) -> Result<()> {
    for (i, a) in orders.iter().enumerate() {
        for b in &orders[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(Error::NotCoprime(a.clone(), b.clone()));
            }
        }
    }
    Ok(())
}

fn join(xs: &[BigInt]) -> String {
    xs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

/// Result of picking a fiber by its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSelection {
    /// Index of the chosen fiber in the input list; equals the input length
    /// when a regular fiber slot had to be appended.
    pub index: usize,
    pub appended: bool,
    /// The remaining singular orders sorted ascending, chosen fiber last.
    pub multiplicities: Multiplicities,
}

/// Selects the fiber of order `k` (or a regular fiber when `k = 1`) and
/// moves it to the last slot.
///
/// Other entries equal to 1 describe regular fibers and are dropped, since
/// `Σ(a_1, ..., a_n, 1) ≅ Σ(a_1, ..., a_n)`.
pub fn fiber_index_by_order(orders: &[BigInt], k: &BigInt) -> Result<FiberSelection> {
    if let Some(a) = orders.iter().find(|a| !a.is_positive()) {
        return Err(Error::InvalidMultiplicity(a.clone()));
    }
    if !k.is_positive() {
        return Err(Error::NoSuchFiber(k.clone()));
    }
    check_pairwise_coprime(orders)?;
    let found = orders.iter().position(|a| a == k);
    let (index, appended) = match found {
        Some(i) => (i, false),
        None if k.is_one() => (orders.len(), true),
        None => return Err(Error::NoSuchFiber(k.clone())),
    };
    let mut rest: Vec<BigInt> = orders
        .iter()
        .enumerate()
        .filter(|(i, a)| *i != index && !a.is_one())
        .map(|(_, a)| a.clone())
        .collect();
    rest.sort();
    rest.push(k.clone());
    Ok(FiberSelection {
        index,
        appended,
        multiplicities: Multiplicities::new(rest)?,
    })
}

/// Fiber selection with the default choice: the largest order.
pub fn default_fiber(orders: &[BigInt]) -> BigInt {
    orders.iter().max().cloned().unwrap_or_else(BigInt::one)
}

/// Unnormalized-or-normalized Seifert data `e, (a_1, b_1), ..., (a_n, b_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertInvariants {
    #[serde(with = "crate::serde_int")]
    pub e: BigInt,
    #[serde(with = "crate::serde_int::pairs")]
    pub pairs: Vec<(BigInt, BigInt)>,
}

impl SeifertInvariants {
    pub fn new(e: BigInt, pairs: Vec<(BigInt, BigInt)>) -> Self {
        SeifertInvariants { e, pairs }
    }

    pub fn from_i64s(e: i64, pairs: &[(i64, i64)]) -> Self {
        SeifertInvariants {
            e: BigInt::from(e),
            pairs: pairs
                .iter()
                .map(|&(a, b)| (BigInt::from(a), BigInt::from(b)))
                .collect(),
        }
    }

    pub fn orders(&self) -> Vec<BigInt> {
        self.pairs.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn multiplicities(&self) -> Result<Multiplicities> {
        Multiplicities::new(self.orders())
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn singular_count(&self) -> usize {
        self.pairs.iter().filter(|(a, _)| !a.is_one()).count()
    }

    pub fn is_s3(&self) -> bool {
        self.singular_count() < 3
    }

    /// `a_1 ⋯ a_n (Σ b_j/a_j − e)`.
    pub fn eq1_value(&self) -> Rational {
        let total: BigInt = self.pairs.iter().map(|(a, _)| a).product();
        let sum = self
            .pairs
            .iter()
            .fold(Rational::zero(), |acc, (a, b)| {
                acc + Rational::new(b.clone(), a.clone())
            });
        (sum - Rational::from_integer(self.e.clone())) * Rational::from_integer(total)
    }

    /// True iff `a_1 ⋯ a_n (Σ b_j/a_j − e) = rhs`.
    pub fn verify_eq1(&self, rhs: i32) -> bool {
        if self.pairs.iter().any(|(a, _)| a.is_zero()) {
            return false;
        }
        self.eq1_value() == Rational::from_integer(BigInt::from(rhs))
    }

    /// True when `1 <= b < a` for singular pairs and `(1, 0)` for regular ones.
    pub fn is_canonical(&self) -> bool {
        self.pairs.iter().all(|(a, b)| {
            if a.is_one() {
                b.is_zero()
            } else {
                *a > BigInt::one() && b.is_positive() && b < a
            }
        })
    }

    /// Full check for canonical data of a homology sphere in the standard
    /// orientation.
    pub fn validate(&self) -> Result<()> {
        if !self.is_canonical() {
            return Err(Error::Precondition(format!(
                "Seifert data {self} violates 1 <= b < a"
            )));
        }
        self.multiplicities()?;
        if !self.verify_eq1(-1) {
            return Err(Error::Precondition(format!(
                "Seifert data {self} does not describe a homology sphere with the standard orientation"
            )));
        }
        Ok(())
    }

    /// Data of the same manifold with reversed orientation; it satisfies the
    /// homology sphere equation with the opposite right-hand side.
    pub fn reverse_orientation(&self) -> SeifertInvariants {
        let singular = self.singular_count();
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| {
                if a.is_one() {
                    (a.clone(), b.clone())
                } else {
                    (a.clone(), a - b)
                }
            })
            .collect();
        SeifertInvariants {
            e: BigInt::from(singular) - &self.e,
            pairs,
        }
    }

    /// Last pair: the fiber surgeries act on.
    pub fn fiber(&self) -> Option<&(BigInt, BigInt)> {
        self.pairs.last()
    }

    /// Appends regular `(1, 0)` slots until there are at least `n` pairs.
    pub fn padded(&self, n: usize) -> SeifertInvariants {
        let mut out = self.clone();
        while out.pairs.len() < n {
            out.pairs.push((BigInt::one(), BigInt::zero()));
        }
        out
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={}", self.e)?;
        for (a, b) in &self.pairs {
            write!(f, ", ({a},{b})")?;
        }
        Ok(())
    }
}

/// Brings arbitrary pairs into the `1 <= b < a` (or `(1, 0)`) convention
/// using `(a, b) -> (a, b - a), e -> e - 1` and its inverse. The value
/// `Σ b_j/a_j − e` is unchanged.
pub fn canonicalize(e: &BigInt, pairs: &[(BigInt, BigInt)]) -> Result<SeifertInvariants> {
    let mut e = e.clone();
    let mut out = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        if !a.is_positive() {
            return Err(Error::InvalidMultiplicity(a.clone()));
        }
        if !a.gcd(b).is_one() {
            return Err(Error::NotCoprime(a.clone(), b.clone()));
        }
        let (q, r) = b.div_mod_floor(a);
        e -= q;
        out.push((a.clone(), r));
    }
    Ok(SeifertInvariants { e, pairs: out })
}

/// Seifert invariants of `Σ(a_1, ..., a_n)` in the standard orientation.
///
/// Each `b_j` is the unique residue in `[1, a_j)` with
/// `(A/a_j) b_j ≡ −1 (mod a_j)`, `A = a_1 ⋯ a_n`; then
/// `e = Σ b_j/a_j + 1/A`.
pub fn from_multiplicities(m: &Multiplicities) -> Result<SeifertInvariants> {
    let total: BigInt = m.orders().iter().product();
    let mut pairs = Vec::with_capacity(m.len());
    let mut numerator = BigInt::one();
    for a in m.orders() {
        if a.is_one() {
            pairs.push((a.clone(), BigInt::zero()));
            continue;
        }
        let cofactor = &total / a;
        let b = (-mod_inverse(&cofactor, a)?).mod_floor(a);
        numerator += &b * &cofactor;
        pairs.push((a.clone(), b));
    }
    let (e, rem) = numerator.div_rem(&total);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "central invariant of Σ({m}) is not an integer"
        )));
    }
    let inv = SeifertInvariants { e, pairs };
    if !inv.e.is_positive() || !inv.verify_eq1(-1) {
        return Err(Error::Internal(format!("bad Seifert data {inv} for Σ({m})")));
    }
    Ok(inv)
}

/// Orientation sign of an oriented homology sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i32() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Sign, String> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

/// `sign · Σ`, where `inv` describes `Σ` in the standard orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedSeifert {
    #[serde(with = "crate::serde_int")]
    pub e: BigInt,
    #[serde(with = "crate::serde_int::pairs")]
    pub pairs: Vec<(BigInt, BigInt)>,
    pub sign: Sign,
}

impl OrientedSeifert {
    pub fn new(sign: Sign, inv: SeifertInvariants) -> Self {
        OrientedSeifert {
            e: inv.e,
            pairs: inv.pairs,
            sign,
        }
    }

    pub fn invariants(&self) -> SeifertInvariants {
        SeifertInvariants {
            e: self.e.clone(),
            pairs: self.pairs.clone(),
        }
    }

    /// Seifert data presenting the oriented manifold itself: satisfies the
    /// homology sphere equation with right-hand side `−sign`.
    pub fn oriented_presentation(&self) -> SeifertInvariants {
        match self.sign {
            Sign::Positive => self.invariants(),
            Sign::Negative => self.invariants().reverse_orientation(),
        }
    }
}

impl fmt::Display for OrientedSeifert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = if self.sign == Sign::Negative { "-" } else { "" };
        write!(f, "{prefix}Σ({})", join(&self.invariants().orders()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn inv(e: i64, pairs: &[(i64, i64)]) -> SeifertInvariants {
        SeifertInvariants::from_i64s(e, pairs)
    }

    fn seifert(orders: &[i64]) -> SeifertInvariants {
        from_multiplicities(&Multiplicities::from_i64s(orders).unwrap()).unwrap()
    }

    /// Oracle: scan each residue for the congruence, then solve for `e`.
    fn brute_force(orders: &[i64]) -> (i64, Vec<i64>) {
        let total: i64 = orders.iter().product();
        let bs: Vec<i64> = orders
            .iter()
            .map(|&a| {
                if a == 1 {
                    0
                } else {
                    (1..a).find(|b| ((total / a) * b + 1) % a == 0).unwrap()
                }
            })
            .collect();
        let num: i64 = bs.iter().zip(orders).map(|(b, a)| b * (total / a)).sum::<i64>() + 1;
        assert_eq!(num % total, 0);
        (num / total, bs)
    }

    #[test]
    fn from_multiplicities_examples() {
        assert_eq!(seifert(&[2, 3, 5]), inv(2, &[(2, 1), (3, 2), (5, 4)]));
        assert_eq!(seifert(&[2, 3, 1]), inv(1, &[(2, 1), (3, 1), (1, 0)]));
        assert_eq!(seifert(&[2, 3, 7]), inv(1, &[(2, 1), (3, 1), (7, 1)]));
        assert_eq!(seifert(&[2, 3, 5]).e, big(2));
        assert_eq!(seifert(&[3, 5, 14]).e, big(2));
        assert_eq!(seifert(&[]), inv(1, &[]));
        assert_eq!(seifert(&[1]), inv(1, &[(1, 0)]));
    }

    #[test]
    fn from_multiplicities_matches_brute_force() {
        for orders in [
            vec![2, 3, 5],
            vec![2, 3, 7],
            vec![2, 3, 1],
            vec![5, 7, 11],
            vec![3, 5, 7, 11],
            vec![2, 3, 5, 7, 11],
            vec![4, 9, 25],
        ] {
            let (e, bs) = brute_force(&orders);
            let got = seifert(&orders);
            assert_eq!(got.e, big(e), "{orders:?}");
            let got_b: Vec<i64> = got.pairs.iter().map(|(_, b)| b.try_into().unwrap()).collect();
            assert_eq!(got_b, bs, "{orders:?}");
        }
    }

    #[test]
    fn rejects_bad_multiplicities() {
        assert!(matches!(
            Multiplicities::from_i64s(&[2, 4, 5]),
            Err(Error::NotCoprime(..))
        ));
        assert!(matches!(
            Multiplicities::from_i64s(&[2, 1, 5]),
            Err(Error::InvalidMultiplicity(_))
        ));
        assert!(Multiplicities::from_i64s(&[2, 3, 0]).is_err());
        assert!("2,3,x".parse::<Multiplicities>().is_err());
        assert!("2, 3".parse::<Multiplicities>().is_err());
        assert!("2,,3".parse::<Multiplicities>().is_err());
        assert_eq!(
            "2,3,5".parse::<Multiplicities>().unwrap(),
            Multiplicities::from_i64s(&[2, 3, 5]).unwrap()
        );
    }

    #[test]
    fn s3_flags() {
        assert!(Multiplicities::from_i64s(&[2, 3, 1]).unwrap().is_s3());
        assert!(Multiplicities::from_i64s(&[7]).unwrap().is_s3());
        assert!(Multiplicities::from_i64s(&[]).unwrap().is_s3());
        assert!(!Multiplicities::from_i64s(&[2, 3, 5]).unwrap().is_s3());
    }

    #[test]
    fn verify_eq1_examples() {
        let p = inv(2, &[(2, 1), (3, 2), (5, 4)]);
        assert!(p.verify_eq1(-1));
        assert!(!p.verify_eq1(1));
        assert!(!inv(1, &[(2, 1), (3, 1)]).verify_eq1(1));
        assert!(inv(1, &[(2, 1), (3, 1)]).verify_eq1(-1));
        assert!(inv(1, &[(2, 1), (3, 2)]).verify_eq1(1));
        for j in 0..3 {
            let mut q = p.clone();
            q.pairs[j].1 += 1;
            assert!(!q.verify_eq1(-1));
        }
    }

    #[test]
    fn reverse_orientation_examples() {
        let p = inv(2, &[(2, 1), (3, 2), (5, 4)]);
        let r = p.reverse_orientation();
        assert_eq!(r, inv(1, &[(2, 1), (3, 1), (5, 1)]));
        assert!(r.verify_eq1(1));
        assert_eq!(r.reverse_orientation(), p);

        let s = seifert(&[2, 3, 7]).reverse_orientation();
        assert_eq!(s, inv(2, &[(2, 1), (3, 2), (7, 6)]));
        assert!(s.verify_eq1(1));

        let t = seifert(&[2, 3, 1]);
        assert_eq!(t.reverse_orientation(), inv(1, &[(2, 1), (3, 2), (1, 0)]));
    }

    #[test]
    fn canonicalize_examples() {
        let raw = [(big(2), big(3)), (big(3), big(2)), (big(5), big(4))];
        let c = canonicalize(&big(3), &raw).unwrap();
        assert_eq!(c, inv(2, &[(2, 1), (3, 2), (5, 4)]));
        assert_eq!(canonicalize(&c.e, &c.pairs).unwrap(), c);
        let one = canonicalize(&big(1), &[(big(1), big(1))]).unwrap();
        assert_eq!(one, inv(0, &[(1, 0)]));
        let neg = canonicalize(&big(0), &[(big(7), big(-6))]).unwrap();
        assert_eq!(neg, inv(1, &[(7, 1)]));
        assert!(canonicalize(&big(0), &[(big(4), big(2))]).is_err());
    }

    #[test]
    fn fiber_selection() {
        let orders: Vec<BigInt> = [2, 3, 5].iter().map(|&a| big(a)).collect();
        let s = fiber_index_by_order(&orders, &big(5)).unwrap();
        assert_eq!(s.index, 2);
        assert!(!s.appended);
        let s = fiber_index_by_order(&orders, &big(1)).unwrap();
        assert_eq!(s.index, 3);
        assert!(s.appended);
        assert_eq!(s.multiplicities, Multiplicities::from_i64s(&[2, 3, 5, 1]).unwrap());
        assert!(matches!(
            fiber_index_by_order(&orders, &big(4)),
            Err(Error::NoSuchFiber(_))
        ));
        let shuffled: Vec<BigInt> = [7, 2, 5, 3].iter().map(|&a| big(a)).collect();
        let s = fiber_index_by_order(&shuffled, &big(5)).unwrap();
        assert_eq!(s.index, 2);
        assert_eq!(s.multiplicities, Multiplicities::from_i64s(&[2, 3, 7, 5]).unwrap());
        assert_eq!(default_fiber(&shuffled), big(7));
    }

    #[test]
    fn json_forms() {
        let o = OrientedSeifert::new(Sign::Negative, seifert(&[2, 3, 5]));
        let text = serde_json::to_string(&o).unwrap();
        assert_eq!(text, r#"{"e":2,"pairs":[[2,1],[3,2],[5,4]],"sign":-1}"#);
        let back: OrientedSeifert = serde_json::from_str(&text).unwrap();
        assert_eq!(back, o);
        let m: Multiplicities = serde_json::from_str("[2,3,5]").unwrap();
        assert_eq!(m.to_string(), "2,3,5");
        assert!(serde_json::from_str::<Multiplicities>("[2,4]").is_err());
    }
}
