//! `1/m` surgery on the last fiber of a Seifert homology sphere.
//!
//! With `α = a_1 ⋯ a_{n−1}` and `β = (α b_n + 1)/a_n`, surgery on the fiber
//! of order `a_n` gives `σ Σ(a_1, ..., a_{n−1}, |a_n − mα|)` where `σ` is the
//! sign of `a_n − mα`, and the core of the surgery is the new last fiber.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{mod_inverse, Rational};
use crate::error::{Error, Result};
use crate::lattice::d_of_manifold;
use crate::seifert::{canonicalize, from_multiplicities, Multiplicities, OrientedSeifert, SeifertInvariants, Sign};

/// Quantities attached to surgery on the last fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryContext {
    pub alpha: BigInt,
    pub beta: BigInt,
    /// `a_n = q α + r` with `0 < r < α`.
    pub q: BigInt,
    pub r: BigInt,
}

impl SurgeryContext {
    /// Requires canonical data with at least two singular fibers ahead of
    /// the last slot; otherwise the last fiber is an unknot in `S^3`.
    pub fn new(y: &SeifertInvariants) -> Result<Self> {
        y.validate()?;
        let m = y.multiplicities()?;
        if m.len() < 3 {
            return Err(Error::Precondition(format!(
                "surgery needs two singular fibers besides the chosen one; \
                 the last fiber of Σ({m}) is an unknot in S^3"
            )));
        }
        let (an, bn) = y.fiber().expect("non-empty");
        let alpha = m.alpha();
        let (beta, rem) = (&alpha * bn + BigInt::one()).div_rem(an);
        if !rem.is_zero() {
            return Err(Error::Internal(format!("β is not an integer for Σ({m})")));
        }
        let (q, r) = an.div_mod_floor(&alpha);
        if r.is_zero() {
            return Err(Error::Internal(format!("α divides a_n for Σ({m})")));
        }
        Ok(SurgeryContext { alpha, beta, q, r })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryResult {
    pub result: OrientedSeifert,
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub core_fiber_order: BigInt,
}

/// `1/m` surgery on the last fiber of `y`. The result keeps the core of the
/// surgery in the last slot.
pub fn surger_fiber(y: &SeifertInvariants, m: &BigInt) -> Result<SurgeryResult> {
    let ctx = SurgeryContext::new(y)?;
    let (an, bn) = y.fiber().expect("non-empty");
    if m.is_zero() {
        return Ok(SurgeryResult {
            result: OrientedSeifert::new(Sign::Positive, y.clone()),
            core_fiber_order: an.clone(),
        });
    }
    let new_order = an - m * &ctx.alpha;
    let head = &y.pairs[..y.n() - 1];
    let (sign, e, pairs) = if new_order.is_positive() {
        let last = (new_order.clone(), bn - m * &ctx.beta);
        (Sign::Positive, y.e.clone(), [head, &[last]].concat())
    } else if new_order.is_negative() {
        let flipped: Vec<(BigInt, BigInt)> = head.iter().map(|(a, b)| (a.clone(), a - b)).collect();
        let last = (-&new_order, m * (&ctx.alpha - &ctx.beta) + bn - an);
        (Sign::Negative, BigInt::from(y.n()) - &y.e, [flipped, vec![last]].concat())
    } else {
        return Err(Error::Internal("a_n − mα vanished".into()));
    };
    let inv = canonicalize(&e, &pairs)?;
    if !inv.verify_eq1(-1) {
        return Err(Error::Internal(format!("surgery produced invalid data {inv}")));
    }
    Ok(SurgeryResult {
        result: OrientedSeifert::new(sign, inv),
        core_fiber_order: new_order.abs(),
    })
}

/// Seifert data of `Σ(a_1, ..., a_{n−1}, α − a_n)` read off from those of
/// `y`: `n − e, (a_j, a_j − b_j), (α − a_n, b_n − β + α − a_n)`.
pub fn cross_case(y: &SeifertInvariants) -> Result<SeifertInvariants> {
    let ctx = SurgeryContext::new(y)?;
    let (an, bn) = y.fiber().expect("non-empty");
    if *an >= ctx.alpha {
        return Err(Error::Precondition(format!(
            "need a_n < α, got a_n = {an}, α = {}",
            ctx.alpha
        )));
    }
    let mut pairs: Vec<(BigInt, BigInt)> = y.pairs[..y.n() - 1]
        .iter()
        .map(|(a, b)| (a.clone(), a - b))
        .collect();
    pairs.push((&ctx.alpha - an, bn - &ctx.beta + &ctx.alpha - an));
    let out = SeifertInvariants::new(BigInt::from(y.n()) - &y.e, pairs);
    out.validate()
        .map_err(|e| Error::Internal(format!("crossing formula failed: {e}")))?;
    Ok(out)
}

/// Boundary slope of the fibration on the exterior of the last fiber:
/// `−b*/a_n` with `b* b_n ≡ 1 (mod a_n)`, and 0 for a regular fiber.
pub fn fiber_slope(y: &SeifertInvariants) -> Result<Rational> {
    let (an, bn) = y
        .fiber()
        .ok_or_else(|| Error::Precondition("no fibers".into()))?;
    if an.is_one() {
        return Ok(Rational::zero());
    }
    let inv = mod_inverse(bn, an)?;
    Ok(Rational::new(-inv, an.clone()))
}

/// Why the witness has infinite order in the homology cobordism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    /// The manifold itself has central invariant `e > 1`.
    CentralInvariant,
    /// `+1` surgery on a torus knot fiber of `S^3` gives `−Σ(p, q, pq − 1)`,
    /// whose central invariant is 2; these are also independently known to
    /// have infinite order.
    TorusKnot,
}

impl Justification {
    pub fn statement(&self) -> &'static str {
        match self {
            Justification::CentralInvariant => {
                "central Seifert invariant e > 1 implies infinite order in the homology cobordism group (Neumann-Zagier)"
            }
            Justification::TorusKnot => {
                "+1 surgery on a torus knot in S^3 gives -Σ(p,q,pq-1), of infinite order (Furuta; externally justified), \
                 with central Seifert invariant 2"
            }
        }
    }

    pub fn is_external(&self) -> bool {
        matches!(self, Justification::TorusKnot)
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.statement())
    }
}

impl Serialize for Justification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.statement())
    }
}

/// A surgery coefficient `1/m` whose result has infinite order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub m: BigInt,
    pub result: OrientedSeifert,
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub central: BigInt,
    pub justification: Justification,
}

/// Finds `m` such that `1/m` surgery on the last fiber has central
/// invariant greater than one: `m = 0` when `e > 1`, otherwise
/// `m = q + 1` with `a_n = qα + r`.
pub fn infinite_order_witness(y: &SeifertInvariants) -> Result<Witness> {
    y.validate()?;
    if y.n() < 3 {
        return Err(Error::UnknotInS3);
    }
    let ctx = SurgeryContext::new(y)?;
    if y.e > BigInt::one() {
        return Ok(Witness {
            m: BigInt::zero(),
            result: OrientedSeifert::new(Sign::Positive, y.clone()),
            central: y.e.clone(),
            justification: Justification::CentralInvariant,
        });
    }
    let m = &ctx.q + 1;
    let surgered = surger_fiber(y, &m)?;
    let central = surgered.result.e.clone();
    if central <= BigInt::one() {
        return Err(Error::Internal(format!(
            "surgery 1/{m} on the last fiber of {y} has central invariant {central}"
        )));
    }
    let torus_knot = y.singular_count() == 2 && y.fiber().is_some_and(|(a, _)| a.is_one());
    Ok(Witness {
        m,
        result: surgered.result,
        central,
        justification: if torus_knot {
            Justification::TorusKnot
        } else {
            Justification::CentralInvariant
        },
    })
}

/// d-invariants of `1/m` surgeries for a range of `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survey {
    /// `(m, d(Y_{1/m}))` in increasing `m`.
    pub rows: Vec<(i64, i64)>,
    pub values: BTreeSet<i64>,
}

impl Survey {
    pub fn cardinality(&self) -> usize {
        self.values.len()
    }
}

/// [`d_survey_with`] using the plumbing lattice directly.
pub fn d_survey(y: &SeifertInvariants, range: RangeInclusive<i64>) -> Result<Survey> {
    d_survey_with(y, range, d_of_manifold)
}

/// Evaluates `d` on every surgery in `range` with the supplied evaluator,
/// which must honor `d(−M) = −d(M)`.
pub fn d_survey_with<F>(y: &SeifertInvariants, range: RangeInclusive<i64>, d: F) -> Result<Survey>
where
    F: Fn(&OrientedSeifert) -> Result<i64> + Sync,
{
    SurgeryContext::new(y)?;
    let rows = range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let s = surger_fiber(y, &BigInt::from(m))?;
            Ok((m, d(&s.result)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let values = rows.iter().map(|&(_, v)| v).collect();
    Ok(Survey { rows, values })
}

/// The two manifolds whose d-invariants bound every surgery value: `Y`
/// itself (for `a_n − mα > 0`) and `−Σ(a_1, ..., a_{n−1}, α − r)`.
pub fn surgery_d_sources(y: &SeifertInvariants) -> Result<(OrientedSeifert, OrientedSeifert)> {
    let ctx = SurgeryContext::new(y)?;
    let mut orders = y.orders();
    *orders.last_mut().expect("non-empty") = &ctx.alpha - &ctx.r;
    let other = from_multiplicities(&Multiplicities::new(orders)?)?;
    Ok((
        OrientedSeifert::new(Sign::Positive, y.clone()),
        OrientedSeifert::new(Sign::Negative, other),
    ))
}
