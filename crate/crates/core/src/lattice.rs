//! Negative definite unimodular lattices and their d-invariant
//!
//! `d(L) = max { (χ·χ + rank) / 4 : χ characteristic }`.
//!
//! A characteristic vector is identified with its pairing vector
//! `c = (⟨χ, v_i⟩)_i`, which ranges over all integer vectors with
//! `c_i ≡ G_ii (mod 2)` because `L` is unimodular, and `χ·χ = cᵀ G⁻¹ c`.
//!
//! At a maximizer, neither `χ + 2v_i` nor `χ − 2v_i` is better, i.e.
//! `4 c_i + 4 G_ii <= 0` and `−4 c_i + 4 G_ii <= 0`, so
//! `G_ii <= c_i <= −G_ii`. The search is restricted to this box.
//! Maximizing `cᵀ G⁻¹ c` is minimizing the positive definite form
//! `cᵀ Q c` with `Q = −G⁻¹`; the solver walks the box coordinate by
//! coordinate and prunes with the `L D Lᵀ` decomposition of `Q`, whose
//! partial sums are lower bounds for every completion.

#![allow(clippy::needless_range_loop)]

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::plumbing::plumbing_graph;
use crate::seifert::OrientedSeifert;

/// Symmetric integer Gram matrix of a negative definite unimodular lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeDump", into = "LatticeDump")]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct LatticeDump {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<LatticeDump> for GramLattice {
    type Error = Error;

    fn try_from(d: LatticeDump) -> Result<Self> {
        if d.rank != d.gram.len() {
            return Err(Error::Parse(format!(
                "rank {} does not match a {}-row matrix",
                d.rank,
                d.gram.len()
            )));
        }
        GramLattice::new(d.gram)
    }
}

impl From<GramLattice> for LatticeDump {
    fn from(l: GramLattice) -> Self {
        LatticeDump {
            rank: l.rank(),
            gram: l.gram,
        }
    }
}

impl GramLattice {
    /// Validates symmetry, negative definiteness and `|det| = 1`.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Precondition("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Precondition("Gram matrix is not symmetric".into()));
                }
            }
        }
        let negated: Vec<Vec<BigInt>> = gram
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(-x)).collect())
            .collect();
        let minors = leading_minors(negated);
        if minors.iter().any(|m| !m.is_positive()) {
            return Err(Error::NotNegativeDefinite);
        }
        if let Some(det) = minors.last() {
            if !det.is_one() {
                let sign = if n.is_multiple_of(2) { 1 } else { -1 };
                return Err(Error::NotUnimodular(det * sign));
            }
        }
        Ok(GramLattice { gram })
    }

    /// Diagonal lattice `-Z^n`.
    pub fn diagonal(n: usize) -> Self {
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect())
            .collect();
        GramLattice { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn det(&self) -> i64 {
        if self.rank().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        GramLattice { gram }
    }

    /// Exact inverse; integral because the lattice is unimodular.
    pub fn inverse(&self) -> Result<Vec<Vec<BigInt>>> {
        let n = self.rank();
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            Rational::from_integer(self.gram[i][j].into())
                        } else if j - n == i {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in 0..2 * n {
                        let delta = &f * &m[col][j];
                        m[r][j] -= delta;
                    }
                }
            }
        }
        m.into_iter()
            .map(|row| {
                row.into_iter()
                    .skip(n)
                    .map(|x| {
                        if x.is_integer() {
                            Ok(x.to_integer())
                        } else {
                            Err(Error::Internal("non-integral inverse of unimodular matrix".into()))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The characteristic coset, as the parity class of pairing vectors.
    pub fn char_coset(&self) -> CharCoset {
        CharCoset {
            base: (0..self.rank()).map(|i| self.gram[i][i]).collect(),
        }
    }
}

/// `Char(L)` described by a base pairing vector `c` with `c_i ≡ G_ii (mod 2)`;
/// every characteristic vector has pairings congruent to `base` mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCoset {
    pub base: Vec<i64>,
}

impl CharCoset {
    pub fn contains(&self, pairings: &[i64]) -> bool {
        pairings.len() == self.base.len()
            && pairings
                .iter()
                .zip(&self.base)
                .all(|(c, b)| (c - b).rem_euclid(2) == 0)
    }
}

/// Leading principal minors by fraction-free (Bareiss) elimination. Stops
/// at the first non-positive minor, which is reported as the last entry.
fn leading_minors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = m.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if !pivot.is_positive() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// `Q = −G⁻¹`, positive definite and integral.
fn neg_inverse(l: &GramLattice) -> Result<Vec<Vec<BigInt>>> {
    Ok(l.inverse()?
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect())
}

fn quad_form(q: &[Vec<BigInt>], c: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, row) in q.iter().enumerate() {
        if c[i] == 0 {
            continue;
        }
        let mut r = BigInt::zero();
        for (j, x) in row.iter().enumerate() {
            if c[j] != 0 {
                r += x * c[j];
            }
        }
        acc += r * c[i];
    }
    acc
}

/// d from the minimal value of `cᵀ Q c` over the characteristic coset.
fn d_from_min_norm(rank: usize, min_norm: &BigInt) -> Result<i64> {
    let num = BigInt::from(rank) - min_norm;
    let (d, rem) = num.div_rem(&BigInt::from(4));
    let d = d
        .to_i64()
        .ok_or_else(|| Error::TooLarge("d-invariant".into()))?;
    if !rem.is_zero() || d % 2 != 0 {
        return Err(Error::Internal(format!(
            "lattice d-invariant ({num})/4 is not an even integer"
        )));
    }
    Ok(d)
}

/// One level of the pruned search. Position `k` contributes
/// `weight · (c_k · scale + Σ_{i>k} coupling_i · c_i)²` to the scaled norm.
struct Level {
    coord: usize,
    lo: i64,
    hi: i64,
    scale: BigInt,
    coupling: Vec<(usize, BigInt)>,
    weight: BigInt,
}

struct Search {
    levels: Vec<Level>,
    /// Every norm handled by the search is multiplied by this.
    common: BigInt,
}

impl Search {
    /// Builds levels from `Q` with the enumeration order `order` (first
    /// entry enumerated first). All quantities are scaled to integers.
    fn new(q: &[Vec<BigInt>], order: &[usize], box_bounds: &[(i64, i64)]) -> Result<Self> {
        let n = order.len();
        // Position p in the decomposition holds coordinate order[n - 1 - p],
        // so the last position is enumerated first.
        let coord_at = |p: usize| order[n - 1 - p];
        let qp = |i: usize, j: usize| Rational::from_integer(q[coord_at(i)][coord_at(j)].clone());

        let mut lower = vec![vec![Rational::zero(); n]; n];
        let mut diag = vec![Rational::zero(); n];
        for j in 0..n {
            let mut dj = qp(j, j);
            for k in 0..j {
                dj -= &lower[j][k] * &lower[j][k] * &diag[k];
            }
            if !dj.is_positive() {
                return Err(Error::Internal("Q = -G^-1 is not positive definite".into()));
            }
            for i in j + 1..n {
                let mut lij = qp(i, j);
                for k in 0..j {
                    lij -= &lower[i][k] * &lower[j][k] * &diag[k];
                }
                lower[i][j] = lij / &dj;
            }
            diag[j] = dj;
        }

        // term_j = D_j (c_j + Σ_{i>j} L_ij c_i)^2
        //        = (D_j / s_j^2) (s_j c_j + Σ_{i>j} (s_j L_ij) c_i)^2
        let mut raw = Vec::with_capacity(n);
        for j in 0..n {
            let scale = (j + 1..n).fold(BigInt::one(), |acc, i| acc.lcm(lower[i][j].denom()));
            let coupling: Vec<(usize, BigInt)> = (j + 1..n)
                .filter(|&i| !lower[i][j].is_zero())
                .map(|i| {
                    let v = &lower[i][j] * Rational::from_integer(scale.clone());
                    (coord_at(i), v.to_integer())
                })
                .collect();
            let weight = &diag[j] / Rational::from_integer(&scale * &scale);
            raw.push((coord_at(j), scale, coupling, weight));
        }
        let common = raw
            .iter()
            .fold(BigInt::one(), |acc, (_, _, _, w)| acc.lcm(w.denom()));
        let mut levels: Vec<Level> = raw
            .into_iter()
            .map(|(coord, scale, coupling, weight)| {
                let weight = (weight * Rational::from_integer(common.clone())).to_integer();
                Level {
                    coord,
                    lo: box_bounds[coord].0,
                    hi: box_bounds[coord].1,
                    scale,
                    coupling,
                    weight,
                }
            })
            .collect();
        levels.reverse();
        Ok(Search { levels, common })
    }

    /// Values of the coordinate at `depth` whose partial norm stays below
    /// `best`, sorted by partial norm. The term is a convex parabola in the
    /// value, so the scan walks outward from its minimum in both directions
    /// and stops each side at the first value that reaches `best`.
    fn candidates(&self, depth: usize, c: &[i64], acc: &BigInt, best: &BigInt) -> Vec<(BigInt, i64)> {
        let level = &self.levels[depth];
        let offset: BigInt = level
            .coupling
            .iter()
            .map(|(i, x)| x * c[*i])
            .sum();
        let total = |v: i64| {
            let x = &level.scale * v + &offset;
            acc + &level.weight * &x * &x
        };
        // Largest value of the right parity at or below the real minimum.
        let floor = (-&offset)
            .div_floor(&level.scale)
            .to_i64()
            .unwrap_or(if offset.is_positive() { i64::MIN / 2 } else { i64::MAX / 2 });
        let mut left = floor.clamp(level.lo - 2, level.hi + 2);
        if (left - level.lo).rem_euclid(2) != 0 {
            left -= 1;
        }
        let mut lower = Vec::new();
        let mut v = left.min(level.hi);
        while v >= level.lo {
            let t = total(v);
            if t >= *best {
                break;
            }
            lower.push((t, v));
            v -= 2;
        }
        let mut upper = Vec::new();
        let mut v = (left + 2).max(level.lo);
        while v <= level.hi {
            let t = total(v);
            if t >= *best {
                break;
            }
            upper.push((t, v));
            v += 2;
        }
        let mut out = Vec::with_capacity(lower.len() + upper.len());
        let (mut a, mut b) = (lower.into_iter().peekable(), upper.into_iter().peekable());
        loop {
            let take_a = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => x <= y,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            out.push(if take_a { a.next() } else { b.next() }.expect("peeked"));
        }
        out
    }

    /// First leaf reached by always taking the cheapest value, if its norm
    /// is below `bound`.
    fn greedy(&self, bound: &BigInt) -> Option<BigInt> {
        let mut c = vec![0i64; self.levels.len()];
        let mut acc = BigInt::zero();
        for (depth, level) in self.levels.iter().enumerate() {
            let (total, v) = self.candidates(depth, &c, &acc, bound).into_iter().next()?;
            c[level.coord] = v;
            acc = total;
        }
        Some(acc)
    }

    fn descend(&self, depth: usize, c: &mut [i64], acc: &BigInt, best: &mut BigInt, shared: &Mutex<BigInt>) {
        if depth == self.levels.len() {
            let mut global = shared.lock().expect("poisoned");
            if acc < &*global {
                *global = acc.clone();
            }
            *best = global.clone();
            return;
        }
        if depth < SHARE_DEPTH {
            let global = shared.lock().expect("poisoned");
            if *global < *best {
                *best = global.clone();
            }
        }
        let coord = self.levels[depth].coord;
        for (total, v) in self.candidates(depth, c, acc, best) {
            if total >= *best {
                break;
            }
            c[coord] = v;
            self.descend(depth + 1, c, &total, best, shared);
        }
        c[coord] = 0;
    }
}

/// Levels near the root re-read the bound found by other threads.
const SHARE_DEPTH: usize = 6;

fn box_bounds(l: &GramLattice) -> Vec<(i64, i64)> {
    (0..l.rank()).map(|i| (l.gram[i][i], -l.gram[i][i])).collect()
}

/// Lattice d-invariant by pruned search over the box
/// `G_ii <= c_i <= −G_ii` of characteristic pairing vectors.
pub fn d_invariant(l: &GramLattice) -> Result<i64> {
    let n = l.rank();
    if n == 0 {
        return Ok(0);
    }
    let q = neg_inverse(l)?;
    let bounds = box_bounds(l);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(l.gram[i][i].abs()));

    let search = Search::new(&q, &order, &bounds)?;
    let common = search.common.clone();

    // Any box point gives an upper bound; c_i = G_ii is one.
    let start: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    let start_norm = quad_form(&q, &start) * &common;

    let bound = match search.greedy(&(&start_norm + 1)) {
        Some(g) if g < start_norm => g,
        _ => start_norm,
    };
    let shared = Mutex::new(bound.clone());
    let zero = BigInt::zero();
    let first = search.candidates(0, &vec![0; n], &zero, &(&bound + 1));
    first.into_par_iter().for_each(|(total, v)| {
        let mut best = shared.lock().expect("poisoned").clone();
        if total < best {
            let mut c = vec![0i64; n];
            c[search.levels[0].coord] = v;
            search.descend(1, &mut c, &total, &mut best, &shared);
        }
    });
    let best = shared.into_inner().expect("poisoned");

    let (min_norm, rem) = best.div_rem(&common);
    if !rem.is_zero() {
        return Err(Error::Internal("scaled norm is not a multiple of the scale".into()));
    }
    d_from_min_norm(n, &min_norm)
}

/// Lattice d-invariant by exhaustive enumeration of the same box, without
/// pruning. Exponential in the rank; meant for cross-checking.
pub fn d_invariant_box(l: &GramLattice) -> Result<i64> {
    let n = l.rank();
    if n == 0 {
        return Ok(0);
    }
    let q = neg_inverse(l)?;
    let bounds = box_bounds(l);
    let mut c: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    let mut best = quad_form(&q, &c);
    loop {
        let mut i = 0;
        while i < n && c[i] + 2 > bounds[i].1 {
            c[i] = bounds[i].0;
            i += 1;
        }
        if i == n {
            break;
        }
        c[i] += 2;
        let v = quad_form(&q, &c);
        if v < best {
            best = v;
        }
    }
    d_from_min_norm(n, &best)
}

/// Heegaard Floer d-invariant of an oriented Seifert homology sphere from
/// its plumbing lattice; orientation reversal negates it.
pub fn d_of_manifold(y: &OrientedSeifert) -> Result<i64> {
    let lattice = plumbing_graph(&y.invariants())?.gram_matrix()?;
    Ok(y.sign.as_i32() as i64 * d_invariant(&lattice)?)
}

/// `L1 ⊕ L2`.
pub fn direct_sum(l1: &GramLattice, l2: &GramLattice) -> GramLattice {
    l1.direct_sum(l2)
}
