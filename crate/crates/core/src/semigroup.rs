//! Numerical semigroups `S = ⟨g_1, ..., g_k⟩` and their representation counts.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::seifert::Multiplicities;

/// Tables larger than this many entries are refused.
const TABLE_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
}

impl NumericalSemigroup {
    /// Generators must be positive with gcd 1.
    pub fn new(generators: Vec<u64>) -> Result<Self> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(Error::Precondition(
                "a numerical semigroup needs positive generators".into(),
            ));
        }
        let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::Precondition(format!(
                "generators {generators:?} have gcd {g}"
            )));
        }
        Ok(NumericalSemigroup { generators })
    }

    /// The semigroup `⟨α/a_1, ..., α/a_{n−1}⟩` of the last fiber of
    /// `Σ(a_1, ..., a_n)`, together with `α = a_1 ⋯ a_{n−1}`.
    pub fn of_fiber(m: &Multiplicities) -> Result<(Self, u64)> {
        let alpha = m
            .alpha()
            .to_u64()
            .filter(|&a| a <= TABLE_LIMIT)
            .ok_or_else(|| Error::TooLarge(format!("α for Σ({m})")))?;
        let rest = &m.orders()[..m.len().saturating_sub(1)];
        let generators = rest
            .iter()
            .map(|a| alpha / a.to_u64().expect("divides α"))
            .collect();
        Ok((Self::new(generators)?, alpha))
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    fn min_generator(&self) -> u64 {
        *self.generators.iter().min().expect("non-empty")
    }

    fn max_generator(&self) -> u64 {
        *self.generators.iter().max().expect("non-empty")
    }

    /// Membership flags for `0..=limit`.
    pub fn membership(&self, limit: u64) -> Result<Vec<bool>> {
        let len = table_len(limit)?;
        let mut member = vec![false; len];
        member[0] = true;
        for s in 1..len {
            member[s] = self
                .generators
                .iter()
                .any(|&g| (g as usize) <= s && member[s - g as usize]);
        }
        Ok(member)
    }

    /// Largest integer not in `S`, or `None` when `S` is all of `N`.
    ///
    /// Gaps lie below `(g_min − 1)(g_max − 1)`, so the scan is exhaustive.
    pub fn frobenius(&self) -> Result<Option<u64>> {
        let bound = (self.min_generator() - 1)
            .checked_mul(self.max_generator() - 1)
            .ok_or_else(|| Error::TooLarge("Frobenius bound".into()))?;
        let member = self.membership(bound)?;
        Ok(member.iter().rposition(|&m| !m).map(|s| s as u64))
    }

    /// Number of representations `m(s)` for every `s` in `0..=limit`.
    pub fn count_table(&self, limit: u64) -> Result<Vec<BigUint>> {
        let len = table_len(limit)?;
        let mut counts = vec![BigUint::zero(); len];
        counts[0] = BigUint::one();
        for &g in &self.generators {
            let g = g as usize;
            for s in g..len {
                let prev = counts[s - g].clone();
                counts[s] += prev;
            }
        }
        Ok(counts)
    }

    /// `m(s)`: number of tuples `x >= 0` with `Σ x_j g_j = s`.
    pub fn count_expressions(&self, s: u64) -> Result<BigUint> {
        Ok(self.count_table(s)?.pop().expect("non-empty table"))
    }

    /// Elements `s` of `S` with `s − α ∉ S`, in increasing order.
    ///
    /// Past `F + α` every `s − α` lies in `S`, so the scan stops there.
    pub fn unique_expression_set(&self, alpha: u64) -> Result<Vec<u64>> {
        let limit = match self.frobenius()? {
            Some(f) => f + alpha + 1,
            None => alpha,
        };
        let member = self.membership(limit)?;
        Ok((0..=limit)
            .filter(|&s| {
                let s = s as usize;
                member[s] && (s < alpha as usize || !member[s - alpha as usize])
            })
            .collect())
    }
}

fn table_len(limit: u64) -> Result<usize> {
    if limit >= TABLE_LIMIT {
        return Err(Error::TooLarge(format!("semigroup table up to {limit}")));
    }
    Ok(limit as usize + 1)
}

/// Convenience wrapper for [`NumericalSemigroup::count_expressions`].
pub fn count_expressions(s: &NumericalSemigroup, value: u64) -> Result<BigUint> {
    s.count_expressions(value)
}

/// Convenience wrapper for [`NumericalSemigroup::unique_expression_set`].
pub fn unique_expression_set(s: &NumericalSemigroup, alpha: u64) -> Result<Vec<u64>> {
    s.unique_expression_set(alpha)
}
