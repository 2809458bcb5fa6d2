//! Type-A solutions: exactly one of `x, y, z` is a multiple of `n`.
//!
//! For `n = 1 + 4K` a type-A solution exists whenever
//!
//! ```text
//! K = μ(κβ_b − 1) − κb        (equivalently n = κβ_bβ_μ − β_μ − κ)
//! ```
//!
//! for naturals `b, μ, κ`. With `a = b + β_b·K` this says `a` factors as
//! `(μβ_b − b)(κβ_b − 1)`, so the search walks `b = 1, 2, …` and looks for
//! divisors of `a` congruent to `−1 (mod β_b)`. The walk can stop at
//! `b = ⌈(2 + K)/3⌉`, since `K ≥ 3b − 2` for every representation.

use serde::{Deserialize, Serialize};

use crate::arith::{self, Natural};
use crate::equation::UnitFractionTriple;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeAParams {
    #[serde(with = "crate::dec")]
    pub b: Natural,
    #[serde(with = "crate::dec")]
    pub mu: Natural,
    #[serde(with = "crate::dec")]
    pub kappa: Natural,
}

impl TypeAParams {
    pub const fn new(b: Natural, mu: Natural, kappa: Natural) -> Self {
        TypeAParams { b, mu, kappa }
    }

    /// `K` represented by these parameters, or `None` if the expression is
    /// not a natural number.
    pub fn k(&self) -> Result<Option<Natural>> {
        let beta_b = arith::beta(self.b)?;
        let overflow = || Error::Overflow("μκβ_b − μ − κb");
        let pos = self
            .mu
            .checked_mul(self.kappa)
            .and_then(|v| v.checked_mul(beta_b))
            .ok_or_else(overflow)?;
        let neg = self
            .kappa
            .checked_mul(self.b)
            .and_then(|v| v.checked_add(self.mu))
            .ok_or_else(overflow)?;
        Ok(pos.checked_sub(neg).filter(|&k| k > 0))
    }
}

/// A full type-A solution built from [`TypeAParams`].
///
/// `x = a·n`, `y = a·z/d = a·κ`, `z = κ·d`, where `a = (μβ_b − b)(κβ_b − 1)`
/// and `d = μβ_b − b` divides `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeASolution {
    pub params: TypeAParams,
    #[serde(with = "crate::dec")]
    pub a: Natural,
    #[serde(with = "crate::dec")]
    pub d: Natural,
    #[serde(with = "crate::dec")]
    pub z: Natural,
    pub triple: UnitFractionTriple,
}

/// `a = b + β_b·K`.
pub fn a_from_b(k: Natural, b: Natural) -> Result<Natural> {
    let beta_b = arith::beta(b)?;
    beta_b
        .checked_mul(k)
        .and_then(|v| v.checked_add(b))
        .ok_or(Error::Overflow("a = b + β_b K"))
}

/// `⌈(2 + K)/3⌉`, the largest `b` any representation of `K` can use.
pub fn b_limit(k: Natural) -> Natural {
    (k + 2).div_ceil(3)
}

/// All admissible `(μ, κ)` for a single `b`, sorted by `κ`.
fn params_for_b(k: Natural, b: Natural) -> Result<Vec<TypeAParams>> {
    let beta_b = arith::beta(b)?;
    let a = a_from_b(k, b)?;
    let mut out = Vec::new();
    for f2 in arith::factorize(a)?.divisors() {
        // f2 = κβ_b − 1 with κ ≥ 1
        if f2 < beta_b - 1 || f2 % beta_b != beta_b - 1 {
            continue;
        }
        // f1 = μβ_b − b with μ ≥ 1; f1 ≡ −b holds automatically since a ≡ b.
        let f1 = a / f2;
        if f1 < beta_b - b {
            continue;
        }
        debug_assert_eq!((f1 + b) % beta_b, 0);
        out.push(TypeAParams {
            b,
            mu: (f1 + b) / beta_b,
            kappa: (f2 + 1) / beta_b,
        });
    }
    // Divisors ascend, so κ already ascends.
    Ok(out)
}

/// Searches `b = 1..=b_max` (default [`b_limit`]) for representations of `K`.
///
/// Every divisor of `a` is tested, not only prime factors. Results are
/// ordered by `(b, κ)`. With `first_only` the search stops at the first `b`
/// that yields anything and returns only its smallest-`κ` entry.
pub fn find_type_a(
    k: Natural,
    b_max: Option<Natural>,
    first_only: bool,
) -> Result<Vec<TypeAParams>> {
    if k == 0 {
        return Err(Error::KIsZero);
    }
    let b_max = b_max.unwrap_or_else(|| b_limit(k));
    if first_only {
        for b in 1..=b_max {
            if let Some(p) = params_for_b(k, b)?.into_iter().next() {
                return Ok(vec![p]);
            }
        }
        return Ok(Vec::new());
    }
    let per_b: Vec<Vec<TypeAParams>> = collect_over(1..=b_max, |b| params_for_b(k, b))?;
    Ok(per_b.into_iter().flatten().collect())
}

#[cfg(feature = "parallel")]
fn collect_over<T, F>(range: std::ops::RangeInclusive<Natural>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Natural) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    // u128 ranges are not indexed; go through u64, which any feasible b fits.
    let (lo, hi) = (*range.start(), *range.end());
    let hi = u64::try_from(hi).map_err(|_| Error::Overflow("b range"))?;
    (lo as u64..=hi)
        .into_par_iter()
        .map(|b| f(b as Natural))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn collect_over<T, F>(range: std::ops::RangeInclusive<Natural>, f: F) -> Result<Vec<T>>
where
    F: Fn(Natural) -> Result<T>,
{
    range.map(f).collect()
}

/// Builds the solution for `n = 1 + 4K` from parameters representing `K`.
pub fn expand_type_a(n: Natural, params: TypeAParams) -> Result<TypeASolution> {
    let k = k_of(n)?;
    if params.b == 0 || params.mu == 0 || params.kappa == 0 || params.k()? != Some(k) {
        return Err(Error::ParamsDoNotRepresent { n });
    }
    let beta_b = arith::beta(params.b)?;
    let overflow = || Error::Overflow("type-A expansion");
    // μβ_b − b ≥ 3μ − 1 > 0 and κβ_b − 1 > 0
    let d = params.mu.checked_mul(beta_b).ok_or_else(overflow)? - params.b;
    let f2 = params.kappa.checked_mul(beta_b).ok_or_else(overflow)? - 1;
    let a = d.checked_mul(f2).ok_or_else(overflow)?;
    let z = params.kappa.checked_mul(d).ok_or_else(overflow)?;
    let x = a.checked_mul(n).ok_or_else(overflow)?;
    let y = a.checked_mul(params.kappa).ok_or_else(overflow)?;
    Ok(TypeASolution {
        params,
        a,
        d,
        z,
        triple: UnitFractionTriple::new(x, y, z),
    })
}

/// First type-A representation of `m = 1 + 4K` from the full, exhaustive
/// `b` range. `None` means `m` is not in the type-A family.
pub fn membership_sa(m: Natural) -> Result<Option<TypeAParams>> {
    let k = k_of(m)?;
    Ok(find_type_a(k, None, true)?.into_iter().next())
}

pub(crate) fn k_of(n: Natural) -> Result<Natural> {
    if n < 5 || n % 4 != 1 {
        return Err(Error::NotOneModFour(n));
    }
    Ok((n - 1) / 4)
}
