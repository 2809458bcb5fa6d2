//! Type-B solutions: exactly two of `x, y, z` are multiples of `n`.
//!
//! `n = 1 + 4K` has a type-B solution if and only if
//! `K = μβ_a − a − d` for naturals `a, μ` and a divisor `d` of `a²`. The
//! solution is `z = K + μ`, `y = n·a·z/d`, `x = a·n`.
//!
//! There is no known bound on `a`, so searches are cut off at a caller-chosen
//! `a_max` and an empty result only means "not found within the bound".

use serde::{Deserialize, Serialize};

use crate::arith::{self, Natural};
use crate::equation::UnitFractionTriple;
use crate::type_a::k_of;
use crate::{Error, Result};

/// Default search bound for `a`.
pub const DEFAULT_A_MAX: Natural = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeBParams {
    #[serde(with = "crate::dec")]
    pub a: Natural,
    #[serde(with = "crate::dec")]
    pub d: Natural,
    #[serde(with = "crate::dec")]
    pub mu: Natural,
}

impl TypeBParams {
    pub const fn new(a: Natural, d: Natural, mu: Natural) -> Self {
        TypeBParams { a, d, mu }
    }

    /// `μβ_a − a − d` if that is a natural number.
    pub fn k(&self) -> Result<Option<Natural>> {
        let beta_a = arith::beta(self.a)?;
        let pos = self
            .mu
            .checked_mul(beta_a)
            .ok_or(Error::Overflow("μβ_a"))?;
        let neg = self
            .a
            .checked_add(self.d)
            .ok_or(Error::Overflow("a + d"))?;
        Ok(pos.checked_sub(neg).filter(|&k| k > 0))
    }
}

/// The four-parameter form `n = β_{λa₁}β_μ − 4λa₁²/ν` with `d = a₁a₂`,
/// `a = λa₁ = νa₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBAltParams {
    #[serde(with = "crate::dec")]
    pub lambda: Natural,
    #[serde(with = "crate::dec")]
    pub a1: Natural,
    #[serde(with = "crate::dec")]
    pub a2: Natural,
    #[serde(with = "crate::dec")]
    pub nu: Natural,
}

impl TypeBAltParams {
    /// Evaluates `β_{λa₁}β_μ − 4λa₁²/ν`.
    pub fn n(&self, mu: Natural) -> Result<Natural> {
        let overflow = || Error::Overflow("β_{λa₁}β_μ − 4λa₁²/ν");
        let la1 = self.lambda.checked_mul(self.a1).ok_or_else(overflow)?;
        if self.nu == 0 || la1 % self.nu != 0 {
            return Err(Error::InvalidDecomposition);
        }
        let prod = arith::beta(la1)?
            .checked_mul(arith::beta(mu)?)
            .ok_or_else(overflow)?;
        let sub = (la1 / self.nu)
            .checked_mul(self.a1)
            .and_then(|v| v.checked_mul(4))
            .ok_or_else(overflow)?;
        prod.checked_sub(sub).ok_or(Error::InvalidDecomposition)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBSolution {
    pub params: TypeBParams,
    pub alt: TypeBAltParams,
    #[serde(with = "crate::dec")]
    pub z: Natural,
    pub triple: UnitFractionTriple,
}

/// Scans `a = 1..=a_max` and, for each, the divisors `d` of `a²` in ascending
/// order, keeping those with `β_a | K + a + d`. Ordered by `(a, d)`.
pub fn find_type_b(k: Natural, a_max: Natural, first_only: bool) -> Result<Vec<TypeBParams>> {
    if k == 0 {
        return Err(Error::KIsZero);
    }
    let mut out = Vec::new();
    for a in 1..=a_max {
        let beta_a = arith::beta(a)?;
        let base = k.checked_add(a).ok_or(Error::Overflow("K + a"))?;
        let square = if a == 1 {
            None
        } else {
            Some(arith::factorize(a)?.squared()?)
        };
        let divisors = square.map_or_else(|| vec![1], |f| f.divisors());
        for d in divisors {
            let total = base.checked_add(d).ok_or(Error::Overflow("K + a + d"))?;
            // total ≥ K + a + 1 > 0, so μ ≥ 1 whenever the division is exact
            if total % beta_a == 0 {
                out.push(TypeBParams {
                    a,
                    d,
                    mu: total / beta_a,
                });
                if first_only {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Canonical split `a₁ = gcd(d, a)`, `a₂ = d/a₁`, `λ = a/a₁`, `ν = a/a₂`.
///
/// `a₂` divides `a` whenever `d` divides `a²` (compare exponents prime by
/// prime).
pub fn to_alt_params(params: &TypeBParams) -> Result<TypeBAltParams> {
    let TypeBParams { a, d, .. } = *params;
    if a == 0 || d == 0 {
        return Err(Error::InvalidDecomposition);
    }
    let square = a.checked_mul(a).ok_or(Error::Overflow("a²"))?;
    if square % d != 0 {
        return Err(Error::InvalidDecomposition);
    }
    let a1 = arith::gcd(d, a)?;
    let a2 = d / a1;
    debug_assert_eq!(a % a2, 0);
    Ok(TypeBAltParams {
        lambda: a / a1,
        a1,
        a2,
        nu: a / a2,
    })
}

/// Builds the solution for `n = 1 + 4K` from parameters representing `K`.
pub fn expand_type_b(n: Natural, params: TypeBParams) -> Result<TypeBSolution> {
    let k = k_of(n)?;
    if params.a == 0 || params.mu == 0 || params.k()? != Some(k) {
        return Err(Error::ParamsDoNotRepresent { n });
    }
    let alt = to_alt_params(&params).map_err(|_| Error::ParamsDoNotRepresent { n })?;
    let overflow = || Error::Overflow("type-B expansion");
    let z = k + params.mu;
    // a₁ | z since a₁ | β_a·z and gcd(a₁, β_a) = 1, so
    // a·z/d = (a/a₂)(z/a₁) = ν·(z/a₁).
    debug_assert_eq!(z % alt.a1, 0);
    let x = params.a.checked_mul(n).ok_or_else(overflow)?;
    let y = n
        .checked_mul(alt.nu)
        .and_then(|v| v.checked_mul(z / alt.a1))
        .ok_or_else(overflow)?;
    Ok(TypeBSolution {
        params,
        alt,
        z,
        triple: UnitFractionTriple::new(x, y, z),
    })
}

/// First type-B representation of `m = 1 + 4K` with `a ≤ a_max`. `None`
/// means "not found within the bound", never "not a member".
pub fn membership_sb(m: Natural, a_max: Natural) -> Result<Option<TypeBParams>> {
    let k = k_of(m)?;
    Ok(find_type_b(k, a_max, true)?.into_iter().next())
}
