//! The equation `4/n = 1/x + 1/y + 1/z`, its closed-form solutions for the
//! easy residue classes, and the type A / type B classification.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("n must be at least 2, got {0}")]
    TargetTooSmall(Natural),
    #[error("unit fraction denominators must be positive")]
    ZeroDenominator,
    #[error("scale factor must be positive")]
    ZeroScale,
    #[error("{n} is odd; the even closed form needs n = 2k")]
    NotEven { n: Natural },
    #[error("{n} is not congruent to 3 mod 4")]
    NotThreeModFour { n: Natural },
    #[error("({x}, {y}, {z}) does not solve 4/{n} = 1/x + 1/y + 1/z")]
    NotASolution {
        n: Natural,
        x: Natural,
        y: Natural,
        z: Natural,
    },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

/// An integer `n ≥ 2` to be written as a sum of three unit fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscTarget {
    n: Natural,
    is_prime: bool,
}

impl EscTarget {
    pub fn new(n: Natural) -> Result<Self, EquationError> {
        if n < 2 {
            return Err(EquationError::TargetTooSmall(n));
        }
        Ok(EscTarget {
            n,
            is_prime: arith::is_prime(n),
        })
    }

    pub fn n(&self) -> Natural {
        self.n
    }

    /// `K` with `n = 1 + 4K`, defined only for `n ≡ 1 (mod 4)`.
    pub fn k(&self) -> Option<Natural> {
        (self.n % 4 == 1).then(|| (self.n - 1) / 4)
    }

    pub fn is_prime(&self) -> bool {
        self.is_prime
    }

    pub fn is_pythagorean_prime(&self) -> bool {
        self.is_prime && self.n % 4 == 1
    }
}

/// A candidate solution `(x, y, z)`.
///
/// The parametric constructions give `x`, `y` and `z` distinct roles, so the
/// stored order is kept as produced. Use [`UnitFractionTriple::sorted`] when
/// comparing solution sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitFractionTriple {
    #[serde(with = "crate::dec")]
    pub x: Natural,
    #[serde(with = "crate::dec")]
    pub y: Natural,
    #[serde(with = "crate::dec")]
    pub z: Natural,
}

impl UnitFractionTriple {
    pub const fn new(x: Natural, y: Natural, z: Natural) -> Self {
        UnitFractionTriple { x, y, z }
    }

    /// Canonical view with `x ≤ y ≤ z`.
    pub fn sorted(&self) -> Self {
        let mut v = [self.x, self.y, self.z];
        v.sort_unstable();
        UnitFractionTriple::new(v[0], v[1], v[2])
    }

    pub fn as_array(&self) -> [Natural; 3] {
        [self.x, self.y, self.z]
    }
}

impl fmt::Display for UnitFractionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    TypeA,
    TypeB,
    Other,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionKind::TypeA => "A",
            SolutionKind::TypeB => "B",
            SolutionKind::Other => "other",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionType {
    pub kind: SolutionKind,
    /// How many of `x, y, z` are divisible by `n`.
    pub multiples_of_n: u8,
}

/// Exact check of `4xyz = n(yz + xz + xy)`.
pub fn verify_triple(n: Natural, t: &UnitFractionTriple) -> Result<bool, EquationError> {
    if n < 2 {
        return Err(EquationError::TargetTooSmall(n));
    }
    if t.x == 0 || t.y == 0 || t.z == 0 {
        return Err(EquationError::ZeroDenominator);
    }
    let (x, y, z) = (BigUint::from(t.x), BigUint::from(t.y), BigUint::from(t.z));
    let lhs = BigUint::from(4u8) * &x * &y * &z;
    let rhs = BigUint::from(n) * (&y * &z + &x * &z + &x * &y);
    Ok(lhs == rhs)
}

/// `(kx, ky, kz)`, a solution for `kn` whenever `t` solves for `n`.
pub fn scale_solution(
    t: &UnitFractionTriple,
    k: Natural,
) -> Result<UnitFractionTriple, EquationError> {
    if k == 0 {
        return Err(EquationError::ZeroScale);
    }
    let mul = |v: Natural| v.checked_mul(k).ok_or(EquationError::Overflow("scaled triple"));
    Ok(UnitFractionTriple::new(mul(t.x)?, mul(t.y)?, mul(t.z)?))
}

/// `n = 2k ↦ (k, 2k, 2k)`.
pub fn closed_form_even(n: Natural) -> Result<UnitFractionTriple, EquationError> {
    if n < 2 {
        return Err(EquationError::TargetTooSmall(n));
    }
    if n % 2 != 0 {
        return Err(EquationError::NotEven { n });
    }
    let k = n / 2;
    Ok(UnitFractionTriple::new(k, n, n))
}

/// `n = 4k − 1 ↦ (kn, k(k+1), k+1)`.
pub fn closed_form_4k_minus_1(n: Natural) -> Result<UnitFractionTriple, EquationError> {
    if n % 4 != 3 {
        return Err(EquationError::NotThreeModFour { n });
    }
    let k = (n + 1) / 4;
    let x = k.checked_mul(n).ok_or(EquationError::Overflow("k·n"))?;
    let y = k.checked_mul(k + 1).ok_or(EquationError::Overflow("k(k+1)"))?;
    Ok(UnitFractionTriple::new(x, y, k + 1))
}

/// Counts how many of `x, y, z` are multiples of `n`: one is type A, two is
/// type B, anything else (reachable only for composite `n`) is `Other`.
pub fn classify(n: Natural, t: &UnitFractionTriple) -> Result<SolutionType, EquationError> {
    if !verify_triple(n, t)? {
        return Err(EquationError::NotASolution {
            n,
            x: t.x,
            y: t.y,
            z: t.z,
        });
    }
    let count = t.as_array().iter().filter(|&&v| v % n == 0).count() as u8;
    let kind = match count {
        1 => SolutionKind::TypeA,
        2 => SolutionKind::TypeB,
        _ => SolutionKind::Other,
    };
    Ok(SolutionType {
        kind,
        multiples_of_n: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(x: Natural, y: Natural, z: Natural) -> UnitFractionTriple {
        UnitFractionTriple::new(x, y, z)
    }

    #[test]
    fn target_flags() {
        let p = EscTarget::new(13).unwrap();
        assert_eq!(p.k(), Some(3));
        assert!(p.is_pythagorean_prime());
        let q = EscTarget::new(7).unwrap();
        assert!(q.is_prime() && !q.is_pythagorean_prime());
        assert_eq!(q.k(), None);
        let c = EscTarget::new(105).unwrap();
        assert_eq!(c.k(), Some(26));
        assert!(!c.is_pythagorean_prime());
        assert_eq!(EscTarget::new(1), Err(EquationError::TargetTooSmall(1)));
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_triple(5, &t(2, 5, 10)), Ok(true));
        assert_eq!(verify_triple(5, &t(2, 4, 20)), Ok(true));
        assert_eq!(verify_triple(5, &t(2, 4, 21)), Ok(false));
        assert_eq!(verify_triple(5, &t(0, 4, 20)), Err(EquationError::ZeroDenominator));
        assert_eq!(verify_triple(1, &t(1, 1, 1)), Err(EquationError::TargetTooSmall(1)));
    }

    #[test]
    fn verify_does_not_overflow() {
        // x = a·n from the n = 560281 worked example; xyz is far beyond u128.
        let n = 560281u128;
        let a = 420211u128;
        let triple = t(a * n, a * 12734, 140074);
        assert_eq!(verify_triple(n, &triple), Ok(true));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(scale_solution(&t(2, 5, 10), 3), Ok(t(6, 15, 30)));
        assert_eq!(verify_triple(15, &t(6, 15, 30)), Ok(true));
        assert_eq!(scale_solution(&t(1, 2, 2), 1), Ok(t(1, 2, 2)));
        assert_eq!(scale_solution(&t(3, 6, 14), 2), Ok(t(6, 12, 28)));
        assert_eq!(verify_triple(14, &t(6, 12, 28)), Ok(true));
        assert_eq!(scale_solution(&t(1, 2, 2), 0), Err(EquationError::ZeroScale));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_even(2), Ok(t(1, 2, 2)));
        assert_eq!(closed_form_even(6), Ok(t(3, 6, 6)));
        assert_eq!(closed_form_even(100), Ok(t(50, 100, 100)));
        assert_eq!(closed_form_even(7), Err(EquationError::NotEven { n: 7 }));
        assert_eq!(closed_form_4k_minus_1(3), Ok(t(3, 2, 2)));
        assert_eq!(closed_form_4k_minus_1(7), Ok(t(14, 6, 3)));
        assert_eq!(closed_form_4k_minus_1(11), Ok(t(33, 12, 4)));
        assert_eq!(
            closed_form_4k_minus_1(13),
            Err(EquationError::NotThreeModFour { n: 13 })
        );
    }

    #[test]
    fn closed_forms_verify_up_to_10k() {
        for n in (2..=10_000u128).step_by(2) {
            assert_eq!(verify_triple(n, &closed_form_even(n).unwrap()), Ok(true));
        }
        for n in (3..=10_000u128).step_by(4) {
            assert_eq!(verify_triple(n, &closed_form_4k_minus_1(n).unwrap()), Ok(true));
        }
    }

    #[test]
    fn classify_examples() {
        let a = classify(5, &t(2, 4, 20)).unwrap();
        assert_eq!((a.kind, a.multiples_of_n), (SolutionKind::TypeA, 1));
        let b = classify(5, &t(2, 5, 10)).unwrap();
        assert_eq!((b.kind, b.multiples_of_n), (SolutionKind::TypeB, 2));
        let c = classify(2, &t(1, 2, 2)).unwrap();
        assert_eq!((c.kind, c.multiples_of_n), (SolutionKind::TypeB, 2));
        assert!(matches!(
            classify(5, &t(2, 4, 21)),
            Err(EquationError::NotASolution { .. })
        ));
    }

    #[test]
    fn classify_other_for_composite() {
        // 4/12 = 1/6 + 1/9 + 1/18 and 12 divides none of them.
        let o = classify(12, &t(6, 9, 18)).unwrap();
        assert_eq!((o.kind, o.multiples_of_n), (SolutionKind::Other, 0));
    }

    proptest! {
        #[test]
        fn verify_permutation_invariant(x in 1u128..200, y in 1u128..200, z in 1u128..200, n in 2u128..200) {
            let base = verify_triple(n, &t(x, y, z)).unwrap();
            for p in [t(x, z, y), t(y, x, z), t(y, z, x), t(z, x, y), t(z, y, x)] {
                prop_assert_eq!(verify_triple(n, &p).unwrap(), base);
            }
        }

        #[test]
        fn scaling_preserves_solutions(n in 2u128..300, k in 1u128..=100) {
            // n ≡ 1 (mod 4) has no closed form; borrow the one for 2n.
            let owner = if n % 4 == 1 { 2 * n } else { n };
            let base = if owner % 2 == 0 {
                closed_form_even(owner).unwrap()
            } else {
                closed_form_4k_minus_1(owner).unwrap()
            };
            prop_assert!(verify_triple(owner, &base).unwrap());
            let scaled = scale_solution(&base, k).unwrap();
            prop_assert!(verify_triple(owner * k, &scaled).unwrap());
        }
    }
}
