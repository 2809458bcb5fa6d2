//! Exhaustive ground truth for small `n`.

use crate::arith::{self, Natural};
use crate::equation::{classify, SolutionKind, UnitFractionTriple};
use crate::{Error, Result};

/// Every solution of `4/n = 1/x + 1/y + 1/z` with `x ≤ y ≤ z`, in
/// lexicographic order. `cap` stops after that many solutions.
///
/// Bounds: `n/4 < x ≤ 3n/4`; for fixed `x` with `r = 4/n − 1/x`,
/// `1/r < y ≤ 2/r` and `y ≥ x`; `z` is then forced.
pub fn brute_force_solutions(n: Natural, cap: Option<usize>) -> Result<Vec<UnitFractionTriple>> {
    if n < 2 {
        return Err(Error::TargetTooSmall(n));
    }
    // Keeps n·x·y (≤ n·(3n/4)·(3n²/2)) inside u128.
    if n > 1 << 30 {
        return Err(Error::Overflow("brute-force bound"));
    }
    let cap = cap.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if cap == 0 {
        return Ok(out);
    }
    for x in (n / 4 + 1)..=(3 * n / 4) {
        // r = (4x − n) / (n·x)
        let num = 4 * x - n;
        let den = n * x;
        // y > den/num, y ≤ 2·den/num
        let y_lo = (den / num + 1).max(x);
        let y_hi = 2 * den / num;
        for y in y_lo..=y_hi {
            // 1/z = (num·y − den) / (den·y)
            let zn = num * y - den;
            let zd = den * y;
            if zd % zn == 0 {
                let z = zd / zn;
                debug_assert!(z >= y);
                out.push(UnitFractionTriple::new(x, y, z));
                if out.len() >= cap {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// True iff every solution for the Pythagorean prime `n` has exactly one or
/// exactly two entries divisible by `n`.
pub fn check_type_exhaustiveness(n: Natural) -> Result<bool> {
    if n % 4 != 1 || !arith::is_prime(n) {
        return Err(Error::NotPythagoreanPrime(n));
    }
    for t in brute_force_solutions(n, None)? {
        if classify(n, &t)?.kind == SolutionKind::Other {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First `(ν, b)` in `1..=limit` (ν outer) for which `4νb − ν − b` is a
/// perfect square.
pub fn lemma1_square_witness_search(limit: Natural) -> Option<(Natural, Natural)> {
    for nu in 1..=limit {
        for b in 1..=limit {
            if arith::is_perfect_square(4 * nu * b - nu - b) {
                return Some((nu, b));
            }
        }
    }
    None
}
