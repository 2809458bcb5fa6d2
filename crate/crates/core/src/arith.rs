//! Exact integer utilities: the `β` map, primality, factorization, divisors,
//! gcd and perfect squares.
//!
//! All values are [`Natural`] (`u128`). Arithmetic that could leave the word
//! is checked and reported as [`ArithError::Overflow`]; nothing wraps.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Nonnegative integer used throughout the crate.
pub type Natural = u128;

/// Seed used by [`factorize`] when none is given.
pub const DEFAULT_RHO_SEED: u64 = 0x4e53_2f31_3937_0a5f;

/// Trial division bound applied before Pollard–Brent rho.
const TRIAL_BOUND: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("beta is undefined for w = 0")]
    BetaOfZero,
    #[error("cannot factorize {0}: input must be at least 2")]
    FactorizeBelowTwo(Natural),
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, ArithError>;

/// `β_w = 4w − 1`, the canonical element of the residue class 3 (mod 4).
pub fn beta(w: Natural) -> Result<Natural> {
    if w == 0 {
        return Err(ArithError::BetaOfZero);
    }
    w.checked_mul(4)
        .map(|v| v - 1)
        .ok_or(ArithError::Overflow("beta"))
}

pub fn gcd(u: Natural, v: Natural) -> Result<Natural> {
    if u == 0 && v == 0 {
        return Err(ArithError::GcdOfZeros);
    }
    Ok(gcd_raw(u, v))
}

fn gcd_raw(mut u: Natural, mut v: Natural) -> Natural {
    while v != 0 {
        let r = u % v;
        u = v;
        v = r;
    }
    u
}

pub fn is_perfect_square(m: Natural) -> bool {
    let r = m.isqrt();
    r * r == m
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_BOUND as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// `a·b mod m` without overflow for any `m`.
fn mul_mod(a: Natural, b: Natural, m: Natural) -> Natural {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // Double-and-add; operands stay below m so the sums are checked against m.
    let (mut a, mut b) = (a % m, b % m);
    let mut acc: Natural = 0;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: Natural, b: Natural, m: Natural) -> Natural {
    // a, b < m
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

fn pow_mod(mut base: Natural, mut exp: Natural, m: Natural) -> Natural {
    let mut acc: Natural = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Bases that make Miller–Rabin deterministic for every input below 2^64.
const MR_BASES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Extra rounds used above 2^64: 12 fixed + 52 seeded bases gives an error
/// bound of 4^-64 = 2^-128 for composite inputs.
const MR_EXTRA_ROUNDS: usize = 52;

fn miller_rabin_round(m: Natural, d: Natural, s: u32, a: Natural) -> bool {
    let a = a % m;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, m);
    if x == 1 || x == m - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, m);
        if x == m - 1 {
            return true;
        }
    }
    false
}

/// Primality test.
///
/// Deterministic for `m < 2^64`. Above that a Miller–Rabin test with 64
/// rounds is used (12 fixed bases plus 52 pseudo-random bases from a fixed
/// seed), so a composite passes with probability below 2^-128.
pub fn is_prime(m: Natural) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &small_primes()[..25] {
        let p = p as u128;
        if m == p {
            return true;
        }
        if m % p == 0 {
            return false;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    if !MR_BASES.iter().all(|&a| miller_rabin_round(m, d, s, a)) {
        return false;
    }
    if m <= u64::MAX as u128 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_RHO_SEED);
    (0..MR_EXTRA_ROUNDS).all(|_| {
        let a = rng.gen_range(2..m - 1);
        miller_rabin_round(m, d, s, a)
    })
}

/// Prime factorization of a natural number, primes strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    subject: Natural,
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    pub fn subject(&self) -> Natural {
        self.subject
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    /// Number of divisors, `∏(e + 1)`.
    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize + 1).product()
    }

    /// The factorization of `subject²`.
    pub fn squared(&self) -> Result<Factorization> {
        let subject = self
            .subject
            .checked_mul(self.subject)
            .ok_or(ArithError::Overflow("square of factorization subject"))?;
        Ok(Factorization {
            subject,
            factors: self.factors.iter().map(|&(p, e)| (p, 2 * e)).collect(),
        })
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<Natural> {
        let mut out = Vec::with_capacity(self.divisor_count());
        out.push(1);
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1;
            for _ in 0..e {
                // pk ≤ subject, so no overflow
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn from_primes(subject: Natural, mut primes: Vec<Natural>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(Natural, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { subject, factors }
    }
}

/// Divisors of `f.subject()`, ascending.
pub fn divisors(f: &Factorization) -> Vec<Natural> {
    f.divisors()
}

/// Factorize with the default rho seed.
pub fn factorize(m: Natural) -> Result<Factorization> {
    factorize_seeded(m, DEFAULT_RHO_SEED)
}

/// Trial division up to 10^4, then Pollard–Brent rho seeded with `seed` on
/// the remaining cofactor. The result does not depend on the seed.
pub fn factorize_seeded(m: Natural, seed: u64) -> Result<Factorization> {
    if m < 2 {
        return Err(ArithError::FactorizeBelowTwo(m));
    }
    let mut primes = Vec::new();
    let mut rest = trial_divide(m, &mut primes);
    if rest > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stack = vec![rest];
        while let Some(c) = stack.pop() {
            if is_prime(c) {
                primes.push(c);
                continue;
            }
            let f = pollard_brent(c, &mut rng);
            stack.push(f);
            stack.push(c / f);
        }
        rest = 1;
    }
    debug_assert_eq!(rest, 1);
    Ok(Factorization::from_primes(m, primes))
}

/// Strips prime factors below `TRIAL_BOUND`, returning the cofactor. A
/// cofactor below `TRIAL_BOUND²` is prime and is pushed as well.
fn trial_divide(m: Natural, primes: &mut Vec<Natural>) -> Natural {
    if m <= u64::MAX as u128 {
        let mut r = m as u64;
        let mut exhausted = true;
        for &p in small_primes() {
            if p * p > r {
                exhausted = false;
                break;
            }
            while r % p == 0 {
                primes.push(p as u128);
                r /= p;
            }
        }
        if r > 1 && (!exhausted || r < TRIAL_BOUND * TRIAL_BOUND) {
            primes.push(r as u128);
            return 1;
        }
        return r as u128;
    }
    let mut r = m;
    for &p in small_primes() {
        let p = p as u128;
        while r % p == 0 {
            primes.push(p);
            r /= p;
        }
    }
    if r > 1 && r < (TRIAL_BOUND * TRIAL_BOUND) as u128 {
        primes.push(r);
        return 1;
    }
    r
}

/// Returns a nontrivial factor of the odd composite `n`.
fn pollard_brent(n: Natural, rng: &mut ChaCha8Rng) -> Natural {
    if n % 2 == 0 {
        return 2;
    }
    loop {
        let mut y = rng.gen_range(1..n);
        let c = rng.gen_range(1..n);
        let m: u32 = 128;
        let step = |v: Natural| add_mod(mul_mod(v, v, n), c % n, n);

        let mut g: Natural = 1;
        let mut r: u64 = 1;
        let mut q: Natural = 1;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(m as u64).min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_raw(q, n);
                k += m as u64;
            }
            r *= 2;
        }
        if g == n {
            // Batch overshot; replay one step at a time.
            loop {
                ys = step(ys);
                g = gcd_raw(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}
