//! Exact algebraic identities on generated solutions, checked in big-integer
//! arithmetic independently of the solver code paths.

use erdos_straus::arith::{self, Natural};
use erdos_straus::equation::{classify, verify_triple, SolutionKind};
use erdos_straus::{type_a, type_b};
use num_bigint::BigInt;
use proptest::prelude::*;

fn big(v: Natural) -> BigInt {
    BigInt::from(v)
}

fn beta(v: &BigInt) -> BigInt {
    4 * v - 1
}

fn pythagorean_primes(below: Natural) -> impl Iterator<Item = Natural> {
    (5..below).step_by(4).filter(|&n| arith::is_prime(n))
}

fn check_type_a(n: Natural, s: &type_a::TypeASolution) {
    let k = big((n - 1) / 4);
    let nb = big(n);
    let (a, d, z) = (big(s.a), big(s.d), big(s.z));
    let (x, y) = (big(s.triple.x), big(s.triple.y));
    let b = big(s.params.b);
    assert_eq!(a, &b + beta(&b) * &k, "a = b + β_b K");
    assert_eq!(beta(&a), &nb * beta(&b), "β_a = n β_b");
    assert_eq!(beta(&b) * &z, &a + &d, "β_b z = a + d");
    assert_eq!(beta(&a) * &z, &nb * (&d + &a), "β_a z = n(d + a)");
    assert_eq!((&a * &a) % &d, BigInt::from(0), "d | a²");
    assert_eq!(x, &a * &nb);
    assert_eq!(&y * &d, &a * &z, "y = az/d");
    let lhs = (beta(&a) * &z - &nb * &a) * (beta(&a) * &y - &nb * &a);
    assert_eq!(lhs, &nb * &nb * &a * &a, "factoring identity");
    assert!(!arith::is_prime(s.a), "a must be composite (n = {n})");
    assert!(verify_triple(n, &s.triple).unwrap());
    assert_eq!(classify(n, &s.triple).unwrap().kind, SolutionKind::TypeA);
}

fn check_type_b(n: Natural, s: &type_b::TypeBSolution) {
    let k = big((n - 1) / 4);
    let nb = big(n);
    let (a, d, mu) = (big(s.params.a), big(s.params.d), big(s.params.mu));
    let (x, y, z) = (big(s.triple.x), big(s.triple.y), big(s.triple.z));
    assert_eq!(&k, &(&mu * beta(&a) - &a - &d), "K = μβ_a − a − d");
    assert_eq!(z, &k + &mu, "z = K + μ");
    assert_eq!(beta(&a) * &z - &nb * &a, d, "β_a z − na = d");
    assert_eq!(x, &a * &nb);
    assert_eq!(&y * &d, &nb * &a * &z, "y = naz/d");
    let lhs = (beta(&a) * &z - &nb * &a) * (beta(&a) * &y - &nb * &a);
    assert_eq!(lhs, &nb * &nb * &a * &a, "factoring identity");
    assert!(verify_triple(n, &s.triple).unwrap());
    assert_eq!(classify(n, &s.triple).unwrap().kind, SolutionKind::TypeB);
}

#[test]
fn every_type_a_solution_below_2000() {
    for n in pythagorean_primes(2000) {
        for q in type_a::find_type_a((n - 1) / 4, None, false).unwrap() {
            check_type_a(n, &type_a::expand_type_a(n, q).unwrap());
        }
    }
}

#[test]
fn every_type_b_solution_below_2000_small_a() {
    for n in pythagorean_primes(2000) {
        for q in type_b::find_type_b((n - 1) / 4, 60, false).unwrap() {
            check_type_b(n, &type_b::expand_type_b(n, q).unwrap());
        }
    }
}

#[test]
fn worked_example_identities() {
    let n = 560281;
    for q in type_a::find_type_a(140070, Some(2), false).unwrap() {
        check_type_a(n, &type_a::expand_type_a(n, q).unwrap());
    }
    let q = type_b::membership_sb(n, type_b::DEFAULT_A_MAX).unwrap().unwrap();
    check_type_b(n, &type_b::expand_type_b(n, q).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Any (b, μ, κ) defines some K, and the search for that K must report
    /// it once b is in range.
    #[test]
    fn type_a_params_round_trip(b in 1u128..40, mu in 1u128..60, kappa in 1u128..60) {
        let q = type_a::TypeAParams::new(b, mu, kappa);
        let k = q.k().unwrap().unwrap();
        let n = 4 * k + 1;
        prop_assert!(type_a::find_type_a(k, Some(b), false).unwrap().contains(&q));
        let s = type_a::expand_type_a(n, q).unwrap();
        prop_assert!(verify_triple(n, &s.triple).unwrap());
        prop_assert!(!arith::is_prime(s.a));
    }

    /// Every d | a² with positive K is found by the type-B search.
    #[test]
    fn type_b_params_round_trip(a in 1u128..80, mu in 1u128..40, pick in 0usize..1000) {
        let divs = if a == 1 { vec![1] } else { arith::factorize(a).unwrap().squared().unwrap().divisors() };
        let d = divs[pick % divs.len()];
        let q = type_b::TypeBParams::new(a, d, mu);
        if let Some(k) = q.k().unwrap() {
            let n = 4 * k + 1;
            prop_assert!(type_b::find_type_b(k, a, false).unwrap().contains(&q));
            let s = type_b::expand_type_b(n, q).unwrap();
            prop_assert!(verify_triple(n, &s.triple).unwrap());
            let alt = type_b::to_alt_params(&q).unwrap();
            prop_assert_eq!(alt.n(mu).unwrap(), n);
        }
    }
}
