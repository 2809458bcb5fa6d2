//! Solutions of the Erdős–Straus equation `4/n = 1/x + 1/y + 1/z` for
//! primes `n ≡ 1 (mod 4)`, built from two parametric families:
//!
//! * [`type_a`]: `n = κβ_bβ_μ − β_μ − κ`, searchable with a finite bound.
//! * [`type_b`]: `n = β_aβ_μ − 4d` with `d | a²`, searched up to a bound on `a`.
//!
//! Here `β_w = 4w − 1`. The [`oracle`] module enumerates all solutions for
//! small `n` and the [`scanner`] checks both families over ranges.
//!
//! ```
//! use erdos_straus::{type_a, equation};
//!
//! let params = type_a::membership_sa(560281).unwrap().unwrap();
//! let sol = type_a::expand_type_a(560281, params).unwrap();
//! assert!(equation::verify_triple(560281, &sol.triple).unwrap());
//! ```

pub mod arith;
pub mod dec;
pub mod equation;
pub mod oracle;
pub mod scanner;
pub mod type_a;
pub mod type_b;

use thiserror::Error;

pub use arith::{ArithError, Factorization, Natural};
pub use equation::{EquationError, EscTarget, SolutionKind, SolutionType, UnitFractionTriple};
pub use scanner::{ScanConfig, ScanError, ScanReport};
pub use type_a::{TypeAParams, TypeASolution};
pub use type_b::{TypeBAltParams, TypeBParams, TypeBSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error("K must be at least 1")]
    KIsZero,
    #[error("{0} is not of the form 1 + 4K with K ≥ 1")]
    NotOneModFour(Natural),
    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotPythagoreanPrime(Natural),
    #[error("n must be at least 2, got {0}")]
    TargetTooSmall(Natural),
    #[error("parameters do not represent n = {n}")]
    ParamsDoNotRepresent { n: Natural },
    #[error("d does not divide a², or ν does not divide λa₁")]
    InvalidDecomposition,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
