//! Browser bindings. Each export takes plain values and returns a JSON
//! string; numbers that may exceed 2^53 are decimal strings.

use erdos_straus::arith::{self, Natural};
use erdos_straus::equation::{classify, verify_triple, SolutionType, UnitFractionTriple};
use erdos_straus::scanner::{self, residue_stats, ResidueCell, SaVerdict, SbVerdict};
use erdos_straus::{oracle, type_a, type_b, ScanConfig, TypeASolution, TypeBSolution};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Widest range the scan export accepts, to keep the page responsive.
pub const MAX_SCAN_SPAN: Natural = 200_000;
/// Largest `n` the oracle export accepts.
pub const MAX_ORACLE_N: Natural = 5000;

#[derive(Debug, Serialize)]
pub struct Solved {
    #[serde(with = "erdos_straus::dec")]
    pub n: Natural,
    pub is_prime: bool,
    pub type_a: Option<TypeASolution>,
    pub type_b: Option<TypeBSolution>,
}

#[derive(Debug, Serialize)]
pub struct OracleEntry {
    pub triple: UnitFractionTriple,
    pub classification: SolutionType,
}

#[derive(Debug, Serialize)]
pub struct Oracle {
    pub n: u32,
    pub total: usize,
    pub solutions: Vec<OracleEntry>,
}

/// One point per target: `n` with the `b` of its first type-A hit and the
/// `a` of its first type-B hit (0 when there is none).
#[derive(Debug, Serialize)]
pub struct ScanPoint {
    pub n: u32,
    pub b: u32,
    pub a: u32,
}

#[derive(Debug, Serialize)]
pub struct Scan {
    pub targets: usize,
    pub exceptions: Vec<u32>,
    pub stats: Vec<ResidueCell>,
    pub points: Vec<ScanPoint>,
}

fn parse(n: &str) -> Result<Natural, String> {
    n.trim().parse().map_err(|_| format!("not a natural number: {n:?}"))
}

/// First type-A and type-B solutions of `4/n = 1/x + 1/y + 1/z`.
pub fn solve_value(n: &str, a_max: u32) -> Result<Solved, String> {
    let n = parse(n)?;
    if n < 5 || n % 4 != 1 {
        return Err(format!("{n} is not of the form 1 + 4K with K ≥ 1"));
    }
    let e = |e: erdos_straus::Error| e.to_string();
    let type_a = match type_a::membership_sa(n).map_err(e)? {
        Some(p) => Some(type_a::expand_type_a(n, p).map_err(e)?),
        None => None,
    };
    let type_b = match type_b::membership_sb(n, a_max.into()).map_err(e)? {
        Some(p) => Some(type_b::expand_type_b(n, p).map_err(e)?),
        None => None,
    };
    for t in type_a.iter().map(|s| &s.triple).chain(type_b.iter().map(|s| &s.triple)) {
        if !verify_triple(n, t).map_err(|e| e.to_string())? {
            return Err(format!("internal error: {t} does not solve n = {n}"));
        }
    }
    Ok(Solved {
        n,
        is_prime: arith::is_prime(n),
        type_a,
        type_b,
    })
}

/// Every solution for small `n`, classified, truncated to `limit` entries.
pub fn oracle_value(n: u32, limit: u32) -> Result<Oracle, String> {
    let big = Natural::from(n);
    if big > MAX_ORACLE_N {
        return Err(format!("n must be at most {MAX_ORACLE_N}"));
    }
    let all = oracle::brute_force_solutions(big, None).map_err(|e| e.to_string())?;
    let solutions = all
        .iter()
        .take(limit as usize)
        .map(|&triple| {
            classify(big, &triple)
                .map(|classification| OracleEntry { triple, classification })
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    Ok(Oracle {
        n,
        total: all.len(),
        solutions,
    })
}

/// Checks every Pythagorean prime (or every `n ≡ 1 mod 4`) in `[lo, hi]`.
pub fn scan_value(lo: u32, hi: u32, composites: bool, a_max: u32) -> Result<Scan, String> {
    let (lo, hi) = (Natural::from(lo).max(5), Natural::from(hi));
    if lo > hi {
        return Err("empty range".into());
    }
    if hi - lo > MAX_SCAN_SPAN {
        return Err(format!("range wider than {MAX_SCAN_SPAN}"));
    }
    let settings = ScanConfig::new(lo, hi)
        .include_composites(composites)
        .a_max(a_max.into())
        .settings;
    let first = lo + (4 - lo % 4 + 1) % 4;
    let records = (first..=hi)
        .step_by(4)
        .filter(|&n| composites || arith::is_prime(n))
        .map(|n| scanner::scan_target(n, &settings).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let narrow = |v: Natural| u32::try_from(v).unwrap_or(u32::MAX);
    let points = records
        .iter()
        .map(|r| ScanPoint {
            n: narrow(r.n),
            b: match r.sa {
                SaVerdict::Member(p) => narrow(p.b),
                _ => 0,
            },
            a: match r.sb {
                SbVerdict::Member(p) => narrow(p.a),
                _ => 0,
            },
        })
        .collect();
    Ok(Scan {
        targets: records.len(),
        exceptions: records.iter().filter(|r| r.is_exception()).map(|r| narrow(r.n)).collect(),
        stats: residue_stats(&records),
        points,
    })
}

fn to_js<T: Serialize>(v: Result<T, String>) -> Result<String, JsError> {
    let v = v.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn solve(n: &str, a_max: u32) -> Result<String, JsError> {
    to_js(solve_value(n, a_max))
}

#[wasm_bindgen]
pub fn oracle_solutions(n: u32, limit: u32) -> Result<String, JsError> {
    to_js(oracle_value(n, limit))
}

#[wasm_bindgen]
pub fn scan_range(lo: u32, hi: u32, composites: bool, a_max: u32) -> Result<String, JsError> {
    to_js(scan_value(lo, hi, composites, a_max))
}
