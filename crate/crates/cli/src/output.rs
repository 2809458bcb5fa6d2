//! JSON documents printed with `--json`. Every number is a decimal string.

use erdos_straus::{Natural, SolutionType, TypeASolution, TypeBSolution, UnitFractionTriple};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormRule {
    /// `n = 2k ↦ (k, 2k, 2k)`
    Even,
    /// `n = 4k − 1 ↦ (kn, k(k+1), k+1)`
    FourKMinusOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormOutput {
    #[serde(with = "erdos_straus::dec")]
    pub n: Natural,
    pub rule: ClosedFormRule,
    pub triple: UnitFractionTriple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchVerdict {
    Found,
    /// Nothing in the complete search range.
    NoneExhaustive,
    NoneWithinBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeAOutcome {
    pub verdict: SearchVerdict,
    #[serde(with = "erdos_straus::dec")]
    pub b_max: Natural,
    pub solutions: Vec<TypeASolution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBOutcome {
    pub verdict: SearchVerdict,
    #[serde(with = "erdos_straus::dec")]
    pub a_max: Natural,
    pub solutions: Vec<TypeBSolution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutput {
    #[serde(with = "erdos_straus::dec")]
    pub n: Natural,
    pub is_prime: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closed_form: Option<ClosedFormOutput>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub type_a: Option<TypeAOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub type_b: Option<TypeBOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    #[serde(with = "erdos_straus::dec")]
    pub n: Natural,
    pub triple: UnitFractionTriple,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification: Option<SolutionType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSolution {
    pub triple: UnitFractionTriple,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification: Option<SolutionType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutput {
    #[serde(with = "erdos_straus::dec")]
    pub n: Natural,
    pub count: usize,
    pub solutions: Vec<OracleSolution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "erdos_straus::dec")]
    pub prime: Natural,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOutput {
    #[serde(with = "erdos_straus::dec")]
    pub m: Natural,
    pub is_prime: bool,
    pub factors: Vec<PrimePower>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    #[serde(with = "erdos_straus::dec")]
    pub lo: Natural,
    #[serde(with = "erdos_straus::dec")]
    pub hi: Natural,
    pub records: usize,
    #[serde(with = "erdos_straus::dec::vec")]
    pub exceptions: Vec<Natural>,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub out: Option<String>,
}
