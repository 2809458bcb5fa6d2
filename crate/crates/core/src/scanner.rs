//! Range verification of the type-A and type-B families.
//!
//! Every `n ≡ 1 (mod 4)` in `[lo, hi]` (primes only, unless composites are
//! requested) gets one [`TargetRecord`]. Targets are processed in batches;
//! each batch runs in parallel and is merged back in ascending `n`, and the
//! optional checkpoint file is rewritten after every batch.
//!
//! Report JSON: `{range, config, records, exceptions, stats, seconds}`.
//! Checkpoint JSON: `{config, last_completed_n, partial_stats, records}`.
//! Every number is a decimal string.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, Natural};
use crate::type_a::{self, TypeAParams};
use crate::type_b::{self, TypeBParams, DEFAULT_A_MAX};

/// Targets per batch (and per checkpoint write).
pub const DEFAULT_BATCH_SIZE: usize = 1024;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid range [{lo}, {hi}]: need 5 ≤ lo ≤ hi")]
    InvalidRange { lo: Natural, hi: Natural },
    #[error("batch size must be positive")]
    ZeroBatch,
    #[error("checkpoint {path}: {source}")]
    Checkpoint { path: PathBuf, source: io::Error },
    #[error("checkpoint {path} is malformed: {source}")]
    MalformedCheckpoint {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("checkpoint {0} was written by a scan with a different configuration")]
    CheckpointMismatch(PathBuf),
    #[error("scan halted after {batches} batches (last completed n = {last_completed_n:?})")]
    Halted {
        batches: usize,
        last_completed_n: Option<Natural>,
    },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Solver(#[from] crate::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjectures {
    pub a: bool,
    pub b: bool,
}

impl Conjectures {
    pub const BOTH: Conjectures = Conjectures { a: true, b: true };
    pub const A: Conjectures = Conjectures { a: true, b: false };
    pub const B: Conjectures = Conjectures { a: false, b: true };
}

/// The part of a scan configuration that determines its output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSettings {
    #[serde(with = "crate::dec")]
    pub lo: Natural,
    #[serde(with = "crate::dec")]
    pub hi: Natural,
    pub conjectures: Conjectures,
    pub include_composites: bool,
    #[serde(with = "crate::dec")]
    pub a_max: Natural,
    pub batch_size: usize,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub settings: ScanSettings,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Stop with [`ScanError::Halted`] after this many batches have been
    /// processed and checkpointed in this run.
    pub halt_after_batches: Option<usize>,
}

impl ScanConfig {
    pub fn new(lo: Natural, hi: Natural) -> Self {
        ScanConfig {
            settings: ScanSettings {
                lo,
                hi,
                conjectures: Conjectures::BOTH,
                include_composites: false,
                a_max: DEFAULT_A_MAX,
                batch_size: DEFAULT_BATCH_SIZE,
            },
            threads: None,
            checkpoint: None,
            halt_after_batches: None,
        }
    }

    pub fn conjectures(mut self, c: Conjectures) -> Self {
        self.settings.conjectures = c;
        self
    }

    pub fn include_composites(mut self, yes: bool) -> Self {
        self.settings.include_composites = yes;
        self
    }

    pub fn a_max(mut self, a_max: Natural) -> Self {
        self.settings.a_max = a_max;
        self
    }

    pub fn batch_size(mut self, size: usize) -> Self {
        self.settings.batch_size = size;
        self
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    pub fn halt_after_batches(mut self, batches: usize) -> Self {
        self.halt_after_batches = Some(batches);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SaVerdict {
    Member(TypeAParams),
    /// The full `b ≤ ⌈(2+K)/3⌉` search found nothing.
    NonMemberExhaustive,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SbVerdict {
    Member(TypeBParams),
    NotFoundWithinBound,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRecord {
    #[serde(with = "crate::dec")]
    pub n: Natural,
    #[serde(with = "crate::dec")]
    pub k: Natural,
    pub is_pp: bool,
    pub sa: SaVerdict,
    pub sb: SbVerdict,
}

impl TargetRecord {
    pub fn is_exception(&self) -> bool {
        matches!(self.sa, SaVerdict::NonMemberExhaustive)
            || matches!(self.sb, SbVerdict::NotFoundWithinBound)
    }
}

/// Counts for one `(K mod 2, K mod 3)` cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCell {
    pub k_mod_2: u8,
    pub k_mod_3: u8,
    pub targets: u64,
    pub primes: u64,
    pub sa_members: u64,
    pub sb_members: u64,
    pub exceptions: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRange {
    #[serde(with = "crate::dec")]
    pub lo: Natural,
    #[serde(with = "crate::dec")]
    pub hi: Natural,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub range: ScanRange,
    pub config: ScanSettings,
    pub records: Vec<TargetRecord>,
    #[serde(with = "crate::dec::vec")]
    pub exceptions: Vec<Natural>,
    pub stats: Vec<ResidueCell>,
    pub seconds: f64,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per target:
    /// `n,K,is_pp,sa_verdict,sa_b,sa_mu,sa_kappa,sb_verdict,sb_a,sb_d,sb_mu`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "n",
            "K",
            "is_pp",
            "sa_verdict",
            "sa_b",
            "sa_mu",
            "sa_kappa",
            "sb_verdict",
            "sb_a",
            "sb_d",
            "sb_mu",
        ])?;
        for r in &self.records {
            let (sa, sa_params) = match r.sa {
                SaVerdict::Member(p) => ("member", [p.b, p.mu, p.kappa].map(|v| v.to_string())),
                SaVerdict::NonMemberExhaustive => ("non_member_exhaustive", Default::default()),
                SaVerdict::Skipped => ("skipped", Default::default()),
            };
            let (sb, sb_params) = match r.sb {
                SbVerdict::Member(p) => ("member", [p.a, p.d, p.mu].map(|v| v.to_string())),
                SbVerdict::NotFoundWithinBound => ("not_found_within_bound", Default::default()),
                SbVerdict::Skipped => ("skipped", Default::default()),
            };
            let [sa_b, sa_mu, sa_kappa] = sa_params;
            let [sb_a, sb_d, sb_mu] = sb_params;
            w.write_record([
                r.n.to_string(),
                r.k.to_string(),
                r.is_pp.to_string(),
                sa.to_string(),
                sa_b,
                sa_mu,
                sa_kappa,
                sb.to_string(),
                sb_a,
                sb_d,
                sb_mu,
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config: ScanSettings,
    #[serde(with = "opt_dec")]
    pub last_completed_n: Option<Natural>,
    pub partial_stats: Vec<ResidueCell>,
    pub records: Vec<TargetRecord>,
}

mod opt_dec {
    use super::Natural;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Natural>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => s.collect_str(n),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Natural>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>, ScanError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => {
                return Err(ScanError::Checkpoint {
                    path: path.to_owned(),
                    source,
                })
            }
        };
        serde_json::from_str(&text)
            .map(Some)
            .map_err(|source| ScanError::MalformedCheckpoint {
                path: path.to_owned(),
                source,
            })
    }

    /// Writes through a sibling temp file and a rename, so a crash never
    /// leaves a torn checkpoint behind.
    pub fn store(&self, path: &Path) -> Result<(), ScanError> {
        let io_err = |source| ScanError::Checkpoint {
            path: path.to_owned(),
            source,
        };
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        let body = serde_json::to_vec(self).expect("checkpoint serializes");
        fs::write(&tmp, body).map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)
    }
}

/// Cells keyed by `(K mod 2, K mod 3)`, in key order. Only cells with at
/// least one target appear.
pub fn residue_stats(records: &[TargetRecord]) -> Vec<ResidueCell> {
    let mut cells: BTreeMap<(u8, u8), ResidueCell> = BTreeMap::new();
    for r in records {
        let key = ((r.k % 2) as u8, (r.k % 3) as u8);
        let cell = cells.entry(key).or_insert_with(|| ResidueCell {
            k_mod_2: key.0,
            k_mod_3: key.1,
            ..Default::default()
        });
        cell.targets += 1;
        cell.primes += r.is_pp as u64;
        cell.sa_members += matches!(r.sa, SaVerdict::Member(_)) as u64;
        cell.sb_members += matches!(r.sb, SbVerdict::Member(_)) as u64;
        cell.exceptions += r.is_exception() as u64;
    }
    cells.into_values().collect()
}

/// Evaluates one target.
pub fn scan_target(n: Natural, settings: &ScanSettings) -> crate::Result<TargetRecord> {
    let k = (n - 1) / 4;
    let sa = if settings.conjectures.a {
        match type_a::membership_sa(n)? {
            Some(p) => SaVerdict::Member(p),
            None => SaVerdict::NonMemberExhaustive,
        }
    } else {
        SaVerdict::Skipped
    };
    let sb = if settings.conjectures.b {
        match type_b::membership_sb(n, settings.a_max)? {
            Some(p) => SbVerdict::Member(p),
            None => SbVerdict::NotFoundWithinBound,
        }
    } else {
        SbVerdict::Skipped
    };
    Ok(TargetRecord {
        n,
        k,
        is_pp: arith::is_prime(n),
        sa,
        sb,
    })
}

/// Targets in `[from, hi]`: `n ≡ 1 (mod 4)`, `n ≥ 5`, prime unless
/// composites are included.
fn targets(from: Natural, settings: &ScanSettings) -> impl Iterator<Item = Natural> + '_ {
    let from = from.max(5);
    let first = from + (4 - (from % 4) + 1) % 4;
    let include = settings.include_composites;
    let hi = settings.hi;
    (0..)
        .map(move |i: Natural| first + 4 * i)
        .take_while(move |&n| n <= hi)
        .filter(move |&n| include || arith::is_prime(n))
}

pub fn scan(config: &ScanConfig) -> Result<ScanReport, ScanError> {
    let s = config.settings;
    if s.lo < 5 || s.lo > s.hi {
        return Err(ScanError::InvalidRange { lo: s.lo, hi: s.hi });
    }
    if s.batch_size == 0 {
        return Err(ScanError::ZeroBatch);
    }
    let started = Instant::now();

    let mut records = Vec::new();
    let mut last_completed_n = None;
    if let Some(path) = &config.checkpoint {
        match Checkpoint::load(path)? {
            Some(cp) if cp.config != s => return Err(ScanError::CheckpointMismatch(path.clone())),
            Some(cp) => {
                records = cp.records;
                last_completed_n = cp.last_completed_n;
            }
            None => {
                // Fail early on an unwritable path.
                store_checkpoint(path, &s, None, &records)?;
            }
        }
    }

    let pool = build_pool(config.threads)?;
    let resume_from = last_completed_n.map_or(s.lo, |n| n + 1);
    let mut pending = targets(resume_from, &s).peekable();
    let mut batches = 0usize;
    while pending.peek().is_some() {
        if config.halt_after_batches == Some(batches) {
            return Err(ScanError::Halted {
                batches,
                last_completed_n,
            });
        }
        let batch: Vec<Natural> = pending.by_ref().take(s.batch_size).collect();
        let done = run_batch(&pool, &batch, &s)?;
        last_completed_n = batch.last().copied();
        records.extend(done);
        batches += 1;
        if let Some(path) = &config.checkpoint {
            store_checkpoint(path, &s, last_completed_n, &records)?;
        }
    }

    let exceptions = records
        .iter()
        .filter(|r| r.is_exception())
        .map(|r| r.n)
        .collect();
    let stats = residue_stats(&records);
    Ok(ScanReport {
        range: ScanRange { lo: s.lo, hi: s.hi },
        config: s,
        records,
        exceptions,
        stats,
        seconds: started.elapsed().as_secs_f64(),
    })
}

fn store_checkpoint(
    path: &Path,
    settings: &ScanSettings,
    last_completed_n: Option<Natural>,
    records: &[TargetRecord],
) -> Result<(), ScanError> {
    Checkpoint {
        config: *settings,
        last_completed_n,
        partial_stats: residue_stats(records),
        records: records.to_vec(),
    }
    .store(path)
}

#[cfg(feature = "parallel")]
type Pool = Option<rayon::ThreadPool>;
#[cfg(not(feature = "parallel"))]
type Pool = ();

#[cfg(feature = "parallel")]
fn build_pool(threads: Option<usize>) -> Result<Pool, ScanError> {
    threads
        .map(|t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| ScanError::ThreadPool(e.to_string()))
        })
        .transpose()
}

#[cfg(not(feature = "parallel"))]
fn build_pool(_threads: Option<usize>) -> Result<Pool, ScanError> {
    Ok(())
}

#[cfg(feature = "parallel")]
fn run_batch(
    pool: &Pool,
    batch: &[Natural],
    settings: &ScanSettings,
) -> crate::Result<Vec<TargetRecord>> {
    use rayon::prelude::*;
    let work = || {
        batch
            .par_iter()
            .map(|&n| scan_target(n, settings))
            .collect()
    };
    match pool {
        Some(p) => p.install(work),
        None => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_batch(
    _pool: &Pool,
    batch: &[Natural],
    settings: &ScanSettings,
) -> crate::Result<Vec<TargetRecord>> {
    batch.iter().map(|&n| scan_target(n, settings)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_range() {
        let report = scan(&ScanConfig::new(5, 100)).unwrap();
        let ns: Vec<Natural> = report.records.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]);
        assert!(report.exceptions.is_empty());
        assert!(report
            .records
            .iter()
            .all(|r| matches!(r.sa, SaVerdict::Member(_)) && matches!(r.sb, SbVerdict::Member(_))));
    }

    #[test]
    fn known_exceptions() {
        for n in [105, 801] {
            let report = scan(
                &ScanConfig::new(n, n)
                    .conjectures(Conjectures::A)
                    .include_composites(true),
            )
            .unwrap();
            assert_eq!(report.exceptions, vec![n]);
            assert_eq!(report.records[0].sa, SaVerdict::NonMemberExhaustive);
            assert_eq!(report.records[0].sb, SbVerdict::Skipped);
            assert!(!report.records[0].is_pp);
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(matches!(
            scan(&ScanConfig::new(10, 5)),
            Err(ScanError::InvalidRange { lo: 10, hi: 5 })
        ));
        assert!(matches!(scan(&ScanConfig::new(1, 5)), Err(ScanError::InvalidRange { .. })));
        assert!(matches!(
            scan(&ScanConfig::new(5, 9).batch_size(0)),
            Err(ScanError::ZeroBatch)
        ));
    }

    #[test]
    fn target_enumeration() {
        let s = ScanConfig::new(5, 30).include_composites(true).settings;
        assert_eq!(targets(5, &s).collect::<Vec<_>>(), vec![5, 9, 13, 17, 21, 25, 29]);
        assert_eq!(targets(6, &s).collect::<Vec<_>>(), vec![9, 13, 17, 21, 25, 29]);
        assert_eq!(targets(8, &s).collect::<Vec<_>>(), vec![9, 13, 17, 21, 25, 29]);
        assert_eq!(targets(9, &s).collect::<Vec<_>>(), vec![9, 13, 17, 21, 25, 29]);
        assert_eq!(targets(29, &s).collect::<Vec<_>>(), vec![29]);
        assert_eq!(targets(30, &s).count(), 0);
    }

    #[test]
    fn residue_stats_on_primes() {
        let report = scan(&ScanConfig::new(5, 1000)).unwrap();
        let cells = residue_stats(&report.records);
        assert!(cells.iter().all(|c| c.k_mod_3 != 2));
        assert_eq!(
            cells.iter().map(|c| c.targets).sum::<u64>() as usize,
            report.records.len()
        );
        assert_eq!(cells, report.stats);
    }

    #[test]
    fn residue_stats_on_composites() {
        assert!(residue_stats(&[]).is_empty());
        let report = scan(
            &ScanConfig::new(9, 105)
                .conjectures(Conjectures::A)
                .include_composites(true),
        )
        .unwrap();
        let cells = residue_stats(&report.records);
        let two_mod_three: Vec<_> = cells.iter().filter(|c| c.k_mod_3 == 2).collect();
        assert!(!two_mod_three.is_empty());
        // K = 26 lands in (0, 2)
        let cell = cells.iter().find(|c| (c.k_mod_2, c.k_mod_3) == (0, 2)).unwrap();
        assert!(cell.exceptions >= 1);
    }

    #[test]
    fn csv_shape() {
        let report = scan(
            &ScanConfig::new(101, 105)
                .conjectures(Conjectures::A)
                .include_composites(true),
        )
        .unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "n,K,is_pp,sa_verdict,sa_b,sa_mu,sa_kappa,sb_verdict,sb_a,sb_d,sb_mu"
        );
        assert_eq!(lines[1], "101,25,true,member,1,13,1,skipped,,,");
        assert_eq!(lines[2], "105,26,false,non_member_exhaustive,,,,skipped,,,");
    }

    #[test]
    fn json_uses_decimal_strings() {
        let report = scan(&ScanConfig::new(5, 5)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["range"]["lo"], "5");
        assert_eq!(v["records"][0]["n"], "5");
        assert_eq!(v["records"][0]["sa"]["verdict"], "member");
        assert_eq!(v["records"][0]["sa"]["kappa"], "1");
        assert_eq!(v["records"][0]["sb"]["mu"], "1");
        let mut back: ScanReport = serde_json::from_str(&report.to_json()).unwrap();
        back.seconds = report.seconds;
        assert_eq!(back, report);
    }
}
