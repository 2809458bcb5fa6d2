use erdos_straus::scanner::{scan, Checkpoint, Conjectures, ScanConfig, ScanError};
use erdos_straus::ScanReport;
use proptest::prelude::*;

fn normalized(mut r: ScanReport) -> String {
    r.seconds = 0.0;
    r.to_json()
}

#[test]
fn repeated_scans_are_byte_identical() {
    let cfg = ScanConfig::new(5, 20_000).batch_size(100);
    let a = normalized(scan(&cfg).unwrap());
    let b = normalized(scan(&cfg.clone().threads(Some(1))).unwrap());
    let c = normalized(scan(&cfg.threads(Some(3))).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn halt_then_resume_matches() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    let base = ScanConfig::new(5, 5_000)
        .include_composites(true)
        .batch_size(64);
    let full = scan(&base).unwrap();

    let err = scan(&base.clone().checkpoint(&path).halt_after_batches(3)).unwrap_err();
    match err {
        ScanError::Halted {
            batches,
            last_completed_n,
        } => {
            assert_eq!(batches, 3);
            assert_eq!(last_completed_n, Some(full.records[3 * 64 - 1].n));
        }
        e => panic!("unexpected {e}"),
    }
    let cp = Checkpoint::load(&path).unwrap().unwrap();
    assert_eq!(cp.records.len(), 3 * 64);
    assert_eq!(cp.records[..], full.records[..3 * 64]);

    let resumed = scan(&base.clone().checkpoint(&path)).unwrap();
    assert_eq!(normalized(resumed), normalized(full));
}

#[test]
fn checkpoint_config_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    let _ = scan(&ScanConfig::new(5, 2_000).batch_size(16).checkpoint(&path).halt_after_batches(1));
    let other = ScanConfig::new(5, 2_000)
        .batch_size(16)
        .conjectures(Conjectures::A)
        .checkpoint(&path);
    assert!(matches!(scan(&other), Err(ScanError::CheckpointMismatch(_))));
}

#[test]
fn unwritable_checkpoint_is_an_error() {
    let cfg = ScanConfig::new(5, 100).checkpoint("/nonexistent-dir/sub/cp.json");
    assert!(matches!(scan(&cfg), Err(ScanError::Checkpoint { .. })));
}

#[test]
fn malformed_checkpoint_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    std::fs::write(&path, "{not json").unwrap();
    let cfg = ScanConfig::new(5, 100).checkpoint(&path);
    assert!(matches!(scan(&cfg), Err(ScanError::MalformedCheckpoint { .. })));
}

#[test]
fn finished_checkpoint_short_circuits() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    let cfg = ScanConfig::new(5, 3_000).batch_size(50).checkpoint(&path);
    let first = scan(&cfg).unwrap();
    let again = scan(&cfg).unwrap();
    assert_eq!(normalized(first), normalized(again));
}

#[test]
fn square_targets_are_never_type_a_members() {
    let report = scan(
        &ScanConfig::new(5, 10_000)
            .conjectures(Conjectures::A)
            .include_composites(true),
    )
    .unwrap();
    for r in &report.records {
        let root = r.n.isqrt();
        if root * root == r.n {
            assert!(report.exceptions.contains(&r.n), "square {} in S_A", r.n);
        }
    }
    assert!(report.exceptions.contains(&105));
    assert!(report.exceptions.contains(&801));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resume_at_any_batch(halt in 0usize..20, batch in 8usize..40) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let base = ScanConfig::new(5, 2_500).batch_size(batch);
        let full = scan(&base).unwrap();
        let _ = scan(&base.clone().checkpoint(&path).halt_after_batches(halt));
        let resumed = scan(&base.checkpoint(&path)).unwrap();
        prop_assert_eq!(normalized(resumed), normalized(full));
    }
}
