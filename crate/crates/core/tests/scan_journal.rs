use std::fs;

use cycloforge::flatness::{
    replay, scan, soundness_sweep, Conjecture, HeightCache, HeightRecord, ScanError, ScanOptions, ScanReport,
    Subject,
};
use cycloforge::verify::HEIGHT_DROP_TABLE;
use num_bigint::BigInt;

fn hits(report: &ScanReport) -> Vec<(String, Vec<String>)> {
    report
        .counterexamples
        .iter()
        .map(|c| {
            (
                c.n_or_tuple.clone(),
                c.values.iter().map(|v| format!("{}={}", v.subject, v.height)).collect(),
            )
        })
        .collect()
}

#[test]
fn interrupted_scan_resumes_from_journal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heights.jsonl");
    let conj = Conjecture::HeightDrop(3);

    let mut opts = ScanOptions::new(8000).journal(&path);
    opts.chunk_size = 16;
    opts.stop_after_chunks = Some(3);
    let partial = scan(conj, &opts).unwrap();
    assert!(!partial.complete);
    assert_eq!(partial.items_evaluated, 48);
    let written = HeightCache::load(&path).unwrap();
    assert_eq!(written.len(), partial.heights_computed);
    assert!(written.len() > 0);

    opts.stop_after_chunks = None;
    let resumed = scan(conj, &opts.clone().workers(3)).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.cache_hits, partial.heights_computed);

    let fresh = scan(conj, &ScanOptions::new(8000).workers(2)).unwrap();
    assert_eq!(hits(&resumed), hits(&fresh));
    assert_eq!(fresh.cache_hits, 0);

    // A third run finds everything cached.
    let again = scan(conj, &opts).unwrap();
    assert_eq!(again.heights_computed, 0);
    assert_eq!(hits(&again), hits(&fresh));
}

#[test]
fn journal_lines_follow_the_record_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heights.jsonl");
    scan(Conjecture::HeightDrop(3), &ScanOptions::new(3000).journal(&path)).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert!(!text.is_empty());
    for line in text.lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["degree", "factors", "height", "n"]);
        let rec: HeightRecord = serde_json::from_value(value).unwrap();
        assert_eq!(rec.n, rec.factors.iter().product::<u64>());
        assert_eq!(rec.degree, rec.factors.iter().map(|p| p - 1).product::<u64>());
        assert_eq!(rec.height, Subject::Cyclotomic(rec.factors.clone()).height());
    }
}

#[test]
fn drop_scan_finds_the_first_rows() {
    let report = scan(Conjecture::HeightDrop(3), &ScanOptions::new(12_000).workers(2)).unwrap();
    let rows: Vec<(u64, BigInt, BigInt)> = report
        .counterexamples
        .iter()
        .map(|c| (c.values[0].subject.n(), c.values[0].height.clone(), c.values[1].height.clone()))
        .collect();
    let expected: Vec<(u64, BigInt, BigInt)> = HEIGHT_DROP_TABLE
        .iter()
        .filter(|r| r.0 < 12_000)
        .map(|&(n, a, b)| (n, BigInt::from(a), BigInt::from(b)))
        .collect();
    assert_eq!(expected.len(), 3);
    assert_eq!(rows, expected);
    assert_eq!(report.range_checked, (1, 11_999));
}

#[test]
fn exports_and_replay() {
    let mut report = scan(Conjecture::HeightDrop(3), &ScanOptions::new(5000)).unwrap();
    assert_eq!(report.counterexamples.len(), 1);

    let json = report.to_json();
    let back: ScanReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.counterexamples, report.counterexamples);
    assert_eq!(back.conjecture, "height_drop_p3");

    let csv = report.to_csv().unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("id,n_or_tuple,height_values,verdict"));
    let row = lines.next().unwrap();
    assert!(row.contains("4745") && row.contains("A(4745)=3;A(14235)=2"), "{row}");
    assert_eq!(lines.next(), None);

    assert!(replay(&report).is_empty());
    report.counterexamples[0].values[0].height = BigInt::from(7);
    let bad = replay(&report);
    assert_eq!(bad.len(), 1);
    assert_eq!((bad[0].2.clone(), bad[0].3.clone()), (BigInt::from(7), BigInt::from(3)));
}

#[test]
fn conjectures_without_counterexamples_at_small_bounds() {
    for conj in [
        Conjecture::NotFlat,
        Conjecture::BroadhurstIII,
        Conjecture::PqrsAllFlat,
        Conjecture::NpMonotonic(5),
        Conjecture::NpGtN(3),
        Conjecture::PseudoNotFlat,
        Conjecture::PseudoBroadhurstIII,
    ] {
        let r = scan(conj, &ScanOptions::new(6000).workers(2)).unwrap();
        assert!(r.complete, "{conj}");
        assert!(r.counterexamples.is_empty(), "{conj}: {:?}", r.counterexamples);
        assert!(r.items >= r.items_evaluated);
    }
}

#[test]
fn tag_parsing_and_errors() {
    for tag in Conjecture::TAGS {
        let concrete = tag.replace('P', "7");
        let c: Conjecture = concrete.parse().unwrap();
        assert_eq!(c.tag(), concrete);
    }
    assert!(matches!("height_drop_p4".parse::<Conjecture>(), Err(ScanError::UnknownConjecture(_))));
    assert!(matches!("nosuch".parse::<Conjecture>(), Err(ScanError::UnknownConjecture(_))));
    assert!(matches!(scan(Conjecture::NotFlat, &ScanOptions::new(0)), Err(ScanError::ZeroBound)));
}

#[test]
fn unwritable_journal_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("heights.jsonl");
    let err = scan(Conjecture::HeightDrop(3), &ScanOptions::new(3000).journal(&path)).unwrap_err();
    assert!(matches!(err, ScanError::Journal(_)));
}

#[test]
fn soundness_sweep_small_bound() {
    let r = soundness_sweep(6000, 2);
    assert!(r.passed(), "{:?}", r.failures);
    assert!(r.checked > 100);
    assert_eq!(r.by_status.values().sum::<usize>(), r.checked);
}
