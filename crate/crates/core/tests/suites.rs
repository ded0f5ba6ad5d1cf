use std::path::PathBuf;

use fptkit::harness::{
    check_golden, golden_path, interval_violations, run_suite, run_suite_with, write_golden, SuiteError, SuiteName,
    SuiteSpec,
};
use fptkit::ExecMode;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden/v1")
}

#[test]
fn transcripts_match_golden_files() {
    for name in SuiteName::ALL {
        let report = run_suite(&SuiteSpec::new(name)).unwrap();
        assert!(report.pass(), "{name} has failing cases");
        check_golden(&golden_dir(), &report).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn transcripts_do_not_depend_on_schedule() {
    for name in SuiteName::ALL {
        let spec = SuiteSpec::new(name).with_seed(7);
        let seq = run_suite_with(&spec, ExecMode::Sequential).unwrap();
        let par = run_suite_with(&spec, ExecMode::Parallel).unwrap();
        assert_eq!(seq.transcript(), par.transcript(), "{name}");
        assert_eq!(seq.transcript(), run_suite(&spec).unwrap().transcript(), "{name}");
    }
}

#[test]
fn seeds_change_random_suites_only() {
    for name in [SuiteName::Bounds, SuiteName::Summation, SuiteName::Multiplicity, SuiteName::MonomialLaws] {
        let a = run_suite(&SuiteSpec::new(name).with_seed(1)).unwrap();
        let b = run_suite(&SuiteSpec::new(name).with_seed(2)).unwrap();
        assert_ne!(a.transcript(), b.transcript(), "{name}");
        assert!(b.pass(), "{name} seed 2");
    }
    let a = run_suite(&SuiteSpec::new(SuiteName::Duval).with_seed(1)).unwrap();
    let b = run_suite(&SuiteSpec::new(SuiteName::Duval).with_seed(2)).unwrap();
    let rows = |r: &fptkit::harness::SuiteReport| -> Vec<(String, String, bool)> {
        r.cases.iter().map(|c| (c.id.clone(), c.computed.clone(), c.pass)).collect()
    };
    assert_eq!(rows(&a), rows(&b));
}

#[test]
fn summation_has_one_hundred_level_cases() {
    let report = run_suite(&SuiteSpec::new(SuiteName::Summation).with_seed(42)).unwrap();
    let main: Vec<_> = report
        .cases
        .iter()
        .filter(|c| c.id.starts_with("pair") && !c.id.contains('/'))
        .collect();
    assert_eq!(main.len(), 100);
    assert!(main.iter().all(|c| c.pass));
}

#[test]
fn every_transcript_line_carries_a_tag() {
    let report = run_suite(&SuiteSpec::new(SuiteName::ThresholdEdge)).unwrap();
    let text = report.transcript();
    for line in text.lines().skip(2) {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 7, "{line}");
        assert!(["published", "elementary", "computed"].contains(&fields[5]), "{line}");
    }
}

#[test]
fn prime_and_level_filters() {
    let mut spec = SuiteSpec::new(SuiteName::Duval);
    spec.primes = Some(vec![11]);
    let report = run_suite(&spec).unwrap();
    assert!(report.cases.iter().all(|c| c.id.contains("/p11")));
    assert!(report.cases.iter().any(|c| c.id == "E8/p11/limit" && c.pass));

    spec.e_budget = Some(1);
    let report = run_suite(&spec).unwrap();
    assert!(report.cases.iter().all(|c| !c.id.ends_with("/limit")));
    assert!(report.pass());

    spec.primes = Some(vec![4]);
    assert_eq!(run_suite(&spec), Err(SuiteError::NotPrime(4)));
    assert_eq!("nope".parse::<SuiteName>(), Err(SuiteError::UnknownSuite("nope".into())));
    assert_eq!("hypersurface-ab".parse::<SuiteName>(), Ok(SuiteName::HypersurfaceAb));
}

#[test]
fn golden_round_trip_in_a_scratch_directory() {
    let dir = std::env::temp_dir().join(format!("fptkit-golden-{}", std::process::id()));
    let report = run_suite(&SuiteSpec::new(SuiteName::ThresholdEdge)).unwrap();
    let path = write_golden(&dir, &report).unwrap();
    assert_eq!(path, golden_path(&dir, &report.spec));
    check_golden(&dir, &report).unwrap();
    std::fs::write(&path, report.transcript().replace("pass\n", "FAIL\n")).unwrap();
    assert!(check_golden(&dir, &report).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn recorded_sequences_are_coherent() {
    for name in SuiteName::ALL {
        let report = run_suite(&SuiteSpec::new(name)).unwrap();
        for cs in &report.sequences {
            let bad = interval_violations(&cs.seq, cs.monomial_fpt.as_ref());
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }
}
