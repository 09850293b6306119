//! Generate, save, load and run a suite through the public API.

use ivcheck::bigfloat::Format;
use ivcheck::generator::{emit_category_cases, make_case, Category};
use ivcheck::harness::{run_suite, AccuracyClaim, BuiltinAdapter, MutateSupAdapter, RunOptions, VerdictKind};
use ivcheck::interval::parse_interval_literal;
use ivcheck::pointfuncs::FunctionId;
use ivcheck::suite::{load_suite, save_suite, TestSuite};

fn suite() -> TestSuite {
    let f = Format::binary64();
    let mut cases = emit_category_cases(FunctionId::Exp, f, Category::Easy);
    let x = parse_interval_literal("[-0x1p-3, 0x1.8p0]_dac", f).unwrap();
    cases.push(make_case(FunctionId::Exp, &[x], f, true, Some("dac input".into())).unwrap());
    TestSuite::new("exp.json", cases)
}

#[test]
fn saved_suite_passes_every_claim() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.json");
    save_suite(&suite(), &path).unwrap();
    let loaded = load_suite(&path).unwrap();
    assert_eq!(loaded.cases, suite().cases);
    for claim in [AccuracyClaim::Tight, AccuracyClaim::Accurate, AccuracyClaim::Valid] {
        let opts = RunOptions { claim, fuzz: 20, seed: 7, jobs: 2 };
        let report = run_suite(&loaded, &BuiltinAdapter, &opts);
        assert!(report.success(), "{}", report.to_json_string());
        assert_eq!(report.cases.len(), loaded.cases.len());
    }
}

#[test]
fn mutated_builtin_is_caught() {
    let report = run_suite(&suite(), &MutateSupAdapter::new(BuiltinAdapter), &RunOptions::default());
    assert!(!report.success());
    assert!(report.count(VerdictKind::FailUnsound) > 0);
    let json = report.to_json();
    assert_eq!(json["summary"]["total"], report.cases.len());
    assert_eq!(json["adapter"], "mutate-sup(builtin)");
}
