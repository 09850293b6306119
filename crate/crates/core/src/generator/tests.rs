use proptest::prelude::*;

use super::*;
use crate::bigfloat::{BigFloat, RoundingDirection};
use crate::harness::{run_case, AccuracyClaim, BuiltinAdapter, VerdictKind};
use crate::hexfloat::parse_number_exact;
use crate::interval::{Interval, SetOp};
use crate::suite::{validate_case, Severity, ValidationPolicy};

fn b64() -> Format {
    Format::binary64()
}

fn dec(lo: f64, hi: f64) -> DecoratedInterval {
    DecoratedInterval::from_bare(Interval::from_f64(lo, hi, b64()).unwrap())
}

fn bounds(d: &DecoratedInterval) -> (f64, f64) {
    (d.interval().inf().to_f64(), d.interval().sup().to_f64())
}

fn assert_clean(c: &TestCase) {
    let fatal: Vec<_> = validate_case(c, 0, &ValidationPolicy { exact_endpoints: true })
        .into_iter()
        .filter(|i| i.severity == Severity::Fatal)
        .collect();
    assert!(fatal.is_empty(), "{:?}: {fatal:?}", c.comment);
    let v = run_case(c, &BuiltinAdapter, AccuracyClaim::Tight).verdict;
    assert_eq!(v.kind, VerdictKind::PassTight, "{:?}: {}", c.comment, v.detail);
    let v = run_case(c, &BuiltinAdapter, AccuracyClaim::Accurate).verdict;
    assert_eq!(v.kind, VerdictKind::PassAccurate, "{:?}: {}", c.comment, v.detail);
}

#[test]
fn reference_atanh_case() {
    let w = Format::wide(23);
    let x = Interval::from_text("-0xf.fe1e00@-1", "0xf.fe1e00@-1", w).unwrap();
    let c = make_case(FunctionId::Atanh, &[DecoratedInterval::from_bare(x)], w, true, None).unwrap();
    let iv = |inf: &str, sup: &str| TestValue::Interval { inf: inf.into(), sup: sup.into(), dec: Some(Decoration::Com) };
    let want = |text: &str| crate::hexfloat::format_hex_lossy(&parse_number_exact(text, w).unwrap());
    assert_eq!(c.tight, iv(&want("-0x4.305fa0@0"), &want("0x4.305fa0@0")));
    assert_eq!(c.accurate, Some(iv(&want("-0x4.306830@0"), &want("0x4.306830@0"))));
    assert_eq!((c.precision, c.format_hint), (23, None));
    assert_clean(&c);
}

#[test]
fn exp_at_zero() {
    let e = expected_outputs(FunctionId::Exp, &[dec(0.0, 0.0)], b64()).unwrap();
    assert_eq!(bounds(&e.tight), (1.0, 1.0));
    // exp(-tiny) rounds down to 1 - 2^-53, exp(tiny) up to 1 + 2^-52; one
    // more step outward on each side.
    assert_eq!(bounds(&e.accurate), (1.0 - 2f64.powi(-52), 1.0 + 2f64.powi(-51)));
    assert_eq!(e.accurate.dec(), Decoration::Com);
}

#[test]
fn sqrt_partly_outside_domain() {
    let e = expected_outputs(FunctionId::Sqrt, &[dec(-2.0, 1.0)], b64()).unwrap();
    assert_eq!(bounds(&e.tight), (0.0, 1.0));
    assert_eq!(e.tight.dec(), Decoration::Trv);
    // sqrt(1 + 2^-52) is just above 1 + 2^-53, so rounds up to 1 + 2^-52.
    assert_eq!(bounds(&e.accurate), (-f64::from_bits(1), 1.0 + 2f64.powi(-51)));
    assert_eq!(e.accurate.dec(), Decoration::Trv);
}

#[test]
fn empty_results_stay_empty() {
    let e = expected_outputs(FunctionId::Log, &[dec(-1.0, 0.0)], b64()).unwrap();
    assert!(e.tight.interval().is_empty() && e.accurate.interval().is_empty());
}

#[test]
fn accurate_drops_com_when_widened_to_infinity() {
    let max = f64::MAX;
    let e = expected_outputs(FunctionId::Add, &[dec(max, max), dec(0.0, 0.0)], b64()).unwrap();
    assert_eq!(e.tight.dec(), Decoration::Com);
    assert!(e.accurate.interval().sup().is_pos_infinity());
    assert_eq!(e.accurate.dec(), Decoration::Dac);
}

#[test]
fn mul_case_by_brute_force() {
    let c = make_case(FunctionId::Mul, &[dec(-1.0, 2.0), dec(-3.0, 4.0)], b64(), false, None).unwrap();
    let products = [-1.0 * -3.0, -4.0, 2.0 * -3.0, 2.0 * 4.0];
    let lo = products.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = products.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let Some(Ok(crate::suite::Endpoints::Bounds(l, h))) = c.tight.endpoints(b64(), RoundingDirection::Down, RoundingDirection::Up) else {
        panic!()
    };
    assert_eq!((l.to_f64(), h.to_f64()), (lo, hi));
    assert_eq!(c.format_hint, Some(crate::suite::FormatHint::Binary64));
    assert_clean(&c);
}

#[test]
fn op_cases() {
    let iv = |a: &str, b: &str| TestValue::Interval { inf: a.into(), sup: b.into(), dec: None };
    let c = make_op_case(Operation::Set(SetOp::Intersection), vec![iv("1", "3"), iv("2", "4")], b64(), None).unwrap();
    assert_eq!(c.tight, iv("0x2@0", "0x3@0"));
    assert!(make_op_case(Operation::Set(SetOp::ConvexHull), vec![iv("1", "3")], b64(), None).is_err());
}

fn has(cases: &[TestCase], label: &str) -> TestCase {
    cases.iter().find(|c| c.comment.as_deref() == Some(label)).unwrap_or_else(|| panic!("no {label}")).clone()
}

#[test]
fn category_examples() {
    let easy = emit_category_cases(FunctionId::Exp, b64(), Category::Easy);
    let c = has(&easy, "easy exp([0, 0])");
    let one = crate::hexfloat::format_hex_lossy(&BigFloat::one(b64()));
    assert_eq!(c.tight, TestValue::Interval { inf: one.clone(), sup: one, dec: Some(Decoration::Com) });

    let special = emit_category_cases(FunctionId::Atanh, b64(), Category::Special);
    let c = has(&special, "special atanh([0, 1])");
    let TestValue::Interval { sup, dec, .. } = &c.tight else { panic!() };
    assert_eq!((sup.as_str(), *dec), ("inf", Some(Decoration::Trv)));

    let exceptional = emit_category_cases(FunctionId::Exp, b64(), Category::Exceptional);
    let c = has(&exceptional, "exceptional exp([-inf, -inf]) decorated");
    assert_eq!(c.tight, TestValue::Interval { inf: "inf".into(), sup: "-inf".into(), dec: Some(Decoration::Ill) });
    let c = has(&exceptional, "exceptional exp([-inf, -inf]) bare");
    assert_eq!(c.tight, TestValue::Interval { inf: "inf".into(), sup: "-inf".into(), dec: None });
}

#[test]
fn every_category_case_is_clean() {
    for format in [b64(), Format::binary32(), Format::wide(12)] {
        for f in FunctionId::ALL {
            for cat in Category::ALL {
                let cases = emit_category_cases(f, format, cat);
                assert!(!cases.is_empty(), "{f} {}", cat.name());
                for c in &cases {
                    // Sin at an unbounded-exponent format would need pi to
                    // about a million bits.
                    if format == Format::wide(12) && f == FunctionId::Sin && c.comment.as_deref().is_some_and(|s| s.contains("1e300")) {
                        continue;
                    }
                    assert_clean(c);
                }
            }
        }
    }
}

#[test]
fn search_range_parsing() {
    let w = Format::wide(12);
    let r = SearchRange::parse("[1,2)", w).unwrap();
    assert_eq!(r.t1.to_f64(), 2.0 - 2f64.powi(-11));
    assert_eq!(r.len(), 2048.into());
    assert_eq!(SearchRange::parse("[1, 0x1.8p0]", w).unwrap().len(), 1025.into());
    assert!(SearchRange::parse("[1,4)", w).is_err());
    assert!(SearchRange::parse("[-1,1)", w).is_err());
    assert!(SearchRange::parse("(1,2)", w).is_err());
}

fn exp_hard(extra: u32) -> Vec<HardCase> {
    let w = Format::wide(12);
    let r = SearchRange::parse("[1,2)", w).unwrap();
    let opts = HardOptions { working_extra: extra, jobs: 4, ..HardOptions::default() };
    find_hard_cases(FunctionId::Exp, &r, 8, RunPattern::Both, &opts).unwrap()
}

#[test]
fn hard_cases_certify() {
    let found = exp_hard(64);
    assert!(!found.is_empty());
    let xs: Vec<_> = found.iter().map(|c| c.x.clone()).collect();
    let again: Vec<_> = exp_hard(128).into_iter().map(|c| c.x).collect();
    assert_eq!(xs, again);
    for c in &found {
        let (kind, n) = run_length(FunctionId::Exp, &c.x, 12, 8 + 128, 256).unwrap().unwrap();
        assert_eq!(kind, c.run_kind);
        assert!(n >= 8 && n.min(40) == c.hardness.min(40), "{c}");
    }
    // Arguments left out have a shorter run.
    let w = Format::wide(12);
    for i in (0..2048).step_by(37) {
        let x = BigFloat::from_ordinal(&(BigFloat::one(w).ordinal().unwrap() + i), w);
        if !xs.contains(&x) {
            let (_, n) = run_length(FunctionId::Exp, &x, 12, 8, 256).unwrap().unwrap();
            assert!(n < 8);
        }
    }
    let ones = find_hard_cases(FunctionId::Exp, &SearchRange::parse("[1,2)", w).unwrap(), 8, RunPattern::Ones, &HardOptions::default()).unwrap();
    assert!(ones.iter().all(|c| c.run_kind == RunKind::Ones));
    assert_eq!(ones.len(), found.iter().filter(|c| c.run_kind == RunKind::Ones).count());
}

#[test]
fn cbrt_near_zero_has_hard_cases() {
    let r = SearchRange::parse("[0x1p-1022, 0x1.0000000001p-1022]", b64()).unwrap();
    let found = find_hard_cases(FunctionId::Cbrt, &r, 8, RunPattern::Both, &HardOptions::default()).unwrap();
    assert!(!found.is_empty());
    let suite = hard_case_suite("cbrt_hard.json", &found, b64()).unwrap();
    for c in &suite.cases {
        assert_clean(c);
    }
    let sidecar = hard_cases_json(&found, b64());
    assert_eq!(sidecar[0]["function"], "cbrt");
    assert_eq!(sidecar[0]["direction_affected"][0], "down");
}

#[test]
fn hard_search_limits() {
    let r = SearchRange::parse("[1,2)", b64()).unwrap();
    assert!(matches!(
        find_hard_cases(FunctionId::Exp, &r, 10, RunPattern::Both, &HardOptions::default()),
        Err(GeneratorError::Budget { .. })
    ));
    let small = SearchRange::parse("[1,1]", b64()).unwrap();
    assert!(matches!(
        find_hard_cases(FunctionId::Exp, &small, 1 << 21, RunPattern::Both, &HardOptions::default()),
        Err(GeneratorError::Hardness(_))
    ));
    assert!(matches!(
        find_hard_cases(FunctionId::Exp, &small, 0, RunPattern::Both, &HardOptions::default()),
        Err(GeneratorError::Hardness(0))
    ));
}

#[test]
fn exact_images_are_never_hard() {
    let w = Format::wide(12);
    assert_eq!(run_length(FunctionId::Exp, &BigFloat::zero(w), 12, 8, 64).unwrap(), None);
    let r = SearchRange::parse("[1,2)", w).unwrap();
    let found = find_hard_cases(FunctionId::Cbrt, &r, 4, RunPattern::Both, &HardOptions::default()).unwrap();
    assert!(found.iter().all(|c| crate::pointfuncs::exact_case(FunctionId::Cbrt, std::slice::from_ref(&c.x)).is_none()));
}

#[test]
fn sin_near_zero_is_consistent_with_x() {
    let r = SearchRange::parse("[0x1p-10, 0x1.1p-10]", Format::wide(12)).unwrap();
    let found = find_hard_cases(FunctionId::Sin, &r, 8, RunPattern::Both, &HardOptions::default()).unwrap();
    let suite = hard_case_suite("sin_hard.json", &found, Format::wide(12)).unwrap();
    assert!(!suite.cases.is_empty());
    for (c, h) in suite.cases.iter().zip(&found) {
        let x = h.x.to_f64();
        let Some(Ok(crate::suite::Endpoints::Bounds(l, u))) = c.tight.endpoints(Format::wide(12), RoundingDirection::Down, RoundingDirection::Up)
        else {
            panic!()
        };
        // x - x^3/6 < sin x < x.
        assert!(l.to_f64() < x && u.to_f64() <= x && u.to_f64() > x - x * x * x / 6.0 * 1.01);
        assert_ne!(l, u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_cases_are_consistent(f in prop::sample::select(SPOTLIGHT.to_vec()), a in -4.0f64..4.0, w in 0.0f64..3.0) {
        let c = make_case(f, &[dec(a, a + w)], b64(), true, None).unwrap();
        let e = expected_outputs(f, &[dec(a, a + w)], b64()).unwrap();
        prop_assert!(e.tight.interval().subset(e.accurate.interval()));
        prop_assert_eq!(&e.tight, &crate::interval::eval_decorated(f, &[dec(a, a + w)], b64()).unwrap());
        assert_clean(&c);
    }
}
