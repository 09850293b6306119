//! The recipe for the suites under `suites/`.

use std::path::Path;

use ivcheck::bigfloat::Format;
use ivcheck::generator::{
    emit_category_cases, find_hard_cases, hard_case_suite, hard_cases_json, make_case, make_op_case, Category, HardOptions,
    RunPattern, SearchRange, SPOTLIGHT,
};
use ivcheck::interval::{parse_interval_literal, NumericFn, Operation, Predicate, SetOp};
use ivcheck::pointfuncs::FunctionId;
use ivcheck::suite::{check, parse_suite, save_suite, TestCase, TestSuite, TestValue, ValidationPolicy};

/// Hard-case searches: function, format, range, hardness.
const HARD: &[(FunctionId, Format, &str, u32)] = &[
    (FunctionId::Cbrt, Format::binary64(), "[0x1p-1022, 0x1.0000000001p-1022]", 10),
    (FunctionId::Cbrt, Format::binary32(), "[0x1p-126, 0x1.01p-126]", 12),
    (FunctionId::Exp, Format::binary32(), "[1, 0x1.01p0]", 12),
    (FunctionId::Sin, Format::binary32(), "[0x1p-1, 0x1.01p-1]", 12),
    (FunctionId::Sin, Format::binary32(), "[0x1p-20, 0x1.00004p-20]", 16),
    (FunctionId::Atanh, Format::binary32(), "[0x1p-1, 0x1.01p-1]", 12),
];

pub fn build(dir: &Path, jobs: usize) -> Result<(), String> {
    std::fs::create_dir_all(dir.join("hardcases")).map_err(|e| format!("{}: {e}", dir.display()))?;
    let b64 = Format::binary64();
    let b32 = Format::binary32();
    for f in SPOTLIGHT {
        let mut cases = Vec::new();
        for cat in Category::ALL {
            cases.extend(emit_category_cases(f, b64, cat));
        }
        cases.extend(emit_category_cases(f, b32, Category::Easy));
        cases.extend(emit_category_cases(f, b32, Category::Special));
        if f == FunctionId::Atanh {
            cases.push(reference_atanh()?);
        }
        store(dir, &format!("{}.json", f.name()), cases)?;

        let mut hard = Vec::new();
        let mut meta = Vec::new();
        let searches = HARD.iter().filter(|s| s.0 == f).map(|&(_, fmt, r, h)| (fmt, r.to_string(), h));
        // The 12-bit exp binade is searched in full.
        let extra = (f == FunctionId::Exp).then(|| (Format::wide(12), "[1,2)".to_string(), 10));
        for (fmt, range, h) in searches.chain(extra) {
            let r = SearchRange::parse(&range, fmt).map_err(|e| e.to_string())?;
            let opts = HardOptions { jobs, ..HardOptions::default() };
            let found = find_hard_cases(f, &r, h, RunPattern::Both, &opts).map_err(|e| e.to_string())?;
            eprintln!("{f} {range} at precision {}: {} hard case(s)", fmt.precision(), found.len());
            hard.extend(hard_case_suite("", &found, fmt).map_err(|e| e.to_string())?.cases);
            if let serde_json::Value::Array(items) = hard_cases_json(&found, fmt) {
                meta.extend(items);
            }
        }
        let name = format!("{}_hard.json", f.name());
        store(dir, &name, hard)?;
        let text = serde_json::to_string_pretty(&serde_json::Value::Array(meta)).expect("json values serialize") + "\n";
        let path = dir.join("hardcases").join(&name);
        std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }

    let mut arith = Vec::new();
    for f in FunctionId::ALL.into_iter().filter(|f| !SPOTLIGHT.contains(f)) {
        for cat in Category::ALL {
            arith.extend(emit_category_cases(f, b64, cat));
        }
        arith.extend(emit_category_cases(f, b32, Category::Easy));
    }
    store(dir, "arith.json", arith)?;
    store(dir, "interval_ops.json", interval_ops(b64)?)?;
    Ok(())
}

/// The published single-precision atanh example, at the unbounded-exponent
/// 23-bit format.
fn reference_atanh() -> Result<TestCase, String> {
    let w = Format::wide(23);
    let x = parse_interval_literal("[-0xf.fe1e00@-1, 0xf.fe1e00@-1]_com", w).map_err(|e| e.to_string())?;
    make_case(FunctionId::Atanh, &[x], w, true, Some("reference atanh case".to_string())).map_err(|e| e.to_string())
}

fn store(dir: &Path, name: &str, cases: Vec<TestCase>) -> Result<(), String> {
    // Saving writes endpoints in exact hex, so the saved form is checked.
    let canonical = parse_suite(&TestSuite::new(name, cases).to_json_string(), name).map_err(|e| e.to_string())?;
    let suite = check(canonical, &ValidationPolicy { exact_endpoints: true }).map_err(|e| e.to_string())?;
    eprintln!("{name}: {} case(s)", suite.cases.len());
    save_suite(&suite, dir.join(name)).map_err(|e| e.to_string())
}

fn iv(inf: &str, sup: &str, dec: Option<&str>) -> TestValue {
    TestValue::Interval {
        inf: inf.to_string(),
        sup: sup.to_string(),
        dec: dec.map(|d| ivcheck::interval::Decoration::from_name(d).expect("known decoration")),
    }
}

fn interval_ops(format: Format) -> Result<Vec<TestCase>, String> {
    let unary = [
        iv("1", "2", None),
        iv("-3", "-1", None),
        iv("-inf", "2", None),
        iv("-inf", "inf", None),
        iv("0.1", "0.1", None),
        iv("-0x1p-1074", "0x1.fffffffffffffp+1023", None),
        iv("inf", "-inf", None),
        iv("1", "2", Some("com")),
        iv("inf", "-inf", Some("ill")),
    ];
    let pairs = [
        (iv("1", "3", None), iv("2", "4", None)),
        (iv("1", "2", None), iv("3", "4", None)),
        (iv("1", "4", None), iv("2", "3", None)),
        (iv("2", "3", None), iv("1", "4", None)),
        (iv("1", "2", None), iv("1", "2", None)),
        (iv("inf", "-inf", None), iv("1", "2", None)),
        (iv("-inf", "inf", None), iv("0", "0", None)),
        (iv("1", "3", Some("com")), iv("2", "inf", Some("dac"))),
        (iv("1", "3", Some("com")), iv("inf", "-inf", Some("ill"))),
    ];
    let numeric = [NumericFn::Inf, NumericFn::Sup, NumericFn::Mid, NumericFn::Rad, NumericFn::Wid, NumericFn::Mag, NumericFn::Mig];
    let mut cases = Vec::new();
    let mut push = |op: Operation, input: Vec<TestValue>| -> Result<(), String> {
        let label = input.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        cases.push(make_op_case(op, input, format, Some(format!("{op}({label})")))?);
        Ok(())
    };
    for n in numeric {
        for x in &unary {
            push(Operation::Numeric(n), vec![x.clone()])?;
        }
    }
    for p in [Predicate::IsEmpty, Predicate::IsEntire] {
        for x in &unary {
            push(Operation::Predicate(p), vec![x.clone()])?;
        }
    }
    for op in [
        Operation::Set(SetOp::Intersection),
        Operation::Set(SetOp::ConvexHull),
        Operation::Predicate(Predicate::Equal),
        Operation::Predicate(Predicate::Subset),
        Operation::Predicate(Predicate::Interior),
        Operation::Predicate(Predicate::Disjoint),
    ] {
        for (x, y) in &pairs {
            push(op, vec![x.clone(), y.clone()])?;
        }
    }
    let member = [("0.1", iv("0", "1", None)), ("2", iv("0", "1", None)), ("1", iv("1", "1", None)), ("0", iv("inf", "-inf", None)), ("0.1", iv("0.1", "0.1", None))];
    for (x, y) in member {
        push(Operation::Predicate(Predicate::Member), vec![TestValue::Number(x.to_string()), y])?;
    }
    Ok(cases)
}
