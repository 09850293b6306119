use super::make_case;
use crate::bigfloat::{Format, RoundingDirection::NearestEven};
use crate::hexfloat::parse_number;
use crate::interval::{DecoratedInterval, Decoration, Interval, IntervalError};
use crate::pointfuncs::FunctionId;
use crate::suite::{FormatHint, TestCase, TestValue};

/// The functions the category presets are written for.
pub const SPOTLIGHT: [FunctionId; 4] = [FunctionId::Cbrt, FunctionId::Exp, FunctionId::Sin, FunctionId::Atanh];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    /// Small, usual values.
    Easy,
    /// Signed zeros, infinities, half-unbounded and domain-edge inputs.
    Special,
    /// Ill-formed inputs, which must come out NaI (decorated) or empty.
    Exceptional,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Easy, Category::Special, Category::Exceptional];

    pub fn name(self) -> &'static str {
        match self {
            Category::Easy => "easy",
            Category::Special => "special",
            Category::Exceptional => "exceptional",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

type Bounds = (&'static str, &'static str);

fn easy(f: FunctionId) -> Vec<Vec<Bounds>> {
    use FunctionId::*;
    let one = |v: &[Bounds]| v.iter().map(|&b| vec![b]).collect();
    match f {
        Exp => one(&[("0", "0"), ("1", "1"), ("-1", "1"), ("0.5", "2"), ("-10", "-5")]),
        Sin => one(&[("0", "0"), ("1", "2"), ("-0.5", "0.5"), ("3", "3.5"), ("0.1", "0.1")]),
        Cbrt => one(&[("-64", "-64"), ("8", "27"), ("-1", "1"), ("2", "3"), ("0.001", "0.001")]),
        Atanh => one(&[("0", "0"), ("-0.5", "0.5"), ("0.25", "0.75"), ("0.1", "0.1"), ("-0.99", "-0.9")]),
        _ if f.arity() == 2 => vec![
            vec![("1", "2"), ("3", "4")],
            vec![("-1", "2"), ("-3", "4")],
            vec![("0.1", "0.1"), ("3", "3")],
        ],
        _ => one(&[("1", "1"), ("0.5", "2"), ("0.1", "0.3")]),
    }
}

fn special(f: FunctionId) -> Vec<Vec<Bounds>> {
    use FunctionId::*;
    let one = |v: &[Bounds]| v.iter().map(|&b| vec![b]).collect();
    let empty = ("inf", "-inf");
    match f {
        Exp => one(&[
            ("-inf", "0"),
            ("0", "inf"),
            ("-inf", "inf"),
            ("-0", "0"),
            ("710", "710"),
            ("709", "710"),
            ("-746", "-745"),
            ("0x1p-1074", "0x1p-1074"),
            empty,
        ]),
        Sin => one(&[
            ("-inf", "inf"),
            ("0", "inf"),
            ("-inf", "0"),
            ("-0", "0"),
            ("0x1p-1074", "0x1p-1074"),
            ("-7", "7"),
            ("3.14159", "3.1416"),
            ("1.5707963267948966", "1.5707963267948966"),
            ("1e300", "1e300"),
            empty,
        ]),
        Cbrt => one(&[
            ("-inf", "inf"),
            ("-inf", "-8"),
            ("0", "inf"),
            ("-0", "0"),
            ("0x1p-1074", "0x1p-1074"),
            ("-0x1p-1022", "0x1p-1022"),
            ("0x1.fffffffffffffp+1023", "0x1.fffffffffffffp+1023"),
            empty,
        ]),
        Atanh => one(&[
            ("0", "1"),
            ("-1", "1"),
            ("-1", "0"),
            ("1", "2"),
            ("-1", "-1"),
            ("-inf", "inf"),
            ("0x1.fffffffffffffp-1", "0x1.fffffffffffffp-1"),
            ("-0", "0"),
            empty,
        ]),
        _ if f.arity() == 2 => vec![
            vec![("-inf", "1"), ("2", "inf")],
            vec![("0", "0"), ("-inf", "inf")],
            vec![("1", "2"), ("-1", "1")],
            vec![empty, ("1", "2")],
        ],
        _ => one(&[("-inf", "inf"), ("0", "inf"), ("-1", "0"), empty]),
    }
}

/// Ill-formed bounds: infinite singletons, reversed bounds and nan ends.
const ILL_FORMED: [Bounds; 5] = [("-inf", "-inf"), ("inf", "inf"), ("2", "1"), ("nan", "1"), ("0", "nan")];

fn interval(b: Bounds, format: Format) -> Result<DecoratedInterval, IntervalError> {
    if b == ("inf", "-inf") {
        return Ok(DecoratedInterval::from_bare(Interval::empty(format)));
    }
    Interval::from_text(b.0, b.1, format).map(DecoratedInterval::from_bare)
}

/// Category cases for `f` at `format`. Easy and special inputs are emitted
/// decorated; the first easy input is also emitted bare. Inputs that do not
/// fit the format (such as `1e300` at binary32) are skipped.
pub fn emit_category_cases(f: FunctionId, format: Format, category: Category) -> Vec<TestCase> {
    let label = |b: &[Bounds]| {
        let args: Vec<String> = b.iter().map(|(l, h)| format!("[{l}, {h}]")).collect();
        format!("{} {}({})", category.name(), f.name(), args.join(", "))
    };
    match category {
        Category::Exceptional => {
            let mut cases = Vec::new();
            for b in ILL_FORMED {
                for decorated in [true, false] {
                    cases.push(ill_formed_case(f, format, b, decorated));
                }
            }
            cases
        }
        Category::Easy | Category::Special => {
            let inputs = if category == Category::Easy { easy(f) } else { special(f) };
            let mut cases = Vec::new();
            for (k, bounds) in inputs.iter().enumerate() {
                let Ok(args) = bounds.iter().map(|&b| interval(b, format)).collect::<Result<Vec<_>, _>>() else {
                    continue;
                };
                if bounds.iter().any(|&(l, h)| overflows(l, format) || overflows(h, format)) {
                    continue;
                }
                let modes: &[bool] = if category == Category::Easy && k == 0 { &[true, false] } else { &[true] };
                for &decorated in modes {
                    if let Ok(c) = make_case(f, &args, format, decorated, Some(label(bounds))) {
                        cases.push(c);
                    }
                }
            }
            cases
        }
    }
}

/// Finite nonzero text that rounds to an infinity or to zero in `format`.
fn overflows(text: &str, format: Format) -> bool {
    let parse = |fmt| parse_number(text, fmt, NearestEven);
    match (parse(Format::wide(64)), parse(format)) {
        (Ok(wide), Ok(v)) => wide.is_finite() && !wide.is_zero() && (v.is_infinite() || v.is_zero()),
        _ => false,
    }
}

/// A case whose every interval input has the bounds `b`, which need not
/// form a valid interval; the expected result is NaI when `decorated` and
/// empty otherwise. Extra arguments of binary functions are `[1, 2]`.
pub fn ill_formed_case(f: FunctionId, format: Format, b: (&str, &str), decorated: bool) -> TestCase {
    let dec = decorated.then_some(Decoration::Com);
    let mut input = vec![TestValue::Interval { inf: b.0.to_string(), sup: b.1.to_string(), dec }];
    if f.arity() == 2 {
        input.push(TestValue::Interval { inf: "1".into(), sup: "2".into(), dec });
    }
    let out = if decorated {
        TestValue::from_decorated(&DecoratedInterval::nai(format))
    } else {
        TestValue::from_interval(&Interval::empty(format))
    };
    let mode = if decorated { "decorated" } else { "bare" };
    TestCase {
        function: f.name().to_string(),
        precision: format.precision(),
        format_hint: FormatHint::for_format(format),
        input,
        tight: out.clone(),
        accurate: Some(out),
        comment: Some(format!("exceptional {}([{}, {}]) {mode}", f.name(), b.0, b.1)),
    }
}
