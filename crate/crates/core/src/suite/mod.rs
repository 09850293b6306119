//! Test suites: JSON arrays of test-case objects.
//!
//! ```json
//! {
//!   "function": "atanh",
//!   "precision": 23,
//!   "input": [{"type": "interval", "inf": "-0xf.fe1e00@-1", "sup": "0xf.fe1e00@-1", "dec": "com"}],
//!   "output": {
//!     "tight": {"type": "interval", "inf": "-0x4.305fa0@0", "sup": "0x4.305fa0@0", "dec": "com"},
//!     "accurate": {"type": "interval", "inf": "-0x4.306830@0", "sup": "0x4.306830@0", "dec": "com"}
//!   }
//! }
//! ```
//!
//! Two optional fields extend the schema: `format_hint` (`binary32` or
//! `binary64`, selecting an IEEE format instead of the unbounded-exponent
//! `wide(precision)`) and `comment`. The empty interval is written with the
//! bounds it has as a set, `"inf": "inf"` and `"sup": "-inf"`; adding
//! `"dec": "ill"` makes it NaI.

mod json;
mod validate;

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::bigfloat::{BigFloat, Format, RoundingDirection};
use crate::hexfloat::{format_hex_lossy, parse_number, ParseError};
use crate::interval::{DecoratedInterval, Decoration, Interval, IntervalError, Operation, ValueKind};

pub use json::{value_from_json, value_to_json};
pub use validate::{validate_case, Issue, Severity, ValidationPolicy};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Json { source_name: String, line: usize, column: usize, message: String },
    #[error("{source_name}: {}{message}", index.map(|i| format!("case[{i}]: ")).unwrap_or_default())]
    Schema { source_name: String, index: Option<usize>, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{source_name}: {} fatal issue(s), first: {}", issues.len(), issues[0])]
    Invalid { source_name: String, issues: Vec<Issue> },
}

/// One input or output value. Endpoint text is kept as written; it is
/// parsed against the case's format when needed.
#[derive(Clone, Debug, PartialEq)]
pub enum TestValue {
    Interval { inf: String, sup: String, dec: Option<Decoration> },
    Number(String),
    Boolean(bool),
    String(String),
}

/// Raw endpoints of an interval value, before validity checks.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoints {
    /// The `[+inf, -inf]` encoding.
    Empty,
    Bounds(BigFloat, BigFloat),
}

impl TestValue {
    pub fn from_interval(x: &Interval) -> Self {
        let (inf, sup) = match x.bounds() {
            None => ("inf".to_string(), "-inf".to_string()),
            Some((l, h)) => (format_hex_lossy(l), format_hex_lossy(h)),
        };
        TestValue::Interval { inf, sup, dec: None }
    }

    pub fn from_decorated(x: &DecoratedInterval) -> Self {
        match Self::from_interval(x.interval()) {
            TestValue::Interval { inf, sup, .. } => TestValue::Interval { inf, sup, dec: Some(x.dec()) },
            _ => unreachable!(),
        }
    }

    pub fn from_number(x: &BigFloat) -> Self {
        TestValue::Number(format_hex_lossy(x))
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            TestValue::Interval { .. } => "interval",
            TestValue::Number(_) => "number",
            TestValue::Boolean(_) => "boolean",
            TestValue::String(_) => "string",
        }
    }

    pub fn kind(&self) -> Option<ValueKind> {
        match self {
            TestValue::Interval { .. } => Some(ValueKind::Interval),
            TestValue::Number(_) => Some(ValueKind::Number),
            TestValue::Boolean(_) => Some(ValueKind::Boolean),
            TestValue::String(_) => None,
        }
    }

    pub fn dec(&self) -> Option<Decoration> {
        match self {
            TestValue::Interval { dec, .. } => *dec,
            _ => None,
        }
    }

    /// Interval endpoints parsed into `format`, the lower one rounded in
    /// `lo_dir` and the upper in `hi_dir`. `None` for other value types.
    pub fn endpoints(
        &self,
        format: Format,
        lo_dir: RoundingDirection,
        hi_dir: RoundingDirection,
    ) -> Option<Result<Endpoints, ParseError>> {
        let TestValue::Interval { inf, sup, .. } = self else {
            return None;
        };
        let parsed = parse_number(inf, format, lo_dir).and_then(|l| Ok((l, parse_number(sup, format, hi_dir)?)));
        Some(parsed.map(|(l, h)| {
            if l.is_pos_infinity() && h.is_neg_infinity() {
                Endpoints::Empty
            } else {
                Endpoints::Bounds(l, h)
            }
        }))
    }

    /// The interval the value denotes, endpoints rounded outward. Errors on
    /// unparseable text, ill-formed bounds and impossible decorations.
    pub fn decode(&self, format: Format) -> Result<DecodedInterval, IntervalError> {
        let Some(parsed) = self.endpoints(format, RoundingDirection::Down, RoundingDirection::Up) else {
            return Err(IntervalError::Literal {
                text: self.type_name().to_string(),
                message: "not an interval value".to_string(),
            });
        };
        let interval = match parsed? {
            Endpoints::Empty => Interval::empty(format),
            Endpoints::Bounds(l, h) => Interval::new(&l, &h, format)?,
        };
        let dec = self.dec();
        match dec {
            Some(Decoration::Ill) if interval.is_empty() => Ok(DecodedInterval::Decorated(DecoratedInterval::nai(format))),
            Some(d) => Ok(DecodedInterval::Decorated(DecoratedInterval::new(interval, d)?)),
            None => Ok(DecodedInterval::Bare(interval)),
        }
    }

    /// A number value rounded into `format`.
    pub fn number(&self, format: Format, dir: RoundingDirection) -> Option<Result<BigFloat, ParseError>> {
        match self {
            TestValue::Number(text) => Some(parse_number(text, format, dir)),
            _ => None,
        }
    }
}

/// An interval value after decoding.
#[derive(Clone, Debug, PartialEq)]
pub enum DecodedInterval {
    Bare(Interval),
    Decorated(DecoratedInterval),
}

impl DecodedInterval {
    pub fn interval(&self) -> &Interval {
        match self {
            DecodedInterval::Bare(x) => x,
            DecodedInterval::Decorated(d) => d.interval(),
        }
    }

    pub fn dec(&self) -> Option<Decoration> {
        match self {
            DecodedInterval::Bare(_) => None,
            DecodedInterval::Decorated(d) => Some(d.dec()),
        }
    }
}

impl fmt::Display for TestValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestValue::Interval { inf, sup, dec } => {
                write!(f, "[{inf}, {sup}]")?;
                if let Some(d) = dec {
                    write!(f, "_{d}")?;
                }
                Ok(())
            }
            TestValue::Number(v) | TestValue::String(v) => f.write_str(v),
            TestValue::Boolean(b) => write!(f, "{b}"),
        }
    }
}

/// IEEE presets selectable per case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormatHint {
    Binary32,
    Binary64,
}

impl FormatHint {
    pub fn name(self) -> &'static str {
        match self {
            FormatHint::Binary32 => "binary32",
            FormatHint::Binary64 => "binary64",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "binary32" => Some(FormatHint::Binary32),
            "binary64" => Some(FormatHint::Binary64),
            _ => None,
        }
    }

    pub fn format(self) -> Format {
        match self {
            FormatHint::Binary32 => Format::binary32(),
            FormatHint::Binary64 => Format::binary64(),
        }
    }

    /// The hint matching an IEEE preset format, if any.
    pub fn for_format(format: Format) -> Option<Self> {
        [FormatHint::Binary32, FormatHint::Binary64].into_iter().find(|h| h.format() == format)
    }
}

#[derive(Clone, Debug)]
pub struct TestCase {
    pub function: String,
    pub precision: u32,
    pub format_hint: Option<FormatHint>,
    pub input: Vec<TestValue>,
    pub tight: TestValue,
    pub accurate: Option<TestValue>,
    pub comment: Option<String>,
}

impl TestCase {
    pub fn operation(&self) -> Option<Operation> {
        Operation::from_name(&self.function)
    }

    /// The case's format: the hinted preset, or `wide(precision)`. `None`
    /// when the precision is below 2 or disagrees with the hint.
    pub fn format(&self) -> Option<Format> {
        match self.format_hint {
            Some(h) => (h.format().precision() == self.precision).then(|| h.format()),
            None => (self.precision >= 2).then(|| Format::wide(self.precision)),
        }
    }

    /// Decorated mode: some interval input carries a decoration.
    pub fn is_decorated(&self) -> bool {
        self.input.iter().any(|v| v.dec().is_some())
    }

    /// The canonical JSON object, endpoints rewritten in exact hexadecimal.
    pub fn to_json(&self) -> serde_json::Value {
        json::case_to_json(self)
    }
}

/// Value-wise equality: equal canonical forms.
impl PartialEq for TestCase {
    fn eq(&self, other: &Self) -> bool {
        self.to_json() == other.to_json()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestSuite {
    pub source_name: String,
    pub cases: Vec<TestCase>,
}

impl TestSuite {
    pub fn new(source_name: impl Into<String>, cases: Vec<TestCase>) -> Self {
        TestSuite { source_name: source_name.into(), cases }
    }

    pub fn validate(&self, policy: &ValidationPolicy) -> Vec<Issue> {
        self.cases.iter().enumerate().flat_map(|(i, c)| validate_case(c, i, policy)).collect()
    }

    /// Canonical text: two-space indented JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let cases = self.cases.iter().map(TestCase::to_json).collect();
        let mut s = serde_json::to_string_pretty(&serde_json::Value::Array(cases)).expect("json values serialize");
        s.push('\n');
        s
    }
}

/// Parses suite text without validating the cases.
pub fn parse_suite(text: &str, source_name: &str) -> Result<TestSuite, SuiteError> {
    json::parse(text, source_name)
}

/// Reads, parses and validates a suite with the default policy.
pub fn load_suite(path: impl AsRef<Path>) -> Result<TestSuite, SuiteError> {
    load_suite_with(path, &ValidationPolicy::default())
}

pub fn load_suite_with(path: impl AsRef<Path>, policy: &ValidationPolicy) -> Result<TestSuite, SuiteError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| SuiteError::Io { path: path.display().to_string(), source })?;
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let suite = parse_suite(&text, &name)?;
    check(suite, policy)
}

/// Fails with every fatal issue of the suite, if there is one.
pub fn check(suite: TestSuite, policy: &ValidationPolicy) -> Result<TestSuite, SuiteError> {
    let fatal: Vec<Issue> = suite.validate(policy).into_iter().filter(|i| i.severity == Severity::Fatal).collect();
    if fatal.is_empty() {
        Ok(suite)
    } else {
        Err(SuiteError::Invalid { source_name: suite.source_name, issues: fatal })
    }
}

pub fn save_suite(suite: &TestSuite, path: impl AsRef<Path>) -> Result<(), SuiteError> {
    let path = path.as_ref();
    std::fs::write(path, suite.to_json_string())
        .map_err(|source| SuiteError::Io { path: path.display().to_string(), source })
}
