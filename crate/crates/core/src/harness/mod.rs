//! Runs suites against an implementation and judges each result against an
//! accuracy claim.
//!
//! Judging a result `z` against the tight hull `T` (and the accurate bound
//! `A` when present):
//!
//! * `z` not containing `T`, or carrying a stronger decoration than `T`, is
//!   unsound under every claim.
//! * `tight` needs `z == T`; `accurate` needs `z ⊆ A`; `valid` needs nothing
//!   more.
//!
//! Non-interval results must equal the expected value exactly.

mod adapters;
mod fuzz;
mod report;
mod subprocess;

use std::fmt;

use thiserror::Error;

use crate::bigfloat::{Format, RoundingDirection::{Down, NearestEven, Up}};
use crate::interval::Interval;
use crate::suite::{Endpoints, FormatHint, TestCase, TestValue};

pub use adapters::{evaluate, BuiltinAdapter, FnAdapter, MutateSupAdapter};
pub use fuzz::{fuzz_case, sample_points};
pub use report::{run_suite, run_suites, CaseReport, Report, RunOptions};
pub use subprocess::{serve, SubprocessAdapter, DEFAULT_TIMEOUT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AccuracyClaim {
    Tight,
    Accurate,
    Valid,
}

impl AccuracyClaim {
    pub fn name(self) -> &'static str {
        match self {
            AccuracyClaim::Tight => "tight",
            AccuracyClaim::Accurate => "accurate",
            AccuracyClaim::Valid => "valid",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [AccuracyClaim::Tight, AccuracyClaim::Accurate, AccuracyClaim::Valid].into_iter().find(|c| c.name() == s)
    }

    fn pass(self) -> VerdictKind {
        match self {
            AccuracyClaim::Tight => VerdictKind::PassTight,
            AccuracyClaim::Accurate => VerdictKind::PassAccurate,
            AccuracyClaim::Valid => VerdictKind::PassValid,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    PassTight,
    PassAccurate,
    PassValid,
    FailUnsound,
    FailInaccurate,
    SkipUnsupported,
    Error,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 7] = [
        VerdictKind::PassTight,
        VerdictKind::PassAccurate,
        VerdictKind::PassValid,
        VerdictKind::FailUnsound,
        VerdictKind::FailInaccurate,
        VerdictKind::SkipUnsupported,
        VerdictKind::Error,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::PassTight => "pass_tight",
            VerdictKind::PassAccurate => "pass_accurate",
            VerdictKind::PassValid => "pass_valid",
            VerdictKind::FailUnsound => "fail_unsound",
            VerdictKind::FailInaccurate => "fail_inaccurate",
            VerdictKind::SkipUnsupported => "skip_unsupported",
            VerdictKind::Error => "error",
        }
    }

    pub fn is_pass(self) -> bool {
        matches!(self, VerdictKind::PassTight | VerdictKind::PassAccurate | VerdictKind::PassValid)
    }

    /// A fail or error: anything that makes a run unsuccessful.
    pub fn is_failure(self) -> bool {
        matches!(self, VerdictKind::FailUnsound | VerdictKind::FailInaccurate | VerdictKind::Error)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub detail: String,
}

impl Verdict {
    pub fn new(kind: VerdictKind, detail: impl Into<String>) -> Self {
        Verdict { kind, detail: detail.into() }
    }
}

/// One call to the implementation under test.
#[derive(Clone, Debug, PartialEq)]
pub struct Request {
    pub function: String,
    pub precision: u32,
    pub format_hint: Option<FormatHint>,
    pub input: Vec<TestValue>,
}

impl Request {
    pub fn for_case(c: &TestCase) -> Self {
        Request {
            function: c.function.clone(),
            precision: c.precision,
            format_hint: c.format_hint,
            input: c.input.clone(),
        }
    }

    pub fn format(&self) -> Option<Format> {
        match self.format_hint {
            Some(h) => (h.format().precision() == self.precision).then(|| h.format()),
            None => (self.precision >= 2).then(|| Format::wide(self.precision)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Response {
    Value(TestValue),
    Unsupported,
    Error(String),
}

/// The implementation under test.
pub trait Adapter: Send + Sync {
    fn identity(&self) -> String;

    fn call(&self, request: &Request) -> Response;

    /// Calls must not overlap; the harness serializes them.
    fn is_serial(&self) -> bool {
        false
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("fuzzing needs at least one sample")]
    NoSamples,
}

/// A verdict with the value it judged.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub computed: Option<TestValue>,
}

impl Outcome {
    fn bare(kind: VerdictKind, detail: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::new(kind, detail), computed: None }
    }
}

/// Calls the adapter on a case and judges its answer.
pub fn run_case(c: &TestCase, adapter: &dyn Adapter, claim: AccuracyClaim) -> Outcome {
    match adapter.call(&Request::for_case(c)) {
        Response::Unsupported => Outcome::bare(VerdictKind::SkipUnsupported, format!("{} unsupported", c.function)),
        Response::Error(e) => Outcome::bare(VerdictKind::Error, e),
        Response::Value(z) => Outcome { verdict: judge(c, &z, claim), computed: Some(z) },
    }
}

/// The verdict for result `z` on case `c`.
pub fn judge(c: &TestCase, z: &TestValue, claim: AccuracyClaim) -> Verdict {
    let Some(format) = c.format() else {
        return Verdict::new(VerdictKind::Error, "case has no valid format");
    };
    match &c.tight {
        TestValue::Interval { .. } => judge_interval(c, z, claim, format),
        expected => judge_exact(expected, z, claim, format),
    }
}

fn judge_exact(expected: &TestValue, z: &TestValue, claim: AccuracyClaim, format: Format) -> Verdict {
    if z.type_name() != expected.type_name() {
        return Verdict::new(VerdictKind::Error, format!("expected a {}, got a {}", expected.type_name(), z.type_name()));
    }
    let equal = match (expected, z) {
        (TestValue::Number(_), TestValue::Number(_)) => {
            let want = expected.number(format, NearestEven).and_then(Result::ok);
            let lo = z.number(format, Down).and_then(Result::ok);
            let hi = z.number(format, Up).and_then(Result::ok);
            match (want, lo, hi) {
                (Some(w), Some(l), Some(h)) => (w.is_nan() && l.is_nan()) || (w == l && w == h),
                _ => return Verdict::new(VerdictKind::Error, format!("unparseable number {z}")),
            }
        }
        (a, b) => a == b,
    };
    if equal {
        Verdict::new(claim.pass(), "")
    } else if matches!(expected, TestValue::Boolean(_)) {
        Verdict::new(VerdictKind::FailUnsound, format!("expected {expected}, got {z}"))
    } else {
        Verdict::new(VerdictKind::FailInaccurate, format!("expected {expected}, got {z}"))
    }
}

fn judge_interval(c: &TestCase, z: &TestValue, claim: AccuracyClaim, format: Format) -> Verdict {
    let fail = |kind, msg: String| Verdict::new(kind, msg);
    let t = match c.tight.decode(format) {
        Ok(t) => t,
        Err(e) => return fail(VerdictKind::Error, format!("expected tight value: {e}")),
    };
    // Endpoints of z rounded inward decide containment of the representable
    // T exactly; rounded outward they decide containment in A.
    let inward = match z.endpoints(format, Up, Down) {
        Some(Ok(e)) => e,
        Some(Err(e)) => return fail(VerdictKind::Error, format!("unparseable result: {e}")),
        None => return fail(VerdictKind::Error, format!("expected an interval, got a {}", z.type_name())),
    };
    let outward = z.endpoints(format, Down, Up).unwrap().unwrap();
    let expected = t.interval();
    if let Some((tl, th)) = expected.bounds() {
        let contains = match &inward {
            Endpoints::Empty => false,
            Endpoints::Bounds(zl, zh) => zl <= tl && th <= zh,
        };
        if !contains {
            return fail(VerdictKind::FailUnsound, format!("result {z} does not contain {}", c.tight));
        }
    }
    let mut note = String::new();
    match (t.dec(), z.dec()) {
        (Some(td), Some(zd)) if zd > td => {
            return fail(VerdictKind::FailUnsound, format!("decoration {zd} stronger than {td}"));
        }
        (Some(_), None) | (None, Some(_)) => note = "decoration compared bare".to_string(),
        _ => {}
    }
    match claim {
        AccuracyClaim::Valid => Verdict::new(VerdictKind::PassValid, note),
        AccuracyClaim::Tight => {
            let same = match (&inward, &outward, expected.bounds()) {
                (Endpoints::Empty, _, None) => true,
                (Endpoints::Bounds(il, ih), Endpoints::Bounds(ol, oh), Some((tl, th))) => {
                    il == tl && ol == tl && ih == th && oh == th
                }
                _ => false,
            };
            let same_dec = match (t.dec(), z.dec()) {
                (Some(td), Some(zd)) => td == zd,
                _ => true,
            };
            if same && same_dec {
                Verdict::new(VerdictKind::PassTight, note)
            } else {
                fail(VerdictKind::FailInaccurate, format!("result {z} differs from tight {}", c.tight))
            }
        }
        AccuracyClaim::Accurate => {
            let Some(a) = &c.accurate else {
                return fail(VerdictKind::Error, "accurate claim needs output.accurate".to_string());
            };
            let a = match a.decode(format) {
                Ok(a) => a,
                Err(e) => return fail(VerdictKind::Error, format!("expected accurate value: {e}")),
            };
            let within = match &outward {
                Endpoints::Empty => true,
                Endpoints::Bounds(l, h) => {
                    let z = Interval::new(l, h, format);
                    z.is_ok_and(|z| z.subset(a.interval()))
                }
            };
            if within {
                Verdict::new(VerdictKind::PassAccurate, note)
            } else {
                let bound = c.accurate.as_ref().unwrap();
                fail(VerdictKind::FailInaccurate, format!("result {z} exceeds accurate {bound}"))
            }
        }
    }
}
