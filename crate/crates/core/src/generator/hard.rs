use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bigfloat::{BigFloat, Format, RoundingDirection};
use crate::hexfloat::{format_hex_lossy, parse_number, ParseError};
use crate::interval::{DecoratedInterval, Interval};
use crate::pointfuncs::{eval_faithful, exact_case, FunctionId, PointError, MAX_WORKING_PRECISION};
use crate::suite::{TestCase, TestSuite};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("range holds {count} arguments, over the budget of {budget}; narrow the range")]
    Budget { count: BigInt, budget: u64 },
    #[error("invalid search range: {0}")]
    Range(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Point(#[from] PointError),
    #[error("hardness {0} leaves no room below the working-precision ceiling")]
    Hardness(u32),
}

/// Arguments `t0 <= x <= t1` in one binade, as representable values of
/// `format`.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchRange {
    pub t0: BigFloat,
    pub t1: BigFloat,
    pub format: Format,
}

impl SearchRange {
    pub fn new(t0: BigFloat, t1: BigFloat, format: Format) -> Result<Self, GeneratorError> {
        let bad = |m: &str| Err(GeneratorError::Range(m.to_string()));
        if !(t0.is_finite() && t1.is_finite()) || t0.is_zero() || t1.is_zero() {
            return bad("bounds must be finite and nonzero");
        }
        if t0 > t1 {
            return bad("t0 must not exceed t1");
        }
        if t0.is_negative() != t1.is_negative() || t0.abs().exponent() != t1.abs().exponent() {
            return bad("bounds must lie in one binade");
        }
        let t0 = t0.round_to(format, RoundingDirection::Up);
        let t1 = t1.round_to(format, RoundingDirection::Down);
        if t0 > t1 {
            return bad("no representable argument in the range");
        }
        Ok(SearchRange { t0, t1, format })
    }

    /// Parses `[a,b]` or `[a,b)`. An open upper end excludes `b`, and the
    /// range `[2^(n-1), 2^n)` covers exactly one binade.
    pub fn parse(text: &str, format: Format) -> Result<Self, GeneratorError> {
        let bad = || GeneratorError::Range(format!("expected [a,b] or [a,b), got {text:?}"));
        let t = text.trim();
        let inner = t.strip_prefix('[').ok_or_else(bad)?;
        let (inner, open) = match (inner.strip_suffix(']'), inner.strip_suffix(')')) {
            (Some(s), _) => (s, false),
            (_, Some(s)) => (s, true),
            _ => return Err(bad()),
        };
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let t0 = parse_number(a.trim(), format, RoundingDirection::Up)?;
        let mut t1 = parse_number(b.trim(), format, RoundingDirection::Down)?;
        if open && t1 == parse_number(b.trim(), format, RoundingDirection::Up)? {
            t1 = t1.next_down().map_err(|e| GeneratorError::Range(e.to_string()))?;
        }
        Self::new(t0, t1, format)
    }

    pub fn ordinals(&self) -> (BigInt, BigInt) {
        (self.t0.ordinal().unwrap(), self.t1.ordinal().unwrap())
    }

    pub fn len(&self) -> BigInt {
        let (a, b) = self.ordinals();
        b - a + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RunKind {
    Zeros,
    Ones,
}

impl RunKind {
    pub fn name(self) -> &'static str {
        match self {
            RunKind::Zeros => "zeros",
            RunKind::Ones => "ones",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunPattern {
    Zeros,
    Ones,
    Both,
}

impl RunPattern {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "zeros" => Some(RunPattern::Zeros),
            "ones" => Some(RunPattern::Ones),
            "both" => Some(RunPattern::Both),
            _ => None,
        }
    }

    fn admits(self, k: RunKind) -> bool {
        matches!((self, k), (RunPattern::Both, _) | (RunPattern::Zeros, RunKind::Zeros) | (RunPattern::Ones, RunKind::Ones))
    }
}

/// An argument whose image has `hardness` equal bits right after the
/// first `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct HardCase {
    pub x: BigFloat,
    pub function: FunctionId,
    /// Length of the run, capped at the requested hardness plus
    /// [`HardOptions::measure_extra`].
    pub hardness: u32,
    pub run_kind: RunKind,
    pub direction_affected: Vec<RoundingDirection>,
}

impl fmt::Display for HardCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}): {} {}", self.function, format_hex_lossy(&self.x), self.hardness, self.run_kind.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HardOptions {
    /// Bits evaluated past `p + h` on the first attempt.
    pub working_extra: u32,
    /// Largest range scanned.
    pub budget: u64,
    pub jobs: usize,
    /// Run lengths are measured up to `h + measure_extra`.
    pub measure_extra: u32,
}

impl Default for HardOptions {
    fn default() -> Self {
        HardOptions { working_extra: 64, budget: 1 << 22, jobs: 1, measure_extra: 32 }
    }
}

/// The first `window` bits of `|v|` after its leading `p`, with the
/// binade and the leading bits they hang off.
fn split(v: &BigFloat, p: u32, window: u32) -> (i64, BigUint) {
    let e = v.exponent().unwrap();
    let q = v.quantum_exponent().unwrap();
    let m = v.significand().unwrap();
    let shift = q + i64::from(p) - 1 - e + i64::from(window);
    let scaled = if shift >= 0 { m << shift as u64 } else { m >> (-shift) as u64 };
    (e, scaled)
}

/// The leading `window` bits after position `p` of `f(x)`, decided from
/// a bracket at working precision `q`. `None` when the bracket is too wide
/// to decide them.
fn tail_bits(f: FunctionId, x: &BigFloat, p: u32, window: u32, q: u32) -> Result<Option<BigUint>, PointError> {
    let b = eval_faithful(f, std::slice::from_ref(x), q)?;
    let finite = |v: &BigFloat| v.is_finite() && !v.is_zero();
    if !finite(&b.lo) || !finite(&b.hi) || b.lo.is_negative() != b.hi.is_negative() {
        return Ok(None);
    }
    let (lo, hi) = (split(&b.lo, p, window), split(&b.hi, p, window));
    Ok((lo == hi).then(|| lo.1 & ((BigUint::one() << window) - 1u32)))
}

/// Leading bits of `tail` (of width `window`) equal to its first bit.
fn leading_run(tail: &BigUint, window: u32) -> (RunKind, u32) {
    let bit = |i: u32| tail.bit(u64::from(window - 1 - i));
    let kind = if bit(0) { RunKind::Ones } else { RunKind::Zeros };
    let n = (0..window).take_while(|&i| bit(i) == bit(0)).count() as u32;
    (kind, n)
}

/// The run after the first `p` bits of `f(x)`, measured up to `window`
/// bits, starting at working precision `p + window + extra` and doubling
/// the extra bits until decided. `None` for exact results.
pub fn run_length(f: FunctionId, x: &BigFloat, p: u32, window: u32, extra: u32) -> Result<Option<(RunKind, u32)>, PointError> {
    if exact_case(f, std::slice::from_ref(x)).is_some() {
        return Ok(None);
    }
    let mut extra = extra.max(8);
    loop {
        let q = p.saturating_add(window).saturating_add(extra);
        if q > MAX_WORKING_PRECISION {
            return Err(PointError::Resource { function: f, attempted: u64::from(q) });
        }
        if let Some(tail) = tail_bits(f, x, p, window, q)? {
            return Ok(Some(leading_run(&tail, window)));
        }
        extra = extra.saturating_mul(2);
    }
}

/// Whether `f(x)` has `h` equal bits after its first `p`, decided at
/// working precision `p + h + extra` and above.
fn classify(f: FunctionId, x: &BigFloat, p: u32, h: u32, extra: u32) -> Result<Option<RunKind>, PointError> {
    Ok(match run_length(f, x, p, h, extra)? {
        Some((kind, n)) if n >= h => Some(kind),
        _ => None,
    })
}

/// Every argument in `r` whose image at the format's precision is followed
/// by at least `h` equal bits of the requested kind. Exact images are never
/// hard. The range is split into chunks searched in parallel; the result
/// is in argument order.
pub fn find_hard_cases(
    f: FunctionId,
    r: &SearchRange,
    h: u32,
    pattern: RunPattern,
    opts: &HardOptions,
) -> Result<Vec<HardCase>, GeneratorError> {
    let p = r.format.precision();
    if h == 0 || u64::from(p) + u64::from(h) + u64::from(opts.working_extra) > u64::from(MAX_WORKING_PRECISION) {
        return Err(GeneratorError::Hardness(h));
    }
    let count = r.len();
    if count > BigInt::from(opts.budget) {
        return Err(GeneratorError::Budget { count, budget: opts.budget });
    }
    let (lo, _) = r.ordinals();
    let n: u64 = count.try_into().expect("within budget");
    let chunk = 1024u64;
    let scan = |c: u64| -> Result<Vec<HardCase>, GeneratorError> {
        let mut found = Vec::new();
        for i in c * chunk..((c + 1) * chunk).min(n) {
            let x = BigFloat::from_ordinal(&(&lo + i), r.format);
            if !f.domain(0).contains(&x) {
                continue;
            }
            let Some(kind) = classify(f, &x, p, h, opts.working_extra)? else {
                continue;
            };
            if !pattern.admits(kind) {
                continue;
            }
            let cap = h + opts.measure_extra;
            let (_, hardness) = run_length(f, &x, p, cap, opts.working_extra)?.expect("not exact");
            found.push(HardCase {
                x,
                function: f,
                hardness,
                run_kind: kind,
                direction_affected: vec![RoundingDirection::Down, RoundingDirection::Up, RoundingDirection::TowardZero],
            });
        }
        Ok(found)
    };
    let chunks = n.div_ceil(chunk);
    let run = || (0..chunks).into_par_iter().map(scan).collect::<Result<Vec<_>, _>>();
    let parts = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build() {
        Ok(pool) => pool.install(run)?,
        Err(_) => run()?,
    };
    Ok(parts.into_iter().flatten().collect())
}

/// Singleton cases `f([x, x])` for each hard argument, decorated.
pub fn hard_case_suite(name: &str, cases: &[HardCase], format: Format) -> Result<TestSuite, GeneratorError> {
    let mut out: Vec<TestCase> = Vec::with_capacity(cases.len());
    for c in cases {
        let x = Interval::singleton(&c.x, format).map_err(|e| GeneratorError::Range(e.to_string()))?;
        let input = [DecoratedInterval::from_bare(x)];
        let comment = Some(format!("hard {}: {} {}", c.function, c.hardness, c.run_kind.name()));
        let case = super::make_case(c.function, &input, format, true, comment)
            .map_err(|e| GeneratorError::Range(e.to_string()))?;
        out.push(case);
    }
    Ok(TestSuite::new(name, out))
}

/// The sidecar describing each hard case.
pub fn hard_cases_json(cases: &[HardCase], format: Format) -> Value {
    let items: Vec<Value> = cases
        .iter()
        .map(|c| {
            json!({
                "function": c.function.name(),
                "precision": format.precision(),
                "x": format_hex_lossy(&c.x),
                "hardness": c.hardness,
                "run_kind": c.run_kind.name(),
                "direction_affected": c.direction_affected.iter().map(|&d| direction_name(d)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(items)
}

fn direction_name(d: RoundingDirection) -> &'static str {
    match d {
        RoundingDirection::Down => "down",
        RoundingDirection::Up => "up",
        RoundingDirection::NearestEven => "nearest_even",
        RoundingDirection::TowardZero => "toward_zero",
    }
}
