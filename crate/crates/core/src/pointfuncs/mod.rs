//! Correctly rounded elementary functions at a point.
//!
//! [`eval_faithful`] produces a rigorous bracket at least as tight as two
//! ulps of a working precision. [`eval_correctly_rounded`] runs a Ziv loop
//! over it: widen the working precision until both ends of the bracket
//! round to the same target value. Exact results are caught up front by
//! [`exact_case`], since no bracket around an exact representable value
//! could ever disambiguate directed rounding.

mod constants;
mod elementary;
mod enclosure;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::bigfloat::{arith, integer_root, ArithOp, BigFloat, Bracket, Format, RoundingDirection};
use elementary::Trig;

pub use constants::{ln2_enclosure, pi_enclosure};

/// Upper limit on the working precision of a single bracket evaluation.
pub const MAX_WORKING_PRECISION: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Sqr,
    Sqrt,
    Cbrt,
    Exp,
    Exp2,
    Log,
    Log2,
    Sin,
    Cos,
    Atanh,
}

impl FunctionId {
    pub const ALL: [FunctionId; 15] = [
        FunctionId::Neg,
        FunctionId::Add,
        FunctionId::Sub,
        FunctionId::Mul,
        FunctionId::Div,
        FunctionId::Sqr,
        FunctionId::Sqrt,
        FunctionId::Cbrt,
        FunctionId::Exp,
        FunctionId::Exp2,
        FunctionId::Log,
        FunctionId::Log2,
        FunctionId::Sin,
        FunctionId::Cos,
        FunctionId::Atanh,
    ];

    /// The operation name used in test files.
    pub fn name(self) -> &'static str {
        use FunctionId::*;
        match self {
            Neg => "neg",
            Add => "add",
            Sub => "sub",
            Mul => "mul",
            Div => "div",
            Sqr => "sqr",
            Sqrt => "sqrt",
            Cbrt => "cbrt",
            Exp => "exp",
            Exp2 => "exp2",
            Log => "log",
            Log2 => "log2",
            Sin => "sin",
            Cos => "cos",
            Atanh => "atanh",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            FunctionId::Add | FunctionId::Sub | FunctionId::Mul | FunctionId::Div => 2,
            _ => 1,
        }
    }

    /// Domain of argument `index`.
    pub fn domain(self, index: usize) -> DomainSpec {
        match (self, index) {
            (FunctionId::Sqrt, _) => DomainSpec::NonNegative,
            (FunctionId::Log | FunctionId::Log2, _) => DomainSpec::Positive,
            (FunctionId::Atanh, _) => DomainSpec::OpenUnit,
            (FunctionId::Div, 1) => DomainSpec::NonZero,
            _ => DomainSpec::Real,
        }
    }

    /// Computed directly by exactly rounded arithmetic, never by the Ziv loop.
    pub fn is_algebraic(self) -> bool {
        use FunctionId::*;
        matches!(self, Neg | Add | Sub | Mul | Div | Sqr | Sqrt | Cbrt)
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_name(s).ok_or_else(|| format!("unknown function {s:?}"))
    }
}

/// Natural real domain of one argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    Real,
    /// `[0, +inf)`
    NonNegative,
    /// `(0, +inf)`
    Positive,
    /// `(-1, 1)`
    OpenUnit,
    /// Real numbers other than zero (the divisor of `div`).
    NonZero,
}

impl DomainSpec {
    /// Membership of a real number; infinities and nan are never members.
    pub fn contains(self, x: &BigFloat) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            DomainSpec::Real => true,
            DomainSpec::NonNegative => !x.is_negative(),
            DomainSpec::Positive => x.is_positive(),
            DomainSpec::OpenUnit => x.exponent().is_none_or(|e| e < 0),
            DomainSpec::NonZero => !x.is_zero(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("{function}: expected {expected} argument(s), got {got}")]
    Arity { function: FunctionId, expected: usize, got: usize },
    #[error("{function}: nan argument")]
    Nan { function: FunctionId },
    #[error("{function}: argument {arg} outside the domain")]
    Domain { function: FunctionId, arg: String },
    #[error("{function}: working precision {attempted} exceeds the ceiling")]
    Resource { function: FunctionId, attempted: u64 },
}

/// Working-precision schedule of the Ziv loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZivConfig {
    /// Extra bits over the target precision on the first attempt.
    pub start_guard: u32,
    /// Largest number of extra bits before giving up.
    pub max_extra: u32,
}

impl Default for ZivConfig {
    fn default() -> Self {
        ZivConfig { start_guard: 20, max_extra: 2000 }
    }
}

fn check_args(f: FunctionId, args: &[BigFloat]) -> Result<(), PointError> {
    if args.len() != f.arity() {
        return Err(PointError::Arity { function: f, expected: f.arity(), got: args.len() });
    }
    if args.iter().any(BigFloat::is_nan) {
        return Err(PointError::Nan { function: f });
    }
    Ok(())
}

fn domain_error(f: FunctionId, x: &BigFloat) -> PointError {
    PointError::Domain { function: f, arg: x.to_string() }
}

/// Value at infinite arguments, by limits; `None` when all are finite.
fn limit_value(f: FunctionId, args: &[BigFloat]) -> Result<Option<BigFloat>, PointError> {
    if args.iter().all(BigFloat::is_finite) {
        return Ok(None);
    }
    let fmt = Format::wide(2);
    let x = &args[0];
    use FunctionId::*;
    let v = match f {
        Add | Sub | Mul | Div => {
            let op = match f {
                Add => ArithOp::Add,
                Sub => ArithOp::Sub,
                Mul => ArithOp::Mul,
                _ => ArithOp::Div,
            };
            arith(op, x, &args[1], fmt, RoundingDirection::Down)
        }
        Neg => x.neg(),
        Sqr => BigFloat::pos_infinity(fmt),
        Cbrt => x.clone(),
        Sqrt | Log | Log2 if x.is_pos_infinity() => x.clone(),
        Exp | Exp2 if x.is_pos_infinity() => x.clone(),
        Exp | Exp2 => BigFloat::zero(fmt),
        _ => BigFloat::nan(fmt),
    };
    if v.is_nan() {
        let bad = args.iter().find(|a| !a.is_finite()).unwrap();
        return Err(domain_error(f, bad));
    }
    Ok(Some(v))
}

fn check_domain(f: FunctionId, args: &[BigFloat]) -> Result<(), PointError> {
    for (i, a) in args.iter().enumerate() {
        if !f.domain(i).contains(a) {
            return Err(domain_error(f, a));
        }
    }
    Ok(())
}

fn direct(f: FunctionId, args: &[BigFloat], fmt: Format, dir: RoundingDirection) -> BigFloat {
    let x = &args[0];
    use FunctionId::*;
    match f {
        Neg => x.neg().round_to(fmt, dir),
        Add => x.add(&args[1], fmt, dir),
        Sub => x.sub(&args[1], fmt, dir),
        Mul => x.mul(&args[1], fmt, dir),
        Div => x.div(&args[1], fmt, dir),
        Sqr => x.sqr(fmt, dir),
        Sqrt => x.sqrt(fmt, dir),
        Cbrt => x.cbrt(fmt, dir),
        _ => unreachable!("{f} is not algebraic"),
    }
}

/// The exact value of `f(args)` when it is a dyadic rational (hence
/// representable at some precision), in a working format wide enough to
/// hold it.
///
/// Transcendental functions take dyadic values only at the trivial points
/// (exp(0), log(1), integer powers of two and so on); algebraic ones are
/// tested with integer arithmetic.
pub fn exact_case(f: FunctionId, args: &[BigFloat]) -> Option<BigFloat> {
    if args.len() != f.arity() || !args.iter().all(BigFloat::is_finite) {
        return None;
    }
    let x = &args[0];
    let w = |bits: u64| Format::working(bits.clamp(2, MAX_WORKING_PRECISION as u64) as u32);
    let down = RoundingDirection::Down;
    use FunctionId::*;
    match f {
        Neg => Some(x.neg()),
        Add | Sub => {
            let y = &args[1];
            let Some(lead) = x.exponent().max(y.exponent()) else {
                return Some(BigFloat::zero(w(2)));
            };
            let low = [x, y].iter().filter_map(|v| v.quantum_exponent()).min().unwrap_or(lead);
            let span = (lead - low + 2) as u64;
            (span <= MAX_WORKING_PRECISION as u64).then(|| direct(f, args, w(span), down))
        }
        Mul | Sqr => {
            let bits = x.precision() as u64 + args.last().unwrap().precision() as u64;
            Some(direct(f, args, w(bits), down))
        }
        Div => {
            if args[1].is_zero() {
                return None;
            }
            let fmt = w(x.precision() as u64 + 2);
            let lo = x.div(&args[1], fmt, down);
            (lo == x.div(&args[1], fmt, RoundingDirection::Up)).then_some(lo)
        }
        Sqrt | Cbrt => {
            let n = if f == Sqrt { 2 } else { 3 };
            if x.is_zero() {
                return Some(x.clone());
            }
            if n == 2 && x.is_negative() {
                return None;
            }
            let (root, exp, sticky) = integer_root(x.significand()?, x.quantum_exponent()?, n, x.precision());
            if sticky {
                return None;
            }
            let bits = root.bits();
            Some(BigFloat::from_parts(x.is_negative(), root, exp, w(bits), down))
        }
        Exp => x.is_zero().then(|| BigFloat::one(w(2))),
        Exp2 => {
            if !x.is_integer() || x.exponent().is_some_and(|e| e > 38) {
                return None;
            }
            let k = x.floor_to_bigint()?;
            let k: i64 = k.try_into().ok()?;
            Some(BigFloat::from_parts(false, BigUint::from(1u32), k, w(2), down))
        }
        Log => (*x == BigFloat::one(w(2))).then(|| BigFloat::zero(w(2))),
        Log2 => {
            let m = x.significand()?;
            if x.is_negative() || m.count_ones() != 1 {
                return None;
            }
            Some(BigFloat::from_i64(x.exponent()?, w(64), down))
        }
        Sin | Atanh => x.is_zero().then(|| x.clone()),
        Cos => x.is_zero().then(|| BigFloat::one(w(2))),
    }
}

fn narrow_enough(b: &Bracket) -> bool {
    match b.lo.next_up().and_then(|v| v.next_up()) {
        Ok(two_up) => b.hi <= two_up,
        Err(_) => false,
    }
}

/// A bracket `lo <= f(args) <= hi` in a working format of precision `q`,
/// at most two ulps wide. Infinite arguments follow the limit rules
/// (`exp(-inf) = 0`, `log(+inf) = +inf`, ...).
pub fn eval_faithful(f: FunctionId, args: &[BigFloat], q: u32) -> Result<Bracket, PointError> {
    check_args(f, args)?;
    if q > MAX_WORKING_PRECISION {
        return Err(PointError::Resource { function: f, attempted: q as u64 });
    }
    let q = q.max(2);
    let fq = Format::working(q);
    if let Some(v) = limit_value(f, args)? {
        return Ok(Bracket::exact(v).round_out(fq));
    }
    check_domain(f, args)?;
    if f.is_algebraic() {
        return Ok(Bracket {
            lo: direct(f, args, fq, RoundingDirection::Down),
            hi: direct(f, args, fq, RoundingDirection::Up),
        });
    }
    if let Some(v) = exact_case(f, args) {
        return Ok(Bracket::exact(v).round_out(fq));
    }
    let x = &args[0];
    if matches!(f, FunctionId::Exp | FunctionId::Exp2) && x.exponent().is_some_and(|e| e > 38) {
        // The result exponent would leave the working range.
        return Err(PointError::Resource { function: f, attempted: q as u64 });
    }
    let mut guard = 16 + (32 - q.leading_zeros()) as u64;
    loop {
        let w = q as u64 + guard;
        if w > MAX_WORKING_PRECISION as u64 {
            return Err(PointError::Resource { function: f, attempted: w });
        }
        let enc = match f {
            FunctionId::Exp => elementary::exp(x, w),
            FunctionId::Exp2 => elementary::exp2(x, w),
            FunctionId::Log => elementary::log(x, w),
            FunctionId::Log2 => elementary::log2(x, w),
            FunctionId::Atanh => elementary::atanh(x, w),
            FunctionId::Sin | FunctionId::Cos => {
                let which = if f == FunctionId::Sin { Trig::Sin } else { Trig::Cos };
                elementary::trig(which, x, w)
                    .map_err(|bits| PointError::Resource { function: f, attempted: bits })?
            }
            _ => unreachable!(),
        };
        let b = enc.to_bracket(fq);
        if narrow_enough(&b) {
            return Ok(b);
        }
        guard *= 2;
    }
}

/// Rounds a bracket whose value is known not to be a dyadic rational, so
/// that `lo < v < hi` strictly. An end that is itself a target value then
/// pins the rounding to its neighbor, which is what lets tiny arguments
/// (exp(2^-1074), sin of a subnormal) terminate quickly.
fn round_open(b: &Bracket, t: Format, dir: RoundingDirection) -> Option<BigFloat> {
    use RoundingDirection::*;
    match dir {
        Down => {
            let a = b.lo.round_to(t, Down);
            let h = b.hi.round_to(t, Down);
            let h = if h == b.hi { h.next_down().ok()? } else { h };
            (a == h).then_some(a)
        }
        Up => {
            let a = b.lo.round_to(t, Up);
            let a = if a == b.lo { a.next_up().ok()? } else { a };
            (a == b.hi.round_to(t, Up)).then_some(a)
        }
        TowardZero if !b.lo.is_negative() => round_open(b, t, Down),
        TowardZero if !b.hi.is_positive() => round_open(b, t, Up),
        TowardZero => None,
        NearestEven => {
            let a = b.lo.round_to(t, NearestEven);
            (a == b.hi.round_to(t, NearestEven)).then_some(a)
        }
    }
}

/// `f(args)` rounded into `target` in direction `dir`, with the default
/// Ziv schedule.
pub fn eval_correctly_rounded(
    f: FunctionId,
    args: &[BigFloat],
    target: Format,
    dir: RoundingDirection,
) -> Result<BigFloat, PointError> {
    eval_correctly_rounded_with(f, args, target, dir, &ZivConfig::default())
}

pub fn eval_correctly_rounded_with(
    f: FunctionId,
    args: &[BigFloat],
    target: Format,
    dir: RoundingDirection,
    cfg: &ZivConfig,
) -> Result<BigFloat, PointError> {
    check_args(f, args)?;
    if let Some(v) = limit_value(f, args)? {
        return Ok(v.round_to(target, dir));
    }
    check_domain(f, args)?;
    if f.is_algebraic() {
        return Ok(direct(f, args, target, dir));
    }
    let args = clamp_exponential(f, args);
    if let Some(v) = exact_case(f, &args) {
        return Ok(v.round_to(target, dir));
    }
    let p = target.precision();
    let mut guard = cfg.start_guard.max(1);
    loop {
        let q = p.saturating_add(guard);
        let b = eval_faithful(f, &args, q)?;
        if let Some(v) = round_open(&b, target, dir) {
            return Ok(v);
        }
        if guard >= cfg.max_extra {
            return Err(PointError::Resource { function: f, attempted: q as u64 });
        }
        guard = guard.saturating_mul(2).min(cfg.max_extra);
    }
}

/// Past `|x| = 2^33`, exp and exp2 overflow or underflow every format a
/// caller can construct, so the argument can be clamped without changing
/// the rounded result.
fn clamp_exponential(f: FunctionId, args: &[BigFloat]) -> Vec<BigFloat> {
    let x = &args[0];
    if matches!(f, FunctionId::Exp | FunctionId::Exp2) && x.exponent().is_some_and(|e| e > 33) {
        let bound = BigFloat::from_parts(x.is_negative(), BigUint::from(1u32), 33, Format::wide(2), RoundingDirection::Down);
        return vec![bound];
    }
    args.to_vec()
}

/// `floor(x / (pi/2))` for finite `x`, computed rigorously: the index of the
/// quarter period containing `x`.
pub fn quadrant(x: &BigFloat) -> Result<BigInt, PointError> {
    assert!(x.is_finite(), "quadrant of a non-finite value");
    elementary::quadrant(x).map_err(|bits| PointError::Resource { function: FunctionId::Sin, attempted: bits })
}
