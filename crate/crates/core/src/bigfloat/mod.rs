//! Radix-2 multiprecision floating point with explicit formats.
//!
//! Every value carries the [`Format`] it belongs to. Operations are pure and
//! take the target format and [`RoundingDirection`] as arguments; there is no
//! ambient rounding state anywhere in the crate.
//!
//! Zero has a single representation. Finite values store an integer
//! significand `m` and the exponent `q` of its least significant bit, so the
//! value is `±m * 2^q`. Normal values have exactly `p` significand bits.

mod arith;
mod format;
mod round;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use arith::{arith, ArithOp};
pub(crate) use arith::integer_root;
pub use format::{Format, RoundingDirection, MAX_FORMAT_EXPONENT, WIDE_EXPONENT};
pub(crate) use round::Unrounded;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BigFloatError {
    #[error("invalid format: {0}")]
    InvalidFormat(String),
    #[error("exponent out of range: {0}")]
    ExponentRange(String),
    #[error("nan operand")]
    NanOperand,
    #[error("bracket lower end exceeds upper end")]
    InvalidBracket,
    #[error("rounding direction {0:?} not allowed here")]
    Direction(RoundingDirection),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Zero,
    Finite,
    PosInf,
    NegInf,
    Nan,
}

#[derive(Clone)]
pub struct BigFloat {
    class: Class,
    neg: bool,
    mant: BigUint,
    qexp: i64,
    format: Format,
}

impl BigFloat {
    fn special(class: Class, format: Format) -> Self {
        BigFloat { class, neg: false, mant: BigUint::zero(), qexp: 0, format }
    }

    pub fn zero(format: Format) -> Self {
        Self::special(Class::Zero, format)
    }

    pub fn pos_infinity(format: Format) -> Self {
        Self::special(Class::PosInf, format)
    }

    pub fn neg_infinity(format: Format) -> Self {
        Self::special(Class::NegInf, format)
    }

    pub fn infinity(negative: bool, format: Format) -> Self {
        if negative {
            Self::neg_infinity(format)
        } else {
            Self::pos_infinity(format)
        }
    }

    pub fn nan(format: Format) -> Self {
        Self::special(Class::Nan, format)
    }

    pub(crate) fn from_canonical(neg: bool, mant: BigUint, qexp: i64, format: Format) -> Self {
        debug_assert!(!mant.is_zero());
        debug_assert!(mant.bits() <= format.precision() as u64);
        BigFloat { class: Class::Finite, neg, mant, qexp, format }
    }

    pub fn one(format: Format) -> Self {
        Self::from_parts(false, BigUint::one(), 0, format, RoundingDirection::NearestEven)
    }

    /// `±mant * 2^exp` rounded into `format`.
    pub fn from_parts(
        negative: bool,
        mant: BigUint,
        exp: i64,
        format: Format,
        dir: RoundingDirection,
    ) -> Self {
        Unrounded::exact(negative, mant, exp).round(format, dir)
    }

    pub fn from_i64(v: i64, format: Format, dir: RoundingDirection) -> Self {
        Self::from_parts(v < 0, BigUint::from(v.unsigned_abs()), 0, format, dir)
    }

    pub fn from_bigint(v: &BigInt, format: Format, dir: RoundingDirection) -> Self {
        Self::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), 0, format, dir)
    }

    /// An `f64` rounded into `format` (exact when the format is wide enough).
    pub fn from_f64(v: f64, format: Format, dir: RoundingDirection) -> Self {
        if v.is_nan() {
            return Self::nan(format);
        }
        if v.is_infinite() {
            return Self::infinity(v < 0.0, format);
        }
        if v == 0.0 {
            return Self::zero(format);
        }
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Self::from_parts(neg, BigUint::from(mant), exp, format, dir)
    }

    /// Largest finite value of `format`.
    pub fn max_finite(format: Format) -> Self {
        let p = format.precision() as u64;
        let mant = (BigUint::one() << p) - 1u32;
        Self::from_canonical(false, mant, format.emax() - p as i64 + 1, format)
    }

    /// Smallest positive value of `format` (subnormal when enabled).
    pub fn min_positive(format: Format) -> Self {
        let p = format.precision() as i64;
        if format.subnormals() {
            Self::from_canonical(false, BigUint::one(), format.emin() - p + 1, format)
        } else {
            Self::from_canonical(false, round::pow2_mant((p - 1) as u64), format.emin() - p + 1, format)
        }
    }

    pub fn class(&self) -> Class {
        self.class
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn precision(&self) -> u32 {
        self.format.precision()
    }

    pub fn is_nan(&self) -> bool {
        self.class == Class::Nan
    }

    pub fn is_zero(&self) -> bool {
        self.class == Class::Zero
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.class, Class::Zero | Class::Finite)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.class, Class::PosInf | Class::NegInf)
    }

    pub fn is_pos_infinity(&self) -> bool {
        self.class == Class::PosInf
    }

    pub fn is_neg_infinity(&self) -> bool {
        self.class == Class::NegInf
    }

    /// True for negative finite values and -inf. Zero is unsigned.
    pub fn is_negative(&self) -> bool {
        match self.class {
            Class::Finite => self.neg,
            Class::NegInf => true,
            _ => false,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self.class {
            Class::Finite => !self.neg,
            Class::PosInf => true,
            _ => false,
        }
    }

    /// Integer significand of a finite nonzero value.
    pub fn significand(&self) -> Option<&BigUint> {
        (self.class == Class::Finite).then_some(&self.mant)
    }

    /// Exponent of the least significant significand bit.
    pub fn quantum_exponent(&self) -> Option<i64> {
        (self.class == Class::Finite).then_some(self.qexp)
    }

    /// Exponent of the leading significand bit: the value lies in
    /// `[2^e, 2^(e+1))` in magnitude.
    pub fn exponent(&self) -> Option<i64> {
        (self.class == Class::Finite).then(|| self.qexp + self.mant.bits() as i64 - 1)
    }

    pub fn is_subnormal(&self) -> bool {
        self.class == Class::Finite && self.exponent().unwrap() < self.format.emin()
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        match self.class {
            Class::Finite => out.neg = !self.neg,
            Class::PosInf => out.class = Class::NegInf,
            Class::NegInf => out.class = Class::PosInf,
            _ => {}
        }
        out
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub(crate) fn to_unrounded(&self) -> Unrounded {
        debug_assert!(self.class == Class::Finite);
        Unrounded::exact(self.neg, self.mant.clone(), self.qexp)
    }

    /// Re-rounds into another format.
    pub fn round_to(&self, format: Format, dir: RoundingDirection) -> Self {
        match self.class {
            Class::Finite => self.to_unrounded().round(format, dir),
            _ => Self::special(self.class, format),
        }
    }

    /// `self * 2^k`, rounded into `format`.
    pub fn mul_pow2(&self, k: i64, format: Format, dir: RoundingDirection) -> Self {
        match self.class {
            Class::Finite => Unrounded::exact(self.neg, self.mant.clone(), self.qexp + k).round(format, dir),
            _ => Self::special(self.class, format),
        }
    }

    /// Whether the value is exactly representable in `format`.
    pub fn fits(&self, format: Format) -> bool {
        match self.class {
            Class::Finite => {
                let down = self.round_to(format, RoundingDirection::Down);
                down == *self
            }
            _ => true,
        }
    }

    /// Successor in this value's format.
    pub fn next_up(&self) -> Result<Self, BigFloatError> {
        let fmt = self.format;
        Ok(match self.class {
            Class::Nan => return Err(BigFloatError::NanOperand),
            Class::PosInf => self.clone(),
            Class::NegInf => Self::max_finite(fmt).neg(),
            Class::Zero => Self::min_positive(fmt),
            Class::Finite if !self.neg => self.magnitude_up(),
            Class::Finite => self.abs().magnitude_down().neg(),
        })
    }

    /// Predecessor in this value's format.
    pub fn next_down(&self) -> Result<Self, BigFloatError> {
        Ok(self.neg().next_up()?.neg())
    }

    /// Neighbor in the given direction (`Up` or `Down`).
    pub fn next(&self, dir: RoundingDirection) -> Result<Self, BigFloatError> {
        match dir {
            RoundingDirection::Up => self.next_up(),
            RoundingDirection::Down => self.next_down(),
            other => Err(BigFloatError::Direction(other)),
        }
    }

    fn magnitude_up(&self) -> Self {
        let fmt = self.format;
        let p = fmt.precision() as u64;
        let mut m = &self.mant + 1u32;
        let mut q = self.qexp;
        if m.bits() > p {
            m >>= 1u32;
            q += 1;
        }
        if q + m.bits() as i64 - 1 > fmt.emax() {
            return Self::pos_infinity(fmt);
        }
        Self::from_canonical(false, m, q, fmt)
    }

    fn magnitude_down(&self) -> Self {
        let fmt = self.format;
        let p = fmt.precision() as u64;
        let lead = self.exponent().unwrap();
        let is_min_significand = self.mant.bits() == p && self.mant.count_ones() == 1;
        if is_min_significand && lead > fmt.emin() {
            let m = (BigUint::one() << p) - 1u32;
            return Self::from_canonical(false, m, self.qexp - 1, fmt);
        }
        if is_min_significand && !fmt.subnormals() {
            return Self::zero(fmt);
        }
        let m = &self.mant - 1u32;
        if m.is_zero() {
            return Self::zero(fmt);
        }
        Self::from_canonical(false, m, self.qexp, fmt)
    }

    /// Total order on the extended reals; `None` when either side is nan.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        use Class::*;
        if self.is_nan() || other.is_nan() {
            return None;
        }
        let rank = |x: &Self| match x.class {
            NegInf => 0,
            Finite if x.neg => 1,
            Zero => 2,
            Finite => 3,
            PosInf => 4,
            Nan => unreachable!(),
        };
        let (ra, rb) = (rank(self), rank(other));
        if ra != rb || ra != 1 && ra != 3 {
            return Some(ra.cmp(&rb));
        }
        let mag = cmp_magnitude(self, other);
        Some(if self.neg { mag.reverse() } else { mag })
    }

    pub fn min_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other.compare(self) == Some(Ordering::Less) {
            other
        } else {
            self
        }
    }

    pub fn max_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other.compare(self) == Some(Ordering::Greater) {
            other
        } else {
            self
        }
    }

    /// Largest integer not above the value. `None` for non-finite values.
    pub fn floor_to_bigint(&self) -> Option<BigInt> {
        match self.class {
            Class::Zero => Some(BigInt::zero()),
            Class::Finite => {
                let mag = if self.qexp >= 0 {
                    BigInt::from(&self.mant << self.qexp as u64)
                } else {
                    BigInt::from(&self.mant >> (-self.qexp) as u64)
                };
                if !self.neg {
                    return Some(mag);
                }
                let exact = self.qexp >= 0
                    || self.mant.trailing_zeros().is_none_or(|tz| tz >= (-self.qexp) as u64);
                Some(if exact { -mag } else { -mag - 1 })
            }
            _ => None,
        }
    }

    /// Whether the value is an integer (zero included).
    pub fn is_integer(&self) -> bool {
        match self.class {
            Class::Zero => true,
            Class::Finite => {
                self.qexp >= 0 || self.mant.trailing_zeros().unwrap_or(0) >= (-self.qexp) as u64
            }
            _ => false,
        }
    }

    /// Nearest `f64`, ties to even. Lossy; meant for diagnostics and
    /// heuristics, never for rigorous bounds.
    pub fn to_f64(&self) -> f64 {
        match self.class {
            Class::Zero => 0.0,
            Class::PosInf => f64::INFINITY,
            Class::NegInf => f64::NEG_INFINITY,
            Class::Nan => f64::NAN,
            Class::Finite => {
                let r = self.round_to(Format::binary64(), RoundingDirection::NearestEven);
                match r.class {
                    Class::Finite => {
                        let m = r.mant.to_u64().unwrap() as f64;
                        let v = ldexp(m, r.qexp);
                        if r.neg {
                            -v
                        } else {
                            v
                        }
                    }
                    _ => r.to_f64(),
                }
            }
        }
    }

    /// Index of the value among all representable values of its format,
    /// ordered by value, with zero at index 0.
    pub fn ordinal(&self) -> Option<BigInt> {
        match self.class {
            Class::Zero => Some(BigInt::zero()),
            Class::Finite => {
                let fmt = self.format;
                let p = fmt.precision() as u64;
                let half = BigInt::one() << (p - 1);
                let lead = self.exponent().unwrap();
                let m = BigInt::from(self.mant.clone());
                let idx = if lead < fmt.emin() {
                    m
                } else {
                    let base = if fmt.subnormals() { 1 } else { 0 };
                    BigInt::from(lead - fmt.emin() + base) * &half + (m - &half) + (1 - base)
                };
                Some(if self.neg { -idx } else { idx })
            }
            _ => None,
        }
    }

    /// Inverse of [`BigFloat::ordinal`]. Indices beyond the finite range
    /// saturate to infinity.
    pub fn from_ordinal(index: &BigInt, format: Format) -> Self {
        if index.is_zero() {
            return Self::zero(format);
        }
        let neg = index.is_negative();
        let idx = index.abs();
        let p = format.precision() as u64;
        let half = BigInt::one() << (p - 1);
        let (mant, qexp) = if format.subnormals() {
            if idx < half {
                (idx, format.emin() - p as i64 + 1)
            } else {
                let binade = &idx / &half - BigInt::one();
                let offset = &idx % &half;
                let Some(binade) = binade.to_i64() else {
                    return Self::infinity(neg, format);
                };
                (offset + &half, format.emin() + binade - p as i64 + 1)
            }
        } else {
            let k: BigInt = idx - 1;
            let binade = &k / &half;
            let offset = &k % &half;
            let Some(binade) = binade.to_i64() else {
                return Self::infinity(neg, format);
            };
            (offset + &half, format.emin() + binade - p as i64 + 1)
        };
        let mant = mant.to_biguint().unwrap();
        if qexp + mant.bits() as i64 - 1 > format.emax() {
            return Self::infinity(neg, format);
        }
        Self::from_canonical(neg, mant, qexp, format)
    }
}

fn cmp_magnitude(a: &BigFloat, b: &BigFloat) -> Ordering {
    let la = a.exponent().unwrap();
    let lb = b.exponent().unwrap();
    if la != lb {
        return la.cmp(&lb);
    }
    let q = a.qexp.min(b.qexp);
    let ma = &a.mant << (a.qexp - q) as u64;
    let mb = &b.mant << (b.qexp - q) as u64;
    ma.cmp(&mb)
}

fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 500 {
        v *= 2f64.powi(500);
        e -= 500;
    }
    while e < -500 {
        v *= 2f64.powi(-500);
        e += 500;
    }
    v * 2f64.powi(e as i32)
}

/// Value equality: formats may differ, nan is never equal to anything.
/// Within one format this coincides with bit identity.
impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::hexfloat::format_hex_lossy(self))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{:?}]", self, self.format)
    }
}

/// A guaranteed enclosure `lo <= v <= hi` of some real value `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl Bracket {
    pub fn new(lo: BigFloat, hi: BigFloat) -> Result<Self, BigFloatError> {
        match lo.compare(&hi) {
            None => Err(BigFloatError::NanOperand),
            Some(Ordering::Greater) => Err(BigFloatError::InvalidBracket),
            _ => Ok(Bracket { lo, hi }),
        }
    }

    pub fn exact(v: BigFloat) -> Self {
        Bracket { lo: v.clone(), hi: v }
    }

    pub fn contains(&self, v: &BigFloat) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    /// Whether `self` lies inside `outer`.
    pub fn is_within(&self, outer: &Bracket) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    /// Rounds outward into `format`; the result still encloses the value.
    pub fn round_out(&self, format: Format) -> Bracket {
        Bracket {
            lo: self.lo.round_to(format, RoundingDirection::Down),
            hi: self.hi.round_to(format, RoundingDirection::Up),
        }
    }
}

/// Outcome of rounding an enclosed value into a target format.
#[derive(Clone, Debug, PartialEq)]
pub enum Rounded {
    Value(BigFloat),
    /// The bracket ends round to different values: more precision needed.
    Ambiguous,
}

/// Rounds the value enclosed by `b` into `target`. Rounding is monotone, so
/// when both ends agree the common result is the rounding of the enclosed
/// value itself.
pub fn round_from_bracket(b: &Bracket, target: Format, dir: RoundingDirection) -> Result<Rounded, BigFloatError> {
    if b.lo.is_nan() || b.hi.is_nan() {
        return Err(BigFloatError::NanOperand);
    }
    let lo = b.lo.round_to(target, dir);
    let hi = b.hi.round_to(target, dir);
    Ok(if lo == hi { Rounded::Value(lo) } else { Rounded::Ambiguous })
}
