//! Set-based bare and decorated intervals.
//!
//! An [`Interval`] is either empty or a pair of endpoints in one [`Format`],
//! denoting the set of reals between them. Unbounded intervals are allowed;
//! the infinite endpoints are bounds, never members.

mod eval;
mod literal;
mod ops;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::bigfloat::{BigFloat, Format, RoundingDirection};
use crate::hexfloat::{self, ParseError};
use crate::pointfuncs::{FunctionId, PointError};

pub use eval::{eval_decorated, eval_interval};
pub use literal::{format_interval, parse_interval_literal};
pub use ops::{set_op_decorated, Operation, Predicate, ValueKind};

/// Which validity rule an interval construction broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IllFormedRule {
    NanBound,
    /// The lower bound is `+inf`.
    LowerPosInfinity,
    /// The upper bound is `-inf`.
    UpperNegInfinity,
    Reversed,
    /// A decoration the interval cannot carry (com on an unbounded interval,
    /// anything but trv or ill on the empty set, ill on a nonempty one).
    Decoration,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntervalError {
    #[error("ill-formed interval: {0:?}")]
    IllFormed(IllFormedRule),
    #[error("{function}: expected {expected} argument(s), got {got}")]
    Arity { function: FunctionId, expected: usize, got: usize },
    #[error("format mismatch: {0:?} vs {1:?}")]
    FormatMismatch(Format, Format),
    #[error(transparent)]
    Point(#[from] PointError),
    #[error("bad endpoint: {0}")]
    Endpoint(#[from] ParseError),
    #[error("bad interval literal {text:?}: {message}")]
    Literal { text: String, message: String },
}

#[derive(Clone)]
pub struct Interval {
    bounds: Option<(BigFloat, BigFloat)>,
    format: Format,
}

impl Interval {
    pub fn empty(format: Format) -> Self {
        Interval { bounds: None, format }
    }

    pub fn entire(format: Format) -> Self {
        Self::from_bounds(BigFloat::neg_infinity(format), BigFloat::pos_infinity(format), format)
    }

    /// Checked construction. Endpoints are rounded outward into `format`.
    pub fn new(lo: &BigFloat, hi: &BigFloat, format: Format) -> Result<Self, IntervalError> {
        let rule = if lo.is_nan() || hi.is_nan() {
            Some(IllFormedRule::NanBound)
        } else if lo.is_pos_infinity() {
            Some(IllFormedRule::LowerPosInfinity)
        } else if hi.is_neg_infinity() {
            Some(IllFormedRule::UpperNegInfinity)
        } else if lo > hi {
            Some(IllFormedRule::Reversed)
        } else {
            None
        };
        if let Some(rule) = rule {
            return Err(IntervalError::IllFormed(rule));
        }
        Ok(Self::from_bounds(
            lo.round_to(format, RoundingDirection::Down),
            hi.round_to(format, RoundingDirection::Up),
            format,
        ))
    }

    /// Construction from endpoint text, lower end rounded down and upper up.
    pub fn from_text(lo: &str, hi: &str, format: Format) -> Result<Self, IntervalError> {
        let l = hexfloat::parse_number(lo, format, RoundingDirection::Down)?;
        let h = hexfloat::parse_number(hi, format, RoundingDirection::Up)?;
        Self::new(&l, &h, format)
    }

    pub fn from_f64(lo: f64, hi: f64, format: Format) -> Result<Self, IntervalError> {
        let l = BigFloat::from_f64(lo, format, RoundingDirection::Down);
        let h = BigFloat::from_f64(hi, format, RoundingDirection::Up);
        Self::new(&l, &h, format)
    }

    pub fn singleton(x: &BigFloat, format: Format) -> Result<Self, IntervalError> {
        Self::new(x, x, format)
    }

    /// Caller guarantees the endpoints are valid and already in `format`.
    pub(crate) fn from_bounds(lo: BigFloat, hi: BigFloat, format: Format) -> Self {
        debug_assert!(!lo.is_nan() && !hi.is_nan() && lo <= hi);
        debug_assert!(!lo.is_pos_infinity() && !hi.is_neg_infinity());
        Interval { bounds: Some((lo, hi)), format }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// The endpoints, or `None` for the empty set.
    pub fn bounds(&self) -> Option<(&BigFloat, &BigFloat)> {
        self.bounds.as_ref().map(|(l, h)| (l, h))
    }

    /// Lower endpoint; nan for the empty set.
    pub fn inf(&self) -> BigFloat {
        self.bounds().map_or_else(|| BigFloat::nan(self.format), |(l, _)| l.clone())
    }

    /// Upper endpoint; nan for the empty set.
    pub fn sup(&self) -> BigFloat {
        self.bounds().map_or_else(|| BigFloat::nan(self.format), |(_, h)| h.clone())
    }

    /// The same set rounded outward into another format.
    pub fn with_format(&self, format: Format) -> Self {
        match self.bounds() {
            None => Self::empty(format),
            Some((l, h)) => Self::from_bounds(
                l.round_to(format, RoundingDirection::Down),
                h.round_to(format, RoundingDirection::Up),
                format,
            ),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn is_entire(&self) -> bool {
        self.bounds().is_some_and(|(l, h)| l.is_neg_infinity() && h.is_pos_infinity())
    }

    /// Nonempty with finite endpoints.
    pub fn is_bounded(&self) -> bool {
        self.bounds().is_some_and(|(l, h)| l.is_finite() && h.is_finite())
    }

    pub fn is_singleton(&self) -> bool {
        self.bounds().is_some_and(|(l, h)| l == h)
    }

    /// Real membership: infinities are never members.
    pub fn member(&self, x: &BigFloat) -> bool {
        x.is_finite() && self.bounds().is_some_and(|(l, h)| l <= x && x <= h)
    }

    pub fn equal(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, None) => true,
            (Some((a, b)), Some((c, d))) => a == c && b == d,
            _ => false,
        }
    }

    /// `self ⊆ other`.
    pub fn subset(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => c <= a && b <= d,
        }
    }

    /// `self` lies in the topological interior of `other`. Infinite bounds
    /// of `other` count as open.
    pub fn interior(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => {
                let lower = c < a || (c.is_neg_infinity() && a.is_neg_infinity());
                let upper = b < d || (d.is_pos_infinity() && b.is_pos_infinity());
                lower && upper
            }
        }
    }

    pub fn disjoint(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => b < c || d < a,
            _ => true,
        }
    }

    fn same_format(&self, other: &Interval) -> Result<(), IntervalError> {
        if self.format != other.format {
            return Err(IntervalError::FormatMismatch(self.format, other.format));
        }
        Ok(())
    }

    pub fn intersection(&self, other: &Interval) -> Result<Interval, IntervalError> {
        self.same_format(other)?;
        let (Some((a, b)), Some((c, d))) = (self.bounds(), other.bounds()) else {
            return Ok(Interval::empty(self.format));
        };
        let lo = a.max_of(c);
        let hi = b.min_of(d);
        Ok(if lo > hi {
            Interval::empty(self.format)
        } else {
            Interval::from_bounds(lo.clone(), hi.clone(), self.format)
        })
    }

    pub fn convex_hull(&self, other: &Interval) -> Result<Interval, IntervalError> {
        self.same_format(other)?;
        Ok(match (self.bounds(), other.bounds()) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some((a, b)), Some((c, d))) => {
                Interval::from_bounds(a.min_of(c).clone(), b.max_of(d).clone(), self.format)
            }
        })
    }

    pub fn set_op(&self, kind: SetOp, other: &Interval) -> Result<Interval, IntervalError> {
        match kind {
            SetOp::Intersection => self.intersection(other),
            SetOp::ConvexHull => self.convex_hull(other),
        }
    }

    /// The interval widened by one representable step at each finite end.
    pub fn next_out(&self) -> Interval {
        match self.bounds() {
            None => self.clone(),
            Some((l, h)) => Interval::from_bounds(
                l.next_down().expect("endpoint is not nan"),
                h.next_up().expect("endpoint is not nan"),
                self.format,
            ),
        }
    }

    pub fn numeric(&self, kind: NumericFn) -> BigFloat {
        let f = self.format;
        let Some((a, b)) = self.bounds() else {
            return BigFloat::nan(f);
        };
        use RoundingDirection::{Down, NearestEven, Up};
        match kind {
            NumericFn::Inf => a.clone(),
            NumericFn::Sup => b.clone(),
            NumericFn::Mid => midpoint(a, b, f),
            NumericFn::Rad => {
                if !self.is_bounded() {
                    return BigFloat::pos_infinity(f);
                }
                let m = midpoint(a, b, f);
                m.sub(a, f, Up).max_of(&b.sub(&m, f, Up)).clone()
            }
            NumericFn::Wid => b.sub(a, f, Up),
            NumericFn::Mag => a.abs().max_of(&b.abs()).round_to(f, NearestEven),
            NumericFn::Mig => {
                if !a.is_positive() && !b.is_negative() {
                    BigFloat::zero(f)
                } else {
                    a.abs().min_of(&b.abs()).round_to(f, Down)
                }
            }
        }
    }
}

/// Nearest midpoint with the conventional values for unbounded intervals:
/// 0 for Entire, the largest finite magnitude toward the infinite side.
fn midpoint(a: &BigFloat, b: &BigFloat, f: Format) -> BigFloat {
    match (a.is_neg_infinity(), b.is_pos_infinity()) {
        (true, true) => BigFloat::zero(f),
        (true, false) => BigFloat::max_finite(f).neg(),
        (false, true) => BigFloat::max_finite(f),
        (false, false) => {
            use RoundingDirection::{Down, NearestEven, Up};
            // Off the tie grid: an inexact sum is replaced by a point strictly
            // inside its (p+3)-bit bracket, which rounds the same way.
            let w = Format::working(f.precision() + 3);
            let down = a.add(b, w, Down);
            let up = a.add(b, w, Up);
            let sum = if down == up {
                down
            } else {
                down.add(&up, Format::working(f.precision() + 6), Down)
                    .mul_pow2(-1, Format::working(f.precision() + 6), Down)
            };
            sum.mul_pow2(-1, f, NearestEven)
        }
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_interval(&DecoratedInterval::bare_view(self)))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{:?}]", self.format)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetOp {
    Intersection,
    ConvexHull,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumericFn {
    Inf,
    Sup,
    Mid,
    Rad,
    Wid,
    Mag,
    Mig,
}

/// Ordered `ill < trv < def < dac < com`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    Ill,
    Trv,
    Def,
    Dac,
    Com,
}

impl Decoration {
    pub const ALL: [Decoration; 5] = [Decoration::Ill, Decoration::Trv, Decoration::Def, Decoration::Dac, Decoration::Com];

    pub fn name(self) -> &'static str {
        match self {
            Decoration::Ill => "ill",
            Decoration::Trv => "trv",
            Decoration::Def => "def",
            Decoration::Dac => "dac",
            Decoration::Com => "com",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.name() == s)
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An interval with a decoration, or NaI (empty with `ill`).
#[derive(Clone, PartialEq)]
pub struct DecoratedInterval {
    interval: Interval,
    dec: Option<Decoration>,
}

impl DecoratedInterval {
    pub fn new(interval: Interval, dec: Decoration) -> Result<Self, IntervalError> {
        let ok = match dec {
            Decoration::Ill => interval.is_empty(),
            Decoration::Trv => true,
            Decoration::Com => interval.is_bounded(),
            Decoration::Def | Decoration::Dac => !interval.is_empty(),
        };
        if !ok {
            return Err(IntervalError::IllFormed(IllFormedRule::Decoration));
        }
        Ok(DecoratedInterval { interval, dec: Some(dec) })
    }

    /// Not an Interval.
    pub fn nai(format: Format) -> Self {
        DecoratedInterval { interval: Interval::empty(format), dec: Some(Decoration::Ill) }
    }

    /// The strongest decoration a fresh interval can carry: com when
    /// bounded, dac when unbounded, trv when empty.
    pub fn from_bare(interval: Interval) -> Self {
        let dec = if interval.is_empty() {
            Decoration::Trv
        } else if interval.is_bounded() {
            Decoration::Com
        } else {
            Decoration::Dac
        };
        DecoratedInterval { interval, dec: Some(dec) }
    }

    /// An undecorated view, for printing bare intervals.
    fn bare_view(interval: &Interval) -> Self {
        DecoratedInterval { interval: interval.clone(), dec: None }
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn into_interval(self) -> Interval {
        self.interval
    }

    pub fn dec(&self) -> Decoration {
        self.dec.unwrap_or(Decoration::Trv)
    }

    pub(crate) fn has_dec(&self) -> bool {
        self.dec.is_some()
    }

    pub fn is_nai(&self) -> bool {
        self.dec == Some(Decoration::Ill)
    }

    pub fn format(&self) -> Format {
        self.interval.format
    }
}

impl fmt::Display for DecoratedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_interval(self))
    }
}

impl fmt::Debug for DecoratedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{:?}]", self.format())
    }
}

/// Total order helper for endpoints known not to be nan.
pub(crate) fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    a.compare(b).expect("endpoint is not nan")
}

#[cfg(test)]
mod tests;
