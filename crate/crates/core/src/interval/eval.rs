//! Tightest interval extensions of the point functions.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{cmp, DecoratedInterval, Decoration, Interval, IntervalError};
use crate::bigfloat::{BigFloat, Format, RoundingDirection::{self, Down, Up}};
use crate::pointfuncs::{eval_correctly_rounded, quadrant, DomainSpec, FunctionId};

/// The tightest interval in `fmt` enclosing `{ f(x) : x in inputs, x in Dom(f) }`.
pub fn eval_interval(f: FunctionId, inputs: &[Interval], fmt: Format) -> Result<Interval, IntervalError> {
    if inputs.len() != f.arity() {
        return Err(IntervalError::Arity { function: f, expected: f.arity(), got: inputs.len() });
    }
    let Some(ends) = inputs.iter().map(Interval::bounds).collect::<Option<Vec<_>>>() else {
        return Ok(Interval::empty(fmt));
    };
    let (a, b) = ends[0];
    let point = |x: &BigFloat, dir| eval_correctly_rounded(f, std::slice::from_ref(x), fmt, dir);
    let make = |lo: BigFloat, hi: BigFloat| Ok(Interval::from_bounds(lo, hi, fmt));
    use FunctionId::*;
    match f {
        Neg => make(b.neg().round_to(fmt, Down), a.neg().round_to(fmt, Up)),
        Add => {
            let (c, d) = ends[1];
            make(a.add(c, fmt, Down), b.add(d, fmt, Up))
        }
        Sub => {
            let (c, d) = ends[1];
            make(a.sub(d, fmt, Down), b.sub(c, fmt, Up))
        }
        Mul => {
            let (c, d) = ends[1];
            let pairs = [(a, c), (a, d), (b, c), (b, d)];
            let lo = pairs.iter().map(|(x, y)| mul0(x, y, fmt, Down)).reduce(min).unwrap();
            let hi = pairs.iter().map(|(x, y)| mul0(x, y, fmt, Up)).reduce(max).unwrap();
            make(lo, hi)
        }
        Div => Ok(div((a, b), ends[1], fmt)),
        Sqr => {
            let (lo_abs, hi_abs) = if !a.is_negative() {
                (a.clone(), b.clone())
            } else if !b.is_positive() {
                (b.abs(), a.abs())
            } else {
                (BigFloat::zero(fmt), a.abs().max_of(b).clone())
            };
            make(lo_abs.sqr(fmt, Down), hi_abs.sqr(fmt, Up))
        }
        Sqrt => {
            if b.is_negative() {
                return Ok(Interval::empty(fmt));
            }
            let lo = if a.is_negative() { BigFloat::zero(fmt) } else { a.sqrt(fmt, Down) };
            make(lo, b.sqrt(fmt, Up))
        }
        Cbrt => make(a.cbrt(fmt, Down), b.cbrt(fmt, Up)),
        Exp | Exp2 => make(point(a, Down)?, point(b, Up)?),
        Log | Log2 => {
            if !b.is_positive() {
                return Ok(Interval::empty(fmt));
            }
            let lo = if a.is_positive() { point(a, Down)? } else { BigFloat::neg_infinity(fmt) };
            make(lo, point(b, Up)?)
        }
        Atanh => {
            let one = BigFloat::one(fmt);
            let neg_one = one.neg();
            if *b <= neg_one || *a >= one {
                return Ok(Interval::empty(fmt));
            }
            let lo = if *a > neg_one { point(a, Down)? } else { BigFloat::neg_infinity(fmt) };
            let hi = if *b < one { point(b, Up)? } else { BigFloat::pos_infinity(fmt) };
            make(lo, hi)
        }
        Sin | Cos => trig(f, a, b, fmt),
    }
}

fn min(x: BigFloat, y: BigFloat) -> BigFloat {
    if cmp(&y, &x).is_lt() {
        y
    } else {
        x
    }
}

fn max(x: BigFloat, y: BigFloat) -> BigFloat {
    if cmp(&y, &x).is_gt() {
        y
    } else {
        x
    }
}

/// Endpoint product with `0 * inf = 0`: a zero factor stands for the real
/// zero, the infinite one only for arbitrarily large reals.
fn mul0(x: &BigFloat, y: &BigFloat, fmt: Format, dir: RoundingDirection) -> BigFloat {
    if x.is_zero() || y.is_zero() {
        BigFloat::zero(fmt)
    } else {
        x.mul(y, fmt, dir)
    }
}

/// Division by case analysis on the signs of both operands. Quotients with
/// an infinite divisor and finite dividend are zero; no case divides two
/// infinities or divides by zero.
fn div(x: (&BigFloat, &BigFloat), y: (&BigFloat, &BigFloat), fmt: Format) -> Interval {
    let ((a, b), (c, d)) = (x, y);
    let q = |n: &BigFloat, m: &BigFloat, dir| {
        if m.is_infinite() && n.is_finite() {
            BigFloat::zero(fmt)
        } else {
            n.div(m, fmt, dir)
        }
    };
    let ninf = || BigFloat::neg_infinity(fmt);
    let pinf = || BigFloat::pos_infinity(fmt);
    let make = |lo, hi| Interval::from_bounds(lo, hi, fmt);
    if c.is_zero() && d.is_zero() {
        return Interval::empty(fmt);
    }
    if a.is_zero() && b.is_zero() {
        return make(BigFloat::zero(fmt), BigFloat::zero(fmt));
    }
    let x_pos = !a.is_negative();
    let x_neg = !b.is_positive();
    if c.is_positive() {
        return if x_pos {
            make(q(a, d, Down), q(b, c, Up))
        } else if x_neg {
            make(q(a, c, Down), q(b, d, Up))
        } else {
            make(q(a, c, Down), q(b, c, Up))
        };
    }
    if d.is_negative() {
        return if x_pos {
            make(q(b, d, Down), q(a, c, Up))
        } else if x_neg {
            make(q(b, c, Down), q(a, d, Up))
        } else {
            make(q(b, d, Down), q(a, d, Up))
        };
    }
    // 0 in y, y not [0, 0]; x is not [0, 0].
    let x_strict_neg = b.is_negative();
    let x_strict_pos = a.is_positive();
    if c.is_zero() {
        if x_strict_neg {
            return make(ninf(), q(b, d, Up));
        }
        if x_strict_pos {
            return make(q(a, d, Down), pinf());
        }
    } else if d.is_zero() {
        if x_strict_neg {
            return make(q(b, c, Down), pinf());
        }
        if x_strict_pos {
            return make(ninf(), q(a, c, Up));
        }
    }
    Interval::entire(fmt)
}

/// sin and cos: the endpoint values, widened to -1 or 1 when a minimum or
/// maximum of the function lies inside.
fn trig(f: FunctionId, a: &BigFloat, b: &BigFloat, fmt: Format) -> Result<Interval, IntervalError> {
    let full = || Interval::from_bounds(BigFloat::one(fmt).neg(), BigFloat::one(fmt), fmt);
    if !a.is_finite() || !b.is_finite() {
        return Ok(full());
    }
    let point = |x: &BigFloat, dir| eval_correctly_rounded(f, std::slice::from_ref(x), fmt, dir);
    if a == b {
        return Ok(Interval::from_bounds(point(a, Down)?, point(a, Up)?, fmt));
    }
    // Wider than 2 pi: skips the reduction of huge endpoints.
    let width = b.sub(a, Format::wide(16), Down);
    if width >= BigFloat::from_i64(7, fmt, Down) {
        return Ok(full());
    }
    let qa = quadrant(a)?;
    let qb = quadrant(b)?;
    let span = &qb - &qa;
    if span >= BigInt::from(4) {
        return Ok(full());
    }
    // Critical points m pi/2 with m in (qa, qb]: sin peaks at m = 1 mod 4,
    // bottoms at 3; cos at 0 and 2.
    let (peak, trough) = if f == FunctionId::Sin { (1, 3) } else { (0, 2) };
    let residues: Vec<BigInt> = num_iter(&qa, &qb).map(|m| m.mod_floor(&BigInt::from(4))).collect();
    let hits = |r: i32| residues.iter().any(|m| *m == BigInt::from(r));
    let hi = if hits(peak) { BigFloat::one(fmt) } else { max(point(a, Up)?, point(b, Up)?) };
    let lo = if hits(trough) { BigFloat::one(fmt).neg() } else { min(point(a, Down)?, point(b, Down)?) };
    Ok(Interval::from_bounds(lo, hi, fmt))
}

/// `lo + 1 ..= hi`, for spans below four.
fn num_iter<'a>(lo: &'a BigInt, hi: &'a BigInt) -> impl Iterator<Item = BigInt> + 'a {
    let mut m = lo.clone();
    std::iter::from_fn(move || {
        m += 1;
        (m <= *hi).then(|| m.clone())
    })
}

/// The decorated extension: the bare result, decorated with the weakest of
/// the input decorations and the local one.
pub fn eval_decorated(
    f: FunctionId,
    inputs: &[DecoratedInterval],
    fmt: Format,
) -> Result<DecoratedInterval, IntervalError> {
    if inputs.len() != f.arity() {
        return Err(IntervalError::Arity { function: f, expected: f.arity(), got: inputs.len() });
    }
    if inputs.iter().any(DecoratedInterval::is_nai) {
        return Ok(DecoratedInterval::nai(fmt));
    }
    let bare: Vec<Interval> = inputs.iter().map(|d| d.interval().clone()).collect();
    let result = eval_interval(f, &bare, fmt)?;
    let local = local_decoration(f, &bare, &result);
    let dec = inputs.iter().map(DecoratedInterval::dec).fold(local, Ord::min);
    DecoratedInterval::new(result, dec)
}

/// com when every input is bounded and inside the domain and the result is
/// bounded; dac when inside the domain otherwise (every function here is
/// continuous on its domain); trv when an input is empty or leaves the
/// domain.
fn local_decoration(f: FunctionId, inputs: &[Interval], result: &Interval) -> Decoration {
    let inside = inputs.iter().enumerate().all(|(i, x)| within(x, f.domain(i)));
    if !inside {
        Decoration::Trv
    } else if inputs.iter().all(Interval::is_bounded) && result.is_bounded() {
        Decoration::Com
    } else {
        Decoration::Dac
    }
}

/// Nonempty and a subset of the domain.
fn within(x: &Interval, d: DomainSpec) -> bool {
    let Some((a, b)) = x.bounds() else {
        return false;
    };
    match d {
        DomainSpec::Real => true,
        DomainSpec::NonNegative => !a.is_negative(),
        DomainSpec::Positive => a.is_positive(),
        DomainSpec::OpenUnit => d.contains(a) && d.contains(b),
        DomainSpec::NonZero => a.is_positive() || b.is_negative(),
    }
}
