//! Exactly rounded arithmetic. Each operation builds the exact result (or a
//! truncation of it with a sticky bit) and rounds once.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use super::{BigFloat, Class, Format, RoundingDirection, Unrounded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Correctly rounded `x op y` in `target`.
pub fn arith(op: ArithOp, x: &BigFloat, y: &BigFloat, target: Format, dir: RoundingDirection) -> BigFloat {
    match op {
        ArithOp::Add => x.add(y, target, dir),
        ArithOp::Sub => x.sub(y, target, dir),
        ArithOp::Mul => x.mul(y, target, dir),
        ArithOp::Div => x.div(y, target, dir),
    }
}

impl BigFloat {
    pub fn add(&self, other: &BigFloat, target: Format, dir: RoundingDirection) -> BigFloat {
        use Class::*;
        match (self.class, other.class) {
            (Nan, _) | (_, Nan) => BigFloat::nan(target),
            (PosInf, NegInf) | (NegInf, PosInf) => BigFloat::nan(target),
            (PosInf, _) | (_, PosInf) => BigFloat::pos_infinity(target),
            (NegInf, _) | (_, NegInf) => BigFloat::neg_infinity(target),
            (Zero, _) => other.round_to(target, dir),
            (_, Zero) => self.round_to(target, dir),
            (Finite, Finite) => add_finite(self, other, target.precision()).round(target, dir),
        }
    }

    pub fn sub(&self, other: &BigFloat, target: Format, dir: RoundingDirection) -> BigFloat {
        self.add(&other.neg(), target, dir)
    }

    pub fn mul(&self, other: &BigFloat, target: Format, dir: RoundingDirection) -> BigFloat {
        use Class::*;
        match (self.class, other.class) {
            (Nan, _) | (_, Nan) => BigFloat::nan(target),
            (Zero, PosInf | NegInf) | (PosInf | NegInf, Zero) => BigFloat::nan(target),
            (PosInf | NegInf, _) | (_, PosInf | NegInf) => {
                BigFloat::infinity(self.is_negative() != other.is_negative(), target)
            }
            (Zero, _) | (_, Zero) => BigFloat::zero(target),
            (Finite, Finite) => Unrounded::exact(
                self.neg != other.neg,
                &self.mant * &other.mant,
                self.qexp + other.qexp,
            )
            .round(target, dir),
        }
    }

    pub fn div(&self, other: &BigFloat, target: Format, dir: RoundingDirection) -> BigFloat {
        use Class::*;
        match (self.class, other.class) {
            (Nan, _) | (_, Nan) => BigFloat::nan(target),
            (Zero, Zero) => BigFloat::nan(target),
            (PosInf | NegInf, PosInf | NegInf) => BigFloat::nan(target),
            (PosInf | NegInf, _) => BigFloat::infinity(self.is_negative() != other.is_negative(), target),
            (_, PosInf | NegInf) | (Zero, _) => BigFloat::zero(target),
            (Finite, Zero) => BigFloat::infinity(self.neg, target),
            (Finite, Finite) => {
                let p = target.precision() as i64;
                let shift = (p + 3 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
                let num = &self.mant << shift as u64;
                let (q, r) = num.div_rem(&other.mant);
                Unrounded {
                    neg: self.neg != other.neg,
                    mant: q,
                    exp: self.qexp - shift - other.qexp,
                    sticky: !r.is_zero(),
                }
                .round(target, dir)
            }
        }
    }

    pub fn sqr(&self, target: Format, dir: RoundingDirection) -> BigFloat {
        self.mul(self, target, dir)
    }

    /// Correctly rounded square root; nan for negative input.
    pub fn sqrt(&self, target: Format, dir: RoundingDirection) -> BigFloat {
        match self.class {
            Class::Nan | Class::NegInf => BigFloat::nan(target),
            Class::Zero | Class::PosInf => self.round_to(target, dir),
            Class::Finite if self.neg => BigFloat::nan(target),
            Class::Finite => {
                let (root, exp, sticky) = integer_root(&self.mant, self.qexp, 2, target.precision());
                Unrounded { neg: false, mant: root, exp, sticky }.round(target, dir)
            }
        }
    }

    /// Correctly rounded real cube root (odd).
    pub fn cbrt(&self, target: Format, dir: RoundingDirection) -> BigFloat {
        match self.class {
            Class::Finite => {
                let (root, exp, sticky) = integer_root(&self.mant, self.qexp, 3, target.precision());
                Unrounded { neg: self.neg, mant: root, exp, sticky }.round(target, dir)
            }
            _ => self.round_to(target, dir),
        }
    }
}

/// `mant * 2^qexp` root of degree `n`: floor root with at least `p + 3`
/// bits, its exponent, and whether it was inexact.
pub(crate) fn integer_root(mant: &BigUint, qexp: i64, n: u32, p: u32) -> (BigUint, i64, bool) {
    let n64 = n as i64;
    let want_bits = n64 * (p as i64 + 3) + n64;
    let mut shift = (want_bits - mant.bits() as i64).max(0);
    // Exponent after shifting must be divisible by n.
    shift += (qexp - shift).rem_euclid(n64);
    let radicand = mant << shift as u64;
    let root = radicand.nth_root(n);
    let sticky = root.pow(n) != radicand;
    (root, (qexp - shift) / n64, sticky)
}

/// Exact-or-sticky sum of two finite values, keeping enough bits for a
/// `p`-bit rounding.
fn add_finite(a: &BigFloat, b: &BigFloat, p: u32) -> Unrounded {
    let top = |x: &BigFloat| x.qexp + x.mant.bits() as i64;
    let (big, small) = if top(a) >= top(b) { (a, b) } else { (b, a) };
    let ext = (p as i64 + 4 - big.mant.bits() as i64).max(0);
    let big_lsb = big.qexp - ext;
    if top(small) < big_lsb {
        // `small` is below one unit of the extended `big`: only its sign
        // matters for rounding.
        let m = &big.mant << ext as u64;
        let mant = if big.neg == small.neg { m } else { m - 1u32 };
        return Unrounded { neg: big.neg, mant, exp: big_lsb, sticky: true };
    }
    let e = a.qexp.min(b.qexp);
    let ma = &a.mant << (a.qexp - e) as u64;
    let mb = &b.mant << (b.qexp - e) as u64;
    if a.neg == b.neg {
        return Unrounded::exact(a.neg, ma + mb, e);
    }
    if ma >= mb {
        Unrounded::exact(a.neg, ma - mb, e)
    } else {
        Unrounded::exact(b.neg, mb - ma, e)
    }
}
