use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{BigFloat, Format, RoundingDirection};

/// A magnitude not yet fitted to a format.
///
/// The absolute value lies in `[mant, mant + 1) * 2^exp`, and is strictly
/// greater than `mant * 2^exp` when `sticky` is set. Producers that set
/// `sticky` keep at least `p + 2` bits in `mant` so the round bit is known.
#[derive(Clone, Debug)]
pub(crate) struct Unrounded {
    pub neg: bool,
    pub mant: BigUint,
    pub exp: i64,
    pub sticky: bool,
}

impl Unrounded {
    pub fn exact(neg: bool, mant: BigUint, exp: i64) -> Self {
        Unrounded { neg, mant, exp, sticky: false }
    }

    /// Rounds into `fmt`, handling subnormals, overflow and underflow.
    pub fn round(self, fmt: Format, dir: RoundingDirection) -> BigFloat {
        let Unrounded { neg, mant, exp, sticky } = self;
        if mant.is_zero() {
            assert!(!sticky, "sticky magnitude without significand bits");
            return BigFloat::zero(fmt);
        }
        let p = fmt.precision() as i64;
        let lead = exp + mant.bits() as i64 - 1;

        if lead < fmt.emin() && !fmt.subnormals() {
            return underflow(neg, &mant, exp, sticky, fmt, dir);
        }

        let mut qexp = fmt.quantum_for(lead);
        let shift = qexp - exp;
        let (mut m, round_bit, rest) = if shift <= 0 {
            debug_assert!(!sticky || shift < 0, "sticky value without a round bit");
            (mant << ((-shift) as u64), false, sticky)
        } else {
            let shift = shift as u64;
            let m = &mant >> shift;
            let round_bit = mant.bit(shift - 1);
            let below = mant.trailing_zeros().is_some_and(|tz| tz < shift - 1);
            (m, round_bit, sticky || below)
        };
        let inexact = round_bit || rest;
        let away = match dir {
            RoundingDirection::Down => neg && inexact,
            RoundingDirection::Up => !neg && inexact,
            RoundingDirection::TowardZero => false,
            RoundingDirection::NearestEven => round_bit && (rest || m.bit(0)),
        };
        if away {
            m += 1u32;
            if m.bits() as i64 > p {
                m >>= 1u32;
                qexp += 1;
            }
        }
        if m.is_zero() {
            return BigFloat::zero(fmt);
        }
        let lead = qexp + m.bits() as i64 - 1;
        if lead > fmt.emax() {
            return overflow(neg, fmt, dir);
        }
        BigFloat::from_canonical(neg, m, qexp, fmt)
    }
}

fn overflow(neg: bool, fmt: Format, dir: RoundingDirection) -> BigFloat {
    let to_infinity = match dir {
        RoundingDirection::Up => !neg,
        RoundingDirection::Down => neg,
        RoundingDirection::NearestEven => true,
        RoundingDirection::TowardZero => false,
    };
    match (to_infinity, neg) {
        (true, false) => BigFloat::pos_infinity(fmt),
        (true, true) => BigFloat::neg_infinity(fmt),
        (false, _) => {
            let max = BigFloat::max_finite(fmt);
            if neg {
                max.neg()
            } else {
                max
            }
        }
    }
}

/// Magnitude strictly below `2^emin` in a format without subnormals: the
/// only candidates are zero and the smallest positive normal.
fn underflow(
    neg: bool,
    mant: &BigUint,
    exp: i64,
    sticky: bool,
    fmt: Format,
    dir: RoundingDirection,
) -> BigFloat {
    let away = match dir {
        RoundingDirection::Up => !neg,
        RoundingDirection::Down => neg,
        RoundingDirection::TowardZero => false,
        RoundingDirection::NearestEven => {
            // Above half of 2^emin rounds to it; an exact half goes to zero.
            let lead = exp + mant.bits() as i64 - 1;
            let is_pow2 = mant.count_ones() == 1;
            lead == fmt.emin() - 1 && (!is_pow2 || sticky)
        }
    };
    if !away {
        return BigFloat::zero(fmt);
    }
    let min = BigFloat::min_positive(fmt);
    if neg {
        min.neg()
    } else {
        min
    }
}

pub(crate) fn pow2_mant(bits: u64) -> BigUint {
    BigUint::one() << bits
}
