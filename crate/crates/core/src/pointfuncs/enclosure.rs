//! Outward-rounded interval arithmetic on finite BigFloats, used to carry
//! rigorous error bounds through series evaluations.

use num_bigint::BigInt;

use crate::bigfloat::{BigFloat, Bracket, Format, RoundingDirection::*};

#[derive(Clone, Debug)]
pub(crate) struct Enc {
    pub lo: BigFloat,
    pub hi: BigFloat,
    pub fmt: Format,
}

impl Enc {
    pub fn point(v: &BigFloat, fmt: Format) -> Self {
        Enc { lo: v.round_to(fmt, Down), hi: v.round_to(fmt, Up), fmt }
    }

    pub fn int(v: i64, fmt: Format) -> Self {
        Self::point(&BigFloat::from_i64(v, Format::wide(64), Down), fmt)
    }

    pub fn bigint(v: &BigInt, fmt: Format) -> Self {
        Enc {
            lo: BigFloat::from_bigint(v, fmt, Down),
            hi: BigFloat::from_bigint(v, fmt, Up),
            fmt,
        }
    }

    pub fn from_bracket(b: &Bracket, fmt: Format) -> Self {
        Enc { lo: b.lo.round_to(fmt, Down), hi: b.hi.round_to(fmt, Up), fmt }
    }

    pub fn to_bracket(&self, fmt: Format) -> Bracket {
        Bracket { lo: self.lo.round_to(fmt, Down), hi: self.hi.round_to(fmt, Up) }
    }

    pub fn with_format(&self, fmt: Format) -> Self {
        Enc { lo: self.lo.round_to(fmt, Down), hi: self.hi.round_to(fmt, Up), fmt }
    }

    pub fn neg(&self) -> Self {
        Enc { lo: self.hi.neg(), hi: self.lo.neg(), fmt: self.fmt }
    }

    pub fn add(&self, o: &Enc) -> Self {
        Enc {
            lo: self.lo.add(&o.lo, self.fmt, Down),
            hi: self.hi.add(&o.hi, self.fmt, Up),
            fmt: self.fmt,
        }
    }

    pub fn sub(&self, o: &Enc) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Enc) -> Self {
        let f = self.fmt;
        if !self.lo.is_negative() && !o.lo.is_negative() {
            return Enc { lo: self.lo.mul(&o.lo, f, Down), hi: self.hi.mul(&o.hi, f, Up), fmt: f };
        }
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = pairs.iter().map(|(a, b)| a.mul(b, f, Down)).reduce(|a, b| a.min_of(&b).clone()).unwrap();
        let hi = pairs.iter().map(|(a, b)| a.mul(b, f, Up)).reduce(|a, b| a.max_of(&b).clone()).unwrap();
        Enc { lo, hi, fmt: f }
    }

    pub fn sqr(&self) -> Self {
        let f = self.fmt;
        let (a, b) = (self.lo.abs(), self.hi.abs());
        let (small, big) = if a <= b { (a, b) } else { (b, a) };
        let lo = if self.lo.is_negative() && self.hi.is_positive() {
            BigFloat::zero(f)
        } else {
            small.sqr(f, Down)
        };
        Enc { lo, hi: big.sqr(f, Up), fmt: f }
    }

    /// Quotient by an enclosure that excludes zero.
    pub fn div(&self, o: &Enc) -> Self {
        debug_assert!(o.lo.is_positive() || o.hi.is_negative());
        let f = self.fmt;
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = pairs.iter().map(|(a, b)| a.div(b, f, Down)).reduce(|a, b| a.min_of(&b).clone()).unwrap();
        let hi = pairs.iter().map(|(a, b)| a.div(b, f, Up)).reduce(|a, b| a.max_of(&b).clone()).unwrap();
        Enc { lo, hi, fmt: f }
    }

    pub fn div_int(&self, n: u64) -> Self {
        let d = BigFloat::from_parts(false, n.into(), 0, Format::wide(64), Down);
        let f = self.fmt;
        Enc { lo: self.lo.div(&d, f, Down), hi: self.hi.div(&d, f, Up), fmt: f }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        let f = self.fmt;
        Enc { lo: self.lo.mul_pow2(k, f, Down), hi: self.hi.mul_pow2(k, f, Up), fmt: f }
    }

    /// Square root of a nonnegative enclosure.
    pub fn sqrt(&self) -> Self {
        let f = self.fmt;
        Enc { lo: self.lo.sqrt(f, Down), hi: self.hi.sqrt(f, Up), fmt: f }
    }

    /// Upper bound on `|v|` over the enclosure.
    pub fn mag(&self) -> BigFloat {
        self.lo.abs().max_of(&self.hi.abs()).clone()
    }

    /// Leading-bit exponent of [`Enc::mag`], or `None` for `[0, 0]`.
    pub fn mag_exponent(&self) -> Option<i64> {
        self.mag().exponent()
    }

    /// Widens both ends by `e >= 0`.
    pub fn widen(&self, e: &BigFloat) -> Self {
        let f = self.fmt;
        Enc { lo: self.lo.sub(e, f, Down), hi: self.hi.add(e, f, Up), fmt: f }
    }

    /// Adds a remainder known to lie between 0 and some value in `t`.
    pub fn add_toward(&self, t: &Enc) -> Self {
        let f = self.fmt;
        let zero = BigFloat::zero(f);
        let lo = if t.lo.is_negative() { t.lo.clone() } else { zero.clone() };
        let hi = if t.hi.is_positive() { t.hi.clone() } else { zero };
        self.add(&Enc { lo, hi, fmt: f })
    }
}
