//! Enclosures of the transcendental functions at a working precision.
//!
//! Every routine returns an outward-rounded enclosure; none of them
//! promises a width. The caller checks the width and retries with more
//! guard bits when the enclosure is too loose.

use std::f64::consts::{LN_2, SQRT_2};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::constants::{ln2_enclosure, pi_enclosure};
use super::enclosure::Enc;
use crate::bigfloat::{BigFloat, Format, RoundingDirection::*};

/// Largest pi precision the reduction will request.
pub(crate) const MAX_PI_BITS: u64 = 1 << 16;

fn wf(w: u64) -> Format {
    Format::working(w as u32)
}

fn zero(f: Format) -> Enc {
    Enc::int(0, f)
}

fn bit_len(v: u64) -> u64 {
    64 - v.leading_zeros() as u64
}

/// True once `|term| < 2^(lead - w - 4)`, i.e. below the guard bits of a
/// sum whose leading term has exponent `lead`.
fn negligible(term: &Enc, lead: i64, w: u64) -> bool {
    term.mag_exponent().is_none_or(|e| e < lead - w as i64 - 4)
}

pub(crate) fn exp(x: &BigFloat, w: u64) -> Enc {
    exp_enc(&Enc::point(x, wf(w + 16)), w)
}

pub(crate) fn exp2(x: &BigFloat, w: u64) -> Enc {
    let wl = w + 16 + x.exponent().unwrap_or(0).max(0) as u64;
    let f = wf(wl);
    let ln2 = Enc::from_bracket(&ln2_enclosure(wl as u32), f);
    exp_enc(&Enc::point(x, f).mul(&ln2), w)
}

/// exp via `x = k ln2 + r`, `exp(r) = (exp(r / 2^s))^(2^s)`.
fn exp_enc(x: &Enc, w: u64) -> Enc {
    let k = (x.lo.to_f64() / LN_2).round() as i64;
    let wl = w + bit_len(k.unsigned_abs()) + 8;
    let fl = wf(wl);
    let r = if k == 0 {
        x.with_format(fl)
    } else {
        let ln2 = Enc::from_bracket(&ln2_enclosure(wl as u32), fl);
        x.with_format(fl).sub(&ln2.mul(&Enc::int(k, fl)))
    };
    let target = (w as f64).sqrt() as i64 / 2 + 1;
    let s = r.mag_exponent().map_or(0, |e| (e + 1 + target).max(0));
    let wp = w + s as u64 + 10;
    let f = wf(wp);
    let rs = r.with_format(f).mul_pow2(-s);

    // Sum the tail first so that adding 1 is the last rounding.
    let mut term = rs.clone();
    let mut tail = rs.clone();
    let mut i = 1u64;
    loop {
        i += 1;
        term = term.mul(&rs).div_int(i);
        if negligible(&term, 0, wp) {
            // |rs| <= 1/2, so the omitted terms sum to at most 2|term|.
            tail = tail.widen(&term.mag().mul_pow2(1, f, Up));
            break;
        }
        tail = tail.add(&term);
    }
    let mut y = Enc::int(1, f).add(&tail);
    for _ in 0..s {
        y = y.sqr();
    }
    y.mul_pow2(k)
}

pub(crate) fn log(x: &BigFloat, w: u64) -> Enc {
    log_enc(&Enc::point(x, wf(w + 16)), w)
}

pub(crate) fn log2(x: &BigFloat, w: u64) -> Enc {
    let f = wf(w + 16);
    let ln2 = Enc::from_bracket(&ln2_enclosure((w + 16) as u32), f);
    log_enc(&Enc::point(x, f), w + 8).with_format(f).div(&ln2)
}

/// log of a positive enclosure: `x = m 2^e`, `log m = 2^(j+1) atanh(t)`
/// with `t = (m^(1/2^j) - 1) / (m^(1/2^j) + 1)`.
fn log_enc(x: &Enc, w: u64) -> Enc {
    debug_assert!(x.lo.is_positive());
    let f0 = wf(w + 16);
    let mut e = x.lo.exponent().unwrap();
    let mut m = x.with_format(f0).mul_pow2(-e);
    if m.lo.to_f64() > SQRT_2 {
        m = m.mul_pow2(-1);
        e += 1;
    }
    let one = BigFloat::one(f0);
    let near_one = m.lo.sub(&one, f0, Down).exponent().is_none_or(|d| d < -8);
    // Square roots shrink t; skipped near 1, where m - 1 must stay exact.
    let j = if near_one { 0 } else { (w as f64).sqrt() as u64 / 2 };
    let wp = w + j + 16;
    let f = wf(wp);
    let mut m = m.with_format(f);
    for _ in 0..j {
        m = m.sqrt();
    }
    let one = Enc::int(1, f);
    let t = m.sub(&one).div(&m.add(&one));
    let y = atanh_series(&t, wp).mul_pow2(j as i64 + 1);
    if e == 0 {
        return y;
    }
    let wl = wp + bit_len(e.unsigned_abs()) + 8;
    let fl = wf(wl);
    let ln2 = Enc::from_bracket(&ln2_enclosure(wl as u32), fl);
    ln2.mul(&Enc::int(e, fl)).add(&y.with_format(fl))
}

/// `t + t^3/3 + t^5/5 + ...` for `t^2 <= 1/2`.
fn atanh_series(t: &Enc, w: u64) -> Enc {
    let f = t.fmt;
    let Some(lead) = t.mag_exponent() else {
        return t.clone();
    };
    let t2 = t.sqr();
    let mut pow = t.clone();
    let mut tail = zero(f);
    let mut n = 3u64;
    loop {
        pow = pow.mul(&t2);
        let term = pow.div_int(n);
        if negligible(&term, lead, w) {
            // Same sign as t, at most twice the first omitted term (t^2 <= 1/2).
            tail = tail.add_toward(&term.mul_pow2(1));
            break;
        }
        tail = tail.add(&term);
        n += 2;
    }
    t.add(&tail)
}

pub(crate) fn atanh(x: &BigFloat, w: u64) -> Enc {
    let f = wf(w + 16);
    let xe = Enc::point(x, f);
    if x.exponent().is_none_or(|e| e < -2) {
        return atanh_series(&xe, w + 16);
    }
    let one = Enc::int(1, f);
    let ratio = one.add(&xe).div(&one.sub(&xe));
    log_enc(&ratio, w + 16).mul_pow2(-1)
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Trig {
    Sin,
    Cos,
}

/// sin or cos after reducing by the nearest multiple of pi/2. `Err` carries
/// the pi precision the reduction would need when it exceeds the limit.
pub(crate) fn trig(which: Trig, x: &BigFloat, w: u64) -> Result<Enc, u64> {
    let ex = x.exponent().expect("finite nonzero argument");
    let wp = w + 16;
    let (r, quadrant) = if ex < -1 {
        (Enc::point(x, wf(wp)), 0u8)
    } else {
        let bits = ex.max(0) as u64 + w + 32;
        if bits > MAX_PI_BITS {
            return Err(bits);
        }
        let fp = wf(bits);
        let half_pi = Enc::from_bracket(&pi_enclosure(bits as u32), fp).mul_pow2(-1);
        let xe = Enc::point(x, fp);
        let half = BigFloat::from_parts(false, 1u32.into(), -1, fp, Down);
        // Any nearby integer works; the series only needs |r| below about 1.
        let k = xe.div(&half_pi).lo.add(&half, fp, Down).floor_to_bigint().unwrap();
        let r = xe.sub(&half_pi.mul(&Enc::bigint(&k, fp)));
        let quadrant = (k % BigInt::from(4)).to_i64().unwrap().rem_euclid(4) as u8;
        (r.with_format(wf(wp)), quadrant)
    };
    let use_cos = (which == Trig::Cos) ^ (quadrant % 2 == 1);
    let v = if use_cos { cos_series(&r, wp) } else { sin_series(&r, wp) };
    let negate = match which {
        Trig::Sin => quadrant >= 2,
        Trig::Cos => quadrant == 1 || quadrant == 2,
    };
    Ok(if negate { v.neg() } else { v })
}

/// Alternating series with decreasing terms: the remainder lies between 0
/// and the first omitted term.
fn sin_series(r: &Enc, w: u64) -> Enc {
    let f = r.fmt;
    let Some(lead) = r.mag_exponent() else {
        return r.clone();
    };
    let r2 = r.sqr();
    let mut pow = r.clone();
    let mut tail = zero(f);
    let mut i = 1u64;
    loop {
        pow = pow.mul(&r2).div_int((2 * i) * (2 * i + 1));
        if negligible(&pow, lead, w) {
            tail = tail.add_toward(&if i % 2 == 1 { pow.neg() } else { pow });
            break;
        }
        tail = if i % 2 == 1 { tail.sub(&pow) } else { tail.add(&pow) };
        i += 1;
    }
    r.add(&tail)
}

fn cos_series(r: &Enc, w: u64) -> Enc {
    let f = r.fmt;
    let r2 = r.sqr();
    let mut pow = Enc::int(1, f);
    let mut tail = zero(f);
    let mut i = 1u64;
    loop {
        pow = pow.mul(&r2).div_int((2 * i - 1) * (2 * i));
        if negligible(&pow, 0, w) {
            tail = tail.add_toward(&if i % 2 == 1 { pow.neg() } else { pow });
            break;
        }
        tail = if i % 2 == 1 { tail.sub(&pow) } else { tail.add(&pow) };
        i += 1;
    }
    Enc::int(1, f).add(&tail)
}

/// `floor(x / (pi/2))`, refined until the enclosure of the quotient does
/// not straddle an integer.
pub(crate) fn quadrant(x: &BigFloat) -> Result<BigInt, u64> {
    if x.is_zero() {
        return Ok(BigInt::from(0));
    }
    let mut bits = x.exponent().unwrap().max(0) as u64 + 64;
    loop {
        if bits > MAX_PI_BITS {
            return Err(bits);
        }
        let fp = wf(bits);
        let half_pi = Enc::from_bracket(&pi_enclosure(bits as u32), fp).mul_pow2(-1);
        let y = Enc::point(x, fp).div(&half_pi);
        let lo = y.lo.floor_to_bigint().unwrap();
        if lo == y.hi.floor_to_bigint().unwrap() {
            return Ok(lo);
        }
        bits *= 2;
    }
}
