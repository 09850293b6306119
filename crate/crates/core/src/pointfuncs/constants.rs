//! Rigorous enclosures of pi and ln 2.
//!
//! Both come from arccotangent series summed in fixed point, with every
//! term truncated toward zero so the error is a simple count of terms.
//! Results are memoized per precision level; a level is always computed
//! the same way, so a cache hit returns exactly what recomputation would.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{BigFloat, Bracket, Format, RoundingDirection};

/// Fixed-point enclosure `[lo, hi] * 2^-frac_bits`.
struct Fixed {
    lo: BigInt,
    hi: BigInt,
    frac_bits: u64,
}

type Cache = LazyLock<RwLock<HashMap<u32, Arc<Fixed>>>>;

static PI: Cache = LazyLock::new(|| RwLock::new(HashMap::new()));
static LN2: Cache = LazyLock::new(|| RwLock::new(HashMap::new()));

/// `sum_i s_i / ((2i+1) n^(2i+1))` scaled by `2^f`, with `s_i` alternating
/// when requested. Returns the truncated sum and a bound on its error in
/// units of `2^-f`.
fn arccot_fixed(n: u64, f: u64, alternating: bool) -> (BigInt, u64) {
    let n2 = BigInt::from(n) * n;
    let mut power = (BigInt::one() << f) / n;
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * i + 1);
        if alternating && i % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        // floor(floor(a/b)/c) == floor(a/(bc)), so `power` stays exact.
        power /= &n2;
        i += 1;
    }
    // One unit per truncated term, plus the geometric tail below one unit.
    (sum, i + 2)
}

fn level_for(q: u32) -> u32 {
    (q.saturating_add(64)).next_power_of_two().max(128)
}

fn cached(cache: &Cache, q: u32, compute: fn(u64) -> Fixed) -> Arc<Fixed> {
    let level = level_for(q);
    if let Some(v) = cache.read().unwrap().get(&level) {
        return v.clone();
    }
    let v = Arc::new(compute(level as u64 + 48));
    cache.write().unwrap().entry(level).or_insert(v).clone()
}

fn compute_pi(f: u64) -> Fixed {
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let (a, ea) = arccot_fixed(5, f, true);
    let (b, eb) = arccot_fixed(239, f, true);
    let mid = a * 16 - b * 4;
    let err = BigInt::from(16 * ea + 4 * eb);
    Fixed { lo: &mid - &err, hi: mid + err, frac_bits: f }
}

fn compute_ln2(f: u64) -> Fixed {
    // ln 2 = 2 atanh(1/3); all terms positive, so truncation only lowers.
    let (s, e) = arccot_fixed(3, f, false);
    Fixed { lo: &s * 2, hi: s * 2 + BigInt::from(2 * e), frac_bits: f }
}

fn to_bracket(x: &Fixed, q: u32) -> Bracket {
    let fmt = Format::working(q);
    let conv = |v: &BigInt, dir| {
        debug_assert!(v.is_positive());
        BigFloat::from_parts(false, v.magnitude().clone(), -(x.frac_bits as i64), fmt, dir)
    };
    Bracket { lo: conv(&x.lo, RoundingDirection::Down), hi: conv(&x.hi, RoundingDirection::Up) }
}

/// Enclosure of pi at precision `q`, at most two ulps wide.
pub fn pi_enclosure(q: u32) -> Bracket {
    to_bracket(&cached(&PI, q, compute_pi), q)
}

/// Enclosure of ln 2 at precision `q`, at most two ulps wide.
pub fn ln2_enclosure(q: u32) -> Bracket {
    to_bracket(&cached(&LN2, q, compute_ln2), q)
}
