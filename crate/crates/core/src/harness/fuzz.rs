use num_bigint::{BigInt, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{run_case, AccuracyClaim, Adapter, HarnessError, Outcome, Request, Response, Verdict, VerdictKind};
use crate::bigfloat::{BigFloat, Format, RoundingDirection::{Down, Up}};
use crate::hexfloat::format_hex_lossy;
use crate::interval::{Decoration, Interval, Operation, ValueKind};
use crate::pointfuncs::{eval_correctly_rounded, DomainSpec, FunctionId};
use crate::suite::{Endpoints, TestCase, TestValue};

/// Runs the case, then probes `n` argument tuples drawn from the inputs:
/// the correctly rounded bracket of `f(x)` and the adapter's own answer on
/// the singletons must both lie inside the original result. A violating
/// point turns the verdict into `fail_unsound`, or adds a witness to one.
pub fn fuzz_case(
    c: &TestCase,
    adapter: &dyn Adapter,
    claim: AccuracyClaim,
    n: usize,
    seed: u64,
) -> Result<Outcome, HarnessError> {
    if n == 0 {
        return Err(HarnessError::NoSamples);
    }
    let outcome = run_case(c, adapter, claim);
    let base = outcome.verdict.kind;
    if !(base.is_pass() || matches!(base, VerdictKind::FailUnsound | VerdictKind::FailInaccurate)) {
        return Ok(outcome);
    }
    let (Some(Operation::Function(f)), Some(format), Some(z)) = (c.operation(), c.format(), &outcome.computed) else {
        return Ok(outcome);
    };
    if f.arity() != c.input.len() || z.kind() != Some(ValueKind::Interval) {
        return Ok(outcome);
    }
    let Ok(inputs) = c.input.iter().map(|v| v.decode(format).map(|d| d.interval().clone())).collect::<Result<Vec<_>, _>>()
    else {
        return Ok(outcome);
    };
    let Some(Ok(zb)) = z.endpoints(format, Up, Down) else {
        return Ok(outcome);
    };
    let decorated = c.is_decorated();
    for x in sample_points(f, &inputs, n, seed) {
        let Some(v) = probe(f, &x, &zb, c, adapter, format, decorated) else {
            continue;
        };
        let verdict = match (base, v.kind) {
            (VerdictKind::FailUnsound, VerdictKind::FailUnsound) => {
                Verdict::new(base, format!("{}; {}", outcome.verdict.detail, v.detail))
            }
            (VerdictKind::FailUnsound, _) => return Ok(outcome),
            (VerdictKind::FailInaccurate, VerdictKind::Error) => return Ok(outcome),
            _ => v,
        };
        return Ok(Outcome { verdict, computed: outcome.computed });
    }
    Ok(outcome)
}

/// First violation found at `x`, if any.
fn probe(
    f: FunctionId,
    x: &[BigFloat],
    z: &Endpoints,
    c: &TestCase,
    adapter: &dyn Adapter,
    format: Format,
    decorated: bool,
) -> Option<Verdict> {
    let witness = || x.iter().map(format_hex_lossy).collect::<Vec<_>>().join(", ");
    let inside = |lo: &BigFloat, hi: &BigFloat| match z {
        Endpoints::Empty => false,
        Endpoints::Bounds(zl, zh) => zl <= lo && hi <= zh,
    };
    let bracket = eval_correctly_rounded(f, x, format, Down).and_then(|lo| Ok((lo, eval_correctly_rounded(f, x, format, Up)?)));
    match bracket {
        Err(e) => return Some(Verdict::new(VerdictKind::Error, format!("oracle at x = {}: {e}", witness()))),
        Ok((lo, hi)) if !inside(&lo, &hi) => {
            return Some(Verdict::new(
                VerdictKind::FailUnsound,
                format!("{f}({}) in [{}, {}] escapes the result", witness(), format_hex_lossy(&lo), format_hex_lossy(&hi)),
            ));
        }
        Ok(_) => {}
    }
    let input = x
        .iter()
        .map(|p| {
            let s = format_hex_lossy(p);
            TestValue::Interval { inf: s.clone(), sup: s, dec: decorated.then_some(Decoration::Com) }
        })
        .collect();
    let request = Request { input, ..Request::for_case(c) };
    match adapter.call(&request) {
        Response::Unsupported => None,
        Response::Error(e) => Some(Verdict::new(VerdictKind::Error, format!("singleton x = {}: {e}", witness()))),
        Response::Value(s) => match s.endpoints(format, Down, Up) {
            Some(Ok(Endpoints::Empty)) => None,
            Some(Ok(Endpoints::Bounds(sl, sh))) if inside(&sl, &sh) => None,
            Some(Ok(_)) => Some(Verdict::new(
                VerdictKind::FailUnsound,
                format!("singleton result {s} at x = {} escapes the result", witness()),
            )),
            _ => Some(Verdict::new(VerdictKind::Error, format!("singleton x = {}: bad result {s}", witness()))),
        },
    }
}

/// Argument tuples for fuzzing `f` over `inputs`: the lower ends, the upper
/// ends, then `n - 2` tuples drawn uniformly over representable values.
/// Every argument is clipped to its domain and to the finite range; an
/// argument with nothing left yields no tuples at all, and singletons
/// yield one.
pub fn sample_points(f: FunctionId, inputs: &[Interval], n: usize, seed: u64) -> Vec<Vec<BigFloat>> {
    let Some(ranges) = inputs
        .iter()
        .enumerate()
        .map(|(i, x)| ordinal_range(x, f.domain(i)))
        .collect::<Option<Vec<_>>>()
    else {
        return Vec::new();
    };
    // A tuple of singletons has a single point to offer.
    let n = if ranges.iter().all(|(lo, hi)| lo == hi) { n.min(1) } else { n };
    let format = |i: usize| inputs[i].format();
    let nonzero = |i: usize| f.domain(i) == DomainSpec::NonZero;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuples = Vec::with_capacity(n);
    for k in 0..n {
        let tuple = ranges
            .iter()
            .enumerate()
            .map(|(i, (lo, hi))| {
                let idx = match k {
                    0 => lo.clone(),
                    1 => hi.clone(),
                    _ => loop {
                        let r = rng.gen_bigint_range(lo, &(hi + 1));
                        if !(nonzero(i) && r == BigInt::ZERO) {
                            break r;
                        }
                    },
                };
                BigFloat::from_ordinal(&idx, format(i))
            })
            .collect();
        tuples.push(tuple);
    }
    tuples
}

/// Ordinal bounds of `x ∩ dom`, restricted to finite values.
fn ordinal_range(x: &Interval, dom: DomainSpec) -> Option<(BigInt, BigInt)> {
    let (l, h) = x.bounds()?;
    let fmt = x.format();
    let max = BigFloat::max_finite(fmt).ordinal().unwrap();
    let clamp = |v: &BigFloat| match v.ordinal() {
        Some(o) => o,
        None if v.is_negative() => -max.clone(),
        None => max.clone(),
    };
    let one = BigFloat::one(fmt).ordinal().unwrap();
    let (dlo, dhi) = match dom {
        DomainSpec::Real | DomainSpec::NonZero => (-max.clone(), max.clone()),
        DomainSpec::NonNegative => (BigInt::ZERO, max.clone()),
        DomainSpec::Positive => (BigInt::from(1), max.clone()),
        DomainSpec::OpenUnit => (1 - &one, &one - 1),
    };
    let mut lo = clamp(l).max(dlo);
    let mut hi = clamp(h).min(dhi);
    if dom == DomainSpec::NonZero {
        if lo == BigInt::ZERO {
            lo += 1;
        }
        if hi == BigInt::ZERO {
            hi -= 1;
        }
    }
    (lo <= hi).then_some((lo, hi))
}
