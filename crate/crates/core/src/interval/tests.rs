use proptest::prelude::*;

use super::*;
use crate::bigfloat::RoundingDirection::{Down, Up};
use crate::hexfloat::parse_number_exact;
use crate::pointfuncs::eval_correctly_rounded;

const B64: Format = Format::binary64();

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::from_f64(lo, hi, B64).unwrap()
}

fn num(v: f64) -> BigFloat {
    BigFloat::from_f64(v, B64, Down)
}

fn hex(s: &str, f: Format) -> BigFloat {
    parse_number_exact(s, f).unwrap()
}

fn eval(f: FunctionId, xs: &[Interval]) -> Interval {
    eval_interval(f, xs, B64).unwrap()
}

fn dec(x: Interval, d: Decoration) -> DecoratedInterval {
    DecoratedInterval::new(x, d).unwrap()
}

#[test]
fn construct_rules() {
    assert_eq!(iv(1.0, 2.0).inf(), num(1.0));
    let rule = |lo: f64, hi: f64| match Interval::from_f64(lo, hi, B64) {
        Err(IntervalError::IllFormed(r)) => r,
        other => panic!("expected IllFormed, got {other:?}"),
    };
    assert_eq!(rule(f64::NEG_INFINITY, f64::NEG_INFINITY), IllFormedRule::UpperNegInfinity);
    assert_eq!(rule(f64::INFINITY, f64::INFINITY), IllFormedRule::LowerPosInfinity);
    assert_eq!(rule(2.0, 1.0), IllFormedRule::Reversed);
    assert_eq!(rule(f64::NAN, 1.0), IllFormedRule::NanBound);
    assert!(iv(f64::NEG_INFINITY, f64::INFINITY).is_entire());
    assert!(iv(3.0, 3.0).is_singleton());
}

#[test]
fn construct_rounds_outward() {
    let x = Interval::from_text("0.1", "0.1", B64).unwrap();
    assert!(x.inf() < x.sup());
    assert_eq!(x.inf().next_up().unwrap(), x.sup());
}

#[test]
fn basic_arithmetic() {
    use FunctionId::*;
    assert_eq!(eval(Add, &[iv(1.0, 2.0), iv(3.0, 4.0)]), iv(4.0, 6.0));
    assert_eq!(eval(Sub, &[iv(1.0, 2.0), iv(3.0, 4.0)]), iv(-3.0, -1.0));
    assert_eq!(eval(Mul, &[iv(-1.0, 2.0), iv(-3.0, 4.0)]), iv(-6.0, 8.0));
    assert_eq!(eval(Neg, &[iv(-1.0, 2.0)]), iv(-2.0, 1.0));
    assert_eq!(eval(Sqr, &[iv(-3.0, 2.0)]), iv(0.0, 9.0));
    assert_eq!(eval(Sqr, &[iv(-3.0, -2.0)]), iv(4.0, 9.0));
    assert_eq!(eval(Cbrt, &[iv(-8.0, 27.0)]), iv(-2.0, 3.0));
}

#[test]
fn mul_matches_brute_force_products() {
    let cases = [(-1.0, 2.0, -3.0, 4.0), (1.0, 2.0, 3.0, 4.0), (-5.0, -1.0, 2.0, 7.0), (-2.0, 3.0, -4.0, -1.0)];
    for (a, b, c, d) in cases {
        let products = [a * c, a * d, b * c, b * d];
        let lo = products.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = products.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(eval(FunctionId::Mul, &[iv(a, b), iv(c, d)]), iv(lo, hi));
    }
}

#[test]
fn mul_zero_times_unbounded() {
    let inf = f64::INFINITY;
    let z = iv(0.0, 0.0);
    assert_eq!(eval(FunctionId::Mul, &[z.clone(), iv(-inf, inf)]), z);
    assert_eq!(eval(FunctionId::Mul, &[iv(0.0, inf), iv(1.0, 1.0)]), iv(0.0, inf));
    assert_eq!(eval(FunctionId::Mul, &[iv(-inf, 0.0), iv(-inf, 0.0)]), iv(0.0, inf));
    assert_eq!(eval(FunctionId::Mul, &[iv(-inf, -1.0), iv(-inf, -1.0)]), iv(1.0, inf));
}

#[test]
fn division_classes() {
    let inf = f64::INFINITY;
    let d = |x: Interval, y: Interval| eval(FunctionId::Div, &[x, y]);
    assert_eq!(d(iv(1.0, 1.0), iv(0.0, 1.0)), iv(1.0, inf));
    assert_eq!(d(iv(1.0, 1.0), iv(-1.0, 0.0)), iv(-inf, -1.0));
    assert_eq!(d(iv(-2.0, -1.0), iv(0.0, 4.0)), iv(-inf, -0.25));
    assert_eq!(d(iv(-2.0, -1.0), iv(-4.0, 0.0)), iv(0.25, inf));
    assert!(d(iv(1.0, 1.0), iv(-1.0, 1.0)).is_entire());
    assert!(d(iv(-1.0, 1.0), iv(0.0, 1.0)).is_entire());
    assert!(d(iv(1.0, 2.0), iv(0.0, 0.0)).is_empty());
    assert_eq!(d(iv(0.0, 0.0), iv(-1.0, 1.0)), iv(0.0, 0.0));
    assert_eq!(d(iv(1.0, 2.0), iv(4.0, 8.0)), iv(0.125, 0.5));
    assert_eq!(d(iv(-1.0, 2.0), iv(4.0, 8.0)), iv(-0.25, 0.5));
    assert_eq!(d(iv(-1.0, 2.0), iv(-8.0, -4.0)), iv(-0.5, 0.25));
    assert_eq!(d(iv(1.0, inf), iv(1.0, inf)), iv(0.0, inf));
    assert_eq!(d(iv(-2.0, -1.0), iv(0.0, inf)), iv(-inf, 0.0));
    let third = d(iv(1.0, 1.0), iv(3.0, 3.0));
    assert_eq!(third.inf().next_up().unwrap(), third.sup());
}

#[test]
fn domain_restriction() {
    use FunctionId::*;
    let inf = f64::INFINITY;
    assert_eq!(eval(Sqrt, &[iv(-2.0, 1.0)]), iv(0.0, 1.0));
    assert!(eval(Sqrt, &[iv(-2.0, -1.0)]).is_empty());
    assert!(eval(Log, &[iv(-2.0, 0.0)]).is_empty());
    assert_eq!(eval(Log, &[iv(0.0, 1.0)]), iv(-inf, 0.0));
    assert_eq!(eval(Log2, &[iv(-1.0, 8.0)]), iv(-inf, 3.0));
    assert_eq!(eval(Atanh, &[iv(0.0, 1.0)]), iv(0.0, inf));
    assert!(eval(Atanh, &[iv(1.0, 2.0)]).is_empty());
    assert!(eval(Atanh, &[iv(-inf, inf)]).is_entire());
    assert_eq!(eval(Exp, &[iv(-inf, 0.0)]), iv(0.0, 1.0));
    assert_eq!(eval(Exp2, &[iv(-1.0, 3.0)]), iv(0.5, 8.0));
}

#[test]
fn atanh_at_the_reference_point() {
    let w23 = Format::wide(23);
    let a = hex("0xf.fe1e00@-1", w23);
    let x = Interval::new(&a.neg(), &a, w23).unwrap();
    let r = eval_interval(FunctionId::Atanh, std::slice::from_ref(&x), w23).unwrap();
    let expected = hex("0x4.305fa0@0", w23);
    assert_eq!(r.inf(), expected.neg());
    assert_eq!(r.sup(), expected);
    let d = eval_decorated(FunctionId::Atanh, &[dec(x, Decoration::Com)], w23).unwrap();
    assert_eq!(d.dec(), Decoration::Com);
}

#[test]
fn exp_overflow_is_unbounded_and_dac() {
    let r = eval(FunctionId::Exp, &[iv(710.0, 710.0)]);
    assert_eq!(r.inf(), BigFloat::max_finite(B64));
    assert!(r.sup().is_pos_infinity());
    let d = eval_decorated(FunctionId::Exp, &[dec(iv(710.0, 710.0), Decoration::Com)], B64).unwrap();
    assert_eq!(d.dec(), Decoration::Dac);
}

#[test]
fn decorations() {
    use Decoration::*;
    let inf = f64::INFINITY;
    let d = |f, x: DecoratedInterval| eval_decorated(f, &[x], B64).unwrap();
    let r = d(FunctionId::Sqrt, dec(iv(-2.0, 1.0), Com));
    assert_eq!((r.interval().clone(), r.dec()), (iv(0.0, 1.0), Trv));
    let r = d(FunctionId::Exp, dec(iv(-inf, 0.0), Dac));
    assert_eq!((r.interval().clone(), r.dec()), (iv(0.0, 1.0), Dac));
    let r = d(FunctionId::Atanh, dec(iv(0.0, 1.0), Com));
    assert_eq!((r.interval().clone(), r.dec()), (iv(0.0, inf), Trv));
    assert_eq!(d(FunctionId::Sqrt, dec(iv(0.0, 1.0), Com)).dec(), Com);
    assert_eq!(d(FunctionId::Sin, dec(iv(0.0, 1.0), Def)).dec(), Def);
    assert!(d(FunctionId::Sin, DecoratedInterval::nai(B64)).is_nai());
    let r = d(FunctionId::Log, DecoratedInterval::from_bare(Interval::empty(B64)));
    assert!(r.interval().is_empty() && r.dec() == Trv);
    let q = eval_decorated(FunctionId::Div, &[dec(iv(1.0, 1.0), Com), dec(iv(-1.0, 1.0), Com)], B64).unwrap();
    assert!(q.interval().is_entire());
    assert_eq!(q.dec(), Trv);
}

#[test]
fn decorated_invariants() {
    use Decoration::*;
    let inf = f64::INFINITY;
    assert!(DecoratedInterval::new(Interval::empty(B64), Com).is_err());
    assert!(DecoratedInterval::new(Interval::empty(B64), Dac).is_err());
    assert!(DecoratedInterval::new(iv(0.0, inf), Com).is_err());
    assert!(DecoratedInterval::new(iv(0.0, 1.0), Ill).is_err());
    assert!(DecoratedInterval::new(iv(0.0, inf), Dac).is_ok());
    assert!(Com > Dac && Dac > Def && Def > Trv && Trv > Ill);
}

#[test]
fn dependency_blowup_width_seven() {
    use FunctionId::*;
    let x = iv(0.0, 1.0);
    let mut acc = x.clone();
    for f in [Sub, Add, Sub, Add, Sub, Add] {
        acc = eval(f, &[acc, x.clone()]);
    }
    assert_eq!(acc, iv(-3.0, 4.0));
    assert_eq!(acc.numeric(NumericFn::Wid), num(7.0));
}

#[test]
fn sqrt_of_two_pi_encloses_true_value() {
    let pi = crate::pointfuncs::pi_enclosure(200);
    let two_pi = Interval::new(&pi.lo, &pi.hi, B64).unwrap().with_format(B64);
    let two_pi = eval(FunctionId::Add, &[two_pi.clone(), two_pi]);
    let r = eval(FunctionId::Sqrt, &[two_pi]);
    // sqrt(2 pi) = 2.50662827463100050241..., truncated to 160 bits.
    let truth = hex("0xa06c98ffb1382cb2be520fd739167717c67cfa99p-158", Format::wide(160));
    assert!(r.inf() < truth && truth < r.sup());
    assert!(r.sup() <= r.inf().next_up().unwrap().next_up().unwrap());
}

#[test]
fn trig_critical_points() {
    use FunctionId::*;
    let one = num(1.0);
    let s = eval(Sin, &[iv(0.0, 2.0)]);
    assert_eq!(s.sup(), one);
    assert_eq!(s.inf(), num(0.0));
    let s = eval(Sin, &[iv(1.0, 1.5)]);
    assert!(s.sup() < one);
    assert_eq!(s.sup(), eval_correctly_rounded(Sin, &[num(1.5)], B64, Up).unwrap());
    assert_eq!(s.inf(), eval_correctly_rounded(Sin, &[num(1.0)], B64, Down).unwrap());
    let c = eval(Cos, &[iv(1.0, 4.0)]);
    assert_eq!(c.inf(), one.neg());
    assert_eq!(c.sup(), eval_correctly_rounded(Cos, &[num(1.0)], B64, Up).unwrap());
    let c = eval(Cos, &[iv(-0.5, 0.5)]);
    assert_eq!(c.sup(), one);
    assert!(eval(Sin, &[iv(0.0, 7.0)]).equal(&iv(-1.0, 1.0)));
    assert!(eval(Cos, &[iv(f64::NEG_INFINITY, 0.0)]).equal(&iv(-1.0, 1.0)));
    let big = 2f64.powi(60);
    let r = eval(Sin, &[iv(big, big)]);
    assert_eq!(r.inf(), eval_correctly_rounded(Sin, &[num(big)], B64, Down).unwrap());
    // Straddles 3 pi / 2 just above 4.712.
    let r = eval(Sin, &[iv(4.71, 4.72)]);
    assert_eq!(r.inf(), one.neg());
}

#[test]
fn next_out_examples() {
    let r = iv(1.0, 2.0).next_out();
    assert_eq!(r.inf(), num(1.0 - 2f64.powi(-53)));
    assert_eq!(r.sup(), num(2.0 + 2f64.powi(-51)));
    let r = iv(0.0, f64::MAX).next_out();
    assert_eq!(r.inf(), num(-(2f64.powi(-1074))));
    assert!(r.sup().is_pos_infinity());
    assert!(Interval::empty(B64).next_out().is_empty());
    assert!(iv(f64::NEG_INFINITY, f64::INFINITY).next_out().is_entire());
}

#[test]
fn numeric_functions() {
    use NumericFn::*;
    let inf = f64::INFINITY;
    assert_eq!(iv(1.0, 3.0).numeric(Mid), num(2.0));
    assert_eq!(iv(1.0, 2.0).numeric(Rad), num(0.5));
    assert_eq!(iv(-3.0, 4.0).numeric(Wid), num(7.0));
    assert_eq!(iv(-3.0, 2.0).numeric(Mag), num(3.0));
    assert_eq!(iv(-3.0, 2.0).numeric(Mig), num(0.0));
    assert_eq!(iv(-3.0, -2.0).numeric(Mig), num(2.0));
    assert_eq!(iv(-inf, inf).numeric(Mid), num(0.0));
    assert_eq!(iv(0.0, inf).numeric(Mid), num(f64::MAX));
    assert_eq!(iv(-inf, 0.0).numeric(Mid), num(-f64::MAX));
    assert!(iv(0.0, inf).numeric(Rad).is_pos_infinity());
    assert!(iv(-inf, inf).numeric(Inf).is_neg_infinity());
    for f in [Inf, Sup, Mid, Rad, Wid, Mag, Mig] {
        assert!(Interval::empty(B64).numeric(f).is_nan());
    }
    // No overflow at the top of the range; the tie rounds to even.
    assert_eq!(iv(f64::MAX, f64::MAX).numeric(Mid), num(f64::MAX));
    let tiny = 2f64.powi(-1074);
    assert_eq!(iv(0.0, tiny).numeric(Mid), num(0.0));
    assert_eq!(iv(0.0, tiny).numeric(Rad), num(tiny));
    // Midpoint of 1 and 1 + 3 ulp rounds to even: 1 + 2 ulp.
    let e = f64::EPSILON;
    assert_eq!(iv(1.0, 1.0 + 3.0 * e).numeric(Mid), num(1.0 + 2.0 * e));
}

#[test]
fn mid_of_distant_endpoints() {
    let tiny = 2f64.powi(-1074);
    let m = iv(tiny, 1.0).numeric(NumericFn::Mid);
    assert_eq!(m, num(0.5));
    let m = iv(-1.0, f64::MAX).numeric(NumericFn::Mid);
    assert_eq!(m, num(f64::MAX / 2.0));
}

#[test]
fn set_operations() {
    assert_eq!(iv(0.0, 1.0).convex_hull(&iv(3.0, 4.0)).unwrap(), iv(0.0, 4.0));
    assert_eq!(iv(0.0, 2.0).intersection(&iv(1.0, 3.0)).unwrap(), iv(1.0, 2.0));
    assert!(iv(0.0, 1.0).intersection(&iv(2.0, 3.0)).unwrap().is_empty());
    assert_eq!(Interval::empty(B64).set_op(SetOp::ConvexHull, &iv(1.0, 2.0)).unwrap(), iv(1.0, 2.0));
    let other = Interval::from_f64(0.0, 1.0, Format::binary32()).unwrap();
    assert!(matches!(iv(0.0, 1.0).intersection(&other), Err(IntervalError::FormatMismatch(..))));
}

#[test]
fn predicates() {
    let inf = f64::INFINITY;
    let e = Interval::empty(B64);
    assert!(iv(1.0, 2.0).subset(&iv(0.0, 3.0)));
    assert!(!iv(0.0, 3.0).subset(&iv(1.0, 2.0)));
    assert!(e.subset(&iv(0.0, 1.0)));
    assert!(!iv(0.0, inf).member(&BigFloat::pos_infinity(B64)));
    assert!(iv(0.0, inf).member(&num(1e300)));
    assert!(!e.member(&num(0.0)));
    assert!(e.disjoint(&iv(0.0, 1.0)));
    assert!(iv(0.0, 1.0).disjoint(&iv(2.0, 3.0)));
    assert!(!iv(0.0, 2.0).disjoint(&iv(2.0, 3.0)));
    assert!(iv(1.0, 2.0).interior(&iv(0.0, 3.0)));
    assert!(!iv(0.0, 2.0).interior(&iv(0.0, 3.0)));
    assert!(iv(0.0, inf).interior(&iv(-1.0, inf)));
    assert!(iv(-inf, inf).is_entire() && e.is_empty());
    assert!(iv(1.0, 2.0).equal(&iv(1.0, 2.0)) && !iv(1.0, 2.0).equal(&e));
}

#[test]
fn literals() {
    let p = |s: &str| parse_interval_literal(s, B64).unwrap();
    let x = p("[1.0, 2.0]");
    assert_eq!((x.interval().clone(), x.dec()), (iv(1.0, 2.0), Decoration::Com));
    assert_eq!(p("[-0x1.8@0, 0x1@1]").interval().clone(), iv(-1.5, 16.0));
    let e = p("[empty]");
    assert!(e.interval().is_empty() && e.dec() == Decoration::Trv);
    assert!(p("[]").interval().is_empty());
    let en = p("[entire]");
    assert!(en.interval().is_entire() && en.dec() == Decoration::Dac);
    assert_eq!(p("[3]").interval().clone(), iv(3.0, 3.0));
    assert_eq!(p("[1, inf]_def").dec(), Decoration::Def);
    assert!(p("[nai]").is_nai() && p("[empty]_ill").is_nai());
    let third = p("[0.1]");
    assert!(third.interval().inf() < third.interval().sup());
    for bad in ["1, 2", "[1, 2", "[1, 2]x", "[2, 1]", "[1, 2]_foo", "[1, inf]_com", "[empty]_dac", "[a, b]", "[1, 2, 3]", "[-inf]"] {
        assert!(parse_interval_literal(bad, B64).is_err(), "{bad}");
    }
}

#[test]
fn formatting() {
    let x = DecoratedInterval::from_bare(iv(1.5, 16.0));
    assert_eq!(format_interval(&x), "[0x1.8@0, 0x1@1]_com");
    assert_eq!(iv(1.5, 16.0).to_string(), "[0x1.8@0, 0x1@1]");
    assert_eq!(format_interval(&DecoratedInterval::from_bare(Interval::empty(B64))), "[empty]_trv");
    assert_eq!(Interval::entire(B64).to_string(), "[entire]");
    assert_eq!(DecoratedInterval::nai(B64).to_string(), "[nai]");
    assert_eq!(iv(0.0, f64::INFINITY).to_string(), "[0x0@0, inf]");
}

// Properties.

fn endpoint() -> impl Strategy<Value = f64> {
    prop_oneof![
        4 => -30.0f64..30.0,
        1 => (-6i32..6).prop_map(f64::from),
        1 => Just(f64::NEG_INFINITY),
        1 => Just(f64::INFINITY),
        1 => (-1.0f64..1.0).prop_map(|v| v * 1e-5),
    ]
}

fn interval() -> impl Strategy<Value = Interval> {
    (endpoint(), endpoint()).prop_filter_map("invalid bounds", |(a, b)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Interval::from_f64(lo, hi, B64).ok()
    })
}

fn function() -> impl Strategy<Value = FunctionId> {
    proptest::sample::select(FunctionId::ALL.to_vec())
}

/// A real point of `x` at relative position `t`, or `None` when `x` is
/// empty. Unbounded sides are replaced by a finite stand-in.
fn sample(x: &Interval, t: f64) -> Option<BigFloat> {
    let (a, b) = x.bounds()?;
    let (a, b) = (a.to_f64(), b.to_f64());
    let lo = if a.is_finite() { a } else { b.min(0.0) - 1e3 };
    let hi = if b.is_finite() { b } else { lo.max(0.0) + 1e3 };
    let v = (lo + t * (hi - lo)).clamp(lo, hi);
    Some(num(v))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn soundness(f in function(), xs in proptest::collection::vec(interval(), 2),
                 ts in proptest::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 12)) {
        let xs = &xs[..f.arity()];
        let r = eval_interval(f, xs, B64).unwrap();
        for (t0, t1) in ts {
            let pts: Option<Vec<BigFloat>> = xs.iter().zip([t0, t1]).map(|(x, t)| sample(x, t)).collect();
            let Some(pts) = pts else { continue };
            if pts.iter().enumerate().any(|(i, p)| !f.domain(i).contains(p)) {
                continue;
            }
            let lo = eval_correctly_rounded(f, &pts, B64, Down).unwrap();
            let hi = eval_correctly_rounded(f, &pts, B64, Up).unwrap();
            prop_assert!(!r.is_empty(), "{f}{pts:?} in domain but result empty");
            prop_assert!(r.inf() <= lo && hi <= r.sup(), "{f}{pts:?}: [{lo}, {hi}] not in {r}");
        }
    }

    #[test]
    fn isotonicity(f in function(), xs in proptest::collection::vec(interval(), 2),
                   ys in proptest::collection::vec(interval(), 2)) {
        let xs = &xs[..f.arity()];
        let wider: Vec<Interval> = xs.iter().zip(&ys).map(|(x, y)| x.convex_hull(y).unwrap()).collect();
        let small = eval_interval(f, xs, B64).unwrap();
        let big = eval_interval(f, &wider, B64).unwrap();
        prop_assert!(small.subset(&big), "{f}: {small} not in {big}");
    }

    #[test]
    fn singleton_consistency(f in function(), vs in proptest::collection::vec(-30.0f64..30.0, 2)) {
        let pts: Vec<BigFloat> = vs[..f.arity()].iter().map(|v| num(*v)).collect();
        let xs: Vec<Interval> = pts.iter().map(|p| Interval::singleton(p, B64).unwrap()).collect();
        let r = eval_interval(f, &xs, B64).unwrap();
        if pts.iter().enumerate().all(|(i, p)| f.domain(i).contains(p)) {
            let lo = eval_correctly_rounded(f, &pts, B64, Down).unwrap();
            let hi = eval_correctly_rounded(f, &pts, B64, Up).unwrap();
            prop_assert_eq!(r.inf(), lo);
            prop_assert_eq!(r.sup(), hi);
        } else {
            prop_assert!(r.is_empty());
        }
    }

    #[test]
    fn decoration_never_rises(f in function(), xs in proptest::collection::vec(interval(), 2),
                              ds in proptest::collection::vec(0usize..5, 2)) {
        let inputs: Vec<DecoratedInterval> = xs[..f.arity()].iter().zip(&ds).map(|(x, d)| {
            DecoratedInterval::new(x.clone(), Decoration::ALL[*d])
                .unwrap_or_else(|_| DecoratedInterval::from_bare(x.clone()))
        }).collect();
        let r = eval_decorated(f, &inputs, B64).unwrap();
        let floor = inputs.iter().map(DecoratedInterval::dec).min().unwrap();
        prop_assert!(r.dec() <= floor);
    }

    #[test]
    fn self_difference_contains_zero(x in interval()) {
        let r = eval_interval(FunctionId::Sub, &[x.clone(), x], B64).unwrap();
        prop_assert!(r.member(&num(0.0)));
    }

    #[test]
    fn next_out_strictly_grows(x in interval()) {
        let finite_end = x.bounds().is_some_and(|(a, b)| a.is_finite() || b.is_finite());
        prop_assume!(finite_end);
        let y = x.next_out();
        prop_assert!(x.subset(&y) && !y.equal(&x));
    }

    #[test]
    fn literal_round_trip(x in interval(), d in 0usize..5) {
        let di = DecoratedInterval::new(x.clone(), Decoration::ALL[d])
            .unwrap_or_else(|_| DecoratedInterval::from_bare(x));
        let back = parse_interval_literal(&format_interval(&di), B64).unwrap();
        prop_assert_eq!(back, di);
    }
}
