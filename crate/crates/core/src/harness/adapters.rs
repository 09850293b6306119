use super::{Adapter, Request, Response};
use crate::bigfloat::{Format, RoundingDirection::{Down, NearestEven, Up}};
use crate::hexfloat::format_hex_lossy;
use crate::interval::{
    eval_decorated, eval_interval, set_op_decorated, DecoratedInterval, Interval, IntervalError, Operation, ValueKind,
};
use crate::suite::{DecodedInterval, Endpoints, TestValue};

/// The crate's own engine.
#[derive(Clone, Copy, Debug, Default)]
pub struct BuiltinAdapter;

impl Adapter for BuiltinAdapter {
    fn identity(&self) -> String {
        "builtin".to_string()
    }

    fn call(&self, request: &Request) -> Response {
        evaluate(request)
    }
}

/// Answers a request with the built-in engine. Decorated evaluation is used
/// when any interval input carries a decoration; ill-formed inputs then
/// become NaI, and the empty set in bare mode.
pub fn evaluate(request: &Request) -> Response {
    let Some(op) = Operation::from_name(&request.function) else {
        return Response::Unsupported;
    };
    let Some(format) = request.format() else {
        return Response::Error(format!("invalid precision {}", request.precision));
    };
    let kinds = op.arguments();
    if kinds.len() != request.input.len() {
        return Response::Error(format!("{op} takes {} argument(s), got {}", kinds.len(), request.input.len()));
    }
    let decorated = request.input.iter().any(|v| v.dec().is_some());
    let mut intervals = Vec::new();
    let mut point = None;
    for (v, kind) in request.input.iter().zip(kinds) {
        match kind {
            ValueKind::Interval => match input_interval(v, format, decorated) {
                Ok(x) => intervals.push(x),
                Err(e) => return Response::Error(e),
            },
            _ => match (v.number(format, Down), v.number(format, Up)) {
                (Some(Ok(lo)), Some(Ok(hi))) => point = Some((lo, hi)),
                _ => return Response::Error(format!("bad number argument {v}")),
            },
        }
    }
    let bare: Vec<Interval> = intervals.iter().map(|d| d.interval().clone()).collect();
    let value = match op {
        Operation::Function(f) if decorated => eval_decorated(f, &intervals, format).map(|d| TestValue::from_decorated(&d)),
        Operation::Function(f) => eval_interval(f, &bare, format).map(|x| TestValue::from_interval(&x)),
        Operation::Numeric(n) => {
            let x = if intervals[0].is_nai() { Interval::empty(format) } else { bare[0].clone() };
            Ok(TestValue::from_number(&x.numeric(n).round_to(format, NearestEven)))
        }
        Operation::Set(k) if decorated => {
            set_op_decorated(k, &intervals[0], &intervals[1], format).map(|d| TestValue::from_decorated(&d))
        }
        Operation::Set(k) => bare[0].set_op(k, &bare[1]).map(|x| TestValue::from_interval(&x)),
        Operation::Predicate(p) => {
            let refs: Vec<&Interval> = bare.iter().collect();
            let any_nai = intervals.iter().any(DecoratedInterval::is_nai);
            // A non-representable point is a member iff both its roundings are.
            let truth = !any_nai
                && match &point {
                    Some((lo, hi)) => p.eval(&refs, Some(lo)) && p.eval(&refs, Some(hi)),
                    None => p.eval(&refs, None),
                };
            Ok(TestValue::Boolean(truth))
        }
    };
    value.map_or_else(|e: IntervalError| Response::Error(e.to_string()), Response::Value)
}

fn input_interval(v: &TestValue, format: Format, decorated: bool) -> Result<DecoratedInterval, String> {
    match v.decode(format) {
        Ok(DecodedInterval::Decorated(d)) => Ok(d),
        Ok(DecodedInterval::Bare(x)) => Ok(DecoratedInterval::from_bare(x)),
        Err(IntervalError::IllFormed(_)) if decorated => Ok(DecoratedInterval::nai(format)),
        Err(IntervalError::IllFormed(_)) => Ok(DecoratedInterval::from_bare(Interval::empty(format))),
        Err(e) => Err(format!("bad interval argument {v}: {e}")),
    }
}

/// An adapter backed by a closure; handy for stubs.
pub struct FnAdapter<F> {
    name: String,
    f: F,
}

impl<F: Fn(&Request) -> Response + Send + Sync> FnAdapter<F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnAdapter { name: name.into(), f }
    }
}

impl<F: Fn(&Request) -> Response + Send + Sync> Adapter for FnAdapter<F> {
    fn identity(&self) -> String {
        self.name.clone()
    }

    fn call(&self, request: &Request) -> Response {
        (self.f)(request)
    }
}

/// Wraps an adapter and moves every finite or infinite upper endpoint of
/// its interval results one step down. A deliberately unsound
/// implementation, for checking that the harness notices.
pub struct MutateSupAdapter<A> {
    inner: A,
}

impl<A: Adapter> MutateSupAdapter<A> {
    pub fn new(inner: A) -> Self {
        MutateSupAdapter { inner }
    }
}

impl<A: Adapter> Adapter for MutateSupAdapter<A> {
    fn identity(&self) -> String {
        format!("mutate-sup({})", self.inner.identity())
    }

    fn call(&self, request: &Request) -> Response {
        let r = self.inner.call(request);
        let (Response::Value(v @ TestValue::Interval { .. }), Some(format)) = (&r, request.format()) else {
            return r;
        };
        let Some(Ok(Endpoints::Bounds(_, hi))) = v.endpoints(format, Down, Up) else {
            return r;
        };
        let shrunk = hi.next_down().expect("endpoint is not nan");
        let TestValue::Interval { inf, dec, .. } = v else { unreachable!() };
        Response::Value(TestValue::Interval { inf: inf.clone(), sup: format_hex_lossy(&shrunk), dec: *dec })
    }

    fn is_serial(&self) -> bool {
        self.inner.is_serial()
    }
}
