//! Every operation a test case can name, with its argument and result kinds.

use std::fmt;

use super::{DecoratedInterval, Decoration, Interval, IntervalError, NumericFn, SetOp};
use crate::bigfloat::{BigFloat, Format};
use crate::pointfuncs::FunctionId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    IsEmpty,
    IsEntire,
    Equal,
    Subset,
    Interior,
    Disjoint,
    /// `(number, interval)`.
    Member,
}

impl Predicate {
    pub fn eval(self, args: &[&Interval], point: Option<&BigFloat>) -> bool {
        match self {
            Predicate::IsEmpty => args[0].is_empty(),
            Predicate::IsEntire => args[0].is_entire(),
            Predicate::Equal => args[0].equal(args[1]),
            Predicate::Subset => args[0].subset(args[1]),
            Predicate::Interior => args[0].interior(args[1]),
            Predicate::Disjoint => args[0].disjoint(args[1]),
            Predicate::Member => point.is_some_and(|x| args[0].member(x)),
        }
    }
}

/// Kind of an argument or result value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueKind {
    Interval,
    Number,
    Boolean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    Function(FunctionId),
    Numeric(NumericFn),
    Set(SetOp),
    Predicate(Predicate),
}

const NAMED: [(&str, Operation); 16] = [
    ("inf", Operation::Numeric(NumericFn::Inf)),
    ("sup", Operation::Numeric(NumericFn::Sup)),
    ("mid", Operation::Numeric(NumericFn::Mid)),
    ("rad", Operation::Numeric(NumericFn::Rad)),
    ("wid", Operation::Numeric(NumericFn::Wid)),
    ("mag", Operation::Numeric(NumericFn::Mag)),
    ("mig", Operation::Numeric(NumericFn::Mig)),
    ("intersection", Operation::Set(SetOp::Intersection)),
    ("convexHull", Operation::Set(SetOp::ConvexHull)),
    ("isEmpty", Operation::Predicate(Predicate::IsEmpty)),
    ("isEntire", Operation::Predicate(Predicate::IsEntire)),
    ("equal", Operation::Predicate(Predicate::Equal)),
    ("subset", Operation::Predicate(Predicate::Subset)),
    ("interior", Operation::Predicate(Predicate::Interior)),
    ("disjoint", Operation::Predicate(Predicate::Disjoint)),
    ("isMember", Operation::Predicate(Predicate::Member)),
];

impl Operation {
    pub fn from_name(name: &str) -> Option<Self> {
        FunctionId::from_name(name)
            .map(Operation::Function)
            .or_else(|| NAMED.iter().find(|(n, _)| *n == name).map(|(_, op)| *op))
    }

    pub fn name(self) -> &'static str {
        match self {
            Operation::Function(f) => f.name(),
            op => NAMED.iter().find(|(_, o)| *o == op).map(|(n, _)| *n).unwrap(),
        }
    }

    /// Every named operation, point functions first.
    pub fn all() -> impl Iterator<Item = Operation> {
        FunctionId::ALL.into_iter().map(Operation::Function).chain(NAMED.iter().map(|(_, op)| *op))
    }

    pub fn arguments(self) -> &'static [ValueKind] {
        use ValueKind::*;
        match self {
            Operation::Function(f) if f.arity() == 2 => &[Interval, Interval],
            Operation::Function(_) | Operation::Numeric(_) => &[Interval],
            Operation::Predicate(Predicate::IsEmpty | Predicate::IsEntire) => &[Interval],
            Operation::Predicate(Predicate::Member) => &[Number, Interval],
            Operation::Set(_) | Operation::Predicate(_) => &[Interval, Interval],
        }
    }

    pub fn result(self) -> ValueKind {
        match self {
            Operation::Function(_) | Operation::Set(_) => ValueKind::Interval,
            Operation::Numeric(_) => ValueKind::Number,
            Operation::Predicate(_) => ValueKind::Boolean,
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Decorated set operations: NaI propagates, anything else yields trv.
pub fn set_op_decorated(
    kind: SetOp,
    x: &DecoratedInterval,
    y: &DecoratedInterval,
    format: Format,
) -> Result<DecoratedInterval, IntervalError> {
    if x.is_nai() || y.is_nai() {
        return Ok(DecoratedInterval::nai(format));
    }
    let r = x.interval().with_format(format).set_op(kind, &y.interval().with_format(format))?;
    DecoratedInterval::new(r, Decoration::Trv)
}
