//! Builds test suites: expected outputs from the engine, category presets
//! for the spotlight functions, and an exhaustive hard-to-round search.
//!
//! The accurate output of a case is the widest result the accurate tier
//! allows, `nextOut(f(nextOut(x)))`, with the tight decoration.

mod categories;
mod hard;

use crate::bigfloat::Format;
use crate::harness::{evaluate, Request, Response};
use crate::interval::{eval_decorated, eval_interval, DecoratedInterval, Decoration, IntervalError, Operation};
use crate::pointfuncs::FunctionId;
use crate::suite::{FormatHint, TestCase, TestValue};

pub use categories::{emit_category_cases, ill_formed_case, Category, SPOTLIGHT};
pub use hard::{
    find_hard_cases, hard_case_suite, hard_cases_json, run_length, GeneratorError, HardCase, HardOptions, RunKind,
    RunPattern, SearchRange,
};

/// Tight and accurate results for one evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub tight: DecoratedInterval,
    pub accurate: DecoratedInterval,
}

pub fn expected_outputs(f: FunctionId, inputs: &[DecoratedInterval], format: Format) -> Result<Expected, IntervalError> {
    let tight = eval_decorated(f, inputs, format)?;
    if tight.interval().is_empty() {
        return Ok(Expected { accurate: tight.clone(), tight });
    }
    let widened: Vec<_> = inputs.iter().map(|d| d.interval().next_out()).collect();
    let wide = eval_interval(f, &widened, format)?.next_out();
    debug_assert!(tight.interval().subset(&wide));
    // Widening can push a bounded result to infinity, which com forbids.
    let dec = match tight.dec() {
        Decoration::Com if !wide.is_bounded() => Decoration::Dac,
        d => d,
    };
    let accurate = DecoratedInterval::new(wide, dec)?;
    Ok(Expected { tight, accurate })
}

fn precision_and_hint(format: Format) -> (u32, Option<FormatHint>) {
    (format.precision(), FormatHint::for_format(format))
}

/// A case for `f` on `inputs`. With `decorated` the inputs and outputs
/// carry decorations; otherwise the bare engine result is expected.
pub fn make_case(
    f: FunctionId,
    inputs: &[DecoratedInterval],
    format: Format,
    decorated: bool,
    comment: Option<String>,
) -> Result<TestCase, IntervalError> {
    let e = expected_outputs(f, inputs, format)?;
    let value = |d: &DecoratedInterval| {
        if decorated {
            TestValue::from_decorated(d)
        } else {
            TestValue::from_interval(d.interval())
        }
    };
    let (precision, format_hint) = precision_and_hint(format);
    Ok(TestCase {
        function: f.name().to_string(),
        precision,
        format_hint,
        input: inputs.iter().map(value).collect(),
        tight: value(&e.tight),
        accurate: Some(value(&e.accurate)),
        comment,
    })
}

/// A case for any named operation, its tight output computed by the
/// built-in engine. Interval functions should go through [`make_case`],
/// which computes a distinct accurate output.
pub fn make_op_case(
    op: Operation,
    input: Vec<TestValue>,
    format: Format,
    comment: Option<String>,
) -> Result<TestCase, String> {
    let (precision, format_hint) = precision_and_hint(format);
    let request = Request { function: op.name().to_string(), precision, format_hint, input };
    match evaluate(&request) {
        Response::Value(tight) => Ok(TestCase {
            function: request.function,
            precision,
            format_hint,
            input: request.input,
            // Set operations are exact, so accurate results are tight ones.
            accurate: (tight.kind() == Some(crate::interval::ValueKind::Interval)).then(|| tight.clone()),
            tight,
            comment,
        }),
        Response::Unsupported => Err(format!("{op} unsupported")),
        Response::Error(e) => Err(e),
    }
}

#[cfg(test)]
mod tests;
