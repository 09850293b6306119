use std::fmt;

use super::{DecodedInterval, TestCase, TestValue};
use crate::bigfloat::{Format, RoundingDirection};
use crate::hexfloat::{parse_number, parse_number_exact, ParseError};
use crate::interval::{Decoration, IllFormedRule, IntervalError, ValueKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Fatal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub case: usize,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.severity {
            Severity::Warning => "warning",
            Severity::Fatal => "error",
        };
        write!(f, "case[{}]: {s}: {}", self.case, self.message)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidationPolicy {
    /// Endpoints that are not exactly representable are fatal rather than
    /// rounded outward with a warning.
    pub exact_endpoints: bool,
}

/// Every problem with one case. Unknown function names only warn: a suite
/// may cover operations some implementations lack.
pub fn validate_case(c: &TestCase, index: usize, policy: &ValidationPolicy) -> Vec<Issue> {
    let mut issues = Vec::new();
    let mut push = |severity, message: String| issues.push(Issue { case: index, severity, message });
    let op = c.operation();
    if op.is_none() {
        push(Severity::Warning, format!("unknown function {:?}", c.function));
    }
    if c.precision < 2 {
        push(Severity::Fatal, format!("precision {} below 2", c.precision));
    }
    if let Some(h) = c.format_hint {
        if h.format().precision() != c.precision {
            push(Severity::Fatal, format!("format_hint {} needs precision {}", h.name(), h.format().precision()));
        }
    }
    let Some(format) = c.format() else {
        return issues;
    };

    if let Some(op) = op {
        let expected = op.arguments();
        if expected.len() != c.input.len() {
            push(Severity::Fatal, format!("{op} takes {} argument(s), got {}", expected.len(), c.input.len()));
        } else {
            for (i, (v, k)) in c.input.iter().zip(expected).enumerate() {
                if v.kind() != Some(*k) {
                    push(Severity::Fatal, format!("input[{i}]: expected {}, got {}", kind_name(*k), v.type_name()));
                }
            }
        }
        if c.tight.kind() != Some(op.result()) {
            push(
                Severity::Fatal,
                format!("output.tight: expected {}, got {}", kind_name(op.result()), c.tight.type_name()),
            );
        }
    }
    if let Some(a) = &c.accurate {
        if c.tight.kind() != Some(ValueKind::Interval) || a.kind() != Some(ValueKind::Interval) {
            push(Severity::Fatal, "output.accurate is only allowed for interval results".into());
        }
    }

    // An ill-formed input is legitimate when the case expects the ill-formed
    // outcome: NaI in decorated mode, the empty set in bare mode.
    let expects_ill_formed = match c.tight.decode(format) {
        Ok(DecodedInterval::Decorated(d)) => d.is_nai(),
        Ok(DecodedInterval::Bare(x)) => x.is_empty(),
        Err(_) => false,
    };
    for (i, v) in c.input.iter().enumerate() {
        for (sev, msg) in check_value(v, format, policy, expects_ill_formed) {
            push(sev, format!("input[{i}]{msg}"));
        }
    }
    for (sev, msg) in check_value(&c.tight, format, policy, false) {
        push(sev, format!("output.tight{msg}"));
    }
    if let Some(a) = &c.accurate {
        for (sev, msg) in check_value(a, format, policy, false) {
            push(sev, format!("output.accurate{msg}"));
        }
        if let (Ok(t), Ok(a)) = (c.tight.decode(format), a.decode(format)) {
            if !t.interval().subset(a.interval()) {
                push(Severity::Fatal, "tight not within accurate".into());
            }
        }
    }
    issues
}

fn kind_name(k: ValueKind) -> &'static str {
    match k {
        ValueKind::Interval => "interval",
        ValueKind::Number => "number",
        ValueKind::Boolean => "boolean",
    }
}

/// Issues with one value; messages start with the field suffix.
fn check_value(
    v: &TestValue,
    format: Format,
    policy: &ValidationPolicy,
    ill_formed_ok: bool,
) -> Vec<(Severity, String)> {
    let inexact = if policy.exact_endpoints { Severity::Fatal } else { Severity::Warning };
    let mut out = Vec::new();
    let mut endpoint = |field: &str, text: &str, dir| match parse_number(text, format, dir) {
        Err(e) => out.push((Severity::Fatal, format!(".{field}: unparseable: {e}"))),
        Ok(_) => {
            if let Err(ParseError::NotRepresentable { .. }) = parse_number_exact(text, format) {
                out.push((inexact, format!(".{field}: {text} not representable at precision {}", format.precision())));
            }
        }
    };
    match v {
        TestValue::Interval { inf, sup, .. } => {
            endpoint("inf", inf, RoundingDirection::Down);
            endpoint("sup", sup, RoundingDirection::Up);
        }
        TestValue::Number(t) => endpoint("val", t, RoundingDirection::NearestEven),
        TestValue::Boolean(_) | TestValue::String(_) => {}
    }
    if out.iter().any(|(s, _)| *s == Severity::Fatal) {
        return out;
    }
    if let TestValue::Interval { dec, .. } = v {
        match v.decode(format) {
            Ok(_) => {}
            Err(IntervalError::IllFormed(_)) if ill_formed_ok => {}
            Err(IntervalError::IllFormed(rule)) => {
                let what = match rule {
                    IllFormedRule::Decoration => {
                        format!("decoration {} not allowed on this interval", dec.unwrap_or(Decoration::Trv))
                    }
                    IllFormedRule::NanBound => "nan bound".to_string(),
                    IllFormedRule::LowerPosInfinity => "lower bound +inf".to_string(),
                    IllFormedRule::UpperNegInfinity => "upper bound -inf".to_string(),
                    IllFormedRule::Reversed => "reversed bounds".to_string(),
                };
                out.push((Severity::Fatal, format!(": {what}")));
            }
            Err(e) => out.push((Severity::Fatal, format!(": {e}"))),
        }
    }
    out
}
