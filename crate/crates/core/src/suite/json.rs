use serde_json::{Map, Value};

use super::{FormatHint, SuiteError, TestCase, TestSuite, TestValue};
use crate::bigfloat::{Format, RoundingDirection};
use crate::hexfloat::{format_hex_lossy, parse_number};
use crate::interval::Decoration;

pub(super) fn parse(text: &str, source_name: &str) -> Result<TestSuite, SuiteError> {
    let root: Value = serde_json::from_str(text).map_err(|e| SuiteError::Json {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let schema = |index: Option<usize>, message: String| SuiteError::Schema {
        source_name: source_name.to_string(),
        index,
        message,
    };
    let items = match root {
        Value::Array(items) => items,
        obj @ Value::Object(_) => vec![obj],
        _ => return Err(schema(None, "expected an array of cases or a single case object".into())),
    };
    let cases = items
        .iter()
        .enumerate()
        .map(|(i, v)| parse_case(v).map_err(|m| schema(Some(i), m)))
        .collect::<Result<_, _>>()?;
    Ok(TestSuite::new(source_name, cases))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str, path: &str) -> Result<&'a Value, String> {
    obj.get(name).ok_or_else(|| format!("{path}{name} required"))
}

fn string(v: &Value, path: &str) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(format!("{path}: expected a string")),
    }
}

fn parse_case(v: &Value) -> Result<TestCase, String> {
    let obj = v.as_object().ok_or("expected an object")?;
    let function = match field(obj, "function", "")? {
        Value::String(s) => s.clone(),
        _ => return Err("function: expected a string".into()),
    };
    let precision = field(obj, "precision", "")?
        .as_u64()
        .and_then(|p| u32::try_from(p).ok())
        .ok_or("precision: expected a nonnegative integer")?;
    let format_hint = match obj.get("format_hint") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => {
            Some(FormatHint::from_name(s).ok_or_else(|| format!("format_hint: unknown format {s:?}"))?)
        }
        Some(_) => return Err("format_hint: expected a string".into()),
    };
    let input = field(obj, "input", "")?
        .as_array()
        .ok_or("input: expected an array")?
        .iter()
        .enumerate()
        .map(|(i, v)| parse_value(v, &format!("input[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let output = field(obj, "output", "")?.as_object().ok_or("output: expected an object")?;
    let tight = parse_value(field(output, "tight", "output.")?, "output.tight")?;
    let accurate = match output.get("accurate") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_value(v, "output.accurate")?),
    };
    let comment = match obj.get("comment") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err("comment: expected a string".into()),
    };
    Ok(TestCase { function, precision, format_hint, input, tight, accurate, comment })
}

/// Decodes one value object; `path` prefixes error messages.
pub fn value_from_json(v: &Value, path: &str) -> Result<TestValue, String> {
    parse_value(v, path)
}

fn parse_value(v: &Value, path: &str) -> Result<TestValue, String> {
    let obj = v.as_object().ok_or_else(|| format!("{path}: expected an object"))?;
    let prefix = format!("{path}.");
    let ty = field(obj, "type", &prefix)?.as_str().ok_or_else(|| format!("{path}.type: expected a string"))?;
    let val = || field(obj, "val", &prefix);
    Ok(match ty {
        "interval" => {
            let inf = string(field(obj, "inf", &prefix)?, &format!("{path}.inf"))?;
            let sup = string(field(obj, "sup", &prefix)?, &format!("{path}.sup"))?;
            let dec = match obj.get("dec") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => {
                    Some(Decoration::from_name(s).ok_or_else(|| format!("{path}.dec: unknown decoration {s:?}"))?)
                }
                Some(_) => return Err(format!("{path}.dec: expected a string")),
            };
            TestValue::Interval { inf, sup, dec }
        }
        "number" => TestValue::Number(string(val()?, &format!("{path}.val"))?),
        "boolean" => TestValue::Boolean(val()?.as_bool().ok_or_else(|| format!("{path}.val: expected true or false"))?),
        "string" => TestValue::String(
            val()?.as_str().ok_or_else(|| format!("{path}.val: expected a string"))?.to_string(),
        ),
        other => return Err(format!("{path}.type: unknown type {other:?}")),
    })
}

/// Rewrites endpoint text in canonical hex when it parses under `format`;
/// otherwise keeps it verbatim.
fn canonical(text: &str, format: Option<Format>, dir: RoundingDirection) -> String {
    match format.map(|f| parse_number(text, f, dir)) {
        Some(Ok(v)) => format_hex_lossy(&v),
        _ => text.to_string(),
    }
}

/// Encodes one value, endpoints in canonical hex when they parse under
/// `format`.
pub fn value_to_json(v: &TestValue, format: Option<Format>) -> Value {
    let mut m = Map::new();
    m.insert("type".into(), v.type_name().into());
    match v {
        TestValue::Interval { inf, sup, dec } => {
            m.insert("inf".into(), canonical(inf, format, RoundingDirection::Down).into());
            m.insert("sup".into(), canonical(sup, format, RoundingDirection::Up).into());
            if let Some(d) = dec {
                m.insert("dec".into(), d.name().into());
            }
        }
        TestValue::Number(t) => {
            m.insert("val".into(), canonical(t, format, RoundingDirection::NearestEven).into());
        }
        TestValue::Boolean(b) => {
            m.insert("val".into(), (*b).into());
        }
        TestValue::String(s) => {
            m.insert("val".into(), s.clone().into());
        }
    }
    Value::Object(m)
}

pub(super) fn case_to_json(c: &TestCase) -> Value {
    let format = c.format();
    let mut m = Map::new();
    m.insert("function".into(), c.function.clone().into());
    m.insert("precision".into(), c.precision.into());
    if let Some(h) = c.format_hint {
        m.insert("format_hint".into(), h.name().into());
    }
    m.insert("input".into(), c.input.iter().map(|v| value_to_json(v, format)).collect());
    let mut out = Map::new();
    out.insert("tight".into(), value_to_json(&c.tight, format));
    if let Some(a) = &c.accurate {
        out.insert("accurate".into(), value_to_json(a, format));
    }
    m.insert("output".into(), Value::Object(out));
    if let Some(s) = &c.comment {
        m.insert("comment".into(), s.clone().into());
    }
    Value::Object(m)
}
