//! Interval literals: `[lo, hi]`, `[x]`, `[empty]`, `[entire]`, `[nai]`,
//! each optionally followed by `_dec`.

use super::{DecoratedInterval, Decoration, Interval, IntervalError};
use crate::bigfloat::{Format, RoundingDirection};
use crate::hexfloat::{format_hex_lossy, parse_number};

/// Parses a literal, rounding its endpoints outward into `format`. A
/// literal without a decoration gets the strongest one its interval allows.
pub fn parse_interval_literal(text: &str, format: Format) -> Result<DecoratedInterval, IntervalError> {
    let err = |message: &str| IntervalError::Literal { text: text.to_string(), message: message.to_string() };
    let t = text.trim();
    let body = t.strip_prefix('[').ok_or_else(|| err("expected '['"))?;
    let close = body.find(']').ok_or_else(|| err("expected ']'"))?;
    let (inner, rest) = (body[..close].trim(), &body[close + 1..]);
    let dec = match rest {
        "" => None,
        _ => {
            let name = rest.strip_prefix('_').ok_or_else(|| err("trailing text after ']'"))?;
            Some(Decoration::from_name(&name.to_ascii_lowercase()).ok_or_else(|| err("unknown decoration"))?)
        }
    };
    let lower = inner.to_ascii_lowercase();
    let interval = match lower.as_str() {
        "nai" => {
            return match dec {
                None | Some(Decoration::Ill) => Ok(DecoratedInterval::nai(format)),
                Some(_) => Err(err("nai carries no decoration but ill")),
            }
        }
        "" | "empty" => Interval::empty(format),
        "entire" => Interval::entire(format),
        _ => {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            let (lo, hi) = match parts.as_slice() {
                [x] => (*x, *x),
                [lo, hi] => (*lo, *hi),
                _ => return Err(err("expected one or two endpoints")),
            };
            let l = parse_number(lo, format, RoundingDirection::Down)?;
            let h = parse_number(hi, format, RoundingDirection::Up)?;
            Interval::new(&l, &h, format)?
        }
    };
    match dec {
        None => Ok(DecoratedInterval::from_bare(interval)),
        Some(Decoration::Ill) if interval.is_empty() => Ok(DecoratedInterval::nai(format)),
        Some(d) => DecoratedInterval::new(interval, d),
    }
}

/// `[empty]`, `[entire]`, `[lo, hi]` with exact hexadecimal endpoints,
/// then `_dec` when decorated; NaI prints as `[nai]`.
pub fn format_interval(x: &DecoratedInterval) -> String {
    if x.is_nai() {
        return "[nai]".to_string();
    }
    let i = x.interval();
    let body = match i.bounds() {
        None => "[empty]".to_string(),
        Some(_) if i.is_entire() => "[entire]".to_string(),
        Some((l, h)) => format!("[{}, {}]", format_hex_lossy(l), format_hex_lossy(h)),
    };
    if x.has_dec() {
        format!("{body}_{}", x.dec())
    } else {
        body
    }
}
