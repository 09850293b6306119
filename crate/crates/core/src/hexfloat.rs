//! Exact textual encoding of [`BigFloat`] values.
//!
//! The canonical form is `[-]0xH.HHH@E`: hexadecimal significand digits with
//! one nonzero digit before the point, scaled by `16^E` where `E` is written
//! in decimal. The parser also accepts C-style `0x1.8p3` literals, decimal
//! literals, and `inf`/`nan` spellings.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Num, One, Zero};
use thiserror::Error;

use crate::bigfloat::{BigFloat, Class, Format, RoundingDirection, Unrounded};

/// Decimal exponents beyond this magnitude are rejected rather than
/// expanded into enormous powers of ten.
const MAX_DECIMAL_EXPONENT: i64 = 1_000_000;

/// Binary exponents beyond this magnitude are rejected.
const MAX_BINARY_EXPONENT: i64 = 1 << 42;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed number {text:?} at byte {position}: {message}")]
    Syntax { text: String, position: usize, message: String },
    #[error("{text:?} is not representable with {precision} bits")]
    NotRepresentable { text: String, precision: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("nan has no hexadecimal endpoint encoding")]
pub struct FormatError;

/// Parses `text` into `target`, rounding inexact literals in `dir`.
pub fn parse_number(text: &str, target: Format, dir: RoundingDirection) -> Result<BigFloat, ParseError> {
    Ok(match parse_literal(text)? {
        Literal::Special(class) => special(class, target),
        Literal::Value(u) => u.round(target, dir),
    })
}

/// Parses `text`, failing unless it is exactly representable in `target`.
pub fn parse_number_exact(text: &str, target: Format) -> Result<BigFloat, ParseError> {
    match parse_literal(text)? {
        Literal::Special(class) => Ok(special(class, target)),
        Literal::Value(u) => {
            let down = u.clone().round(target, RoundingDirection::Down);
            let up = u.round(target, RoundingDirection::Up);
            if down == up {
                Ok(down)
            } else {
                Err(ParseError::NotRepresentable { text: text.to_string(), precision: target.precision() })
            }
        }
    }
}

fn special(class: Class, target: Format) -> BigFloat {
    match class {
        Class::PosInf => BigFloat::pos_infinity(target),
        Class::NegInf => BigFloat::neg_infinity(target),
        Class::Nan => BigFloat::nan(target),
        _ => BigFloat::zero(target),
    }
}

enum Literal {
    Special(Class),
    Value(Unrounded),
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek().map(|b| b.to_ascii_lowercase()) == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self, radix: u32) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|b| (b as char).is_digit(radix)) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            text: self.text.to_string(),
            position: self.offset + self.pos,
            message: message.to_string(),
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let start = self.pos;
        let digits = self.digits(10);
        if digits.is_empty() {
            return Err(self.error("expected exponent digits"));
        }
        let v: i64 = digits.parse().map_err(|_| {
            ParseError::Syntax {
                text: self.text.to_string(),
                position: self.offset + start,
                message: "exponent too large".to_string(),
            }
        })?;
        Ok(if neg { -v } else { v })
    }
}

fn parse_literal(text: &str) -> Result<Literal, ParseError> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    let trimmed = trimmed.trim_end();
    let mut c = Cursor { text: trimmed, bytes: trimmed.as_bytes(), pos: 0, offset };
    if trimmed.is_empty() {
        return Err(c.error("empty number"));
    }
    let neg = if c.eat(b'-') {
        true
    } else {
        c.eat(b'+');
        false
    };
    let rest = &trimmed[c.pos..];
    let lower = rest.to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" {
        return Ok(Literal::Special(if neg { Class::NegInf } else { Class::PosInf }));
    }
    if lower == "nan" {
        return Ok(Literal::Special(Class::Nan));
    }
    let value = if lower.starts_with("0x") {
        c.pos += 2;
        parse_hex_body(&mut c, neg)?
    } else {
        parse_decimal_body(&mut c, neg)?
    };
    if c.pos != c.bytes.len() {
        return Err(c.error("unexpected trailing characters"));
    }
    Ok(Literal::Value(value))
}

fn parse_hex_body(c: &mut Cursor<'_>, neg: bool) -> Result<Unrounded, ParseError> {
    let int_digits = c.digits(16);
    let frac_digits = if c.eat(b'.') { c.digits(16) } else { "" };
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(c.error("expected hexadecimal digits"));
    }
    let mut exp2: i64 = -4 * frac_digits.len() as i64;
    if c.eat(b'@') {
        let e = c.exponent()?;
        exp2 = e
            .checked_mul(4)
            .and_then(|v| v.checked_add(exp2))
            .filter(|v| v.abs() <= MAX_BINARY_EXPONENT)
            .ok_or_else(|| c.error("exponent out of range"))?;
    } else if c.eat(b'p') {
        let e = c.exponent()?;
        exp2 = e
            .checked_add(exp2)
            .filter(|v| v.abs() <= MAX_BINARY_EXPONENT)
            .ok_or_else(|| c.error("exponent out of range"))?;
    }
    let digits = format!("{int_digits}{frac_digits}");
    let mant = BigUint::from_str_radix(&digits, 16).expect("validated hex digits");
    Ok(Unrounded::exact(neg, mant, exp2))
}

fn parse_decimal_body(c: &mut Cursor<'_>, neg: bool) -> Result<Unrounded, ParseError> {
    let int_digits = c.digits(10);
    let frac_digits = if c.eat(b'.') { c.digits(10) } else { "" };
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(c.error("expected digits"));
    }
    let mut exp10: i64 = -(frac_digits.len() as i64);
    if c.eat(b'e') {
        exp10 += c.exponent()?;
    }
    if exp10.abs() > MAX_DECIMAL_EXPONENT {
        return Err(c.error("decimal exponent out of range"));
    }
    let digits = format!("{int_digits}{frac_digits}");
    let mant: BigUint = digits.parse().expect("validated decimal digits");
    if mant.is_zero() {
        return Ok(Unrounded::exact(neg, mant, 0));
    }
    if exp10 >= 0 {
        let scaled = mant * BigUint::from(10u32).pow(exp10 as u32);
        return Ok(Unrounded::exact(neg, scaled, 0));
    }
    // mant / 10^k = mant / 5^k * 2^-k; keep enough quotient bits for any
    // format up to the precision cap of the working formats.
    let k = (-exp10) as u32;
    let five_k = BigUint::from(5u32).pow(k);
    let shift = (five_k.bits() as i64 - mant.bits() as i64).max(0) as u64 + 4096;
    let (q, r) = (mant << shift).div_rem(&five_k);
    if r.is_zero() {
        return Ok(Unrounded::exact(neg, q, -(k as i64) - shift as i64));
    }
    Ok(Unrounded { neg, mant: q, exp: -(k as i64) - shift as i64, sticky: true })
}

/// Canonical `@`-form of a non-nan value.
pub fn format_hex(x: &BigFloat) -> Result<String, FormatError> {
    match x.class() {
        Class::Nan => Err(FormatError),
        Class::PosInf => Ok("inf".to_string()),
        Class::NegInf => Ok("-inf".to_string()),
        Class::Zero => Ok("0x0@0".to_string()),
        Class::Finite => Ok(format_finite(x)),
    }
}

/// Like [`format_hex`] but renders nan as `nan`.
pub fn format_hex_lossy(x: &BigFloat) -> String {
    format_hex(x).unwrap_or_else(|_| "nan".to_string())
}

fn format_finite(x: &BigFloat) -> String {
    let mant = x.significand().unwrap();
    let qexp = x.quantum_exponent().unwrap();
    let lead = x.exponent().unwrap();
    let e16 = lead.div_euclid(4);
    // value = mant * 2^(qexp - 4*e16), in [1, 16)
    let s = qexp - 4 * e16;
    let (int_part, frac) = if s >= 0 {
        ((mant << s as u64), String::new())
    } else {
        let frac_digits = (-s + 3) / 4;
        let scaled = mant << (4 * frac_digits + s) as u64;
        let unit = BigUint::one() << (4 * frac_digits) as u64;
        let (int_part, frac_part) = scaled.div_rem(&unit);
        let mut frac = format!("{:0width$x}", frac_part, width = frac_digits as usize);
        while frac.ends_with('0') {
            frac.pop();
        }
        (int_part, frac)
    };
    let sign = if x.is_negative() { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}0x{int_part:x}@{e16}")
    } else {
        format!("{sign}0x{int_part:x}.{frac}@{e16}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn wide(p: u32) -> Format {
        Format::wide(p)
    }

    #[test]
    fn paper_endpoint_parses_exactly() {
        let x = parse_number_exact("-0xf.fe1e00@-1", wide(23)).unwrap();
        // 0xffe1e00 / 16^6 / 16 = 0xffe1e / 2^20
        let expected = BigFloat::from_parts(true, BigUint::from(0xffe1eu32), -20, wide(23), RoundingDirection::Down);
        assert_eq!(x, expected);
        assert_eq!(x.to_f64(), -(0xffe1e as f64) / 1048576.0);
        assert_eq!(format_hex(&x).unwrap(), "-0xf.fe1e@-1");
    }

    #[test]
    fn simple_literals() {
        let f = Format::binary64();
        assert_eq!(parse_number("0x1.8@0", f, RoundingDirection::Down).unwrap().to_f64(), 1.5);
        assert_eq!(parse_number("0x1.8p1", f, RoundingDirection::Down).unwrap().to_f64(), 3.0);
        assert_eq!(parse_number("0X1.8P1", f, RoundingDirection::Down).unwrap().to_f64(), 3.0);
        assert_eq!(parse_number("0x1@1", f, RoundingDirection::Down).unwrap().to_f64(), 16.0);
        assert!(parse_number("inf", f, RoundingDirection::Down).unwrap().is_pos_infinity());
        assert!(parse_number("-INF", f, RoundingDirection::Down).unwrap().is_neg_infinity());
        assert!(parse_number("+infinity", f, RoundingDirection::Down).unwrap().is_pos_infinity());
        assert!(parse_number("nan", f, RoundingDirection::Down).unwrap().is_nan());
        assert!(parse_number("-0x0@0", f, RoundingDirection::Down).unwrap().is_zero());
        assert_eq!(parse_number("-2.5e-1", f, RoundingDirection::Down).unwrap().to_f64(), -0.25);
        assert_eq!(parse_number("1e3", f, RoundingDirection::Up).unwrap().to_f64(), 1000.0);
    }

    #[test]
    fn decimal_rounds_directed() {
        let f = Format::binary64();
        let lo = parse_number("0.1", f, RoundingDirection::Down).unwrap();
        let hi = parse_number("0.1", f, RoundingDirection::Up).unwrap();
        assert_eq!(lo.to_f64(), 0.09999999999999999);
        assert_eq!(hi.to_f64(), 0.1);
        assert_eq!(lo.next_up().unwrap(), hi);
        assert!(parse_number_exact("0.1", f).is_err());
        assert!(parse_number_exact("0.5", f).is_ok());
    }

    #[test]
    fn formatting() {
        let f = Format::binary64();
        let v = |x: f64| BigFloat::from_f64(x, f, RoundingDirection::NearestEven);
        assert_eq!(format_hex(&v(1.5)).unwrap(), "0x1.8@0");
        assert_eq!(format_hex(&v(16.0)).unwrap(), "0x1@1");
        assert_eq!(format_hex(&v(1.0)).unwrap(), "0x1@0");
        assert_eq!(format_hex(&v(0.0)).unwrap(), "0x0@0");
        assert_eq!(format_hex(&v(-0.0625)).unwrap(), "-0x1@-1");
        assert_eq!(format_hex(&v(f64::INFINITY)).unwrap(), "inf");
        assert_eq!(format_hex(&v(f64::NEG_INFINITY)).unwrap(), "-inf");
        assert!(format_hex(&BigFloat::nan(f)).is_err());
        assert_eq!(format_hex(&v(f64::from_bits(1))).unwrap(), "0x4@-269");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let f = Format::binary64();
        match parse_number("0x1.8@", f, RoundingDirection::Down) {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_number("  1.5x", f, RoundingDirection::Down) {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_number("", f, RoundingDirection::Down).is_err());
        assert!(parse_number("0x", f, RoundingDirection::Down).is_err());
        assert!(parse_number("abc", f, RoundingDirection::Down).is_err());
        assert!(parse_number("1e99999999", f, RoundingDirection::Down).is_err());
    }

    #[test]
    fn not_representable_hex() {
        let err = parse_number_exact("0x1.001@0", Format::wide(8)).unwrap_err();
        assert!(matches!(err, ParseError::NotRepresentable { precision: 8, .. }));
    }

    fn arb_bigfloat(p: u32) -> impl Strategy<Value = BigFloat> {
        let fmt = if p == 53 { Format::binary64() } else if p == 24 { Format::binary32() } else { Format::wide(p) };
        let (emin, emax) = (fmt.emin(), fmt.emax());
        (any::<bool>(), prop::collection::vec(any::<u64>(), 2), emin - p as i64..=emax)
            .prop_map(move |(neg, words, lead)| {
                let mut m = BigUint::from(words[0]) << 64u32 | BigUint::from(words[1]);
                m |= BigUint::one() << 127u32;
                BigFloat::from_parts(neg, m, lead - 127, fmt, RoundingDirection::NearestEven)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]
        #[test]
        fn round_trip_is_bit_exact(x in prop_oneof![arb_bigfloat(23), arb_bigfloat(24), arb_bigfloat(53), arb_bigfloat(113)]) {
            let text = format_hex(&x).unwrap();
            let back = parse_number_exact(&text, x.format()).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(back.significand(), x.significand());
            prop_assert_eq!(back.quantum_exponent(), x.quantum_exponent());
            prop_assert_eq!(format_hex(&back).unwrap(), text);
        }
    }
}
