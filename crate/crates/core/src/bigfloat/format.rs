use std::fmt;

use super::BigFloatError;

/// Largest exponent magnitude accepted for user-facing formats.
pub const MAX_FORMAT_EXPONENT: i64 = 1 << 30;

/// Exponent bound of the `wide(p)` preset.
pub const WIDE_EXPONENT: i64 = 1 << 20;

/// Exponent bound of internal working formats. Strictly larger than any
/// user format so that intermediate enclosures never saturate before the
/// final rounding does.
pub(crate) const WORKING_EXPONENT: i64 = 1 << 40;

/// A binary floating-point format: significand width and exponent range.
///
/// `emin`/`emax` bound the exponent of the leading significand bit, so the
/// largest finite value is `(2 - 2^(1-p)) * 2^emax` and the smallest normal
/// value is `2^emin`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Format {
    precision: u32,
    emin: i64,
    emax: i64,
    subnormals: bool,
}

impl Format {
    pub fn new(precision: u32, emin: i64, emax: i64, subnormals: bool) -> Result<Self, BigFloatError> {
        if precision < 2 {
            return Err(BigFloatError::InvalidFormat(format!("precision {precision} < 2")));
        }
        if emin >= emax {
            return Err(BigFloatError::InvalidFormat(format!("emin {emin} >= emax {emax}")));
        }
        if emin < -MAX_FORMAT_EXPONENT || emax > MAX_FORMAT_EXPONENT {
            return Err(BigFloatError::ExponentRange(format!(
                "exponent range [{emin}, {emax}] exceeds +/-2^30"
            )));
        }
        Ok(Format { precision, emin, emax, subnormals })
    }

    pub const fn binary64() -> Self {
        Format { precision: 53, emin: -1022, emax: 1023, subnormals: true }
    }

    pub const fn binary32() -> Self {
        Format { precision: 24, emin: -126, emax: 127, subnormals: true }
    }

    /// Arbitrary precision with a huge exponent range and no subnormals.
    ///
    /// Panics if `precision < 2`.
    pub fn wide(precision: u32) -> Self {
        assert!(precision >= 2, "precision must be at least 2");
        Format { precision, emin: -WIDE_EXPONENT, emax: WIDE_EXPONENT, subnormals: false }
    }

    pub(crate) fn working(precision: u32) -> Self {
        Format {
            precision: precision.max(2),
            emin: -WORKING_EXPONENT,
            emax: WORKING_EXPONENT,
            subnormals: false,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn emin(&self) -> i64 {
        self.emin
    }

    pub fn emax(&self) -> i64 {
        self.emax
    }

    pub fn subnormals(&self) -> bool {
        self.subnormals
    }

    /// Same exponent range, different significand width.
    pub fn with_precision(&self, precision: u32) -> Self {
        Format { precision: precision.max(2), ..*self }
    }

    /// Exponent of the least significant bit of a normal number whose
    /// leading bit has exponent `lead`.
    pub(crate) fn quantum_for(&self, lead: i64) -> i64 {
        lead.max(self.emin) - self.precision as i64 + 1
    }
}

impl fmt::Debug for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::binary64() {
            write!(f, "binary64")
        } else if *self == Self::binary32() {
            write!(f, "binary32")
        } else if self.emin == -WIDE_EXPONENT && self.emax == WIDE_EXPONENT && !self.subnormals {
            write!(f, "wide({})", self.precision)
        } else {
            write!(
                f,
                "Format(p={}, emin={}, emax={}, subnormals={})",
                self.precision, self.emin, self.emax, self.subnormals
            )
        }
    }
}

/// Rounding attribute for every inexact operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoundingDirection {
    Down,
    Up,
    NearestEven,
    TowardZero,
}

impl RoundingDirection {
    pub fn opposite(self) -> Self {
        match self {
            RoundingDirection::Down => RoundingDirection::Up,
            RoundingDirection::Up => RoundingDirection::Down,
            other => other,
        }
    }
}
