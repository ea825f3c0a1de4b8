//! Basic uncertain information values and their interval algebra.
//!
//! A BUI value `<x;c>` pairs a datum `x` with a certainty degree `c`. Each
//! value with `c > 0` corresponds to exactly one closed subinterval of
//! `[0, 1]`, namely `[c·x, c·x + 1 − c]`; the width `1 − c` measures how
//! uncertain the datum is. Addition and subtraction are defined by carrying
//! both operands over to intervals, combining them with interval arithmetic
//! and reading the result back as a BUI value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// A `<datum; certainty>` pair with both components in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBui")]
pub struct Bui {
    #[serde(rename = "x")]
    datum: f64,
    #[serde(rename = "c")]
    certainty: f64,
}

#[derive(Deserialize)]
struct RawBui {
    x: f64,
    c: f64,
}

impl TryFrom<RawBui> for Bui {
    type Error = Error;

    fn try_from(raw: RawBui) -> Result<Self> {
        Bui::new(raw.x, raw.c)
    }
}

fn in_unit(v: f64) -> bool {
    (0.0..=1.0).contains(&v)
}

impl Bui {
    pub fn new(datum: f64, certainty: f64) -> Result<Self> {
        if in_unit(datum) && in_unit(certainty) {
            Ok(Self { datum, certainty })
        } else {
            Err(Error::InvalidBui { datum, certainty })
        }
    }

    /// A fully certain value, i.e. a point of `[0, 1]`.
    pub fn certain(datum: f64) -> Result<Self> {
        Self::new(datum, 1.0)
    }

    pub fn datum(&self) -> f64 {
        self.datum
    }

    pub fn certainty(&self) -> f64 {
        self.certainty
    }

    pub fn to_interval(self) -> UnitInterval {
        to_interval(self)
    }

    /// Datum complement `1 − x`, used for cost criteria.
    pub fn complement(self) -> Bui {
        Bui {
            datum: 1.0 - self.datum,
            certainty: self.certainty,
        }
    }
}

impl From<Bui> for ExtendedBui {
    fn from(b: Bui) -> Self {
        ExtendedBui {
            datum: b.datum,
            certainty: b.certainty,
            degenerate: false,
        }
    }
}

/// Formats a number with at most six decimals and no trailing zeros.
pub(crate) fn fmt_short(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

impl fmt::Display for Bui {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{};{}>",
            fmt_short(self.datum),
            fmt_short(self.certainty)
        )
    }
}

/// Splits `<x;c>` or `x;c` into its two numbers without range checks.
pub(crate) fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let trimmed = s.trim();
    let inner = match (trimmed.strip_prefix('<'), trimmed.ends_with('>')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => trimmed,
        _ => return Err(Error::Parse(format!("unbalanced brackets in BUI `{s}`"))),
    };
    let mut parts = inner.split(';');
    let (x, c) = match (parts.next(), parts.next(), parts.next()) {
        (Some(x), Some(c), None) => (x.trim(), c.trim()),
        _ => return Err(Error::Parse(format!("expected `<x;c>`, got `{s}`"))),
    };
    let parse = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| Error::Parse(format!("`{t}` is not a number in BUI `{s}`")))
    };
    Ok((parse(x)?, parse(c)?))
}

impl FromStr for Bui {
    type Err = Error;

    /// Accepts `<x;c>` or plain `x;c`, with optional whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let (x, c) = parse_pair(s)?;
        Bui::new(x, c)
    }
}

/// Closed subinterval `[lower, upper]` of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitInterval {
    lower: f64,
    upper: f64,
}

impl UnitInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) {
            return Err(Error::InvalidInterval {
                lower,
                upper,
                reason: "bounds must be finite",
            });
        }
        if !(0.0 <= lower && lower <= upper && upper <= 1.0) {
            return Err(Error::InvalidInterval {
                lower,
                upper,
                reason: "need 0 <= lower <= upper <= 1",
            });
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

impl From<UnitInterval> for Interval {
    fn from(u: UnitInterval) -> Self {
        Interval::new(u.lower, u.upper).expect("unit interval is a valid interval")
    }
}

impl TryFrom<Interval> for UnitInterval {
    type Error = Error;

    fn try_from(i: Interval) -> Result<Self> {
        UnitInterval::new(i.lower(), i.upper())
    }
}

/// Signed-datum BUI value produced by the arithmetic operators.
///
/// The datum may be negative or exceed one. `degenerate` is set when the
/// combined certainty was exactly zero and the datum could not be divided
/// out; consumers should read such a value as fully uncertain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtendedBui {
    #[serde(rename = "x")]
    datum: f64,
    #[serde(rename = "c")]
    certainty: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    degenerate: bool,
}

impl ExtendedBui {
    pub fn new(datum: f64, certainty: f64) -> Result<Self> {
        if !datum.is_finite() {
            return Err(Error::InvalidExtended(format!(
                "datum {datum} is not finite"
            )));
        }
        if !in_unit(certainty) {
            return Err(Error::InvalidExtended(format!(
                "certainty {certainty} outside [0, 1]"
            )));
        }
        Ok(Self {
            datum,
            certainty,
            degenerate: false,
        })
    }

    /// `<0; 1>`, the self-comparison value.
    pub const fn zero() -> Self {
        Self {
            datum: 0.0,
            certainty: 1.0,
            degenerate: false,
        }
    }

    pub(crate) fn raw(datum: f64, certainty: f64) -> Self {
        debug_assert!(in_unit(certainty));
        Self {
            datum,
            certainty,
            degenerate: false,
        }
    }

    pub fn datum(&self) -> f64 {
        self.datum
    }

    /// Absolute value of the datum.
    pub fn abs_datum(&self) -> f64 {
        self.datum.abs()
    }

    pub fn certainty(&self) -> f64 {
        self.certainty
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The value with the datum replaced by its absolute value.
    pub fn absolute(self) -> ExtendedBui {
        ExtendedBui {
            datum: self.datum.abs(),
            ..self
        }
    }
}

impl fmt::Display for ExtendedBui {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{};{}>",
            fmt_short(self.datum),
            fmt_short(self.certainty)
        )
    }
}

/// `<x;c>` ↦ `[c·x, c·x + 1 − c]`.
pub fn to_interval(a: Bui) -> UnitInterval {
    let lower = a.certainty * a.datum;
    let upper = (lower + (1.0 - a.certainty)).min(1.0);
    UnitInterval { lower, upper }
}

/// `[a, b]` ↦ `<a / (1 − b + a); 1 − b + a>`, with `0/0 = 1`.
pub fn from_interval(i: UnitInterval) -> Bui {
    let certainty = (1.0 - i.upper + i.lower).clamp(0.0, 1.0);
    let datum = if certainty == 0.0 {
        // only [0, 1] has zero certainty
        1.0
    } else {
        (i.lower / certainty).clamp(0.0, 1.0)
    };
    Bui { datum, certainty }
}

fn combine(numerator: f64, a: Bui, b: Bui) -> ExtendedBui {
    let certainty = (a.certainty + b.certainty - 1.0).abs();
    if certainty == 0.0 {
        ExtendedBui {
            datum: numerator,
            certainty,
            degenerate: true,
        }
    } else {
        ExtendedBui {
            datum: numerator / certainty,
            certainty,
            degenerate: false,
        }
    }
}

/// `A ⊕ B = <(c₁x₁ + c₂x₂) / |c₁ + c₂ − 1|; |c₁ + c₂ − 1|>`.
pub fn bui_add(a: Bui, b: Bui) -> ExtendedBui {
    combine(a.certainty * a.datum + b.certainty * b.datum, a, b)
}

/// `A ⊖ B` with the signed datum `(c₁x₁ − c₂x₂ + c₂ − 1) / |c₁ + c₂ − 1|`.
///
/// The datum times the certainty is the lower bound of the interval
/// difference `φ(A) − φ(B)`. Use [`ExtendedBui::abs_datum`] for the
/// absolute-valued form.
pub fn bui_sub(a: Bui, b: Bui) -> ExtendedBui {
    combine(
        a.certainty * a.datum - b.certainty * b.datum + b.certainty - 1.0,
        a,
        b,
    )
}

/// Result of forcing an extended value back into a [`Bui`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Clamped {
    pub value: Bui,
    pub saturated: bool,
}

pub fn clamp_to_bui(e: ExtendedBui) -> Clamped {
    let datum = e.datum.clamp(0.0, 1.0);
    Clamped {
        value: Bui {
            datum,
            certainty: e.certainty,
        },
        saturated: datum != e.datum,
    }
}
