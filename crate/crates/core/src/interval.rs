//! Plain closed intervals on the real line.
//!
//! Sums and differences of unit intervals leave `[0, 1]`, so the oracle
//! arithmetic used to check the BUI operators works on unbounded intervals.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lower: f64,
    upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidInterval {
                lower,
                upper,
                reason: "bounds must be finite",
            });
        }
        if lower > upper {
            return Err(Error::InvalidInterval {
                lower,
                upper,
                reason: "lower bound exceeds upper bound",
            });
        }
        Ok(Self { lower, upper })
    }

    pub fn point(value: f64) -> Result<Self> {
        Self::new(value, value)
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

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    /// True when both bounds lie in `[0, 1]`.
    pub fn within_unit(&self) -> bool {
        self.lower >= 0.0 && self.upper <= 1.0
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lower: self.lower + rhs.lower,
            upper: self.upper + rhs.upper,
        }
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lower: self.lower - rhs.upper,
            upper: self.upper - rhs.lower,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}
