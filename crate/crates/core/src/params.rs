use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which loss-side weight transform the value function uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Losses weighted by `w^(−β)`, as the dominance step is usually stated.
    #[default]
    Paper,
    /// Losses weighted by `w^β`, so every transform is nondecreasing.
    Consistent,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Paper => "paper",
            Profile::Consistent => "consistent",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Profile::Paper),
            "consistent" => Ok(Profile::Consistent),
            other => Err(Error::Parse(format!(
                "unknown profile `{other}` (expected paper or consistent)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Benefit,
    Cost,
}

/// Curvature, weight exponent, loss attenuation and profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TodimParams {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub profile: Profile,
}

impl Default for TodimParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            theta: 1.0,
            profile: Profile::Paper,
        }
    }
}

impl TodimParams {
    pub fn new(alpha: f64, beta: f64, theta: f64, profile: Profile) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            theta,
            profile,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            problems.push(format!("alpha must be > 0, got {}", self.alpha));
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            problems.push(format!("beta must be > 0, got {}", self.beta));
        }
        if !(self.theta.is_finite() && self.theta >= 1.0) {
            problems.push(format!("theta must be >= 1, got {}", self.theta));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(problems.join("; ")))
        }
    }
}

pub type Transform = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The four transforms of the generalized value function: gains are worth
/// `g1(w)·f1(d)`, losses `−g2(w)·f2(d)/θ`.
#[derive(Clone)]
pub struct ValueFunctions {
    f1: Transform,
    f2: Transform,
    g1: Transform,
    g2: Transform,
}

impl fmt::Debug for ValueFunctions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValueFunctions").finish_non_exhaustive()
    }
}

impl ValueFunctions {
    /// Power transforms: `f1 = f2 = d^α`, `g1 = w^β`, and `g2 = w^(−β)` or
    /// `w^β` depending on the profile.
    pub fn from_params(params: &TodimParams) -> Self {
        let alpha = params.alpha;
        let beta = params.beta;
        let power: Transform = Arc::new(move |d: f64| d.powf(alpha));
        let g1: Transform = Arc::new(move |w: f64| w.powf(beta));
        let g2: Transform = match params.profile {
            Profile::Paper => Arc::new(move |w: f64| w.powf(-beta)),
            Profile::Consistent => g1.clone(),
        };
        Self {
            f1: power.clone(),
            f2: power,
            g1,
            g2,
        }
    }

    /// Arbitrary transforms. `f1` and `f2` must fix 0 and 1.
    pub fn custom(f1: Transform, f2: Transform, g1: Transform, g2: Transform) -> Result<Self> {
        for (name, f) in [("f1", &f1), ("f2", &f2)] {
            if f(0.0).abs() > 1e-12 || (f(1.0) - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParams(format!(
                    "{name} must map 0 to 0 and 1 to 1"
                )));
            }
        }
        Ok(Self { f1, f2, g1, g2 })
    }

    pub fn f1(&self, d: f64) -> f64 {
        (self.f1)(d)
    }

    pub fn f2(&self, d: f64) -> f64 {
        (self.f2)(d)
    }

    pub fn g1(&self, w: f64) -> f64 {
        (self.g1)(w)
    }

    pub fn g2(&self, w: f64) -> f64 {
        (self.g2)(w)
    }

    /// Samples all four transforms on a grid over `(0, 1]` and reports
    /// whether each is nondecreasing there.
    pub fn all_nondecreasing(&self) -> bool {
        [&self.f1, &self.f2, &self.g1, &self.g2].iter().all(|f| {
            (1..=200)
                .map(|i| f(i as f64 / 200.0))
                .collect::<Vec<_>>()
                .windows(2)
                .all(|w| w[1] >= w[0] - 1e-12)
        })
    }
}
