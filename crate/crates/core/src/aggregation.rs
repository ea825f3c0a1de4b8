//! Aggregation functions on `[0, 1]^m` and their lift to BUI inputs.
//!
//! The lift keeps the base function for the data and derives the output
//! certainty from the interval images of the inputs:
//! `c = 1 − A(1 − cᵢ + cᵢxᵢ) + A(cᵢxᵢ)`. For weighted means this collapses
//! to `Σ wᵢcᵢ`.

use serde::{Deserialize, Serialize};

use crate::bui::Bui;
use crate::error::{Error, Result};

/// Tolerance on `Σ w = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if let Some((k, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::InvalidWeights(format!(
                "weight {k} is {w}, must be a finite nonnegative number"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self(weights))
    }

    /// Rescales nonnegative raw weights so they sum to one.
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        if raw.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(
                "raw weights must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidWeights("raw weights sum to zero".into()));
        }
        Self::new(raw.into_iter().map(|w| w / sum).collect())
    }

    pub fn uniform(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        Ok(Self(vec![1.0 / len as f64; len]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, k: usize) -> f64 {
        self.0[k]
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

/// A monotone map `[0, 1]^m → [0, 1]` sending all-zeros to 0 and
/// all-ones to 1.
pub trait AggregationFunction {
    fn arity(&self) -> usize;

    /// Evaluates on inputs already known to have the right length and lie
    /// in `[0, 1]`.
    fn apply_unchecked(&self, xs: &[f64]) -> f64;
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseAggregation {
    ArithmeticMean { arity: usize },
    WeightedMean(WeightVector),
}

impl BaseAggregation {
    pub fn mean(arity: usize) -> Self {
        BaseAggregation::ArithmeticMean { arity }
    }

    pub fn weighted(weights: WeightVector) -> Self {
        BaseAggregation::WeightedMean(weights)
    }
}

impl AggregationFunction for BaseAggregation {
    fn arity(&self) -> usize {
        match self {
            BaseAggregation::ArithmeticMean { arity } => *arity,
            BaseAggregation::WeightedMean(w) => w.len(),
        }
    }

    fn apply_unchecked(&self, xs: &[f64]) -> f64 {
        match self {
            BaseAggregation::ArithmeticMean { arity } => {
                xs.iter().fold(0.0, |acc, x| acc + x) / *arity as f64
            }
            BaseAggregation::WeightedMean(w) => w
                .as_slice()
                .iter()
                .zip(xs)
                .fold(0.0, |acc, (w, x)| acc + w * x),
        }
    }
}

fn check_arity(agg: &(impl AggregationFunction + ?Sized), found: usize) -> Result<()> {
    let expected = agg.arity();
    if expected == 0 {
        return Err(Error::Empty("aggregation of arity zero"));
    }
    if expected != found {
        return Err(Error::ArityMismatch { expected, found });
    }
    Ok(())
}

pub fn base_apply(agg: &(impl AggregationFunction + ?Sized), xs: &[f64]) -> Result<f64> {
    check_arity(agg, xs.len())?;
    if let Some((position, &value)) = xs
        .iter()
        .enumerate()
        .find(|(_, x)| !(0.0..=1.0).contains(*x))
    {
        return Err(Error::OutOfDomain { position, value });
    }
    Ok(agg.apply_unchecked(xs))
}

/// Output certainty of the lifted aggregation,
/// `1 − A(1 − cᵢ + cᵢxᵢ) + A(cᵢxᵢ)`.
pub fn certainty_transform(
    agg: &(impl AggregationFunction + ?Sized),
    pairs: &[Bui],
) -> Result<f64> {
    check_arity(agg, pairs.len())?;
    let lowers: Vec<f64> = pairs.iter().map(|b| b.certainty() * b.datum()).collect();
    let uppers: Vec<f64> = pairs
        .iter()
        .zip(&lowers)
        .map(|(b, lo)| (1.0 - b.certainty() + lo).min(1.0))
        .collect();
    let c = 1.0 - agg.apply_unchecked(&uppers) + agg.apply_unchecked(&lowers);
    Ok(c.clamp(0.0, 1.0))
}

/// Lifts a base aggregation to BUI inputs: data through the base, certainty
/// through [`certainty_transform`].
pub fn bui_lift(agg: &(impl AggregationFunction + ?Sized), pairs: &[Bui]) -> Result<Bui> {
    let data: Vec<f64> = pairs.iter().map(Bui::datum).collect();
    let datum = base_apply(agg, &data)?.clamp(0.0, 1.0);
    let certainty = certainty_transform(agg, pairs)?;
    Bui::new(datum, certainty)
}

/// Equal-weight lift over all inputs.
pub fn arithmetic_bui_mean(pairs: &[Bui]) -> Result<Bui> {
    if pairs.is_empty() {
        return Err(Error::Empty("arithmetic BUI mean of nothing"));
    }
    bui_lift(&BaseAggregation::mean(pairs.len()), pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bui(x: f64, c: f64) -> Bui {
        Bui::new(x, c).unwrap()
    }

    fn w(v: &[f64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![1.2, -0.2]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
        assert!(WeightVector::new(vec![0.2453, 0.2571, 0.2523, 0.2453]).is_ok());
        let n = WeightVector::normalized(vec![2.0, 6.0]).unwrap();
        assert_eq!(n.as_slice(), &[0.25, 0.75]);
        assert!(WeightVector::normalized(vec![0.0, 0.0]).is_err());
        assert!(serde_json::from_str::<WeightVector>("[0.5, 0.4]").is_err());
    }

    #[test]
    fn base_examples() {
        assert_eq!(
            base_apply(&BaseAggregation::mean(2), &[0.2, 0.8]).unwrap(),
            0.5
        );
        let r = base_apply(&BaseAggregation::weighted(w(&[0.3, 0.7])), &[0.2, 0.8]).unwrap();
        assert!((r - 0.62).abs() < 1e-12);
        assert_eq!(
            base_apply(&BaseAggregation::mean(4), &[0.0; 4]).unwrap(),
            0.0
        );
        assert_eq!(
            base_apply(&BaseAggregation::mean(4), &[1.0; 4]).unwrap(),
            1.0
        );
    }

    #[test]
    fn base_errors() {
        assert!(matches!(
            base_apply(&BaseAggregation::mean(3), &[0.2, 0.8]),
            Err(Error::ArityMismatch {
                expected: 3,
                found: 2
            })
        ));
        assert!(matches!(
            base_apply(&BaseAggregation::mean(2), &[0.2, 1.8]),
            Err(Error::OutOfDomain { position: 1, .. })
        ));
        assert!(certainty_transform(&BaseAggregation::mean(1), &[bui(0.1, 0.1); 2]).is_err());
    }

    #[test]
    fn certainty_transform_examples() {
        let agg = BaseAggregation::mean(3);
        let zeros = [bui(0.2, 0.0), bui(0.9, 0.0), bui(0.5, 0.0)];
        assert_eq!(certainty_transform(&agg, &zeros).unwrap(), 0.0);
        let ones = [bui(0.2, 1.0), bui(0.9, 1.0), bui(0.5, 1.0)];
        assert!((certainty_transform(&agg, &ones).unwrap() - 1.0).abs() < 1e-12);

        // 1 − mean(0.6, 0.82) + mean(0.1, 0.72)
        let c = certainty_transform(&BaseAggregation::mean(2), &[bui(0.2, 0.5), bui(0.8, 0.9)])
            .unwrap();
        assert!((c - (1.0 - 0.71 + 0.41)).abs() < 1e-12);
        assert!((c - 0.7).abs() < 1e-12);
    }

    #[test]
    fn lift_examples() {
        let same = [bui(0.37, 0.61); 4];
        let r = bui_lift(&BaseAggregation::mean(4), &same).unwrap();
        assert!((r.datum() - 0.37).abs() < 1e-12 && (r.certainty() - 0.61).abs() < 1e-12);

        let r = bui_lift(
            &BaseAggregation::weighted(w(&[0.3, 0.7])),
            &[bui(0.2, 0.5), bui(0.8, 0.9)],
        )
        .unwrap();
        assert!((r.datum() - 0.62).abs() < 1e-12);
        assert!((r.certainty() - (0.3 * 0.5 + 0.7 * 0.9)).abs() < 1e-12);

        let r = bui_lift(&BaseAggregation::mean(2), &[bui(0.3, 0.0), bui(0.6, 0.0)]).unwrap();
        assert_eq!(r.certainty(), 0.0);
    }

    #[test]
    fn arithmetic_mean_examples() {
        let r = arithmetic_bui_mean(&[bui(0.4, 0.6), bui(0.8, 0.8)]).unwrap();
        assert!((r.datum() - 0.6).abs() < 1e-12 && (r.certainty() - 0.7).abs() < 1e-12);
        let r = arithmetic_bui_mean(&[bui(0.4, 0.6)]).unwrap();
        assert!((r.datum() - 0.4).abs() < 1e-12 && (r.certainty() - 0.6).abs() < 1e-12);
        let r = arithmetic_bui_mean(&[bui(1.0, 1.0); 5]).unwrap();
        assert_eq!((r.datum(), r.certainty()), (1.0, 1.0));
        assert!(matches!(arithmetic_bui_mean(&[]), Err(Error::Empty(_))));
    }
}
