//! Possibility degrees of intervals and BUI values, and the ranking built
//! on top of them.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bui::{to_interval, Bui};
use crate::error::{Error, Result, Violation};
use crate::interval::Interval;
use crate::EPS;

/// Half-width of the score band within which two ranking scores tie.
pub const SCORE_TIE_TOL: f64 = 1e-9;

/// `P(A ≥ B)`, a number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PossibilityDegree(f64);

impl PossibilityDegree {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::Internal(format!(
                "possibility {value} outside [0, 1]"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Possibility that interval `a` is at least interval `b`:
/// `max{1 − max((b⁺ − a⁻) / (|a| + |b|), 0), 0}`.
///
/// Two point intervals compare as ordinary numbers (1, 0 or 0.5).
pub fn interval_possibility(a: &Interval, b: &Interval) -> PossibilityDegree {
    let span = a.width() + b.width();
    if span == 0.0 {
        return PossibilityDegree(match a.lower().partial_cmp(&b.lower()) {
            Some(Ordering::Greater) => 1.0,
            Some(Ordering::Less) => 0.0,
            _ => 0.5,
        });
    }
    let ratio = (b.upper() - a.lower()) / span;
    PossibilityDegree((1.0 - ratio.max(0.0)).clamp(0.0, 1.0))
}

/// `P(A ≥ B)` evaluated on the interval images of both values.
pub fn bui_possibility(a: Bui, b: Bui) -> PossibilityDegree {
    interval_possibility(&to_interval(a).into(), &to_interval(b).into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutrankRelation {
    Succeeds,
    Indifferent,
    Precedes,
}

impl OutrankRelation {
    pub fn from_possibility(p: PossibilityDegree) -> Self {
        if p.0 > 0.5 + EPS {
            OutrankRelation::Succeeds
        } else if p.0 < 0.5 - EPS {
            OutrankRelation::Precedes
        } else {
            OutrankRelation::Indifferent
        }
    }
}

pub fn outrank(a: Bui, b: Bui) -> OutrankRelation {
    OutrankRelation::from_possibility(bui_possibility(a, b))
}

/// Cartesian strict order: both datum and certainty strictly larger.
///
/// Partial; most pairs are incomparable under it.
pub fn strictly_greater(a: Bui, b: Bui) -> bool {
    a.datum() > b.datum() && a.certainty() > b.certainty()
}

/// Square table of pairwise possibility degrees, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PossibilityMatrix {
    labels: Vec<String>,
    size: usize,
    values: Vec<f64>,
}

impl PossibilityMatrix {
    pub fn build(items: &[(String, Bui)]) -> Self {
        let size = items.len();
        let mut values = Vec::with_capacity(size * size);
        for (_, a) in items {
            for (_, b) in items {
                values.push(bui_possibility(*a, *b).value());
            }
        }
        Self {
            labels: items.iter().map(|(l, _)| l.clone()).collect(),
            size,
            values,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size + j]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.values[i * self.size..(i + 1) * self.size].iter().sum()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Checks `p_ij + p_ji = 1` and `p_ii = 0.5`, returning every breach.
    pub fn coherence_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.size {
            if (self.get(i, i) - 0.5).abs() > EPS {
                out.push(Violation::new(
                    format!("p[{i}][{i}]"),
                    "diagonal is not 0.5",
                ));
            }
            for j in i + 1..self.size {
                if (self.get(i, j) + self.get(j, i) - 1.0).abs() > EPS {
                    out.push(Violation::new(
                        format!("p[{i}][{j}]"),
                        "not complementary with its transpose",
                    ));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieRule {
    Certainty,
    Index,
}

/// A group of items whose scores fell within [`SCORE_TIE_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TieBreak {
    /// Labels of the tied items, in their final order.
    pub labels: Vec<String>,
    pub resolved_by: TieRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PossibilityRanking {
    /// Labels, best first.
    pub order: Vec<String>,
    /// Row sums `Σ_j p_ij`, in input order.
    pub scores: Vec<f64>,
    pub matrix: PossibilityMatrix,
    pub tie_breaks: Vec<TieBreak>,
}

/// Splits an already sorted index list into runs whose consecutive keys
/// differ by at most `tol`.
fn chain_groups(sorted: &[usize], key: impl Fn(usize) -> f64, tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &idx in sorted {
        match groups.last_mut() {
            Some(g) if (key(*g.last().unwrap()) - key(idx)).abs() <= tol => g.push(idx),
            _ => groups.push(vec![idx]),
        }
    }
    groups
}

/// Orders labelled BUI scores by the row sums of their possibility matrix.
///
/// Ties within [`SCORE_TIE_TOL`] go to the higher certainty, then to the
/// earlier input position.
pub fn rank_by_possibility(items: &[(String, Bui)]) -> Result<PossibilityRanking> {
    if items.is_empty() {
        return Err(Error::EmptyRanking);
    }
    let mut seen = HashSet::new();
    for (i, (label, _)) in items.iter().enumerate() {
        if !seen.insert(label.as_str()) {
            return Err(Error::Validation(vec![Violation::new(
                format!("item {i}"),
                format!("duplicate label `{label}`"),
            )]));
        }
    }

    let matrix = PossibilityMatrix::build(items);
    let scores: Vec<f64> = (0..items.len()).map(|i| matrix.row_sum(i)).collect();
    let certainty = |i: usize| items[i].1.certainty();

    let mut by_score: Vec<usize> = (0..items.len()).collect();
    by_score.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));

    let mut order = Vec::with_capacity(items.len());
    let mut tie_breaks = Vec::new();
    for mut group in chain_groups(&by_score, |i| scores[i], SCORE_TIE_TOL) {
        if group.len() == 1 {
            order.push(group[0]);
            continue;
        }
        group.sort_by(|&a, &b| certainty(b).total_cmp(&certainty(a)).then(a.cmp(&b)));
        let mut used_index = false;
        let start = order.len();
        for mut sub in chain_groups(&group, certainty, SCORE_TIE_TOL) {
            if sub.len() > 1 {
                used_index = true;
                sub.sort_unstable();
            }
            order.extend(sub);
        }
        tie_breaks.push(TieBreak {
            labels: order[start..].iter().map(|&i| items[i].0.clone()).collect(),
            resolved_by: if used_index {
                TieRule::Index
            } else {
                TieRule::Certainty
            },
        });
    }

    Ok(PossibilityRanking {
        order: order.into_iter().map(|i| items[i].0.clone()).collect(),
        scores,
        matrix,
        tie_breaks,
    })
}
