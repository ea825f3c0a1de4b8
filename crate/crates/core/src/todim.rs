//! Generalized TODIM over BUI assessments.
//!
//! For every ordered pair of alternatives and every criterion the
//! possibility degree decides whether the comparison is a gain, a loss or
//! neither. The size of the gain or loss is the absolute datum of the BUI
//! difference. Per-criterion values are summed into a pair dominance. Pair
//! dominances are summed into an overall performance, min-max normalized
//! and finally ordered by possibility degree.

use serde::{Deserialize, Serialize};

use crate::aggregation::{certainty_transform, BaseAggregation, WeightVector};
use crate::bui::{bui_sub, Bui, ExtendedBui};
use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::params::{TodimParams, ValueFunctions};
use crate::possibility::{bui_possibility, rank_by_possibility, PossibilityMatrix, TieBreak};
use crate::EPS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Gain,
    Zero,
    Loss,
}

/// One criterion's contribution to a pair dominance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionTerm {
    pub value: ExtendedBui,
    pub branch: Branch,
    /// The difference magnitude exceeded 1 and was clipped.
    pub clipped: bool,
    /// The difference had zero certainty.
    pub degenerate: bool,
}

/// Dominance of `z_i` over `z_j` on a single criterion of weight `w_k`.
///
/// Inputs must already be oriented (cost criteria complemented). A zero
/// weight makes the criterion inert: its datum is 0 in every branch.
pub fn criterion_dominance(
    z_i: Bui,
    z_j: Bui,
    w_k: f64,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> CriterionTerm {
    let p = bui_possibility(z_i, z_j).value();
    let branch = if p > 0.5 + EPS {
        Branch::Gain
    } else if p < 0.5 - EPS {
        Branch::Loss
    } else {
        Branch::Zero
    };
    let chi = match branch {
        Branch::Gain => bui_sub(z_i, z_j),
        Branch::Loss => bui_sub(z_j, z_i),
        Branch::Zero => {
            let certainty = (z_i.certainty() + z_j.certainty() - 1.0).abs();
            return CriterionTerm {
                value: ExtendedBui::raw(0.0, certainty),
                branch,
                clipped: false,
                degenerate: false,
            };
        }
    };
    let magnitude = chi.abs_datum();
    let d = magnitude.min(1.0);
    let datum = if w_k == 0.0 {
        0.0
    } else if branch == Branch::Gain {
        vf.g1(w_k) * vf.f1(d)
    } else {
        -vf.g2(w_k) * vf.f2(d) / params.theta
    };
    CriterionTerm {
        value: ExtendedBui::raw(datum, chi.certainty()),
        branch,
        clipped: magnitude > 1.0,
        degenerate: chi.is_degenerate(),
    }
}

/// Square table of signed pair dominances, `entries[i][j]` for `i` over `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<ExtendedBui>>,
}

impl DominanceMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> ExtendedBui {
        self.entries[i][j]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Difference magnitudes above 1 that were clipped before `f`.
    pub clipped_magnitudes: usize,
    /// BUI differences whose certainty was exactly zero.
    pub degenerate_certainties: usize,
    /// Criteria with zero weight, which contribute nothing.
    pub zero_weight_criteria: Vec<String>,
    /// All overall performances coincided; every ξ was set to 0.5.
    pub degenerate_spread: bool,
    pub tie_breaks: Vec<TieBreak>,
    pub notes: Vec<String>,
}

/// Engine inputs after orientation and weight preparation.
struct Prepared<'a> {
    matrix: &'a DecisionMatrix,
    vf: &'a ValueFunctions,
    params: &'a TodimParams,
    cells: Vec<Vec<Bui>>,
    certainty_base: BaseAggregation,
}

impl<'a> Prepared<'a> {
    fn new(
        matrix: &'a DecisionMatrix,
        vf: &'a ValueFunctions,
        params: &'a TodimParams,
    ) -> Result<Self> {
        params.validate()?;
        let cells = (0..matrix.n_alternatives())
            .map(|i| {
                (0..matrix.n_criteria())
                    .map(|k| matrix.oriented_cell(i, k))
                    .collect()
            })
            .collect();
        let g1: Vec<f64> = matrix
            .weights()
            .as_slice()
            .iter()
            .map(|&w| vf.g1(w))
            .collect();
        let g1 = WeightVector::normalized(g1).map_err(|e| {
            Error::InvalidParams(format!("g1 does not yield usable certainty weights: {e}"))
        })?;
        Ok(Self {
            matrix,
            vf,
            params,
            cells,
            certainty_base: BaseAggregation::weighted(g1),
        })
    }

    fn pair(&self, i: usize, j: usize, diag: &mut Diagnostics) -> Result<ExtendedBui> {
        if i == j {
            return Ok(ExtendedBui::zero());
        }
        let weights = self.matrix.weights();
        let mut datum = 0.0;
        let mut lifted = Vec::with_capacity(self.cells[i].len());
        for k in 0..self.cells[i].len() {
            let term = criterion_dominance(
                self.cells[i][k],
                self.cells[j][k],
                weights.get(k),
                self.vf,
                self.params,
            );
            diag.clipped_magnitudes += term.clipped as usize;
            diag.degenerate_certainties += term.degenerate as usize;
            datum += term.value.datum();
            lifted.push(Bui::new(
                term.value.abs_datum().min(1.0),
                term.value.certainty(),
            )?);
        }
        let certainty = certainty_transform(&self.certainty_base, &lifted)?;
        if !datum.is_finite() {
            return Err(Error::Internal(format!(
                "non-finite dominance of alternative {i} over {j}"
            )));
        }
        Ok(ExtendedBui::raw(datum, certainty))
    }

    fn dominance(&self, diag: &mut Diagnostics) -> Result<DominanceMatrix> {
        let n = self.matrix.n_alternatives();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.pair(i, j, diag))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DominanceMatrix {
            labels: self.matrix.alternatives().to_vec(),
            entries,
        })
    }
}

fn check_index(index: usize, len: usize) -> Result<()> {
    if index >= len {
        return Err(Error::IndexOutOfRange { index, len });
    }
    Ok(())
}

/// Signed dominance of alternative `i` over `j`, summed across criteria.
///
/// The certainty is the g1-weighted lift of the per-criterion certainties.
pub fn pair_dominance(
    i: usize,
    j: usize,
    matrix: &DecisionMatrix,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<ExtendedBui> {
    check_index(i, matrix.n_alternatives())?;
    check_index(j, matrix.n_alternatives())?;
    Prepared::new(matrix, vf, params)?.pair(i, j, &mut Diagnostics::default())
}

pub fn dominance_matrix(
    matrix: &DecisionMatrix,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<DominanceMatrix> {
    Prepared::new(matrix, vf, params)?.dominance(&mut Diagnostics::default())
}

/// Row sum of the dominance matrix; certainty is the plain-mean lift of the
/// row entries.
pub fn overall_performance(i: usize, dominance: &DominanceMatrix) -> Result<ExtendedBui> {
    check_index(i, dominance.size())?;
    let row = &dominance.entries[i];
    let datum = row.iter().fold(0.0, |acc, e| acc + e.datum());
    let lifted = row
        .iter()
        .map(|e| Bui::new(e.datum().clamp(0.0, 1.0), e.certainty()))
        .collect::<Result<Vec<_>>>()?;
    let certainty = certainty_transform(&BaseAggregation::mean(row.len()), &lifted)?;
    Ok(ExtendedBui::raw(datum, certainty))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub values: Vec<Bui>,
    pub degenerate_spread: bool,
}

/// Min-max scaling of the data; certainties pass through.
pub fn normalize(performances: &[ExtendedBui]) -> Result<Normalized> {
    if performances.is_empty() {
        return Err(Error::Empty("no performances to normalize"));
    }
    let (min, max) = performances
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.datum()), hi.max(p.datum()))
        });
    let spread = max - min;
    let degenerate_spread = spread <= EPS;
    let values = performances
        .iter()
        .map(|p| {
            let x = if degenerate_spread {
                0.5
            } else {
                ((p.datum() - min) / spread).clamp(0.0, 1.0)
            };
            Bui::new(x, p.certainty())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Normalized {
        values,
        degenerate_spread,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelativeWeights {
    pub weights: WeightVector,
    /// Index of the reference criterion (largest weight, first on ties).
    pub reference: usize,
}

/// Weights relative to the heaviest criterion, `w_kr / Σ_l w_lr`.
///
/// For a normalized vector this is the vector itself; the identity is
/// checked and a breach is reported as an internal error.
pub fn relative_weights(w: &WeightVector) -> Result<RelativeWeights> {
    let ws = w.as_slice();
    let reference = ws
        .iter()
        .enumerate()
        .fold(0, |best, (k, &v)| if v > ws[best] { k } else { best });
    let w_r = ws[reference];
    let ratios: Vec<f64> = ws.iter().map(|&v| v / w_r).collect();
    let total: f64 = ratios.iter().sum();
    let relative: Vec<f64> = ratios.iter().map(|r| r / total).collect();
    if let Some(k) = (0..ws.len()).find(|&k| (relative[k] - ws[k]).abs() > EPS) {
        return Err(Error::Internal(format!(
            "relative weight of criterion {k} is {} but its weight is {}",
            relative[k], ws[k]
        )));
    }
    Ok(RelativeWeights {
        weights: WeightVector::new(relative)?,
        reference,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingReport {
    pub alternatives: Vec<String>,
    pub params: TodimParams,
    pub reference_criterion: String,
    pub relative_weights: WeightVector,
    /// Overall performances φ(Aᵢ), in input order.
    pub performances: Vec<ExtendedBui>,
    /// Normalized performances ξ(Aᵢ), in input order.
    pub normalized: Vec<Bui>,
    pub possibility: PossibilityMatrix,
    /// Possibility row sums, in input order.
    pub scores: Vec<f64>,
    /// Alternative labels, best first.
    pub order: Vec<String>,
    pub diagnostics: Diagnostics,
}

/// Runs the full pipeline and returns the ranking with its intermediate
/// values.
pub fn rank(
    matrix: &DecisionMatrix,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<RankingReport> {
    let mut diag = Diagnostics::default();
    let relative = relative_weights(matrix.weights())?;
    let prepared = Prepared::new(matrix, vf, params)?;
    diag.zero_weight_criteria = matrix
        .weights()
        .as_slice()
        .iter()
        .zip(matrix.criteria())
        .filter(|(w, _)| **w == 0.0)
        .map(|(_, name)| name.clone())
        .collect();

    let dominance = prepared.dominance(&mut diag)?;
    let performances = (0..dominance.size())
        .map(|i| overall_performance(i, &dominance))
        .collect::<Result<Vec<_>>>()?;
    let normalized = normalize(&performances)?;
    diag.degenerate_spread = normalized.degenerate_spread;

    let labelled: Vec<(String, Bui)> = matrix
        .alternatives()
        .iter()
        .cloned()
        .zip(normalized.values.iter().copied())
        .collect();
    let ranking = rank_by_possibility(&labelled)?;
    diag.tie_breaks = ranking.tie_breaks;

    if !vf.all_nondecreasing() {
        diag.notes.push(
            "loss weight transform is not nondecreasing; weight consistency and \
             monotonicity are not guaranteed (see `audit`)"
                .to_string(),
        );
    }

    Ok(RankingReport {
        alternatives: matrix.alternatives().to_vec(),
        params: *params,
        reference_criterion: matrix.criteria()[relative.reference].clone(),
        relative_weights: relative.weights,
        performances,
        normalized: normalized.values,
        possibility: ranking.matrix,
        scores: ranking.scores,
        order: ranking.order,
        diagnostics: diag,
    })
}
