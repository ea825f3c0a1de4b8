use std::collections::HashSet;

use crate::aggregation::WeightVector;
use crate::bui::Bui;
use crate::error::{Error, Result, Violation};
use crate::params::Direction;

/// Alternatives × criteria grid of BUI assessments.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    assessments: Vec<Vec<Bui>>,
    directions: Vec<Direction>,
    weights: WeightVector,
}

fn duplicate_labels(kind: &str, labels: &[String], out: &mut Vec<Violation>) {
    let mut seen = HashSet::new();
    for (i, l) in labels.iter().enumerate() {
        if !seen.insert(l.as_str()) {
            out.push(Violation::new(
                format!("{kind}[{i}]"),
                format!("duplicate label `{l}`"),
            ));
        }
    }
}

impl DecisionMatrix {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        assessments: Vec<Vec<Bui>>,
        directions: Vec<Direction>,
        weights: WeightVector,
    ) -> Result<Self> {
        let mut v = Vec::new();
        if alternatives.is_empty() {
            v.push(Violation::new(
                "alternatives",
                "at least one alternative is required",
            ));
        }
        if criteria.is_empty() {
            v.push(Violation::new(
                "criteria",
                "at least one criterion is required",
            ));
        }
        duplicate_labels("alternatives", &alternatives, &mut v);
        duplicate_labels("criteria", &criteria, &mut v);
        if directions.len() != criteria.len() {
            v.push(Violation::new(
                "criteria",
                format!(
                    "{} directions for {} criteria",
                    directions.len(),
                    criteria.len()
                ),
            ));
        }
        if weights.len() != criteria.len() {
            v.push(Violation::new(
                "criteria",
                format!("{} weights for {} criteria", weights.len(), criteria.len()),
            ));
        }
        if assessments.len() != alternatives.len() {
            v.push(Violation::new(
                "assessments",
                format!(
                    "{} rows for {} alternatives",
                    assessments.len(),
                    alternatives.len()
                ),
            ));
        }
        for (i, row) in assessments.iter().enumerate() {
            if row.len() != criteria.len() {
                v.push(Violation::new(
                    format!("assessments[{i}]"),
                    format!("{} cells for {} criteria", row.len(), criteria.len()),
                ));
            }
        }
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        Ok(Self {
            alternatives,
            criteria,
            assessments,
            directions,
            weights,
        })
    }

    /// All-benefit matrix with generated labels `A1…`, `C1…`.
    pub fn from_grid(assessments: Vec<Vec<Bui>>, weights: WeightVector) -> Result<Self> {
        let n = assessments.len();
        let m = weights.len();
        Self::new(
            (1..=n).map(|i| format!("A{i}")).collect(),
            (1..=m).map(|k| format!("C{k}")).collect(),
            assessments,
            vec![Direction::Benefit; m],
            weights,
        )
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn assessments(&self) -> &[Vec<Bui>] {
        &self.assessments
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn cell(&self, i: usize, k: usize) -> Bui {
        self.assessments[i][k]
    }

    /// Cell as seen by the engine: cost criteria have their datum
    /// complemented.
    pub fn oriented_cell(&self, i: usize, k: usize) -> Bui {
        match self.directions[k] {
            Direction::Benefit => self.assessments[i][k],
            Direction::Cost => self.assessments[i][k].complement(),
        }
    }

    pub fn with_weights(&self, weights: WeightVector) -> Result<Self> {
        Self::new(
            self.alternatives.clone(),
            self.criteria.clone(),
            self.assessments.clone(),
            self.directions.clone(),
            weights,
        )
    }
}
