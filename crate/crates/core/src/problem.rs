//! Decision problem documents: the JSON file format, CSV import and the
//! aggregation of several decision makers' documents into one.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::aggregation::{bui_lift, BaseAggregation, WeightVector};
use crate::bui::{parse_pair, Bui};
use crate::error::{Error, Result, Violation};
use crate::matrix::DecisionMatrix;
use crate::params::{Direction, TodimParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub name: String,
    pub weight: f64,
    #[serde(default)]
    pub direction: Direction,
}

/// An assessment cell as written in the document; checked by
/// [`DecisionProblemDocument::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub x: f64,
    pub c: f64,
}

impl From<Bui> for Cell {
    fn from(b: Bui) -> Self {
        Cell {
            x: b.datum(),
            c: b.certainty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionProblemDocument {
    pub alternatives: Vec<String>,
    pub criteria: Vec<CriterionSpec>,
    pub assessments: Vec<Vec<Cell>>,
    #[serde(default)]
    pub params: TodimParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    Csv,
}

impl InputFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
            _ => InputFormat::Json,
        }
    }
}

fn unit(v: f64) -> bool {
    (0.0..=1.0).contains(&v)
}

impl DecisionProblemDocument {
    /// Collects every constraint violation, with coordinates.
    pub fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let n = self.alternatives.len();
        let m = self.criteria.len();
        if n == 0 {
            v.push(Violation::new(
                "alternatives",
                "at least one alternative is required",
            ));
        }
        if m == 0 {
            v.push(Violation::new(
                "criteria",
                "at least one criterion is required",
            ));
        }
        for (k, c) in self.criteria.iter().enumerate() {
            if !c.weight.is_finite() || c.weight < 0.0 {
                v.push(Violation::new(
                    format!("criteria[{k}] ({})", c.name),
                    format!("weight {} must be a nonnegative number", c.weight),
                ));
            }
        }
        if m > 0 {
            let sum: f64 = self.criteria.iter().map(|c| c.weight).sum();
            if let Err(e) = WeightVector::new(self.criteria.iter().map(|c| c.weight).collect()) {
                if sum.is_finite() {
                    v.push(Violation::new("criteria", e.to_string()));
                }
            }
        }
        if self.assessments.len() != n {
            v.push(Violation::new(
                "assessments",
                format!("{} rows for {n} alternatives", self.assessments.len()),
            ));
        }
        for (i, row) in self.assessments.iter().enumerate() {
            if row.len() != m {
                v.push(Violation::new(
                    format!("assessments[{i}]"),
                    format!("{} cells for {m} criteria", row.len()),
                ));
            }
            for (k, cell) in row.iter().enumerate() {
                let alt = self.alternatives.get(i).map(String::as_str).unwrap_or("?");
                let crit = self.criteria.get(k).map(|c| c.name.as_str()).unwrap_or("?");
                let at = format!("assessments[{i}][{k}] ({alt}/{crit})");
                if !unit(cell.x) {
                    v.push(Violation::new(
                        &at,
                        format!("x = {} outside [0, 1]", cell.x),
                    ));
                }
                if !unit(cell.c) {
                    v.push(Violation::new(
                        &at,
                        format!("c = {} outside [0, 1]", cell.c),
                    ));
                }
            }
        }
        if let Err(e) = self.params.validate() {
            v.push(Violation::new("params", e.to_string()));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn weights(&self) -> Result<WeightVector> {
        WeightVector::new(self.criteria.iter().map(|c| c.weight).collect())
    }

    pub fn to_matrix(&self) -> Result<DecisionMatrix> {
        self.validate()?;
        let assessments = self
            .assessments
            .iter()
            .map(|row| row.iter().map(|c| Bui::new(c.x, c.c)).collect())
            .collect::<Result<Vec<Vec<Bui>>>>()?;
        DecisionMatrix::new(
            self.alternatives.clone(),
            self.criteria.iter().map(|c| c.name.clone()).collect(),
            assessments,
            self.criteria.iter().map(|c| c.direction).collect(),
            self.weights()?,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// Parses and validates a JSON problem document.
pub fn parse_problem_json(text: &str) -> Result<DecisionProblemDocument> {
    let doc: DecisionProblemDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.validate()?;
    Ok(doc)
}

/// Parses a CSV matrix: a header row of criterion names (first cell is
/// ignored), then one row per alternative with its label followed by
/// `<x;c>` cells. Weights are not part of the CSV and must be supplied.
pub fn parse_problem_csv(text: &str, weights: &[f64]) -> Result<DecisionProblemDocument> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::Parse(format!("CSV header: {e}")))?
        .clone();
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    if names.len() != weights.len() {
        return Err(Error::Validation(vec![Violation::new(
            "weights",
            format!("{} weights for {} criteria", weights.len(), names.len()),
        )]));
    }

    let mut alternatives = Vec::new();
    let mut assessments = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("CSV row {}: {e}", i + 2)))?;
        let mut fields = record.iter();
        alternatives.push(fields.next().unwrap_or_default().to_string());
        let row = fields
            .enumerate()
            .map(|(k, f)| {
                parse_pair(f)
                    .map(|(x, c)| Cell { x, c })
                    .map_err(|e| Error::Parse(format!("row {}, column {}: {e}", i + 2, k + 2)))
            })
            .collect::<Result<Vec<_>>>()?;
        assessments.push(row);
    }

    let doc = DecisionProblemDocument {
        alternatives,
        criteria: names
            .into_iter()
            .zip(weights)
            .map(|(name, &weight)| CriterionSpec {
                name,
                weight,
                direction: Direction::Benefit,
            })
            .collect(),
        assessments,
        params: TodimParams::default(),
    };
    doc.validate()?;
    Ok(doc)
}

/// Reads a problem file; `.csv` files need `csv_weights`.
pub fn load_problem(path: &Path, csv_weights: Option<&[f64]>) -> Result<DecisionProblemDocument> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    match InputFormat::from_path(path) {
        InputFormat::Json => parse_problem_json(&text),
        InputFormat::Csv => match csv_weights {
            Some(w) => parse_problem_csv(&text, w),
            None => Err(Error::Validation(vec![Violation::new(
                "weights",
                "CSV input needs criterion weights (--weights)",
            )])),
        },
    }
}

/// One document per decision maker plus the decision makers' weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupInput {
    pub documents: Vec<DecisionProblemDocument>,
    pub dm_weights: WeightVector,
}

/// Cell-wise weighted BUI lift across decision makers.
pub fn aggregate_group(group: &GroupInput) -> Result<DecisionProblemDocument> {
    let docs = &group.documents;
    let first = docs
        .first()
        .ok_or(Error::Empty("no decision maker documents"))?;
    let mut v = Vec::new();
    if group.dm_weights.len() != docs.len() {
        v.push(Violation::new(
            "dm_weights",
            format!(
                "{} weights for {} decision makers",
                group.dm_weights.len(),
                docs.len()
            ),
        ));
    }
    for (d, doc) in docs.iter().enumerate() {
        for violation in doc.violations() {
            v.push(Violation::new(
                format!("decision maker {}: {}", d + 1, violation.location),
                violation.message,
            ));
        }
        if doc.alternatives != first.alternatives {
            v.push(Violation::new(
                format!("decision maker {}", d + 1),
                "alternatives differ from decision maker 1",
            ));
        }
        if doc.criteria != first.criteria {
            v.push(Violation::new(
                format!("decision maker {}", d + 1),
                "criteria (names, weights or directions) differ from decision maker 1",
            ));
        }
    }
    if !v.is_empty() {
        return Err(Error::Validation(v));
    }

    let base = BaseAggregation::weighted(group.dm_weights.clone());
    let assessments = (0..first.alternatives.len())
        .map(|i| {
            (0..first.criteria.len())
                .map(|k| {
                    let cells = docs
                        .iter()
                        .map(|doc| Bui::new(doc.assessments[i][k].x, doc.assessments[i][k].c))
                        .collect::<Result<Vec<_>>>()?;
                    bui_lift(&base, &cells).map(Cell::from)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(DecisionProblemDocument {
        alternatives: first.alternatives.clone(),
        criteria: first.criteria.clone(),
        assessments,
        params: first.params,
    })
}
