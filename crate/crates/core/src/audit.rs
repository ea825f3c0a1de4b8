//! Metamorphic checks of weight consistency and weight monotonicity on
//! random instances.
//!
//! Each trial draws its own seed from the master seed, so any reported
//! violation can be rebuilt alone with [`replay_trial`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aggregation::WeightVector;
use crate::bui::Bui;
use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::params::{TodimParams, ValueFunctions};
use crate::possibility::{outrank, OutrankRelation};
use crate::todim::{rank, RankingReport};
use crate::EPS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub max_alternatives: usize,
    pub max_criteria: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            max_alternatives: 6,
            max_criteria: 5,
            trials: 1000,
            seed: 42,
        }
    }
}

impl AuditConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParams(
                "audit needs at least one trial".into(),
            ));
        }
        if self.max_alternatives < 2 || self.max_criteria < 1 {
            return Err(Error::InvalidParams(
                "audit instances need at least 2 alternatives and 1 criterion".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    WeightConsistency,
    WeightMonotonicity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditViolation {
    pub kind: PropertyKind,
    pub trial: usize,
    /// Pass to [`replay_trial`] (or `audit --replay`) to rebuild the case.
    pub trial_seed: u64,
    pub detail: String,
}

/// Outcome of the weight-monotonicity check on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityCheck {
    pub better: String,
    pub worse: String,
    pub criterion: String,
    pub weight_before: f64,
    pub weight_after: f64,
    pub order_before: Vec<String>,
    pub order_after: Vec<String>,
    /// The better alternative preceded the worse one before the change.
    pub premise: bool,
    /// It no longer does afterwards.
    pub violated: bool,
    /// Overall performance φ(better) − φ(worse), before and after.
    pub performance_gap: (f64, f64),
    /// The performance gap changed from positive to negative.
    pub performance_violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyCheck {
    pub criterion: String,
    pub order_before: Vec<String>,
    pub order_after: Vec<String>,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial_seed: u64,
    pub alternatives: usize,
    pub criteria: usize,
    pub consistency: ConsistencyCheck,
    /// Absent for single-criterion instances, where no weight can grow.
    pub monotonicity: Option<MonotonicityCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub params: TodimParams,
    pub config: AuditConfig,
    pub wc_checks: usize,
    pub wc_violations: usize,
    pub wm_checks: usize,
    /// WM checks whose premise held (better alternative ranked above).
    pub wm_premise_met: usize,
    pub wm_violations: usize,
    /// Informational: flips of the overall-performance gap, independent of
    /// the possibility-based final order.
    pub wm_performance_violations: usize,
    pub violations: Vec<AuditViolation>,
}

fn random_bui(rng: &mut ChaCha8Rng) -> Bui {
    Bui::new(rng.gen::<f64>(), rng.gen::<f64>()).expect("gen::<f64> lies in [0, 1)")
}

fn random_weights(rng: &mut ChaCha8Rng, m: usize) -> Result<WeightVector> {
    // (0, 1] keeps every criterion active
    WeightVector::normalized((0..m).map(|_| 1.0 - rng.gen::<f64>()).collect())
}

fn position(order: &[String], label: &str) -> usize {
    order
        .iter()
        .position(|l| l == label)
        .expect("label is ranked")
}

fn run(
    matrix: &DecisionMatrix,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<RankingReport> {
    rank(matrix, vf, params)
}

fn check_consistency(
    rng: &mut ChaCha8Rng,
    base: &DecisionMatrix,
    before: &RankingReport,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<ConsistencyCheck> {
    let m = base.n_criteria();
    let k = rng.gen_range(0..m);
    let mut weights = base.weights().as_slice().to_vec();
    let half = weights[k] / 2.0;
    weights[k] = half;
    weights.push(half);
    let mut criteria = base.criteria().to_vec();
    criteria.push(format!("{}'", criteria[k]));
    let assessments = base
        .assessments()
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.push(row[k]);
            row
        })
        .collect();
    let mut directions = base.directions().to_vec();
    directions.push(directions[k]);
    let split = DecisionMatrix::new(
        base.alternatives().to_vec(),
        criteria,
        assessments,
        directions,
        WeightVector::new(weights)?,
    )?;
    let after = run(&split, vf, params)?;
    Ok(ConsistencyCheck {
        criterion: base.criteria()[k].clone(),
        violated: after.order != before.order,
        order_before: before.order.clone(),
        order_after: after.order,
    })
}

fn check_monotonicity(
    rng: &mut ChaCha8Rng,
    base: &DecisionMatrix,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<Option<MonotonicityCheck>> {
    let n = base.n_alternatives();
    let m = base.n_criteria();
    if m < 2 {
        return Ok(None);
    }
    let better = rng.gen_range(0..n);
    let worse = (better + rng.gen_range(1..n)) % n;
    let k = rng.gen_range(0..m);

    let (high, low) = loop {
        let u = random_bui(rng);
        let v = random_bui(rng);
        match outrank(u, v) {
            OutrankRelation::Succeeds => break (u, v),
            OutrankRelation::Precedes => break (v, u),
            OutrankRelation::Indifferent => continue,
        }
    };
    let mut grid = base.assessments().to_vec();
    grid[worse] = grid[better].clone();
    grid[better][k] = high;
    grid[worse][k] = low;
    let instance = DecisionMatrix::new(
        base.alternatives().to_vec(),
        base.criteria().to_vec(),
        grid,
        base.directions().to_vec(),
        base.weights().clone(),
    )?;

    let ws = base.weights().as_slice();
    let old = ws[k];
    let new = old + rng.gen_range(0.05..0.95) * (1.0 - old);
    let scale = (1.0 - new) / (1.0 - old);
    let raised: Vec<f64> = ws
        .iter()
        .enumerate()
        .map(|(l, &w)| if l == k { new } else { w * scale })
        .collect();
    let raised = instance.with_weights(WeightVector::normalized(raised)?)?;

    let before = run(&instance, vf, params)?;
    let after = run(&raised, vf, params)?;
    let better_label = &base.alternatives()[better];
    let worse_label = &base.alternatives()[worse];
    let premise = position(&before.order, better_label) < position(&before.order, worse_label);
    let violated =
        premise && position(&after.order, better_label) > position(&after.order, worse_label);
    let gap_before = before.performances[better].datum() - before.performances[worse].datum();
    let gap_after = after.performances[better].datum() - after.performances[worse].datum();

    Ok(Some(MonotonicityCheck {
        better: better_label.clone(),
        worse: worse_label.clone(),
        criterion: base.criteria()[k].clone(),
        weight_before: old,
        weight_after: raised.weights().get(k),
        order_before: before.order,
        order_after: after.order,
        premise,
        violated,
        performance_gap: (gap_before, gap_after),
        performance_violated: gap_before > EPS && gap_after < -EPS,
    }))
}

/// Rebuilds and re-checks the single trial identified by `trial_seed`.
pub fn replay_trial(
    trial_seed: u64,
    config: &AuditConfig,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<TrialOutcome> {
    config.validate()?;
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let n = rng.gen_range(2..=config.max_alternatives);
    let m = rng.gen_range(1..=config.max_criteria);
    let grid = (0..n)
        .map(|_| (0..m).map(|_| random_bui(&mut rng)).collect())
        .collect();
    let weights = random_weights(&mut rng, m)?;
    let base = DecisionMatrix::from_grid(grid, weights)?;

    let before = run(&base, vf, params)?;
    let consistency = check_consistency(&mut rng, &base, &before, vf, params)?;
    let monotonicity = check_monotonicity(&mut rng, &base, vf, params)?;
    Ok(TrialOutcome {
        trial_seed,
        alternatives: n,
        criteria: m,
        consistency,
        monotonicity,
    })
}

/// Runs `config.trials` random trials and tallies both properties.
pub fn audit_weight_properties(
    config: &AuditConfig,
    vf: &ValueFunctions,
    params: &TodimParams,
) -> Result<AuditReport> {
    config.validate()?;
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = AuditReport {
        params: *params,
        config: *config,
        wc_checks: 0,
        wc_violations: 0,
        wm_checks: 0,
        wm_premise_met: 0,
        wm_violations: 0,
        wm_performance_violations: 0,
        violations: Vec::new(),
    };
    for trial in 0..config.trials {
        let trial_seed = master.gen::<u64>();
        let outcome = replay_trial(trial_seed, config, vf, params)?;

        report.wc_checks += 1;
        if outcome.consistency.violated {
            report.wc_violations += 1;
            report.violations.push(AuditViolation {
                kind: PropertyKind::WeightConsistency,
                trial,
                trial_seed,
                detail: format!(
                    "splitting {} changed the order {:?} -> {:?}",
                    outcome.consistency.criterion,
                    outcome.consistency.order_before,
                    outcome.consistency.order_after
                ),
            });
        }
        if let Some(wm) = outcome.monotonicity {
            report.wm_checks += 1;
            report.wm_premise_met += wm.premise as usize;
            report.wm_performance_violations += wm.performance_violated as usize;
            if wm.violated {
                report.wm_violations += 1;
                report.violations.push(AuditViolation {
                    kind: PropertyKind::WeightMonotonicity,
                    trial,
                    trial_seed,
                    detail: format!(
                        "raising {} from {:.6} to {:.6} moved {} below {}",
                        wm.criterion, wm.weight_before, wm.weight_after, wm.better, wm.worse
                    ),
                });
            }
        }
    }
    Ok(report)
}
