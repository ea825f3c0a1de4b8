//! Report rendering: 6-decimal JSON and plain-text tables.

use std::fmt::Write;

use bui_gtodim::audit::TrialOutcome;
use bui_gtodim::{AuditReport, DominanceMatrix, RankingReport};
use serde::Serialize;
use serde_json::Value;

const DECIMALS: i32 = 6;

fn round6(x: f64) -> f64 {
    let scale = 10f64.powi(DECIMALS);
    let r = (x * scale).round() / scale;
    // avoid printing -0.0
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds every floating-point number in `value` to 6 decimals. Integers
/// (seeds, counts) pass through untouched.
pub fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round6(x)))
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut value = serde_json::to_value(report).expect("reports serialize to JSON");
    round_floats(&mut value);
    serde_json::to_string_pretty(&value).expect("JSON values always print")
}

fn pair(datum: f64, certainty: f64) -> String {
    format!("<{:.6};{:.6}>", round6(datum), round6(certainty))
}

pub fn ranking_table(r: &RankingReport) -> String {
    let mut out = String::new();
    let p = &r.params;
    writeln!(
        out,
        "profile {}  alpha {}  beta {}  theta {}  reference criterion {}",
        p.profile, p.alpha, p.beta, p.theta, r.reference_criterion
    )
    .unwrap();
    writeln!(
        out,
        "{:<5} {:<12} {:>26} {:>22} {:>10}",
        "rank", "alternative", "performance", "xi", "score"
    )
    .unwrap();
    for (pos, label) in r.order.iter().enumerate() {
        let i = r.alternatives.iter().position(|a| a == label).unwrap();
        let perf = r.performances[i];
        let xi = r.normalized[i];
        writeln!(
            out,
            "{:<5} {:<12} {:>26} {:>22} {:>10.6}",
            pos + 1,
            label,
            pair(perf.datum(), perf.certainty()),
            pair(xi.datum(), xi.certainty()),
            round6(r.scores[i])
        )
        .unwrap();
    }
    writeln!(out, "order: {}", r.order.join(" > ")).unwrap();

    let d = &r.diagnostics;
    if d.clipped_magnitudes > 0 {
        writeln!(
            out,
            "note: {} dominance magnitudes clipped to 1",
            d.clipped_magnitudes
        )
        .unwrap();
    }
    if d.degenerate_certainties > 0 {
        writeln!(
            out,
            "note: {} degenerate certainties",
            d.degenerate_certainties
        )
        .unwrap();
    }
    if !d.zero_weight_criteria.is_empty() {
        writeln!(
            out,
            "note: zero-weight criteria {}",
            d.zero_weight_criteria.join(", ")
        )
        .unwrap();
    }
    if d.degenerate_spread {
        writeln!(out, "note: all performances equal; every xi set to 0.5").unwrap();
    }
    for t in &d.tie_breaks {
        writeln!(
            out,
            "note: tie {} resolved by {:?}",
            t.labels.join(" = "),
            t.resolved_by
        )
        .unwrap();
    }
    for note in &d.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

pub fn dominance_table(d: &DominanceMatrix) -> String {
    let mut out = String::new();
    write!(out, "{:<12}", "").unwrap();
    for label in &d.labels {
        write!(out, " {:>26}", label).unwrap();
    }
    out.push('\n');
    for (label, row) in d.labels.iter().zip(&d.entries) {
        write!(out, "{:<12}", label).unwrap();
        for e in row {
            write!(out, " {:>26}", pair(e.datum(), e.certainty())).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn audit_table(r: &AuditReport) -> String {
    let mut out = String::new();
    let p = &r.params;
    writeln!(
        out,
        "profile {}  alpha {}  beta {}  theta {}  trials {}  seed {}",
        p.profile, p.alpha, p.beta, p.theta, r.config.trials, r.config.seed
    )
    .unwrap();
    writeln!(
        out,
        "weight consistency:  {} violations in {} checks",
        r.wc_violations, r.wc_checks
    )
    .unwrap();
    writeln!(
        out,
        "weight monotonicity: {} violations in {} checks ({} with premise met)",
        r.wm_violations, r.wm_checks, r.wm_premise_met
    )
    .unwrap();
    writeln!(
        out,
        "performance-gap reversals: {}",
        r.wm_performance_violations
    )
    .unwrap();
    for v in &r.violations {
        writeln!(
            out,
            "  trial {} seed {} {:?}: {}",
            v.trial, v.trial_seed, v.kind, v.detail
        )
        .unwrap();
    }
    out
}

pub fn trial_table(t: &TrialOutcome) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "trial seed {}: {} alternatives, {} criteria",
        t.trial_seed, t.alternatives, t.criteria
    )
    .unwrap();
    let c = &t.consistency;
    writeln!(
        out,
        "split {}: {} -> {}{}",
        c.criterion,
        c.order_before.join(" > "),
        c.order_after.join(" > "),
        if c.violated { "  VIOLATED" } else { "" }
    )
    .unwrap();
    match &t.monotonicity {
        Some(m) => writeln!(
            out,
            "raise {} {:.6} -> {:.6} ({} over {}): {} -> {}{}",
            m.criterion,
            m.weight_before,
            m.weight_after,
            m.better,
            m.worse,
            m.order_before.join(" > "),
            m.order_after.join(" > "),
            if m.violated { "  VIOLATED" } else { "" }
        )
        .unwrap(),
        None => writeln!(out, "no monotonicity check (single criterion)").unwrap(),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounds_only_floats() {
        let mut v =
            json!({"a": 0.1234567, "b": [1.0000004, -0.0000001], "seed": 18446744073709551615u64});
        round_floats(&mut v);
        assert_eq!(
            v,
            json!({"a": 0.123457, "b": [1.0, 0.0], "seed": 18446744073709551615u64})
        );
    }

    #[test]
    fn pair_format() {
        assert_eq!(pair(0.0634304242, 0.6233), "<0.063430;0.623300>");
        assert_eq!(pair(-1e-9, 1.0), "<0.000000;1.000000>");
    }
}
