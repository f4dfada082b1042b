//! Flat key/value records for CSV and JSON emission. Key names are part of
//! the output contract and stay stable across versions.

use crate::noise::McSummary;
use crate::stats::{EvolutionConfig, LgiReport};

pub const RECORD_KEYS: [&str; 33] = [
    "theta1", "chi1", "phi1", "theta2", "chi2", "phi2",
    "p3_A", "p3_B", "p3_C",
    "Q2", "Q3Q2", "Q3", "K",
    "delta_A", "delta_B", "delta_C", "Delta",
    "Q2_amb", "Q3Q2_amb", "K_amb",
    "deltaA_A", "deltaA_B", "deltaA_C", "Delta_amb",
    "qp_AA", "qp_AB", "qp_AC",
    "qp_BA", "qp_BB", "qp_BC",
    "qp_CA", "qp_CB", "qp_CC",
];

/// One report flattened in `RECORD_KEYS` order.
pub fn record_values(cfg: &EvolutionConfig, report: &LgiReport) -> [f64; 33] {
    let q = report.quasi.entries();
    [
        cfg.angles1.theta, cfg.angles1.chi, cfg.angles1.phi,
        cfg.angles2.theta, cfg.angles2.chi, cfg.angles2.phi,
        report.marginals[0], report.marginals[1], report.marginals[2],
        report.q2_mean, report.q3q2_mean, report.q3_mean, report.k,
        report.delta[0], report.delta[1], report.delta[2], report.delta_total,
        report.q2_mean_a, report.q3q2_mean_a, report.k_amb,
        report.delta_a[0], report.delta_a[1], report.delta_a[2], report.delta_a_total,
        q[0][0], q[0][1], q[0][2],
        q[1][0], q[1][1], q[1][2],
        q[2][0], q[2][1], q[2][2],
    ]
}

/// Full-precision decimal form: 17 significant digits round-trip any f64.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_header() -> String {
    RECORD_KEYS.join(",")
}

pub fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| format_value(v))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn report_json(cfg: &EvolutionConfig, report: &LgiReport) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (key, value) in RECORD_KEYS.iter().zip(record_values(cfg, report)) {
        map.insert((*key).to_string(), value.into());
    }
    serde_json::Value::Object(map)
}

/// Monte Carlo metric names, paired with (mean, std), in stable order.
pub fn summary_metrics(summary: &McSummary) -> Vec<(String, f64, f64)> {
    let mut out = Vec::with_capacity(19);
    let mut push = |name: &str, s: crate::noise::MetricStats| {
        out.push((name.to_string(), s.mean, s.std));
    };
    push("K", summary.k);
    push("Delta", summary.delta_total);
    push("K_amb", summary.k_amb);
    push("Delta_amb", summary.delta_a_total);
    for (i, n3) in ["A", "B", "C"].iter().enumerate() {
        push(&format!("delta_{n3}"), summary.delta[i]);
    }
    for (i, n3) in ["A", "B", "C"].iter().enumerate() {
        push(&format!("deltaA_{n3}"), summary.delta_a[i]);
    }
    for (i, n3) in ["A", "B", "C"].iter().enumerate() {
        for (j, n2) in ["A", "B", "C"].iter().enumerate() {
            push(&format!("qp_{n3}{n2}"), summary.quasi[i][j]);
        }
    }
    out
}

pub fn summary_json(summary: &McSummary) -> serde_json::Value {
    let mut metrics = serde_json::Map::new();
    for (name, mean, std) in summary_metrics(summary) {
        let mut entry = serde_json::Map::new();
        entry.insert("mean".to_string(), mean.into());
        entry.insert("std".to_string(), std.into());
        metrics.insert(name, serde_json::Value::Object(entry));
    }
    let mut map = serde_json::Map::new();
    map.insert("trials".to_string(), summary.trials.into());
    map.insert("metrics".to_string(), serde_json::Value::Object(metrics));
    serde_json::Value::Object(map)
}

pub fn summary_csv(summary: &McSummary) -> String {
    let mut out = String::from("metric,mean,std\n");
    for (name, mean, std) in summary_metrics(summary) {
        out.push_str(&format!("{name},{},{}\n", format_value(mean), format_value(std)));
    }
    out
}
