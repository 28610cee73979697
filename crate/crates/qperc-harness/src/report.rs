//! Report shapes and serialization.
//!
//! Tabular experiments (sweeps, the register-width rule) render as CSV with
//! `#`-prefixed comment lines carrying run metadata; single-result commands
//! render as pretty-printed JSON. All numbers format through the shortest
//! round-trip form, so equal inputs give byte-equal reports.

use serde::Serialize;

use crate::experiments::{SweepReport, TauRuleRow};

/// Run metadata embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Meta {
    pub fn new(command: &str, seed: u64) -> Meta {
        Meta {
            tool: "qperc",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed: Some(seed),
        }
    }

    /// Metadata for a command with no random stream.
    pub fn seedless(command: &str) -> Meta {
        Meta {
            tool: "qperc",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed: None,
        }
    }
}

/// Single-evaluation report.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub meta: Meta,
    pub n: usize,
    pub tau: usize,
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    pub backend: String,
    pub shots: usize,
    pub weights: Vec<f64>,
    pub input: Vec<i8>,
    /// Net input of the weights the circuit actually encodes (after digit
    /// truncation when weights are quantized).
    pub net_input: f64,
    pub phi: f64,
    /// Probability that one shot reads out the positive activation.
    pub activation_probability: f64,
    pub output: i8,
    pub distribution: Vec<f64>,
}

/// Net-input histogram report.
#[derive(Debug, Clone, Serialize)]
pub struct HistReport {
    pub meta: Meta,
    pub n: usize,
    pub samples: usize,
    pub bins: usize,
    pub mean: f64,
    pub sigma: f64,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
}

/// Training-run report.
#[derive(Debug, Clone, Serialize)]
pub struct TrainReport {
    pub meta: Meta,
    pub data: String,
    pub examples: usize,
    pub dimension: usize,
    pub eta: f64,
    pub max_epochs: usize,
    pub classifier: String,
    pub init: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    pub epochs_used: usize,
    pub accuracy: f64,
    pub final_weights: Vec<f64>,
}

/// Gate-count report, optionally with the constructed gate list.
#[derive(Debug, Clone, Serialize)]
pub struct GatesReport {
    pub meta: Meta,
    pub n: usize,
    pub tau: usize,
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    pub oracle_formula_gates: u128,
    pub inverse_qft_formula_gates: u64,
    pub constructed_gates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit: Option<Vec<String>>,
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn meta_line(meta: &Meta) -> String {
    format!(
        "# meta: {}\n",
        serde_json::to_string(meta).expect("report types serialize")
    )
}

/// CSV for a sweep: metadata and per-`n` net-input statistics as comment
/// lines, then one row per `(n, tau)` cell.
pub fn sweep_csv(meta: &Meta, report: &SweepReport) -> String {
    let mut out = meta_line(meta);
    for stats in &report.net_input_stats {
        out.push_str(&format!(
            "# net_input n={} mean={} sigma={}\n",
            stats.n, stats.mean, stats.sigma
        ));
    }
    out.push_str("n,tau,trials,success_mean,success_stderr\n");
    for cell in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            cell.n, cell.tau, cell.trials, cell.success_mean, cell.success_stderr
        ));
    }
    out
}

/// CSV for the register-width rule check, one row per `n`.
pub fn tau_rule_csv(meta: &Meta, rows: &[TauRuleRow]) -> String {
    let mut out = meta_line(meta);
    out.push_str("n,recommended_tau,trials,success_mean,success_stderr\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n, row.recommended_tau, row.trials, row.success_mean, row.success_stderr
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{NetInputStats, SweepCell};

    fn meta() -> Meta {
        Meta {
            tool: "qperc",
            version: "0.0.0",
            command: "sweep".to_string(),
            seed: Some(7),
        }
    }

    #[test]
    fn sweep_csv_golden() {
        let report = SweepReport {
            cells: vec![SweepCell {
                n: 10,
                tau: 4,
                trials: 100,
                success_mean: 0.84,
                success_stderr: 0.0125,
            }],
            net_input_stats: vec![NetInputStats {
                n: 10,
                mean: 0.5,
                sigma: 1.75,
            }],
        };
        let expected = "\
# meta: {\"tool\":\"qperc\",\"version\":\"0.0.0\",\"command\":\"sweep\",\"seed\":7}
# net_input n=10 mean=0.5 sigma=1.75
n,tau,trials,success_mean,success_stderr
10,4,100,0.84,0.0125
";
        assert_eq!(sweep_csv(&meta(), &report), expected);
    }

    #[test]
    fn tau_rule_csv_golden() {
        let rows = vec![TauRuleRow {
            n: 10,
            recommended_tau: 5,
            trials: 100,
            success_mean: 0.9,
            success_stderr: 0.01,
        }];
        let expected = "\
# meta: {\"tool\":\"qperc\",\"version\":\"0.0.0\",\"command\":\"sweep\",\"seed\":7}
n,recommended_tau,trials,success_mean,success_stderr
10,5,100,0.9,0.01
";
        assert_eq!(tau_rule_csv(&meta(), &rows), expected);
    }

    #[test]
    fn json_preserves_field_order_and_wide_counters() {
        let report = GatesReport {
            meta: meta(),
            n: 1,
            tau: 62,
            variant: "a".to_string(),
            delta: None,
            // Larger than any 64-bit counter holds.
            oracle_formula_gates: (2u128 << 123) + 3,
            inverse_qft_formula_gates: 2046,
            constructed_gates: 150,
            circuit: None,
        };
        let text = render_json(&report);
        assert!(text.contains("\"oracle_formula_gates\": 21267647932558653966460912964485513219"));
        let meta_pos = text.find("\"meta\"").unwrap();
        let oracle_pos = text.find("\"oracle_formula_gates\"").unwrap();
        let constructed_pos = text.find("\"constructed_gates\"").unwrap();
        assert!(meta_pos < oracle_pos && oracle_pos < constructed_pos);
        assert!(!text.contains("\"delta\""));
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn optional_fields_appear_when_set() {
        let report = TrainReport {
            meta: meta(),
            data: "set.csv".to_string(),
            examples: 8,
            dimension: 4,
            eta: 0.25,
            max_epochs: 500,
            classifier: "quantum".to_string(),
            init: "zeros".to_string(),
            backend: Some("analytic".to_string()),
            tau: Some(8),
            shots: Some(11),
            epochs_used: 3,
            accuracy: 1.0,
            final_weights: vec![0.75, -0.5],
        };
        let text = render_json(&report);
        assert!(text.contains("\"tau\": 8"));
        assert!(text.contains("\"shots\": 11"));
        assert!(text.contains("\"accuracy\": 1.0"));
    }
}
