use serde::Serialize;

use super::{display_round, ConfusionMatrix};
use crate::maskio::Finding;
use crate::scalar::Real;

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthAccuracyRow<T> {
    pub shortcut: String,
    pub detected_avg_m: T,
    pub actual_length_m: T,
    pub accuracy_pct: T,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionRecord<T> {
    pub image_id: String,
    pub ground_truth: String,
    pub predicted: String,
    pub length_m: T,
    pub area_m2: T,
    pub abs_error_m: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport<T> {
    /// One row per catalog type with at least one measured record, in
    /// catalog order.
    pub rows: Vec<LengthAccuracyRow<T>>,
    /// Mean of the row accuracies; `None` when nothing was measured.
    pub overall_avg_accuracy_pct: Option<T>,
    /// Catalog types with no measured record.
    pub missing_types: Vec<String>,
    pub matrix: ConfusionMatrix,
    pub findings: Vec<Finding>,
    /// Successful identifications in manifest order.
    pub predictions: Vec<PredictionRecord<T>>,
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema: u32,
    classification_accuracy: Option<f64>,
    #[serde(flatten)]
    report: &'a EvaluationReport<T>,
}

impl<T: Real> EvaluationReport<T> {
    pub fn to_json_pretty(&self) -> String {
        let env = Envelope {
            schema: REPORT_SCHEMA,
            classification_accuracy: self.matrix.accuracy(),
            report: self,
        };
        serde_json::to_string_pretty(&env).expect("report serializes") + "\n"
    }

    /// Per-type length accuracy table; missing types show `-`.
    pub fn render_accuracy_table(&self) -> String {
        let headers = ["Plane", "n", "Detected avg (m)", "Actual (m)", "Accuracy %"];
        let mut cells: Vec<[String; 5]> = Vec::new();
        for label in self.matrix.labels() {
            match self.rows.iter().find(|r| &r.shortcut == label) {
                Some(r) => cells.push([
                    r.shortcut.clone(),
                    r.n.to_string(),
                    format!("{:.2}", r.detected_avg_m.to_f64_lossy()),
                    format!("{:.2}", r.actual_length_m.to_f64_lossy()),
                    display_round(r.accuracy_pct).to_string(),
                ]),
                None => cells.push([label.clone(), "0".into(), "-".into(), "-".into(), "-".into()]),
            }
        }
        let avg = self
            .overall_avg_accuracy_pct
            .map_or_else(|| "-".to_string(), |a| display_round(a).to_string());
        cells.push(["Average".into(), String::new(), String::new(), String::new(), avg]);

        let mut widths = headers.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |row: [&str; 5]| {
            let mut s = format!("{:<w$}", row[0], w = widths[0]);
            for (c, w) in row.iter().zip(&widths).skip(1) {
                s.push_str(&format!("  {c:>w$}"));
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(headers);
        for row in &cells {
            out.push_str(&line([&row[0], &row[1], &row[2], &row[3], &row[4]]));
        }
        out
    }

    /// Both tables plus findings, as plain text.
    pub fn render_text(&self) -> String {
        let mut out = String::from("LENGTH DETECTION ACCURACY %\n");
        out.push_str(&self.render_accuracy_table());
        out.push_str("\nCONFUSION MATRIX (rows: ground truth, columns: predicted)\n");
        out.push_str(&self.matrix.render_text());
        if !self.findings.is_empty() {
            out.push_str("\nFINDINGS\n");
            for f in &self.findings {
                out.push_str(&format!("{f}\n"));
            }
        }
        out
    }
}
