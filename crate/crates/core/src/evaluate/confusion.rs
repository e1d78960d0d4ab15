use serde::Serialize;

use crate::error::{Error, Result};
use crate::identify::Catalog;
use crate::scalar::Real;

/// `counts[t][p]`: records of ground-truth type `t` predicted as `p`, with
/// labels in catalog order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
}

/// Tallies `(ground_truth, predicted)` pairs. Both sides must be catalog
/// shortcuts.
pub fn build_confusion<T, S1, S2>(pairs: &[(S1, S2)], catalog: &Catalog<T>) -> Result<ConfusionMatrix>
where
    T: Real,
    S1: AsRef<str>,
    S2: AsRef<str>,
{
    let labels: Vec<String> = catalog.shortcuts().map(String::from).collect();
    let n = labels.len();
    let mut counts = vec![vec![0u64; n]; n];
    let index = |s: &str| {
        catalog
            .index_of(s)
            .ok_or_else(|| Error::Config(format!("shortcut `{s}` is not in the catalog")))
    };
    for (truth, predicted) in pairs {
        let t = index(truth.as_ref())?;
        let p = index(predicted.as_ref())?;
        counts[t][p] += 1;
    }
    Ok(ConfusionMatrix { labels, counts })
}

impl ConfusionMatrix {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// Count for ground truth `truth` predicted as `predicted`, by shortcut.
    pub fn get(&self, truth: &str, predicted: &str) -> Option<u64> {
        let t = self.labels.iter().position(|l| l == truth)?;
        let p = self.labels.iter().position(|l| l == predicted)?;
        Some(self.counts[t][p])
    }

    pub fn row_sum(&self, truth: &str) -> Option<u64> {
        let t = self.labels.iter().position(|l| l == truth)?;
        Some(self.counts[t].iter().sum())
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }

    /// Fraction of records on the diagonal; `None` for an empty matrix.
    pub fn accuracy(&self) -> Option<f64> {
        let total = self.total();
        (total > 0).then(|| self.trace() as f64 / total as f64)
    }

    pub fn is_diagonal(&self) -> bool {
        self.counts
            .iter()
            .enumerate()
            .all(|(t, row)| row.iter().enumerate().all(|(p, &c)| t == p || c == 0))
    }

    /// Space-aligned grid: ground truth down the side, predictions across.
    pub fn render_text(&self) -> String {
        let side = self.labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.labels.len())
            .map(|p| {
                let widest = self.counts.iter().map(|r| r[p].to_string().len()).max().unwrap_or(1);
                self.labels[p].len().max(widest)
            })
            .collect();
        let mut out = String::new();
        out.push_str(&" ".repeat(side));
        for (label, w) in self.labels.iter().zip(&widths) {
            out.push_str(&format!("  {label:>w$}"));
        }
        out.push('\n');
        for (label, row) in self.labels.iter().zip(&self.counts) {
            out.push_str(&format!("{label:<side$}"));
            for (c, w) in row.iter().zip(&widths) {
                out.push_str(&format!("  {c:>w$}"));
            }
            out.push('\n');
        }
        out
    }

    /// CSV with a header row and a header column of shortcuts.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("truth\\predicted");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (label, row) in self.labels.iter().zip(&self.counts) {
            out.push_str(label);
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}
