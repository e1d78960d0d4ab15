use std::fmt;

use serde::Serialize;

use crate::identify::Catalog;
use crate::scalar::Real;

use super::manifest::{DetectionRecord, SceneManifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FindingKind {
    /// No foreground pixels; the record cannot be measured.
    EmptyDetection,
    /// Pixels outside the declared mask dimensions.
    OutOfBounds { count: usize },
    /// Ground-truth shortcut missing from the catalog.
    UnknownType { shortcut: String },
    /// Foreground reaches the first/last row or column; the aircraft is
    /// probably cropped and its length underestimated.
    BorderTouching,
    /// Nearest catalog length is off by more than the configured fraction.
    LowConfidence { abs_error_m: f64, threshold_m: f64 },
    /// Measurement or classification failed.
    RecordFailed { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub image_id: String,
    pub severity: Severity,
    #[serde(flatten)]
    pub kind: FindingKind,
}

impl Finding {
    pub fn new(image_id: impl Into<String>, kind: FindingKind) -> Self {
        let severity = match kind {
            FindingKind::BorderTouching | FindingKind::LowConfidence { .. } => Severity::Warning,
            _ => Severity::Error,
        };
        Self {
            image_id: image_id.into(),
            severity,
            kind,
        }
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FindingKind::EmptyDetection => write!(f, "empty-detection"),
            FindingKind::OutOfBounds { count } => write!(f, "out-of-bounds ({count} px)"),
            FindingKind::UnknownType { shortcut } => write!(f, "unknown-type `{shortcut}`"),
            FindingKind::BorderTouching => write!(f, "border-touching"),
            FindingKind::LowConfidence {
                abs_error_m,
                threshold_m,
            } => {
                write!(f, "low-confidence (error {abs_error_m:.2} m > {threshold_m:.2} m)")
            }
            FindingKind::RecordFailed { message } => write!(f, "failed: {message}"),
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{level}: {}: {}", self.image_id, self.kind)
    }
}

/// Input checks that do not abort a batch. Findings follow record order.
pub fn validate<T: Real>(manifest: &SceneManifest<T>, catalog: &Catalog<T>) -> Vec<Finding> {
    manifest
        .records
        .iter()
        .flat_map(|r| validate_record(r, catalog))
        .collect()
}

pub fn validate_record<T: Real>(record: &DetectionRecord<T>, catalog: &Catalog<T>) -> Vec<Finding> {
    let mut kinds = Vec::new();
    if record.mask.is_empty() {
        kinds.push(FindingKind::EmptyDetection);
    }
    let stray = record.mask.out_of_bounds().count();
    if stray > 0 {
        kinds.push(FindingKind::OutOfBounds { count: stray });
    }
    if let Some(gt) = &record.ground_truth {
        if catalog.get(gt).is_none() {
            kinds.push(FindingKind::UnknownType { shortcut: gt.clone() });
        }
    }
    if record.mask.touches_border() {
        kinds.push(FindingKind::BorderTouching);
    }
    kinds.into_iter().map(|k| Finding::new(&record.image_id, k)).collect()
}
