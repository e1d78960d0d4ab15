//! Batch evaluation against ground truth: per-type mean detected length,
//! length accuracy, and the confusion matrix.

mod confusion;
mod report;

pub use confusion::{build_confusion, ConfusionMatrix};
pub use report::{EvaluationReport, LengthAccuracyRow, PredictionRecord, REPORT_SCHEMA};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::identify::{identify_record, Catalog, IdentifyConfig};
use crate::maskio::{validate_record, Finding, FindingKind, SceneManifest};
use crate::scalar::Real;

/// Stored `(ground_truth, predicted)` pairs reproducing the published
/// 145-record confusion matrix of the reference study.
pub const REFERENCE_PAIRS_CSV: &str = include_str!("../../fixtures/reference_pairs.csv");

/// Parses `ground_truth,predicted` CSV.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["ground_truth", "predicted"] {
        return Err(Error::Config("pairs header must be `ground_truth,predicted`".into()));
    }
    rdr.deserialize::<(String, String)>()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn reference_pairs() -> Vec<(String, String)> {
    parse_pairs(REFERENCE_PAIRS_CSV).expect("embedded fixture parses")
}

/// Arithmetic mean of the detected lengths.
pub fn detected_length_avg<T: Real>(lengths: &[T]) -> Result<T> {
    if lengths.is_empty() {
        return Err(Error::EmptySet);
    }
    let sum = lengths.iter().fold(T::zero(), |acc, &x| acc + x);
    Ok(sum / T::from_count(lengths.len() as u64))
}

/// `100 * max(0, 1 - |detected - actual| / actual)`, full precision.
pub fn length_accuracy_pct<T: Real>(detected_avg_m: T, actual_length_m: T) -> Result<T> {
    if !(actual_length_m.is_finite() && actual_length_m > T::zero()) {
        return Err(Error::invalid(
            "actual_length_m",
            format!("must be > 0, got {actual_length_m}"),
        ));
    }
    if !(detected_avg_m.is_finite() && detected_avg_m >= T::zero()) {
        return Err(Error::invalid(
            "detected_avg_m",
            format!("must be finite and >= 0, got {detected_avg_m}"),
        ));
    }
    let rel = (detected_avg_m - actual_length_m).abs() / actual_length_m;
    Ok(T::lit(100.0) * (T::one() - rel).max(T::zero()))
}

/// Integer shown in tables; halves round away from zero.
pub fn display_round<T: Real>(x: T) -> i64 {
    x.round().to_i64().unwrap_or(0)
}

/// Identifies every record and aggregates by ground truth.
///
/// Records that fail to measure are reported as findings and left out of the
/// rows and the matrix. Aggregates do not depend on record order.
pub fn evaluate_scene<T: Real>(
    manifest: &SceneManifest<T>,
    catalog: &Catalog<T>,
    config: &IdentifyConfig<T>,
) -> Result<EvaluationReport<T>> {
    if manifest.records.is_empty() {
        return Err(Error::EmptyManifest);
    }
    let missing: Vec<String> = manifest
        .records
        .iter()
        .filter(|r| r.ground_truth.is_none())
        .map(|r| r.image_id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingGroundTruth { image_ids: missing });
    }
    let unknown: Vec<String> = manifest
        .records
        .iter()
        .filter_map(|r| r.ground_truth.as_deref())
        .filter(|gt| catalog.get(gt).is_none())
        .map(|gt| format!("`{gt}`"))
        .collect();
    if !unknown.is_empty() {
        return Err(Error::Config(format!(
            "ground truth not in catalog: {}",
            unknown.join(", ")
        )));
    }

    let mut findings = Vec::new();
    let outcomes: Vec<_> = manifest
        .records
        .par_iter()
        .map(|r| identify_record(r, &manifest.camera, &manifest.flight, catalog, config))
        .collect();

    let mut predictions = Vec::new();
    let mut per_type: Vec<Vec<T>> = vec![Vec::new(); catalog.len()];
    for (record, outcome) in manifest.records.iter().zip(outcomes) {
        let truth = record.ground_truth.clone().expect("checked above");
        findings.extend(validate_record(record, catalog));
        match outcome {
            Ok(id) => {
                for w in &id.warnings {
                    if matches!(w, FindingKind::LowConfidence { .. }) {
                        findings.push(Finding::new(&record.image_id, w.clone()));
                    }
                }
                let t = catalog.index_of(&truth).expect("checked above");
                per_type[t].push(id.measurement.length_m);
                predictions.push(PredictionRecord {
                    image_id: record.image_id.clone(),
                    ground_truth: truth,
                    predicted: id.classification.predicted.shortcut.clone(),
                    length_m: id.measurement.length_m,
                    area_m2: id.measurement.area_m2,
                    abs_error_m: id.classification.abs_error_m,
                });
            }
            Err(e) => {
                // empty masks are already reported by validation
                if !matches!(e.root(), Error::EmptyDetection) {
                    findings.push(Finding::new(
                        &record.image_id,
                        FindingKind::RecordFailed {
                            message: e.root().to_string(),
                        },
                    ));
                }
            }
        }
    }

    let mut rows = Vec::new();
    let mut missing_types = Vec::new();
    for (spec, lengths) in catalog.entries().iter().zip(per_type.iter_mut()) {
        if lengths.is_empty() {
            missing_types.push(spec.shortcut.clone());
            continue;
        }
        // summation order fixed by value, so record order cannot change the bits
        lengths.sort_by(|a, b| a.partial_cmp(b).expect("finite lengths"));
        let avg = detected_length_avg(lengths)?;
        rows.push(LengthAccuracyRow {
            shortcut: spec.shortcut.clone(),
            detected_avg_m: avg,
            actual_length_m: spec.actual_length_m,
            accuracy_pct: length_accuracy_pct(avg, spec.actual_length_m)?,
            n: lengths.len(),
        });
    }
    let overall_avg_accuracy_pct = if rows.is_empty() {
        None
    } else {
        let accs: Vec<T> = rows.iter().map(|r| r.accuracy_pct).collect();
        Some(detected_length_avg(&accs)?)
    };
    let pairs: Vec<(&str, &str)> = predictions
        .iter()
        .map(|p| (p.ground_truth.as_str(), p.predicted.as_str()))
        .collect();
    let matrix = build_confusion(&pairs, catalog)?;

    Ok(EvaluationReport {
        rows,
        overall_avg_accuracy_pct,
        missing_types,
        matrix,
        findings,
        predictions,
    })
}
