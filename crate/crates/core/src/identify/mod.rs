//! Mask to physical measurements to aircraft type.

mod catalog;

pub use catalog::{AircraftSpec, Catalog};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{farthest_pair, pixel_count, DiameterResult};
use crate::maskio::{DetectionRecord, FindingKind, Mask};
use crate::photogrammetry::{compute_gsd, px_to_meters, CameraModel, FlightParams, GroundResolution, ResizeScale};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentifyConfig<T> {
    /// A match is flagged low-confidence when its absolute error exceeds this
    /// fraction of the predicted aircraft's length.
    pub low_confidence_ratio: T,
}

impl<T: Real> Default for IdentifyConfig<T> {
    fn default() -> Self {
        Self {
            low_confidence_ratio: T::lit(0.25),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measurement<T> {
    pub length_m: T,
    pub area_m2: T,
    pub diameter: DiameterResult,
    pub pixel_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification<T> {
    pub predicted: AircraftSpec<T>,
    pub abs_error_m: T,
    pub runner_up: Option<AircraftSpec<T>>,
    /// Runner-up error minus winner error; zero for a singleton catalog.
    pub margin_m: T,
    pub low_confidence: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Identification<T> {
    pub image_id: String,
    pub measurement: Measurement<T>,
    pub classification: Classification<T>,
    pub warnings: Vec<FindingKind>,
}

/// Ground area covered by the mask: `pixels * GSD^2 * scale^2`.
pub fn estimate_area<T: Real>(mask: &Mask, gsd: GroundResolution<T>, scale: ResizeScale<T>) -> Result<T> {
    let n = pixel_count(mask);
    if n == 0 {
        return Err(Error::EmptyDetection);
    }
    let side = gsd.m_per_px();
    Ok(T::from_count(n) * side * side * scale.area_factor())
}

/// Length is the center-to-center diameter of the mask, converted to meters.
/// Area is filled in alongside.
pub fn estimate_length<T: Real>(
    mask: &Mask,
    gsd: GroundResolution<T>,
    scale: ResizeScale<T>,
) -> Result<Measurement<T>> {
    if mask.is_empty() {
        return Err(Error::EmptyDetection);
    }
    let diameter = farthest_pair(&mask.boundary_pixels())?;
    Ok(Measurement {
        length_m: px_to_meters(diameter.dist_px(), gsd, scale)?,
        area_m2: estimate_area(mask, gsd, scale)?,
        diameter,
        pixel_count: pixel_count(mask),
    })
}

/// Nearest-length match against `catalog` with the default threshold.
pub fn classify<T: Real>(length_m: T, catalog: &Catalog<T>) -> Result<Classification<T>> {
    classify_with(length_m, catalog, &IdentifyConfig::default())
}

/// Ties go to the shorter aircraft, then to the smaller shortcut, which is
/// the catalog's own order.
pub fn classify_with<T: Real>(
    length_m: T,
    catalog: &Catalog<T>,
    config: &IdentifyConfig<T>,
) -> Result<Classification<T>> {
    if !length_m.is_finite() || length_m < T::zero() {
        return Err(Error::invalid(
            "length_m",
            format!("must be finite and >= 0, got {length_m}"),
        ));
    }
    if catalog.is_empty() {
        return Err(Error::Config("catalog is empty".into()));
    }
    let err = |s: &AircraftSpec<T>| (length_m - s.actual_length_m).abs();
    let mut best: Option<(usize, T)> = None;
    let mut second: Option<(usize, T)> = None;
    for (i, spec) in catalog.entries().iter().enumerate() {
        let e = err(spec);
        match best {
            Some((_, be)) if e >= be => {
                if second.is_none_or(|(_, se)| e < se) {
                    second = Some((i, e));
                }
            }
            _ => {
                second = best;
                best = Some((i, e));
            }
        }
    }
    let (wi, we) = best.expect("non-empty catalog");
    let predicted = catalog.entries()[wi].clone();
    let low_confidence = we > config.low_confidence_ratio * predicted.actual_length_m;
    Ok(Classification {
        predicted,
        abs_error_m: we,
        runner_up: second.map(|(i, _)| catalog.entries()[i].clone()),
        margin_m: second.map_or(T::zero(), |(_, se)| se - we),
        low_confidence,
    })
}

/// Ground resolution, then length and area, then classification, for one
/// record. Errors carry the record's image id.
pub fn identify_record<T: Real>(
    record: &DetectionRecord<T>,
    camera: &CameraModel<T>,
    flight: &FlightParams<T>,
    catalog: &Catalog<T>,
    config: &IdentifyConfig<T>,
) -> Result<Identification<T>> {
    let run = || -> Result<Identification<T>> {
        let gsd = compute_gsd(camera, flight)?;
        let measurement = estimate_length(&record.mask, gsd, record.resize_scale)?;
        let classification = classify_with(measurement.length_m, catalog, config)?;
        let mut warnings = Vec::new();
        if record.mask.touches_border() {
            warnings.push(FindingKind::BorderTouching);
        }
        if classification.low_confidence {
            warnings.push(FindingKind::LowConfidence {
                abs_error_m: classification.abs_error_m.to_f64_lossy(),
                threshold_m: (config.low_confidence_ratio * classification.predicted.actual_length_m).to_f64_lossy(),
            });
        }
        Ok(Identification {
            image_id: record.image_id.clone(),
            measurement,
            classification,
            warnings,
        })
    };
    run().map_err(|e| e.for_record(&record.image_id))
}
