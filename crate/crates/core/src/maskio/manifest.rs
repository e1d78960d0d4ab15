//! Scene manifest: camera intrinsics, altitude, and the detections of one
//! acquisition.
//!
//! ```json
//! {
//!   "camera": {"sensor_width_mm": 12.75, "sensor_height_mm": 8.5,
//!              "focal_length_mm": 10.6, "image_width_px": 4608, "image_height_px": 3456},
//!   "altitude_m": 120.0,
//!   "records": [
//!     {"image_id": "a", "mask": {"path": "masks/a.pgm"}, "ground_truth": "CM2", "resize_scale": 15.0},
//!     {"image_id": "b", "mask": {"rle": {"width": 2, "height": 2, "counts": [1, 2, 1]}}, "resize_scale": 1.0}
//!   ]
//! }
//! ```
//!
//! Mask paths are resolved relative to the manifest's directory.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photogrammetry::{CameraModel, FlightParams, ResizeScale};
use crate::scalar::Real;

use super::mask::Mask;
use super::pgm::load_bitmap;
use super::rle::decode_rle_signed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CameraFile {
    pub sensor_width_mm: f64,
    pub sensor_height_mm: f64,
    pub focal_length_mm: f64,
    pub image_width_px: u32,
    pub image_height_px: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RleFile {
    pub width: u32,
    pub height: u32,
    pub counts: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskSource {
    Path(PathBuf),
    Rle(RleFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordFile {
    pub image_id: String,
    pub mask: MaskSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<String>,
    pub resize_scale: f64,
}

/// On-disk manifest document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestFile {
    pub camera: CameraFile,
    pub altitude_m: f64,
    pub records: Vec<RecordFile>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionRecord<T> {
    pub image_id: String,
    pub mask: Mask,
    pub ground_truth: Option<String>,
    pub resize_scale: ResizeScale<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneManifest<T> {
    pub camera: CameraModel<T>,
    pub flight: FlightParams<T>,
    pub records: Vec<DetectionRecord<T>>,
}

fn field_error(field: impl Into<String>, err: Error) -> Error {
    let reason = match err {
        Error::InvalidParameter { reason, .. } => reason,
        other => other.to_string(),
    };
    Error::Manifest {
        field: field.into(),
        reason,
    }
}

fn scalar<T: Real>(field: &str, v: f64) -> Result<T> {
    T::from_f64(v).ok_or_else(|| Error::Manifest {
        field: field.into(),
        reason: format!("{v} not representable"),
    })
}

impl ManifestFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }

    /// Validates scalars and decodes or loads every mask. Relative mask paths
    /// resolve against `base_dir`.
    pub fn resolve<T: Real>(&self, base_dir: &Path) -> Result<SceneManifest<T>> {
        let c = &self.camera;
        let camera = CameraModel::new(
            scalar("camera.sensor_width_mm", c.sensor_width_mm)?,
            scalar("camera.sensor_height_mm", c.sensor_height_mm)?,
            scalar("camera.focal_length_mm", c.focal_length_mm)?,
            c.image_width_px,
            c.image_height_px,
        )
        .map_err(|e| match e {
            Error::InvalidParameter { field, reason } => Error::Manifest {
                field: format!("camera.{field}"),
                reason,
            },
            other => other,
        })?;
        let flight =
            FlightParams::new(scalar("altitude_m", self.altitude_m)?).map_err(|e| field_error("altitude_m", e))?;
        let records = self
            .records
            .par_iter()
            .enumerate()
            .map(|(i, r)| {
                let scale = ResizeScale::new(scalar(&format!("records[{i}].resize_scale"), r.resize_scale)?)
                    .map_err(|e| field_error(format!("records[{i}].resize_scale"), e))?;
                let mask = match &r.mask {
                    MaskSource::Path(p) => load_bitmap(base_dir.join(p)),
                    MaskSource::Rle(rle) => decode_rle_signed(&rle.counts, rle.width, rle.height)
                        .map_err(|e| field_error(format!("records[{i}].mask.rle"), e)),
                }
                .map_err(|e| e.for_record(&r.image_id))?;
                Ok(DetectionRecord {
                    image_id: r.image_id.clone(),
                    mask,
                    ground_truth: r.ground_truth.clone(),
                    resize_scale: scale,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SceneManifest {
            camera,
            flight,
            records,
        })
    }
}

impl<T: Real> SceneManifest<T> {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        ManifestFile::from_json(&text)?.resolve(base)
    }

    pub fn from_json(text: &str, base_dir: &Path) -> Result<Self> {
        ManifestFile::from_json(text)?.resolve(base_dir)
    }
}
