//! Aircraft type identification from nadir instance masks.
//!
//! The pipeline turns camera intrinsics and flight altitude into a ground
//! sample distance, measures each detected aircraft's area (pixel count) and
//! length (exact convex-hull diameter), and matches the length against a
//! fleet catalog. [`evaluate`] aggregates a labelled scene into per-type
//! length accuracy and a confusion matrix; [`synth`] produces labelled scenes
//! with known ground truth.
//!
//! Measurement types are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

pub mod error;
pub mod evaluate;
pub mod geometry;
pub mod identify;
pub mod maskio;
pub mod photogrammetry;
pub mod scalar;
pub mod synth;

pub use error::{Error, Result};
pub use scalar::Real;

pub type CameraModelF64 = photogrammetry::CameraModel<f64>;
pub type CameraModelF32 = photogrammetry::CameraModel<f32>;
pub type GroundResolutionF64 = photogrammetry::GroundResolution<f64>;
pub type GroundResolutionF32 = photogrammetry::GroundResolution<f32>;
pub type CatalogF64 = identify::Catalog<f64>;
pub type CatalogF32 = identify::Catalog<f32>;
pub type MeasurementF64 = identify::Measurement<f64>;
pub type MeasurementF32 = identify::Measurement<f32>;
pub type IdentificationF64 = identify::Identification<f64>;
pub type IdentificationF32 = identify::Identification<f32>;
pub type SceneManifestF64 = maskio::SceneManifest<f64>;
pub type SceneManifestF32 = maskio::SceneManifest<f32>;
pub type EvaluationReportF64 = evaluate::EvaluationReport<f64>;
pub type EvaluationReportF32 = evaluate::EvaluationReport<f32>;
