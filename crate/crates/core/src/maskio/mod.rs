//! Mask and manifest I/O: the boundary between an upstream instance
//! segmenter and the measurement pipeline.

mod manifest;
mod mask;
mod pgm;
mod rle;
mod validate;

pub use manifest::{CameraFile, DetectionRecord, ManifestFile, MaskSource, RecordFile, RleFile, SceneManifest};
pub use mask::{Mask, MAX_PIXELS};
pub use pgm::{encode_pgm, load_bitmap, parse_pgm, save_bitmap};
pub use rle::{decode_rle, decode_rle_signed, encode_rle};
pub use validate::{validate, validate_record, Finding, FindingKind, Severity};
