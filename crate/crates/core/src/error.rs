use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("malformed run-length encoding: {0}")]
    MalformedRle(String),

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed PGM header in {}: {reason}", path.display())]
    MalformedPgm { path: PathBuf, reason: String },

    #[error("image dimensions {width}x{height} exceed the supported maximum of {max} pixels")]
    DimensionOverflow { width: u64, height: u64, max: u64 },

    #[error("pixel ({x}, {y}) lies outside the {width}x{height} mask")]
    PixelOutOfBounds { x: i64, y: i64, width: u32, height: u32 },

    #[error("geometry requires at least one point")]
    EmptyGeometry,

    #[error("detection has no foreground pixels")]
    EmptyDetection,

    #[error("cannot average an empty set")]
    EmptySet,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("manifest field `{field}`: {reason}")]
    Manifest { field: String, reason: String },

    #[error("evaluation input: records without ground truth: {}", image_ids.join(", "))]
    MissingGroundTruth { image_ids: Vec<String> },

    #[error("evaluation input: manifest has no records")]
    EmptyManifest,

    #[error(
        "silhouette spans {length_px:.3} px, below the 2 px minimum; \
         the coarsest resolvable ground resolution is {min_gsd_cm:.3} cm/px"
    )]
    TooSmall { length_px: f64, min_gsd_cm: f64 },

    #[error("record `{image_id}`: {source}")]
    Record {
        image_id: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Wraps the error with the image id of the record that produced it.
    pub fn for_record(self, image_id: impl Into<String>) -> Self {
        Error::Record {
            image_id: image_id.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping record tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Record { source, .. } => source.root(),
            other => other,
        }
    }
}
