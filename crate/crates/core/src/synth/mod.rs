//! Synthetic aircraft silhouettes with known dimensions, rasterized to the
//! same masks and manifests a detector would produce.

mod raster;
mod scene;
mod shape;

pub use raster::{fill_polygon, outline_px, rasterize, Placement};
pub use scene::{generate_manifest, FleetOptions, GeneratedScene, SynthInstance, SynthScene};
pub use shape::{
    polygon_area, polygon_perimeter, ShapeKind, SilhouetteSpec, DEFAULT_PLANE_ASPECT, MAX_PLANE_ASPECT,
    MIN_PLANE_ASPECT,
};
