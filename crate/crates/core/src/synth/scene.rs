use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::identify::Catalog;
use crate::maskio::{encode_pgm, CameraFile, ManifestFile, MaskSource, RecordFile};
use crate::photogrammetry::{altitude_for_gsd, CameraModel, GroundResolution, ResizeScale};

use super::raster::{outline_px, rasterize, Placement};
use super::shape::{ShapeKind, SilhouetteSpec, DEFAULT_PLANE_ASPECT};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthInstance {
    pub spec: SilhouetteSpec,
    /// Fraction of the silhouette's horizontal extent pushed past the left
    /// image edge. Zero keeps it centered and whole.
    pub crop_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthScene {
    pub gsd: GroundResolution<f64>,
    pub resize_scale: ResizeScale<f64>,
    pub width: u32,
    pub height: u32,
    pub instances: Vec<SynthInstance>,
}

/// Knobs for [`SynthScene::fleet`].
#[derive(Debug, Clone, PartialEq)]
pub struct FleetOptions {
    /// Shortcuts to draw; empty means the whole catalog.
    pub types: Vec<String>,
    pub count: usize,
    pub gsd_cm: f64,
    pub resize_scale: f64,
    pub seed: u64,
    pub shape_kind: ShapeKind,
    pub aspect_ratio: Option<f64>,
    /// Fixed rotation; random per instance when unset.
    pub rotation_deg: Option<f64>,
    pub crop_fraction: f64,
    /// Replaces the catalog length of every drawn type.
    pub length_m: Option<f64>,
    /// Added to the length of every drawn type.
    pub length_delta_m: f64,
}

impl Default for FleetOptions {
    fn default() -> Self {
        Self {
            types: Vec::new(),
            count: 10,
            gsd_cm: 30.0,
            resize_scale: 1.0,
            seed: 7,
            shape_kind: ShapeKind::StylizedPlane,
            aspect_ratio: None,
            rotation_deg: None,
            crop_fraction: 0.0,
            length_m: None,
            length_delta_m: 0.0,
        }
    }
}

/// Output of [`generate_manifest`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedScene {
    pub manifest_path: PathBuf,
    pub manifest: ManifestFile,
}

impl SynthScene {
    /// `count` silhouettes of each selected catalog type, each in its own
    /// square image large enough for the longest one.
    pub fn fleet(catalog: &Catalog<f64>, opts: &FleetOptions) -> Result<Self> {
        let gsd = GroundResolution::from_cm_per_px(opts.gsd_cm)?;
        let resize_scale = ResizeScale::new(opts.resize_scale)?;
        if !(0.0..1.0).contains(&opts.crop_fraction) {
            return Err(Error::invalid("crop_fraction", "must be in [0, 1)"));
        }
        let specs = if opts.types.is_empty() {
            catalog.entries().to_vec()
        } else {
            opts.types
                .iter()
                .map(|t| {
                    catalog
                        .get(t)
                        .cloned()
                        .ok_or_else(|| Error::Config(format!("type `{t}` is not in the catalog")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let aspect = opts.aspect_ratio.unwrap_or(match opts.shape_kind {
            ShapeKind::StylizedPlane => DEFAULT_PLANE_ASPECT,
            ShapeKind::Rectangle => 0.1,
        });

        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut instances = Vec::with_capacity(specs.len() * opts.count);
        for spec in &specs {
            let length = opts.length_m.unwrap_or(spec.actual_length_m) + opts.length_delta_m;
            for _ in 0..opts.count {
                let rotation = match opts.rotation_deg {
                    Some(r) => r,
                    None => rng.random_range(0.0..360.0),
                };
                let jitter_seed = rng.random::<u64>();
                instances.push(SynthInstance {
                    spec: SilhouetteSpec::new(
                        spec.shortcut.clone(),
                        length,
                        aspect,
                        rotation,
                        opts.shape_kind,
                        Some(jitter_seed),
                    )?,
                    crop_fraction: opts.crop_fraction,
                });
            }
        }

        let longest_m = instances.iter().map(|i| i.spec.length_m).fold(0.0, f64::max);
        let longest_px = longest_m / (gsd.m_per_px() * resize_scale.linear_factor());
        let side = (longest_px * 1.1).ceil() as u32 + 8;
        Ok(Self {
            gsd,
            resize_scale,
            width: side,
            height: side,
            instances,
        })
    }

    fn placement(&self, instance: &SynthInstance) -> Placement {
        let mut placement = Placement::centered(self.width, self.height);
        if instance.crop_fraction > 0.0 {
            let poly = outline_px(&instance.spec, self.gsd, self.resize_scale, placement.center);
            let (lo, hi) = poly
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| {
                    (lo.min(x), hi.max(x))
                });
            placement.center.0 -= lo + instance.crop_fraction * (hi - lo);
            placement.allow_crop = true;
        }
        placement
    }

    pub fn image_id(index: usize, instance: &SynthInstance) -> String {
        format!("synth-{index:04}-{}", instance.spec.shortcut)
    }
}

/// Writes `masks/<image_id>.pgm` and `manifest.json` under `out_dir`.
///
/// The camera is the reference mapping-drone sensor with its width set to
/// the processed width times the resize scale; altitude is solved so the
/// manifest reproduces the scene's ground resolution.
pub fn generate_manifest(scene: &SynthScene, out_dir: impl AsRef<Path>) -> Result<GeneratedScene> {
    let out_dir = out_dir.as_ref();
    let mask_dir = out_dir.join("masks");
    fs::create_dir_all(&mask_dir).map_err(|e| Error::io(&mask_dir, e))?;

    let factor = scene.resize_scale.linear_factor();
    let reference = CameraModel::<f64>::mapping_drone();
    let camera = CameraModel::new(
        reference.sensor_width_mm,
        reference.sensor_height_mm,
        reference.focal_length_mm,
        (f64::from(scene.width) * factor).round() as u32,
        (f64::from(scene.height) * factor).round() as u32,
    )?;
    let flight = altitude_for_gsd(&camera, scene.gsd)?;

    let mut records = Vec::with_capacity(scene.instances.len());
    for (i, instance) in scene.instances.iter().enumerate() {
        let image_id = SynthScene::image_id(i, instance);
        let mask = rasterize(
            &instance.spec,
            scene.gsd,
            scene.resize_scale,
            &scene.placement(instance),
        )
        .map_err(|e| e.for_record(&image_id))?;
        let rel = PathBuf::from("masks").join(format!("{image_id}.pgm"));
        let path = out_dir.join(&rel);
        fs::write(&path, encode_pgm(&mask)).map_err(|e| Error::io(&path, e))?;
        records.push(RecordFile {
            image_id,
            mask: MaskSource::Path(rel),
            ground_truth: Some(instance.spec.shortcut.clone()),
            resize_scale: factor,
        });
    }

    let manifest = ManifestFile {
        camera: CameraFile {
            sensor_width_mm: camera.sensor_width_mm,
            sensor_height_mm: camera.sensor_height_mm,
            focal_length_mm: camera.focal_length_mm,
            image_width_px: camera.image_width_px,
            image_height_px: camera.image_height_px,
        },
        altitude_m: flight.altitude_m,
        records,
    };
    let manifest_path = out_dir.join("manifest.json");
    fs::write(&manifest_path, manifest.to_json_pretty()).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(GeneratedScene {
        manifest_path,
        manifest,
    })
}
