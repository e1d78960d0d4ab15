use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::maskio::Mask;
use crate::photogrammetry::{GroundResolution, ResizeScale};

use super::shape::SilhouetteSpec;

/// Where a silhouette lands in the processed image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    /// Shape center in continuous pixel coordinates; pixel `(x, y)` covers
    /// `[x, x+1) x [y, y+1)`.
    pub center: (f64, f64),
    pub width: u32,
    pub height: u32,
    /// Allow the outline to leave the image; outside pixels are dropped.
    pub allow_crop: bool,
}

impl Placement {
    pub fn centered(width: u32, height: u32) -> Self {
        Self {
            center: (f64::from(width) / 2.0, f64::from(height) / 2.0),
            width,
            height,
            allow_crop: false,
        }
    }
}

/// Exact for multiples of 90 degrees so quarter turns map pixel centers onto
/// pixel centers.
fn rotation(deg: f64) -> (f64, f64) {
    if deg % 90.0 == 0.0 {
        match (deg / 90.0) as i64 % 4 {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    } else {
        let r = deg.to_radians();
        (r.cos(), r.sin())
    }
}

/// Outline in pixel coordinates after scaling, rotation, jitter and
/// translation.
pub fn outline_px(
    spec: &SilhouetteSpec,
    gsd: GroundResolution<f64>,
    scale: ResizeScale<f64>,
    center: (f64, f64),
) -> Vec<(f64, f64)> {
    let px_per_m = 1.0 / (gsd.m_per_px() * scale.linear_factor());
    let (cos, sin) = rotation(spec.rotation_deg);
    let (jx, jy) = match spec.seed {
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (rng.random::<f64>(), rng.random::<f64>())
        }
        None => (0.0, 0.0),
    };
    spec.outline_m()
        .into_iter()
        .map(|(x, y)| {
            let (x, y) = (x * px_per_m, y * px_per_m);
            (x * cos - y * sin + center.0 + jx, x * sin + y * cos + center.1 + jy)
        })
        .collect()
}

/// Pixels whose centers fall inside `poly` (even-odd rule), clipped to the
/// image. Scanline crossings are half-open in y; the x interval is closed.
pub fn fill_polygon(poly: &[(f64, f64)], width: u32, height: u32) -> Vec<Point> {
    let n = poly.len();
    let (ymin, ymax) = poly
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| {
            (lo.min(y), hi.max(y))
        });
    let first_row = (ymin - 0.5).ceil().max(0.0) as i64;
    let last_row = ((ymax - 0.5).floor() as i64).min(i64::from(height) - 1);
    let mut pixels = Vec::new();
    let mut xs = Vec::new();
    for row in first_row..=last_row {
        let yc = row as f64 + 0.5;
        xs.clear();
        for i in 0..n {
            let (x0, y0) = poly[i];
            let (x1, y1) = poly[(i + 1) % n];
            if (y0 <= yc && y1 > yc) || (y1 <= yc && y0 > yc) {
                xs.push(x0 + (yc - y0) * (x1 - x0) / (y1 - y0));
            }
        }
        xs.sort_by(f64::total_cmp);
        for span in xs.chunks_exact(2) {
            let lo = (span[0] - 0.5).ceil().max(0.0) as i64;
            let hi = ((span[1] - 0.5).floor() as i64).min(i64::from(width) - 1);
            pixels.extend((lo..=hi).map(|x| Point::new(x, row)));
        }
    }
    pixels
}

/// Pixel-center rasterization of one silhouette.
pub fn rasterize(
    spec: &SilhouetteSpec,
    gsd: GroundResolution<f64>,
    scale: ResizeScale<f64>,
    placement: &Placement,
) -> Result<Mask> {
    spec.check()?;
    let m_per_px = gsd.m_per_px() * scale.linear_factor();
    let length_px = spec.length_m / m_per_px;
    let too_small = || Error::TooSmall {
        length_px,
        min_gsd_cm: spec.length_m * 100.0 / (2.0 * scale.linear_factor()),
    };
    if length_px < 2.0 {
        return Err(too_small());
    }
    let poly = outline_px(spec, gsd, scale, placement.center);
    if !placement.allow_crop {
        let (w, h) = (f64::from(placement.width), f64::from(placement.height));
        if poly.iter().any(|&(x, y)| x < 0.0 || y < 0.0 || x > w || y > h) {
            return Err(Error::invalid(
                "placement",
                format!(
                    "`{}` silhouette does not fit the {}x{} image",
                    spec.shortcut, placement.width, placement.height
                ),
            ));
        }
    }
    let pixels = fill_polygon(&poly, placement.width, placement.height);
    if pixels.is_empty() && !placement.allow_crop {
        return Err(too_small());
    }
    Mask::new(placement.width, placement.height, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{farthest_pair, pixel_count};
    use crate::synth::ShapeKind;

    fn gsd(cm: f64) -> GroundResolution<f64> {
        GroundResolution::from_cm_per_px(cm).unwrap()
    }

    #[test]
    fn axis_aligned_square() {
        let sq = [(1.0, 1.0), (4.0, 1.0), (4.0, 3.0), (1.0, 3.0)];
        let px = fill_polygon(&sq, 8, 8);
        // centers 1.5..3.5 by 1.5..2.5
        assert_eq!(px.len(), 6);
        assert!(px.contains(&Point::new(1, 1)) && px.contains(&Point::new(3, 2)));
    }

    #[test]
    fn clipped_to_image() {
        let sq = [(-3.0, -3.0), (2.0, -3.0), (2.0, 2.0), (-3.0, 2.0)];
        assert_eq!(fill_polygon(&sq, 8, 8).len(), 4);
    }

    #[test]
    fn rectangle_at_35cm() {
        let spec = SilhouetteSpec::new("LM100J", 35.0, 0.1, 0.0, ShapeKind::Rectangle, None).unwrap();
        let placement = Placement::centered(128, 32);
        let m = rasterize(&spec, gsd(35.0), ResizeScale::identity(), &placement).unwrap();
        assert_eq!(pixel_count(&m), 1000);
        let d = farthest_pair(m.pixels()).unwrap();
        assert_eq!((d.endpoint_b.x - d.endpoint_a.x).abs(), 99);
        let len = d.dist_px::<f64>() * 0.35;
        assert!((34.65..=35.0).contains(&len), "{len}");

        let turned = SilhouetteSpec {
            rotation_deg: 90.0,
            ..spec
        };
        let m90 = rasterize(
            &turned,
            gsd(35.0),
            ResizeScale::identity(),
            &Placement::centered(128, 128),
        )
        .unwrap();
        assert_eq!(pixel_count(&m90), 1000);
        assert_eq!(farthest_pair(m90.pixels()).unwrap().dist_sq, d.dist_sq);
    }

    #[test]
    fn too_small_names_min_gsd() {
        let spec = SilhouetteSpec::plane("CM2", 13.0, 0.0, None).unwrap();
        let err = rasterize(
            &spec,
            gsd(2000.0),
            ResizeScale::identity(),
            &Placement::centered(16, 16),
        )
        .unwrap_err();
        match err {
            Error::TooSmall { length_px, min_gsd_cm } => {
                assert!((length_px - 0.65).abs() < 1e-12);
                assert!((min_gsd_cm - 650.0).abs() < 1e-9);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn must_fit_unless_cropping() {
        let spec = SilhouetteSpec::plane("A-380", 73.0, 0.0, None).unwrap();
        let mut p = Placement::centered(64, 64);
        assert!(rasterize(&spec, gsd(30.0), ResizeScale::identity(), &p).is_err());
        p.allow_crop = true;
        let m = rasterize(&spec, gsd(30.0), ResizeScale::identity(), &p).unwrap();
        assert!(m.touches_border());
    }

    #[test]
    fn seed_jitter_is_deterministic() {
        let spec = SilhouetteSpec::plane("G-650", 30.0, 17.0, Some(99)).unwrap();
        let p = Placement::centered(160, 160);
        let a = rasterize(&spec, gsd(30.0), ResizeScale::identity(), &p).unwrap();
        let b = rasterize(&spec, gsd(30.0), ResizeScale::identity(), &p).unwrap();
        assert_eq!(a, b);
        let c = rasterize(
            &SilhouetteSpec {
                seed: Some(100),
                ..spec
            },
            gsd(30.0),
            ResizeScale::identity(),
            &p,
        )
        .unwrap();
        assert_ne!(a, c);
    }
}
