use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fuselage half-width as a fraction of length.
const FUSELAGE_HALF_WIDTH: f64 = 0.06;
/// Line segments approximating each rounded fuselage end.
const END_CAP_SEGMENTS: usize = 8;
pub const MIN_PLANE_ASPECT: f64 = 0.22;
/// Wider spans would put a wingtip outside the circle through nose and tail,
/// making the wingtip-to-nose chord longer than the fuselage.
pub const MAX_PLANE_ASPECT: f64 = 0.94;
/// Span/length ratio used when none is given.
pub const DEFAULT_PLANE_ASPECT: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    /// `length x (aspect * length)` box. Its diameter is the diagonal.
    Rectangle,
    /// Fuselage with rounded ends, swept wings and a tailplane. Every vertex
    /// lies inside the circle whose diameter is the fuselage, so the
    /// polygon's diameter is exactly `length_m`.
    StylizedPlane,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SilhouetteSpec {
    pub shortcut: String,
    pub length_m: f64,
    /// Width over length: box width for rectangles, wingspan for planes.
    pub aspect_ratio: f64,
    /// Counter-clockwise in pixel coordinates.
    pub rotation_deg: f64,
    pub shape_kind: ShapeKind,
    /// When set, the placement gets a uniform sub-pixel offset drawn from
    /// this seed.
    pub seed: Option<u64>,
}

impl SilhouetteSpec {
    pub fn new(
        shortcut: impl Into<String>,
        length_m: f64,
        aspect_ratio: f64,
        rotation_deg: f64,
        shape_kind: ShapeKind,
        seed: Option<u64>,
    ) -> Result<Self> {
        let spec = Self {
            shortcut: shortcut.into(),
            length_m,
            aspect_ratio,
            rotation_deg,
            shape_kind,
            seed,
        };
        spec.check()?;
        Ok(spec)
    }

    /// Stylized plane with the default span.
    pub fn plane(shortcut: impl Into<String>, length_m: f64, rotation_deg: f64, seed: Option<u64>) -> Result<Self> {
        Self::new(
            shortcut,
            length_m,
            DEFAULT_PLANE_ASPECT,
            rotation_deg,
            ShapeKind::StylizedPlane,
            seed,
        )
    }

    pub fn check(&self) -> Result<()> {
        if !(self.length_m.is_finite() && self.length_m > 0.0) {
            return Err(Error::invalid(
                "length_m",
                format!("must be > 0, got {}", self.length_m),
            ));
        }
        if !(self.aspect_ratio > 0.0 && self.aspect_ratio <= 1.0) {
            return Err(Error::invalid(
                "aspect_ratio",
                format!("must be in (0, 1], got {}", self.aspect_ratio),
            ));
        }
        if self.shape_kind == ShapeKind::StylizedPlane
            && !(MIN_PLANE_ASPECT..=MAX_PLANE_ASPECT).contains(&self.aspect_ratio)
        {
            return Err(Error::invalid(
                "aspect_ratio",
                format!(
                    "stylized plane span must be in [{MIN_PLANE_ASPECT}, {MAX_PLANE_ASPECT}] of its length, got {}",
                    self.aspect_ratio
                ),
            ));
        }
        if !(0.0..360.0).contains(&self.rotation_deg) {
            return Err(Error::invalid(
                "rotation_deg",
                format!("must be in [0, 360), got {}", self.rotation_deg),
            ));
        }
        Ok(())
    }

    /// Outline in meters, centered on the origin, nose toward +x,
    /// counter-clockwise.
    pub fn outline_m(&self) -> Vec<(f64, f64)> {
        let l = self.length_m;
        let unit = match self.shape_kind {
            ShapeKind::Rectangle => {
                let h = self.aspect_ratio / 2.0;
                vec![(-0.5, -h), (0.5, -h), (0.5, h), (-0.5, h)]
            }
            ShapeKind::StylizedPlane => plane_outline(self.aspect_ratio),
        };
        unit.into_iter().map(|(x, y)| (x * l, y * l)).collect()
    }
}

/// Unit-length plane, nose at (0.5, 0), tail at (-0.5, 0).
fn plane_outline(span: f64) -> Vec<(f64, f64)> {
    let f = FUSELAGE_HALF_WIDTH;
    let half_span = span / 2.0;
    let half_tail = (0.3f64).min(span) / 2.0;
    let theta = (f / 0.5).asin();
    let shoulder = 0.5 * theta.cos();

    // upper side from the nose shoulder back to the tail shoulder
    let upper = [
        (0.12, f),
        (-0.08, half_span),
        (-0.16, half_span),
        (-0.04, f),
        (-0.30, f),
        (-0.42, half_tail),
        (-0.46, half_tail),
        (-0.44, f),
    ];
    let cap = |center: f64| {
        (0..=END_CAP_SEGMENTS).map(move |k| {
            let phi = center - theta + 2.0 * theta * k as f64 / END_CAP_SEGMENTS as f64;
            (0.5 * phi.cos(), 0.5 * phi.sin())
        })
    };

    let mut out = Vec::new();
    // nose cap from (shoulder, -f) through the tip to (shoulder, f)
    out.extend(cap(0.0));
    out.extend(upper);
    out.push((-shoulder, f));
    // tail cap from (-shoulder, f) through the tail tip to (-shoulder, -f)
    out.extend(cap(std::f64::consts::PI).skip(1));
    out.extend(upper.iter().rev().map(|&(x, y)| (x, -y)));
    // the first cap vertex closes the loop at (shoulder, -f)
    debug_assert!((out[0].0 - shoulder).abs() < 1e-12);
    out
}

pub fn polygon_area(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (x0, y0) = poly[i];
            let (x1, y1) = poly[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    twice.abs() / 2.0
}

pub fn polygon_perimeter(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (x0, y0) = poly[i];
            let (x1, y1) = poly[(i + 1) % n];
            (x1 - x0).hypot(y1 - y0)
        })
        .sum()
}
