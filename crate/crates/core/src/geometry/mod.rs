//! Exact integer-lattice geometry over mask pixels.
//!
//! All predicates work on `i128` products of `i64` coordinates, so no
//! comparison in this module involves rounding. Floating point appears only
//! when a squared distance is finally turned into a length.

mod diameter;
mod hull;

pub use diameter::{farthest_pair, DiameterResult};
pub use hull::{convex_hull, HullPolygon};

use serde::Serialize;

use crate::maskio::Mask;

/// Pixel coordinate. Ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn dist_sq(self, other: Point) -> u128 {
        let dx = i128::from(self.x) - i128::from(other.x);
        let dy = i128::from(self.y) - i128::from(other.y);
        (dx * dx + dy * dy) as u128
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

/// Twice the signed area of triangle `(o, a, b)`; positive when `o -> a -> b`
/// turns counter-clockwise.
pub fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ox, oy) = (i128::from(o.x), i128::from(o.y));
    (i128::from(a.x) - ox) * (i128::from(b.y) - oy) - (i128::from(a.y) - oy) * (i128::from(b.x) - ox)
}

/// Number of foreground pixels.
pub fn pixel_count(mask: &Mask) -> u64 {
    mask.pixels().len() as u64
}
