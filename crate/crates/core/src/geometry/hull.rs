use serde::Serialize;

use super::{cross, Point};
use crate::error::{Error, Result};

/// Strictly convex polygon, counter-clockwise, starting at the
/// lexicographically smallest vertex.
///
/// Degenerate inputs give degenerate hulls: one vertex for a single distinct
/// point, two (the extremes) for a collinear set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullPolygon {
    vertices: Vec<Point>,
}

impl HullPolygon {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Inside-or-on-boundary test using exact cross products.
    pub fn contains(&self, p: Point) -> bool {
        match self.vertices.as_slice() {
            [] => false,
            [a] => *a == p,
            [a, b] => {
                cross(*a, *b, p) == 0
                    && p.x >= a.x.min(b.x)
                    && p.x <= a.x.max(b.x)
                    && p.y >= a.y.min(b.y)
                    && p.y <= a.y.max(b.y)
            }
            vs => (0..vs.len()).all(|i| cross(vs[i], vs[(i + 1) % vs.len()], p) >= 0),
        }
    }
}

/// Andrew's monotone chain over exact integer cross products.
pub fn convex_hull(points: &[Point]) -> Result<HullPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyGeometry);
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(HullPolygon { vertices: pts });
    }

    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    // lower chain, left to right
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    // upper chain, right to left
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    // last point repeats the first
    hull.pop();
    Ok(HullPolygon { vertices: hull })
}
