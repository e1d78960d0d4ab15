use serde::Serialize;

use super::{convex_hull, cross, Point};
use crate::error::Result;
use crate::scalar::Real;

/// Farthest pair of a point set.
///
/// `endpoint_a < endpoint_b` unless the set has a single distinct point. When
/// several pairs share the maximal distance, the lexicographically smallest
/// `(a, b)` is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiameterResult {
    pub endpoint_a: Point,
    pub endpoint_b: Point,
    /// Exact squared pixel distance between the endpoints.
    pub dist_sq: u128,
}

impl DiameterResult {
    pub fn dist_px<T: Real>(&self) -> T {
        // `dist_sq` of any raster this crate handles fits well inside f64's
        // exact integer range
        T::lit((self.dist_sq as f64).sqrt())
    }
}

#[derive(Clone, Copy)]
struct Best {
    d2: u128,
    pair: (Point, Point),
}

impl Best {
    fn offer(&mut self, p: Point, q: Point) {
        let pair = if p <= q { (p, q) } else { (q, p) };
        let d2 = p.dist_sq(q);
        if d2 > self.d2 || (d2 == self.d2 && pair < self.pair) {
            self.d2 = d2;
            self.pair = pair;
        }
    }
}

/// Diameter of `points` via rotating calipers over the convex hull.
pub fn farthest_pair(points: &[Point]) -> Result<DiameterResult> {
    let hull = convex_hull(points)?;
    let h = hull.vertices();
    let n = h.len();
    let mut best = Best {
        d2: 0,
        pair: (h[0], h[0]),
    };
    match n {
        1 => {}
        2 => best.offer(h[0], h[1]),
        _ => {
            // For each edge (i, i+1), walk j forward to the vertex farthest from
            // the edge's supporting line. A parallel opposite edge yields two
            // farthest vertices; both are offered.
            let mut j = 1;
            for i in 0..n {
                let a = h[i];
                let b = h[(i + 1) % n];
                let height = |k: usize| cross(a, b, h[k % n]);
                while height(j + 1) > height(j) {
                    j = (j + 1) % n;
                }
                best.offer(a, h[j]);
                best.offer(b, h[j]);
                if height(j + 1) == height(j) {
                    let k = (j + 1) % n;
                    best.offer(a, h[k]);
                    best.offer(b, h[k]);
                }
            }
        }
    }
    Ok(DiameterResult {
        endpoint_a: best.pair.0,
        endpoint_b: best.pair.1,
        dist_sq: best.d2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn single_point() {
        let d = farthest_pair(&pts(&[(0, 0)])).unwrap();
        assert_eq!(d.dist_sq, 0);
        assert_eq!(d.endpoint_a, Point::new(0, 0));
        assert_eq!(d.endpoint_b, Point::new(0, 0));
        assert_eq!(d.dist_px::<f64>(), 0.0);
    }

    #[test]
    fn unit_square_diagonal() {
        let d = farthest_pair(&pts(&[(0, 0), (0, 1), (1, 0), (1, 1)])).unwrap();
        assert_eq!(d.dist_sq, 2);
        assert!((d.dist_px::<f64>() - std::f64::consts::SQRT_2).abs() < 1e-12);
        // both diagonals tie; (0,0)-(1,1) is lexicographically first
        assert_eq!((d.endpoint_a, d.endpoint_b), (Point::new(0, 0), Point::new(1, 1)));
    }

    #[test]
    fn regular_octagon_ties() {
        // four diametral pairs of equal length
        let oct = pts(&[(1, 0), (2, 0), (3, 1), (3, 2), (2, 3), (1, 3), (0, 2), (0, 1)]);
        let d = farthest_pair(&oct).unwrap();
        assert_eq!(d.dist_sq, 10);
        assert_eq!((d.endpoint_a, d.endpoint_b), (Point::new(0, 1), Point::new(3, 2)));
    }

    #[test]
    fn collinear() {
        let d = farthest_pair(&pts(&[(4, 4), (0, 0), (2, 2)])).unwrap();
        assert_eq!(d.dist_sq, 32);
        assert_eq!((d.endpoint_a, d.endpoint_b), (Point::new(0, 0), Point::new(4, 4)));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(farthest_pair(&[]), Err(Error::EmptyGeometry)));
    }

    #[test]
    fn large_coordinates_do_not_overflow() {
        let big = i64::from(i32::MAX);
        let d = farthest_pair(&pts(&[(-big, -big), (big, big), (0, 1)])).unwrap();
        let side = 2 * big as u128;
        assert_eq!(d.dist_sq, 2 * side * side);
    }
}
