//! Reference implementations used only by tests. None of these call into
//! the crate's geometry or averaging code.
#![allow(dead_code)]

use planeid::geometry::Point;
use rand::Rng;

fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ox, oy) = (o.x as i128, o.y as i128);
    (a.x as i128 - ox) * (b.y as i128 - oy) - (a.y as i128 - oy) * (b.x as i128 - ox)
}

fn d2(a: Point, b: Point) -> u128 {
    let dx = a.x as i128 - b.x as i128;
    let dy = a.y as i128 - b.y as i128;
    (dx * dx + dy * dy) as u128
}

/// Jarvis march: start at the leftmost point (lowest y on ties) and keep
/// wrapping counter-clockwise, always taking the point with nothing to its
/// right; collinear candidates resolve to the farthest one.
pub fn gift_wrap(points: &[Point]) -> Vec<Point> {
    let start = *points.iter().min_by_key(|p| (p.x, p.y)).expect("non-empty");
    let mut hull = vec![start];
    let mut current = start;
    loop {
        let mut next = current;
        for &r in points {
            if r == current {
                continue;
            }
            if next == current {
                next = r;
                continue;
            }
            let c = cross(current, next, r);
            if c < 0 || (c == 0 && d2(current, r) > d2(current, next)) {
                next = r;
            }
        }
        if next == start || next == current {
            break;
        }
        hull.push(next);
        current = next;
    }
    hull
}

/// O(n^2) farthest pair with the lexicographically smallest `(a, b)`, `a <= b`,
/// among ties.
pub fn brute_farthest(points: &[Point]) -> (u128, Point, Point) {
    let mut best = (0u128, points[0], points[0]);
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i..] {
            let (a, b) = if p <= q { (p, q) } else { (q, p) };
            let d = d2(a, b);
            if d > best.0 || (d == best.0 && (a, b) < (best.1, best.2)) {
                best = (d, a, b);
            }
        }
    }
    best
}

/// Neumaier-compensated mean.
pub fn compensated_mean(xs: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    (sum + comp) / xs.len() as f64
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize, side: i64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(rng.random_range(0..side), rng.random_range(0..side)))
        .collect()
}
