use crate::error::{Error, Result};
use crate::geometry::Point;

/// Largest raster (in pixels) accepted from any external source.
pub const MAX_PIXELS: u64 = 1 << 28;

/// Foreground pixel set of one detection, at processed-image resolution.
///
/// Pixels are stored deduplicated in row-major order (`y`, then `x`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: u32,
    height: u32,
    pixels: Vec<Point>,
}

fn row_major(p: &Point) -> (i64, i64) {
    (p.y, p.x)
}

pub(crate) fn check_dims(width: u64, height: u64) -> Result<()> {
    if width == 0 {
        return Err(Error::invalid("width", "must be > 0"));
    }
    if height == 0 {
        return Err(Error::invalid("height", "must be > 0"));
    }
    match width.checked_mul(height) {
        Some(n) if n <= MAX_PIXELS && width <= u64::from(u32::MAX) && height <= u64::from(u32::MAX) => Ok(()),
        _ => Err(Error::DimensionOverflow {
            width,
            height,
            max: MAX_PIXELS,
        }),
    }
}

impl Mask {
    /// Builds a mask, rejecting pixels outside `width x height`.
    pub fn new(width: u32, height: u32, pixels: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mask = Self::from_raw_pixels(width, height, pixels)?;
        if let Some(p) = mask.out_of_bounds().next() {
            return Err(Error::PixelOutOfBounds {
                x: p.x,
                y: p.y,
                width,
                height,
            });
        }
        Ok(mask)
    }

    /// Builds a mask without the bounds check, for data that has not been
    /// validated yet. [`crate::maskio::validate`] reports stray pixels.
    pub fn from_raw_pixels(width: u32, height: u32, pixels: impl IntoIterator<Item = Point>) -> Result<Self> {
        check_dims(u64::from(width), u64::from(height))?;
        let mut pixels: Vec<Point> = pixels.into_iter().collect();
        pixels.sort_unstable_by_key(row_major);
        pixels.dedup();
        Ok(Self { width, height, pixels })
    }

    pub fn empty(width: u32, height: u32) -> Result<Self> {
        Self::from_raw_pixels(width, height, std::iter::empty())
    }

    /// Mask from a row-major foreground bitmap of length `width * height`.
    pub fn from_bitmap(width: u32, height: u32, bitmap: &[bool]) -> Result<Self> {
        check_dims(u64::from(width), u64::from(height))?;
        let w = width as usize;
        if bitmap.len() != w * height as usize {
            return Err(Error::invalid(
                "bitmap",
                format!("expected {} samples, got {}", w * height as usize, bitmap.len()),
            ));
        }
        let pixels = bitmap
            .iter()
            .enumerate()
            .filter(|(_, &on)| on)
            .map(|(i, _)| Point::new((i % w) as i64, (i / w) as i64))
            .collect();
        Ok(Self { width, height, pixels })
    }

    /// Row-major bitmap of the in-bounds foreground.
    pub fn to_bitmap(&self) -> Vec<bool> {
        let w = self.width as usize;
        let mut bitmap = vec![false; w * self.height as usize];
        for p in self.in_bounds() {
            bitmap[p.y as usize * w + p.x as usize] = true;
        }
        bitmap
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[Point] {
        &self.pixels
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    fn in_image(&self, p: &Point) -> bool {
        p.x >= 0 && p.y >= 0 && p.x < i64::from(self.width) && p.y < i64::from(self.height)
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.pixels.binary_search_by_key(&(y, x), row_major).is_ok()
    }

    pub fn in_bounds(&self) -> impl Iterator<Item = &Point> + '_ {
        self.pixels.iter().filter(|p| self.in_image(p))
    }

    pub fn out_of_bounds(&self) -> impl Iterator<Item = &Point> + '_ {
        self.pixels.iter().filter(|p| !self.in_image(p))
    }

    /// True when a foreground pixel lies in the first or last row or column,
    /// the signature of an object cropped by the frame.
    pub fn touches_border(&self) -> bool {
        let (w, h) = (i64::from(self.width), i64::from(self.height));
        self.in_bounds()
            .any(|p| p.x == 0 || p.y == 0 || p.x == w - 1 || p.y == h - 1)
    }

    /// Pixels with at least one 4-neighbor outside the foreground. Their
    /// convex hull equals the hull of the whole mask.
    pub fn boundary_pixels(&self) -> Vec<Point> {
        self.pixels
            .iter()
            .enumerate()
            .filter(|&(i, p)| {
                let left = i > 0 && self.pixels[i - 1] == Point::new(p.x - 1, p.y);
                let right = self.pixels.get(i + 1) == Some(&Point::new(p.x + 1, p.y));
                !(left && right && self.contains(p.x, p.y - 1) && self.contains(p.x, p.y + 1))
            })
            .map(|(_, p)| *p)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduplicated() {
        let m = Mask::new(3, 3, [Point::new(2, 0), Point::new(0, 1), Point::new(2, 0)]).unwrap();
        assert_eq!(m.pixels(), &[Point::new(2, 0), Point::new(0, 1)]);
        assert!(m.contains(0, 1));
        assert!(!m.contains(1, 1));
    }

    #[test]
    fn strict_constructor_rejects_stray_pixels() {
        assert!(matches!(
            Mask::new(2, 2, [Point::new(2, 0)]),
            Err(Error::PixelOutOfBounds { x: 2, y: 0, .. })
        ));
        let raw = Mask::from_raw_pixels(2, 2, [Point::new(2, 0), Point::new(1, 1)]).unwrap();
        assert_eq!(raw.out_of_bounds().count(), 1);
    }

    #[test]
    fn zero_and_huge_dimensions() {
        assert!(Mask::empty(0, 4).is_err());
        assert!(matches!(
            Mask::empty(1 << 20, 1 << 20),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn bitmap_round_trip() {
        let bits = [true, false, false, true, true, false];
        let m = Mask::from_bitmap(3, 2, &bits).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.to_bitmap(), bits);
    }

    #[test]
    fn border_detection() {
        let inner = Mask::new(5, 5, [Point::new(2, 2), Point::new(3, 3)]).unwrap();
        assert!(!inner.touches_border());
        let edge = Mask::new(5, 5, [Point::new(0, 2)]).unwrap();
        assert!(edge.touches_border());
        let bottom = Mask::new(5, 5, [Point::new(3, 4)]).unwrap();
        assert!(bottom.touches_border());
    }

    #[test]
    fn boundary_of_filled_square() {
        let pixels = (0..5).flat_map(|y| (0..5).map(move |x| Point::new(x, y)));
        let m = Mask::new(5, 5, pixels).unwrap();
        let b = m.boundary_pixels();
        assert_eq!(b.len(), 16);
        assert!(!b.contains(&Point::new(2, 2)));
        assert!(b.contains(&Point::new(0, 0)));
    }
}
