//! Uncompressed run-length masks: row-major, alternating runs starting with
//! background.

use crate::error::{Error, Result};
use crate::geometry::Point;

use super::mask::{check_dims, Mask};

/// Decodes `counts` into a `width x height` mask. Odd-indexed runs are
/// foreground. Zero-length runs are accepted anywhere.
pub fn decode_rle(counts: &[u64], width: u32, height: u32) -> Result<Mask> {
    check_dims(u64::from(width), u64::from(height))?;
    let total = u64::from(width) * u64::from(height);
    let sum = counts
        .iter()
        .try_fold(0u64, |acc, &c| acc.checked_add(c))
        .ok_or_else(|| Error::MalformedRle("run lengths overflow".into()))?;
    if sum != total {
        return Err(Error::MalformedRle(format!(
            "runs cover {sum} pixels, {width}x{height} mask has {total}"
        )));
    }
    let w = u64::from(width);
    let mut pixels = Vec::new();
    let mut pos = 0u64;
    for (i, &run) in counts.iter().enumerate() {
        if i % 2 == 1 {
            pixels.extend((pos..pos + run).map(|k| Point::new((k % w) as i64, (k / w) as i64)));
        }
        pos += run;
    }
    Mask::new(width, height, pixels)
}

/// Signed variant for untrusted input; any negative run is rejected.
pub fn decode_rle_signed(counts: &[i64], width: u32, height: u32) -> Result<Mask> {
    let counts = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| u64::try_from(c).map_err(|_| Error::MalformedRle(format!("run {i} is negative ({c})"))))
        .collect::<Result<Vec<_>>>()?;
    decode_rle(&counts, width, height)
}

/// Canonical encoding: a leading background run (possibly zero) and no
/// zero-length runs after it. Pixels outside the mask bounds are dropped.
pub fn encode_rle(mask: &Mask) -> Vec<u64> {
    let w = u64::from(mask.width());
    let total = w * u64::from(mask.height());
    let mut counts = Vec::new();
    let mut pos = 0u64;
    let mut run_start: Option<u64> = None;
    let mut run_end = 0u64;
    for p in mask.in_bounds() {
        let k = p.y as u64 * w + p.x as u64;
        match run_start {
            Some(_) if k == run_end => run_end += 1,
            Some(start) => {
                counts.push(start - pos);
                counts.push(run_end - start);
                pos = run_end;
                run_start = Some(k);
                run_end = k + 1;
            }
            None => {
                run_start = Some(k);
                run_end = k + 1;
            }
        }
    }
    if let Some(start) = run_start {
        counts.push(start - pos);
        counts.push(run_end - start);
        pos = run_end;
    }
    if pos < total || counts.is_empty() {
        counts.push(total - pos);
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_examples() {
        assert_eq!(decode_rle(&[0, 4], 2, 2).unwrap().len(), 4);
        assert!(decode_rle(&[4], 2, 2).unwrap().is_empty());
        let m = decode_rle(&[1, 2, 1], 2, 2).unwrap();
        assert_eq!(m.pixels(), &[Point::new(1, 0), Point::new(0, 1)]);
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_rle(&Mask::empty(2, 2).unwrap()), vec![4]);
        assert_eq!(encode_rle(&decode_rle(&[0, 4], 2, 2).unwrap()), vec![0, 4]);
        assert_eq!(encode_rle(&decode_rle(&[1, 2, 1], 2, 2).unwrap()), vec![1, 2, 1]);
        // non-canonical input comes back canonical
        assert_eq!(encode_rle(&decode_rle(&[1, 1, 0, 1, 1], 2, 2).unwrap()), vec![1, 2, 1]);
    }

    #[test]
    fn malformed() {
        assert!(matches!(decode_rle(&[1, 2], 2, 2), Err(Error::MalformedRle(_))));
        assert!(matches!(decode_rle(&[3, 3], 2, 2), Err(Error::MalformedRle(_))));
        assert!(matches!(decode_rle(&[u64::MAX, 5], 2, 2), Err(Error::MalformedRle(_))));
        assert!(matches!(decode_rle_signed(&[-1, 5], 2, 2), Err(Error::MalformedRle(_))));
    }
}
