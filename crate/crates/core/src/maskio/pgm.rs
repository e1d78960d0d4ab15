//! Netpbm graymap (P2 ASCII / P5 binary) masks. Any nonzero sample is
//! foreground.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::mask::{check_dims, Mask};

struct Header {
    binary: bool,
    width: u32,
    height: u32,
    maxval: u32,
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self
            .data
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.data[start..self.pos])
    }

    fn number(&mut self, what: &str) -> std::result::Result<u64, String> {
        let tok = self.token().ok_or_else(|| format!("missing {what}"))?;
        let text = std::str::from_utf8(tok).map_err(|_| format!("{what} is not ASCII"))?;
        if !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{what} `{text}` is not a non-negative integer"));
        }
        // digits only, so a parse failure is an overflow
        text.parse().map_err(|_| format!("{what} `{text}` is too large"))
    }
}

fn malformed(path: &Path, reason: impl Into<String>) -> Error {
    Error::MalformedPgm {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

fn read_header(cur: &mut Cursor<'_>, path: &Path) -> Result<Header> {
    let binary = match cur.token() {
        Some(b"P5") => true,
        Some(b"P2") => false,
        Some(other) => {
            return Err(malformed(
                path,
                format!("unsupported magic `{}`", String::from_utf8_lossy(other)),
            ))
        }
        None => return Err(malformed(path, "empty file")),
    };
    let dim = |r: std::result::Result<u64, String>| match r {
        Err(e) if e.ends_with("too large") => Ok(u64::MAX),
        other => other.map_err(|e| malformed(path, e)),
    };
    let width = dim(cur.number("width"))?;
    let height = dim(cur.number("height"))?;
    let maxval = cur.number("maxval").map_err(|e| malformed(path, e))?;
    if width == 0 || height == 0 {
        return Err(malformed(path, format!("zero dimension {width}x{height}")));
    }
    check_dims(width, height)?;
    if maxval == 0 || maxval > 65535 {
        return Err(malformed(path, format!("maxval {maxval} outside 1..=65535")));
    }
    Ok(Header {
        binary,
        width: width as u32,
        height: height as u32,
        maxval: maxval as u32,
    })
}

/// Parses PGM bytes; `path` is only used in error messages.
pub fn parse_pgm(data: &[u8], path: &Path) -> Result<Mask> {
    let mut cur = Cursor { data, pos: 0 };
    let header = read_header(&mut cur, path)?;
    let n = header.width as usize * header.height as usize;
    let mut bitmap = Vec::with_capacity(n);
    if header.binary {
        // exactly one whitespace byte separates maxval from the raster
        match data.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(malformed(path, "missing whitespace before raster")),
        }
        let bytes_per_sample = if header.maxval < 256 { 1 } else { 2 };
        let raster = &data[cur.pos..];
        if raster.len() < n * bytes_per_sample {
            return Err(malformed(
                path,
                format!("raster truncated: {} of {} bytes", raster.len(), n * bytes_per_sample),
            ));
        }
        bitmap.extend(
            raster[..n * bytes_per_sample]
                .chunks_exact(bytes_per_sample)
                .map(|s| s.iter().any(|&b| b != 0)),
        );
    } else {
        for i in 0..n {
            let v = cur
                .number("sample")
                .map_err(|e| malformed(path, format!("{e} at sample {i} of {n}")))?;
            if v > u64::from(header.maxval) {
                return Err(malformed(path, format!("sample {v} exceeds maxval {}", header.maxval)));
            }
            bitmap.push(v != 0);
        }
    }
    Mask::from_bitmap(header.width, header.height, &bitmap)
}

pub fn load_bitmap(path: impl AsRef<Path>) -> Result<Mask> {
    let path = path.as_ref();
    let data = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_pgm(&data, path)
}

/// Binary 8-bit PGM: foreground 255, background 0. Stray out-of-bounds
/// pixels are not representable and are dropped.
pub fn encode_pgm(mask: &Mask) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend(mask.to_bitmap().into_iter().map(|on| if on { 255u8 } else { 0 }));
    out
}

pub fn save_bitmap(mask: &Mask, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_pgm(mask)).map_err(|e| Error::io(path, e))
}
