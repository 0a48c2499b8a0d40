//! Bit-exact binary PGM (P5) reading and writing, maxval 255 only.
//!
//! The writer always emits the canonical header `P5\n<w> <h>\n255\n`, so
//! identical images produce identical files.

use crate::error::{Error, Result};
use crate::image::GrayImage;

fn is_pgm_whitespace(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\n' | b'\r' | 0x0B | 0x0C)
}

/// Advances past whitespace and '#'-to-end-of-line comments.
fn skip_separators(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() {
        if is_pgm_whitespace(bytes[*pos]) {
            *pos += 1;
        } else if bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
}

fn next_uint(bytes: &[u8], pos: &mut usize, what: &str) -> Result<u32> {
    skip_separators(bytes, pos);
    let start = *pos;
    let mut value = 0u64;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        value = value * 10 + (bytes[*pos] - b'0') as u64;
        if value > u32::MAX as u64 {
            return Err(Error::PgmHeader(format!("{what} too large")));
        }
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::PgmHeader(format!("expected {what}")));
    }
    Ok(value as u32)
}

/// Parses a binary PGM (P5) stream. Trailing bytes after the payload are
/// ignored, matching common reader behavior.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 || &bytes[0..2] != b"P5" {
        return Err(Error::PgmBadMagic);
    }
    let mut pos = 2;
    if pos >= bytes.len() || !(is_pgm_whitespace(bytes[pos]) || bytes[pos] == b'#') {
        return Err(Error::PgmBadMagic);
    }
    let width = next_uint(bytes, &mut pos, "width")?;
    let height = next_uint(bytes, &mut pos, "height")?;
    let maxval = next_uint(bytes, &mut pos, "maxval")?;
    if maxval != 255 {
        return Err(Error::PgmUnsupportedMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(Error::PgmHeader(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    // exactly one whitespace byte separates the header from the payload
    if pos >= bytes.len() || !is_pgm_whitespace(bytes[pos]) {
        return Err(Error::PgmHeader(
            "expected single whitespace byte after maxval".into(),
        ));
    }
    pos += 1;

    // guard the product before narrowing (usize is 32-bit on wasm)
    let expected = width as u64 * height as u64;
    if expected > usize::MAX as u64 {
        return Err(Error::PgmHeader(format!("image too large: {width}x{height}")));
    }
    let expected = expected as usize;
    let payload = &bytes[pos..];
    if payload.len() < expected {
        return Err(Error::PgmTruncated {
            expected,
            found: payload.len(),
        });
    }
    GrayImage::from_raw(payload[..expected].to_vec(), width, height)
}

/// Serializes with the canonical header; byte-stable across runs.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}
