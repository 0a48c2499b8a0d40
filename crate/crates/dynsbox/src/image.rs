//! 8-bit grayscale images with explicit dimensions, plus the geometry
//! transforms the cipher applies between rounds.

use crate::error::{Error, Result};

/// A grayscale image: `height` rows of `width` pixels, row-major.
/// Never empty — construction rejects zero dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Adopts a row-major byte buffer; its length must equal width * height.
    pub fn from_raw(pixels: Vec<u8>, width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Image(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width as u64 * height as u64;
        if expected > usize::MAX as u64 {
            return Err(Error::Image(format!("image too large: {width}x{height}")));
        }
        if pixels.len() as u64 != expected {
            return Err(Error::Image(format!(
                "payload length {} does not match {width}x{height} = {expected}",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// A constant image, every pixel set to `value`.
    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self> {
        Self::from_raw(vec![value; width as usize * height as usize], width, height)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Pixel at (row, col), 0-based.
    pub fn get(&self, row: u32, col: u32) -> u8 {
        debug_assert!(row < self.height && col < self.width);
        self.pixels[(row as usize) * (self.width as usize) + col as usize]
    }

    /// 180-degree rotation (two 90-degree turns); same dimensions.
    /// On a row-major buffer this is exactly a full reversal.
    pub fn rot180(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().rev().copied().collect(),
        }
    }

    /// Flip about the main (left) diagonal; dimensions swap.
    pub fn transpose(&self) -> Self {
        let (w, h) = (self.width as usize, self.height as usize);
        let mut out = vec![0u8; w * h];
        for r in 0..h {
            for c in 0..w {
                out[c * h + r] = self.pixels[r * w + c];
            }
        }
        Self {
            width: self.height,
            height: self.width,
            pixels: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_raw_validates_shape() {
        assert!(GrayImage::from_raw(vec![1, 2, 3, 4], 2, 2).is_ok());
        assert!(GrayImage::from_raw(vec![1, 2, 3, 4, 5], 2, 2).is_err());
        assert!(GrayImage::from_raw(vec![], 0, 0).is_err());
        assert!(GrayImage::from_raw(vec![], 2, 0).is_err());
    }

    #[test]
    fn rot180_then_transpose_maps_corners() {
        // [[1,2],[3,4]] -> rot180 -> [[4,3],[2,1]] -> transpose -> [[4,2],[3,1]]
        let img = GrayImage::from_raw(vec![1, 2, 3, 4], 2, 2).unwrap();
        let out = img.rot180().transpose();
        assert_eq!(out.pixels(), &[4, 2, 3, 1]);
    }

    #[test]
    fn transpose_swaps_dimensions() {
        let img = GrayImage::from_raw(vec![1, 2, 3, 4, 5, 6], 3, 2).unwrap();
        let t = img.transpose();
        assert_eq!((t.width(), t.height()), (2, 3));
        assert_eq!(t.pixels(), &[1, 4, 2, 5, 3, 6]);
    }

    #[test]
    fn geometry_inverts() {
        let mut state = 0x42u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 33) as u8
        };
        for (w, h) in [(1, 1), (3, 2), (5, 5), (16, 9)] {
            let pixels: Vec<u8> = (0..w * h).map(|_| next()).collect();
            let img = GrayImage::from_raw(pixels, w, h).unwrap();
            let fwd = img.rot180().transpose();
            assert_eq!(fwd.transpose().rot180(), img);
        }
    }

    #[test]
    fn forward_geometry_squared_is_identity_on_squares() {
        let pixels: Vec<u8> = (0..49).map(|v| (v * 37 % 256) as u8).collect();
        let img = GrayImage::from_raw(pixels, 7, 7).unwrap();
        let once = img.rot180().transpose();
        let twice = once.rot180().transpose();
        assert_eq!(twice, img);
    }
}
