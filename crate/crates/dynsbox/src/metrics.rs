//! Statistical analysis of images: adjacent-pixel and cross-image
//! correlation, Shannon entropy, net pixel change rate (NPCR), histogram,
//! and chi-square uniformity.
//!
//! Sums are accumulated in integers so the metrics are deterministic;
//! floating point enters only in the final divisions.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Pearson-style correlation of two equal-length byte series:
/// (N*Sxy - Sx*Sy) / sqrt((N*Sxx - Sx^2)(N*Syy - Sy^2)).
///
/// Degenerate variances: if both are zero the series are constant, and the
/// result is 1 when they are elementwise equal and 0 otherwise; if exactly
/// one is zero the result is 0.
pub fn correlation(xs: &[u8], ys: &[u8]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidParam(format!(
            "series lengths differ: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::InvalidParam(
            "correlation needs at least 2 pairs".into(),
        ));
    }
    let n = xs.len() as i128;
    let mut sx = 0i128;
    let mut sy = 0i128;
    let mut sxx = 0i128;
    let mut syy = 0i128;
    let mut sxy = 0i128;
    for (&x, &y) in xs.iter().zip(ys) {
        let (x, y) = (x as i128, y as i128);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    let num = n * sxy - sx * sy;
    let den_x = n * sxx - sx * sx;
    let den_y = n * syy - sy * sy;
    if den_x == 0 && den_y == 0 {
        return Ok(if xs == ys { 1.0 } else { 0.0 });
    }
    if den_x == 0 || den_y == 0 {
        return Ok(0.0);
    }
    Ok(num as f64 / (den_x as f64 * den_y as f64).sqrt())
}

/// Correlation of each pixel with its right-hand neighbor, over all rows.
pub fn adjacent_correlation(img: &GrayImage) -> Result<f64> {
    if img.width() < 2 {
        return Err(Error::InvalidParam(
            "adjacent correlation needs at least 2 columns".into(),
        ));
    }
    let (w, h) = (img.width() as usize, img.height() as usize);
    let mut xs = Vec::with_capacity(h * (w - 1));
    let mut ys = Vec::with_capacity(h * (w - 1));
    for row in img.pixels().chunks(w) {
        xs.extend_from_slice(&row[..w - 1]);
        ys.extend_from_slice(&row[1..]);
    }
    correlation(&xs, &ys)
}

/// Correlation of co-located pixels of two same-sized images.
pub fn cross_correlation(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::InvalidParam(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    correlation(a.pixels(), b.pixels())
}

/// 256-bin pixel histogram.
pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    counts
}

/// Shannon entropy in bits over the empirical pixel distribution.
/// Zero-count bins contribute nothing; the range is [0, 8].
pub fn entropy(img: &GrayImage) -> f64 {
    let counts = histogram(img);
    let total = img.pixels().len() as f64;
    let sum: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    // a single p = 1 term yields -0.0; normalize the sign
    sum + 0.0
}

/// Net pixel change rate: the percentage of positions where the images
/// differ.
pub fn npcr(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    if c1.width() != c2.width() || c1.height() != c2.height() {
        return Err(Error::InvalidParam(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            c1.width(),
            c1.height(),
            c2.width(),
            c2.height()
        )));
    }
    let differing = c1
        .pixels()
        .iter()
        .zip(c2.pixels())
        .filter(|(a, b)| a != b)
        .count();
    Ok(100.0 * differing as f64 / c1.pixels().len() as f64)
}

/// Chi-square statistic of a histogram against the uniform expectation
/// total/256. Zero iff the histogram is perfectly flat.
pub fn chi_square(hist: &[u64; 256], total: u64) -> f64 {
    let expected = total as f64 / 256.0;
    hist.iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Per-image statistics bundle.
#[derive(Debug, Clone)]
pub struct MetricsReport {
    pub entropy_bits: f64,
    /// None when the image has a single column (no horizontal pairs).
    pub corr_adjacent: Option<f64>,
    /// None unless built against a second image.
    pub npcr_percent: Option<f64>,
    pub histogram: [u64; 256],
    pub chi_square: f64,
}

impl MetricsReport {
    pub fn for_image(img: &GrayImage) -> Self {
        let hist = histogram(img);
        let total = img.pixels().len() as u64;
        Self {
            entropy_bits: entropy(img),
            corr_adjacent: adjacent_correlation(img).ok(),
            npcr_percent: None,
            histogram: hist,
            chi_square: chi_square(&hist, total),
        }
    }

    /// Statistics of `img` plus its NPCR against `other`.
    pub fn for_pair(img: &GrayImage, other: &GrayImage) -> Result<Self> {
        let mut report = Self::for_image(img);
        report.npcr_percent = Some(npcr(img, other)?);
        Ok(report)
    }
}
