//! Browser bindings for the dynsbox image cipher.
//!
//! Exposes three interactive operations for the demo page: a
//! [`CipherSession`] that holds a parsed key plus its generated S-box bank
//! and encrypts/decrypts grayscale pixel buffers, an [`analyze_image`]
//! statistics call, and table renderers for the APA transform and single
//! S-boxes.

use wasm_bindgen::prelude::*;

use dynsbox::gf::{reconcile_convention, ApaTable};
use dynsbox::keyfile::parse_key_file;
use dynsbox::metrics::MetricsReport;
use dynsbox::sbox::{generate_bank, generate_sbox, SBoxGenParams};
use dynsbox::{cipher, CipherKey, GrayImage, SBoxBank};

fn to_js(e: dynsbox::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// A grayscale pixel buffer with its dimensions (they swap per round for
/// non-square images, so the caller must read them back).
#[wasm_bindgen(getter_with_clone)]
pub struct ImageResult {
    pub pixels: Vec<u8>,
    pub width: u32,
    pub height: u32,
}

impl From<GrayImage> for ImageResult {
    fn from(img: GrayImage) -> Self {
        Self {
            width: img.width(),
            height: img.height(),
            pixels: img.into_pixels(),
        }
    }
}

/// Statistics of one image, mirroring the `analyze` CLI output.
#[wasm_bindgen(getter_with_clone)]
pub struct Analysis {
    pub entropy: f64,
    /// Absent for single-column images.
    pub corr_adjacent: Option<f64>,
    pub chi_square: f64,
    pub histogram: Vec<u32>,
}

/// A parsed key together with its generated 1000-box bank. Bank
/// generation is the expensive part, so the page builds a session once
/// per key and reuses it for every encrypt/decrypt click.
#[wasm_bindgen]
pub struct CipherSession {
    key: CipherKey,
    bank: SBoxBank,
}

#[wasm_bindgen]
impl CipherSession {
    /// Builds a session from key-file text (`name=value` lines).
    #[wasm_bindgen(constructor)]
    pub fn new(key_text: &str) -> Result<CipherSession, JsError> {
        let key = parse_key_file(key_text).map_err(to_js)?;
        let bank = generate_bank(&key.sbox_params).map_err(to_js)?;
        Ok(CipherSession { key, bank })
    }

    pub fn encrypt(&self, pixels: &[u8], width: u32, height: u32) -> Result<ImageResult, JsError> {
        let img = GrayImage::from_raw(pixels.to_vec(), width, height).map_err(to_js)?;
        Ok(cipher::encrypt(&img, &self.key, &self.bank)
            .map_err(to_js)?
            .into())
    }

    pub fn decrypt(&self, pixels: &[u8], width: u32, height: u32) -> Result<ImageResult, JsError> {
        let img = GrayImage::from_raw(pixels.to_vec(), width, height).map_err(to_js)?;
        Ok(cipher::decrypt(&img, &self.key, &self.bank)
            .map_err(to_js)?
            .into())
    }
}

/// Entropy, adjacent correlation, chi-square, and histogram of a buffer.
#[wasm_bindgen]
pub fn analyze_image(pixels: &[u8], width: u32, height: u32) -> Result<Analysis, JsError> {
    let img = GrayImage::from_raw(pixels.to_vec(), width, height).map_err(to_js)?;
    let report = MetricsReport::for_image(&img);
    Ok(Analysis {
        entropy: report.entropy_bits,
        corr_adjacent: report.corr_adjacent,
        chi_square: report.chi_square,
        histogram: report.histogram.iter().map(|&c| c as u32).collect(),
    })
}

/// NPCR (percent of differing positions) between two same-sized buffers.
#[wasm_bindgen]
pub fn npcr_percent(
    a: &[u8],
    b: &[u8],
    width: u32,
    height: u32,
) -> Result<f64, JsError> {
    let a = GrayImage::from_raw(a.to_vec(), width, height).map_err(to_js)?;
    let b = GrayImage::from_raw(b.to_vec(), width, height).map_err(to_js)?;
    dynsbox::metrics::npcr(&a, &b).map_err(to_js)
}

/// The computed APA table as 16 rows of uppercase hex.
#[wasm_bindgen]
pub fn apa_table_hex() -> String {
    ApaTable::computed(reconcile_convention().selected).to_hex_grid()
}

/// The convention reconciliation report as plain text.
#[wasm_bindgen]
pub fn apa_report_text() -> String {
    reconcile_convention().to_string()
}

/// One dynamic S-box (256 bytes, row-major 16x16) for the given shuffle
/// parameters; lets the page explore seed sensitivity interactively.
#[wasm_bindgen]
pub fn sbox_table(y0: f64, p: f64, n0: u32, zeta: u32) -> Result<Vec<u8>, JsError> {
    let params = SBoxGenParams {
        y0_base: y0,
        p,
        n0,
        zeta,
        ..SBoxGenParams::default()
    };
    Ok(generate_sbox(y0, &params).map_err(to_js)?.table().to_vec())
}
