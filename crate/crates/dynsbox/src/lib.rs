//! Chaotic dynamic S-box substitution cipher for 8-bit grayscale images.
//!
//! The cipher substitutes each pixel through one of 1000 dynamically
//! generated S-boxes (chosen per pixel by a logistic-map trajectory),
//! an affine-power-affine byte transform over GF(2^8), and a keyed
//! 256x256 Latin square, chained in cipher-block-chaining style with
//! a per-round rotate/flip of the image. All arithmetic is pinned to
//! IEEE-754 binary64 so ciphertexts are bit-identical across platforms.
//!
//! Modules:
//! - [`gf`] — GF(2^8) arithmetic and the APA transform
//! - [`chaos`] — logistic map, PWLCM, digit extraction
//! - [`sbox`] — dynamic S-box bank generation (chaotic Fisher-Yates)
//! - [`latin`] — keyed 256x256 Latin squares
//! - [`cipher`] — the multi-round encryption/decryption engine
//! - [`metrics`] — entropy, correlation, NPCR, histogram statistics
//! - [`image`] / [`pgm`] — grayscale images and binary PGM (P5) I/O
//! - [`keyfile`] — plain-text key file parsing

pub mod chaos;
pub mod cipher;
pub mod gf;
pub mod image;
pub mod keyfile;
pub mod latin;
pub mod metrics;
pub mod pgm;
pub mod sbox;

mod error;

pub use cipher::CipherKey;
pub use error::{Error, Result};
pub use image::GrayImage;
pub use latin::{LatinKey, LatinSquare};
pub use sbox::{SBox, SBoxBank, SBoxGenParams};
