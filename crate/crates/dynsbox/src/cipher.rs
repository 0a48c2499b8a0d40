//! The multi-round substitution cipher: per-pixel chaotic S-box selection,
//! APA substitution, CBC-style XOR chaining with Latin square material,
//! ciphertext-fed keystream skips, and a rotate/flip between rounds.
//!
//! Each round r derives its own components from the master key (seed shift,
//! chain-byte step, key rotation), rebuilds the Latin square from the
//! rotated key, and restarts the logistic map from the round seed. A single
//! pass is inherently sequential: the chain byte feeds forward and the
//! number of skipped keystream states depends on each cipher byte.

use crate::chaos::{extract_digits, frac, guard, LogisticState};
use crate::error::{Error, Result};
use crate::gf::apa;
use crate::image::GrayImage;
use crate::latin::{LatinKey, LatinSquare};
use crate::sbox::{SBoxBank, SBoxGenParams};

/// Number of S-boxes the substitution step selects among.
pub const BANK_SIZE: u32 = 1000;

/// The full secret: chaotic seeds and parameters, round count, chaining
/// seed byte, Latin key, and the S-box generation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CipherKey {
    /// Logistic seed in (0, 1).
    pub x0: f64,
    /// Logistic parameter in (3.57, 4).
    pub lambda: f64,
    /// Round count, at least 1 (two or more recommended).
    pub beta: u32,
    /// Chaining seed byte C(0).
    pub c0: u8,
    /// 256-bit Latin square key.
    pub latin_key: LatinKey,
    /// Parameters for the dynamic S-box bank.
    pub sbox_params: SBoxGenParams,
}

impl CipherKey {
    pub fn validate(&self) -> Result<()> {
        if !(self.x0 > 0.0 && self.x0 < 1.0) {
            return Err(Error::InvalidParam(format!(
                "x0 must lie in (0, 1), got {}",
                self.x0
            )));
        }
        if !(self.lambda > 3.57 && self.lambda < 4.0) {
            return Err(Error::InvalidParam(format!(
                "lambda must lie in (3.57, 4), got {}",
                self.lambda
            )));
        }
        if self.beta < 1 {
            return Err(Error::InvalidParam("beta must be at least 1".into()));
        }
        self.sbox_params.validate()
    }
}

/// Round-updated variants of the master key components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundKey {
    pub x0_r: f64,
    pub c0_r: u8,
    pub latin_key_r: LatinKey,
    pub r: u32,
}

/// Derives round r's components directly from the master key:
/// x0 shifts by r * 0.054321 (wrapped and guarded), C(0) steps by 97 per
/// round mod 256, and the Latin key rotates left by r bytes.
pub fn round_key(master: &CipherKey, r: u32) -> RoundKey {
    RoundKey {
        x0_r: guard(frac(master.x0 + r as f64 * 0.054321)),
        c0_r: ((master.c0 as u64 + 97 * r as u64) % 256) as u8,
        latin_key_r: master.latin_key.rotate_left_bytes(r as usize),
        r,
    }
}

/// Substituent byte derived from one captured map value: the first five
/// decimal digit groups pick the box (mod 1000), row and column (mod 16),
/// and the looked-up byte goes through the APA transform.
fn substituent_from_x(x: f64, bank: &SBoxBank) -> u8 {
    let (a1, a2, a3) = extract_digits(x);
    let k = a1 % BANK_SIZE + 1;
    let l = a2 % 16 + 1;
    let m = a3 % 16 + 1;
    apa(bank.at(k).at(l, m))
}

/// Advances the logistic map once and produces the substituent byte Phi.
pub fn select_substituent(ls: &mut LogisticState, bank: &SBoxBank) -> u8 {
    substituent_from_x(ls.step(), bank)
}

fn chain_pass(
    input: &[u8],
    c0_r: u8,
    latin: &LatinSquare,
    bank: &SBoxBank,
    ls: &mut LogisticState,
    decrypting: bool,
) -> Vec<u8> {
    let mut out = Vec::with_capacity(input.len());
    let mut prev = c0_r;
    for (i, &byte) in (1..=input.len()).zip(input) {
        let phi = select_substituent(ls, bank);
        let q = i % 65536 + 1;
        let keystream = prev ^ phi ^ latin.flat(q);
        // the chain and the skip count always track the cipher byte, which
        // is the input when decrypting and the output when encrypting
        let cipher_byte = if decrypting { byte } else { byte ^ keystream };
        out.push(byte ^ keystream);
        let skips = (cipher_byte % 4) + 1;
        for _ in 0..skips {
            ls.step();
        }
        prev = cipher_byte;
    }
    out
}

/// One encryption round: chain the flattened pixels, then rotate the
/// result 180 degrees and flip it about the main diagonal (dimensions
/// swap). The caller provides the round's fresh logistic state.
pub fn encrypt_round(
    img: &GrayImage,
    rk: &RoundKey,
    bank: &SBoxBank,
    ls: &mut LogisticState,
) -> GrayImage {
    let latin = LatinSquare::build(&rk.latin_key_r);
    let out = chain_pass(img.pixels(), rk.c0_r, &latin, bank, ls, false);
    let chained = GrayImage::from_raw(out, img.width(), img.height())
        .expect("chained buffer keeps the input shape");
    chained.rot180().transpose()
}

/// Exact inverse of [`encrypt_round`]: undo the geometry first, then run
/// the forward scan regenerating the identical keystream (the skip counts
/// read cipher bytes, which the decryptor has).
pub fn decrypt_round(
    img: &GrayImage,
    rk: &RoundKey,
    bank: &SBoxBank,
    ls: &mut LogisticState,
) -> GrayImage {
    let undone = img.transpose().rot180();
    let latin = LatinSquare::build(&rk.latin_key_r);
    let out = chain_pass(undone.pixels(), rk.c0_r, &latin, bank, ls, true);
    GrayImage::from_raw(out, undone.width(), undone.height())
        .expect("plain buffer keeps the chained shape")
}

fn check_bank(bank: &SBoxBank) -> Result<()> {
    if bank.len() != BANK_SIZE as usize {
        return Err(Error::InvalidParam(format!(
            "substitution selects among {BANK_SIZE} S-boxes, bank has {}",
            bank.len()
        )));
    }
    Ok(())
}

/// Runs beta rounds, each from a fresh logistic state seeded by the round
/// key. Dimensions swap each round for non-square images and return to
/// the original when beta is even.
pub fn encrypt(img: &GrayImage, key: &CipherKey, bank: &SBoxBank) -> Result<GrayImage> {
    key.validate()?;
    check_bank(bank)?;
    let mut cur = img.clone();
    for r in 1..=key.beta {
        let rk = round_key(key, r);
        let mut ls = LogisticState::new(rk.x0_r, key.lambda)?;
        cur = encrypt_round(&cur, &rk, bank, &mut ls);
    }
    Ok(cur)
}

/// Inverse pipeline: rounds beta down to 1, each with its round key and
/// fresh logistic state.
pub fn decrypt(img: &GrayImage, key: &CipherKey, bank: &SBoxBank) -> Result<GrayImage> {
    key.validate()?;
    check_bank(bank)?;
    let mut cur = img.clone();
    for r in (1..=key.beta).rev() {
        let rk = round_key(key, r);
        let mut ls = LogisticState::new(rk.x0_r, key.lambda)?;
        cur = decrypt_round(&cur, &rk, bank, &mut ls);
    }
    Ok(cur)
}
