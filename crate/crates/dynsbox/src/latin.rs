//! Keyed 256x256 Latin squares derived from a 256-bit external key.
//!
//! The key is folded into two PWLCM seeds, each seed drives a keyed byte
//! permutation through the same chaotic Fisher-Yates machinery the S-box
//! generator uses, and the two permutations P and Q fill the square as
//! `L(i, j) = P[(Q[i] + j) mod 256]` — an isotope of the cyclic square, so
//! both Latin invariants hold for any pair of permutations.

use crate::chaos::guard;
use crate::error::{Error, Result};
use crate::sbox::{generate_sbox, SBoxGenParams};

/// A 256-bit key, entered as 64 hex characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatinKey {
    bytes: [u8; 32],
}

impl LatinKey {
    /// Parses exactly 64 hex characters, case-insensitive.
    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() != 64 {
            return Err(Error::InvalidKey(format!(
                "K must be exactly 64 hex characters, got {}",
                s.len()
            )));
        }
        let mut bytes = [0u8; 32];
        for (i, chunk) in s.as_bytes().chunks(2).enumerate() {
            let hi = hex_digit(chunk[0])?;
            let lo = hex_digit(chunk[1])?;
            bytes[i] = hi << 4 | lo;
        }
        Ok(Self { bytes })
    }

    pub const fn from_bytes(bytes: [u8; 32]) -> Self {
        Self { bytes }
    }

    pub fn bytes(&self) -> &[u8; 32] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02X}")).collect()
    }

    /// Rotates the key left by whole bytes (n bytes = 8n bits).
    pub fn rotate_left_bytes(&self, n: usize) -> Self {
        let n = n % 32;
        let mut out = [0u8; 32];
        for (i, b) in out.iter_mut().enumerate() {
            *b = self.bytes[(i + n) % 32];
        }
        Self { bytes: out }
    }
}

fn hex_digit(c: u8) -> Result<u8> {
    match c {
        b'0'..=b'9' => Ok(c - b'0'),
        b'a'..=b'f' => Ok(c - b'a' + 10),
        b'A'..=b'F' => Ok(c - b'A' + 10),
        _ => Err(Error::InvalidKey(format!(
            "K contains non-hex character {:?}",
            c as char
        ))),
    }
}

const SEED_MOD: u64 = 999_999_999_999_997; // 10^15 - 3

/// Folds the key into two PWLCM seeds in (0, 1): each 16-byte half is
/// XOR-folded into a big-endian 64-bit word w, and the seed is
/// (w mod (10^15 - 3) + 1) / 10^15, guard-adjusted.
pub fn derive_seeds(key: &LatinKey) -> (f64, f64) {
    let fold = |half: &[u8]| {
        let a = u64::from_be_bytes(half[0..8].try_into().unwrap());
        let b = u64::from_be_bytes(half[8..16].try_into().unwrap());
        a ^ b
    };
    let seed = |w: u64| guard((w % SEED_MOD + 1) as f64 / 1e15);
    (seed(fold(&key.bytes[0..16])), seed(fold(&key.bytes[16..32])))
}

/// Which of the square's two permutations a seed drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermTag {
    P,
    Q,
}

/// Runs the chaotic shuffle with per-tag map parameters (p = 0.37 for P,
/// p = 0.43 for Q; 250 burn-in iterations, 2 passes) and returns the flat
/// byte permutation.
pub fn keyed_permutation(y0: f64, tag: PermTag) -> Result<[u8; 256]> {
    let params = SBoxGenParams {
        y0_base: y0,
        p: match tag {
            PermTag::P => 0.37,
            PermTag::Q => 0.43,
        },
        n0: 250,
        zeta: 2,
        ..SBoxGenParams::default()
    };
    Ok(*generate_sbox(y0, &params)?.table())
}

/// A 256x256 grid in which every row and every column is a permutation
/// of 0..=255. Stored flat, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    grid: Vec<u8>,
}

impl LatinSquare {
    /// Builds the keyed square. Seeds are guard-adjusted into (0, 1), so
    /// the underlying shuffles cannot fail.
    pub fn build(key: &LatinKey) -> Self {
        let (y0_p, y0_q) = derive_seeds(key);
        let p = keyed_permutation(y0_p, PermTag::P).expect("guarded seed is valid");
        let q = keyed_permutation(y0_q, PermTag::Q).expect("guarded seed is valid");
        Self::from_permutations(&p, &q)
    }

    /// Fills the square from explicit permutations: `L(i, j) = P[(Q[i] + j) mod 256]`.
    /// With identity permutations this is the cyclic square (i + j) mod 256.
    pub fn from_permutations(p: &[u8; 256], q: &[u8; 256]) -> Self {
        let mut grid = vec![0u8; 65536];
        for i in 0..256 {
            let base = q[i] as usize;
            for j in 0..256 {
                grid[i * 256 + j] = p[(base + j) % 256];
            }
        }
        Self { grid }
    }

    /// Cell (i, j), 0-based.
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.grid[i * 256 + j]
    }

    /// Flattened 1-based view L(q) for q in [1, 65536], row-major.
    pub fn flat(&self, q: usize) -> u8 {
        debug_assert!((1..=65536).contains(&q));
        self.grid[q - 1]
    }

    /// True when both Latin invariants hold.
    pub fn is_latin(&self) -> bool {
        is_latin_grid(&self.grid, 256)
    }
}

/// Order-n Latin checker over a flat row-major grid with symbols 0..n.
pub fn is_latin_grid(grid: &[u8], n: usize) -> bool {
    fn is_perm(values: impl Iterator<Item = u8>, n: usize) -> bool {
        let mut seen = vec![false; n];
        let mut count = 0usize;
        for v in values {
            let v = v as usize;
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
            count += 1;
        }
        count == n
    }
    if n == 0 || n > 256 || grid.len() != n * n {
        return false;
    }
    (0..n).all(|r| is_perm(grid[r * n..(r + 1) * n].iter().copied(), n))
        && (0..n).all(|c| is_perm(grid[c..].iter().step_by(n).copied(), n))
}
