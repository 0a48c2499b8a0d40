//! Dynamic S-box generation: chaotic Fisher-Yates shuffling driven by the
//! PWLCM, and the bank of 1000 boxes built from incremented seeds.

use crate::chaos::{extract_index, frac, guard, PwlcmState};
use crate::error::{Error, Result};

/// Parameters controlling S-box generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SBoxGenParams {
    /// PWLCM seed of the first box; box j uses frac(y0_base + (j-1) * increment).
    pub y0_base: f64,
    /// PWLCM control parameter.
    pub p: f64,
    /// Burn-in iterations discarded before shuffling starts.
    pub n0: u32,
    /// Number of full shuffle passes (255 swaps each).
    pub zeta: u32,
    /// Per-box seed increment.
    pub increment: f64,
    /// Number of boxes in the bank.
    pub count: u32,
}

impl Default for SBoxGenParams {
    fn default() -> Self {
        Self {
            y0_base: 0.41,
            p: 0.47,
            n0: 500,
            zeta: 3,
            increment: 0.000223,
            count: 1000,
        }
    }
}

impl SBoxGenParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.y0_base > 0.0 && self.y0_base < 1.0) {
            return Err(Error::InvalidParam(format!(
                "y0_base must lie in (0, 1), got {}",
                self.y0_base
            )));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::InvalidParam(format!(
                "p must lie in (0, 1), got {}",
                self.p
            )));
        }
        if !(self.increment > 0.0 && self.increment.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "increment must be positive and finite, got {}",
                self.increment
            )));
        }
        if self.count < 1 {
            return Err(Error::InvalidParam("count must be at least 1".into()));
        }
        Ok(())
    }
}

/// A bijective byte substitution table, viewed 1-based as 16 rows of 16.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SBox {
    table: [u8; 256],
}

impl SBox {
    /// Wraps a table after checking it is a permutation of 0..=255.
    pub fn from_table(table: [u8; 256]) -> Result<Self> {
        let mut seen = [false; 256];
        for &v in table.iter() {
            if seen[v as usize] {
                return Err(Error::InvalidParam(format!(
                    "S-box table repeats byte {v:#04x}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Self { table })
    }

    /// The identity substitution (`table[i] = i`).
    pub fn identity() -> Self {
        let mut table = [0u8; 256];
        for (i, v) in table.iter_mut().enumerate() {
            *v = i as u8;
        }
        Self { table }
    }

    pub fn table(&self) -> &[u8; 256] {
        &self.table
    }

    /// Entry at 1-based row l, column m of the 16x16 view (row-major).
    pub fn lookup(&self, l: u32, m: u32) -> Result<u8> {
        if !(1..=16).contains(&l) || !(1..=16).contains(&m) {
            return Err(Error::Index(format!(
                "S-box index ({l}, {m}) outside 1..=16"
            )));
        }
        Ok(self.at(l, m))
    }

    /// Unchecked variant for callers whose indices are in range by
    /// construction (the cipher derives them with mod 16 + 1).
    pub(crate) fn at(&self, l: u32, m: u32) -> u8 {
        debug_assert!((1..=16).contains(&l) && (1..=16).contains(&m));
        self.table[(16 * (l - 1) + (m - 1)) as usize]
    }

    pub fn is_bijective(&self) -> bool {
        // permutation by construction; kept for loaded tables in debug checks
        let mut seen = [false; 256];
        self.table.iter().all(|&v| {
            let fresh = !seen[v as usize];
            seen[v as usize] = true;
            fresh
        })
    }
}

/// One full Fisher-Yates pass: 255 swaps, position k from 256 down to 2,
/// partner m drawn from the PWLCM state.
fn shuffle_pass(table: &mut [u8; 256], state: &mut PwlcmState) {
    for cnt in 1..=255u32 {
        let k = 256 - cnt + 1;
        let y = state.step();
        let m = extract_index(y, k);
        table.swap((m - 1) as usize, (k - 1) as usize);
    }
}

/// Generates one S-box from a PWLCM seed: ascending init, n0 burn-in
/// iterations, then zeta shuffle passes over one continuous trajectory.
pub fn generate_sbox(seed_y0: f64, params: &SBoxGenParams) -> Result<SBox> {
    params.validate()?;
    let mut state = PwlcmState::new(seed_y0, params.p)?;
    for _ in 0..params.n0 {
        state.step();
    }
    let mut sbox = SBox::identity();
    for _ in 0..params.zeta {
        shuffle_pass(&mut sbox.table, &mut state);
    }
    Ok(sbox)
}

/// An ordered bank of S-boxes generated from incremented seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct SBoxBank {
    boxes: Vec<SBox>,
    /// Generation parameters; absent for banks loaded from a file.
    params: Option<SBoxGenParams>,
}

/// Magic bytes of the bank file format.
pub const BANK_MAGIC: &[u8; 4] = b"SBXB";
/// Current bank file format version.
pub const BANK_VERSION: u16 = 1;

impl SBoxBank {
    /// Wraps explicit boxes into a bank (no generation parameters attached).
    pub fn from_boxes(boxes: Vec<SBox>) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::InvalidParam("bank must contain at least one box".into()));
        }
        Ok(Self { boxes, params: None })
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[SBox] {
        &self.boxes
    }

    /// Box number k, 1-based.
    pub fn get(&self, k: u32) -> Result<&SBox> {
        self.boxes
            .get((k - 1) as usize)
            .ok_or_else(|| Error::Index(format!("bank has {} boxes, asked for {k}", self.len())))
    }

    pub(crate) fn at(&self, k: u32) -> &SBox {
        debug_assert!(k >= 1 && (k as usize) <= self.boxes.len());
        &self.boxes[(k - 1) as usize]
    }

    pub fn params(&self) -> Option<&SBoxGenParams> {
        self.params.as_ref()
    }

    /// Serializes as "SBXB", u16 LE version, u32 LE count, then the raw
    /// 256-byte tables in order.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(10 + self.boxes.len() * 256);
        out.extend_from_slice(BANK_MAGIC);
        out.extend_from_slice(&BANK_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.boxes.len() as u32).to_le_bytes());
        for b in &self.boxes {
            out.extend_from_slice(&b.table);
        }
        out
    }

    /// Parses and validates a bank file; every table must be bijective.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 10 {
            return Err(Error::Bank("file shorter than header".into()));
        }
        if &bytes[0..4] != BANK_MAGIC {
            return Err(Error::Bank("bad magic, expected SBXB".into()));
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != BANK_VERSION {
            return Err(Error::Bank(format!(
                "unsupported version {version}, expected {BANK_VERSION}"
            )));
        }
        let count = u32::from_le_bytes([bytes[6], bytes[7], bytes[8], bytes[9]]) as usize;
        if count == 0 {
            return Err(Error::Bank("empty bank".into()));
        }
        let expected = 10 + count * 256;
        if bytes.len() != expected {
            return Err(Error::Bank(format!(
                "expected {expected} bytes for {count} boxes, found {}",
                bytes.len()
            )));
        }
        let mut boxes = Vec::with_capacity(count);
        for i in 0..count {
            let mut table = [0u8; 256];
            table.copy_from_slice(&bytes[10 + i * 256..10 + (i + 1) * 256]);
            boxes.push(SBox::from_table(table).map_err(|_| {
                Error::Bank(format!("box {} is not a permutation", i + 1))
            })?);
        }
        Ok(Self { boxes, params: None })
    }
}

/// Generates the full bank; box j (1-based) is seeded with
/// guard(frac(y0_base + (j - 1) * increment)).
pub fn generate_bank(params: &SBoxGenParams) -> Result<SBoxBank> {
    params.validate()?;
    let mut boxes = Vec::with_capacity(params.count as usize);
    for j in 1..=params.count {
        let seed = guard(frac(params.y0_base + (j - 1) as f64 * params.increment));
        boxes.push(generate_sbox(seed, params)?);
    }
    Ok(SBoxBank {
        boxes,
        params: Some(*params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regression_params() -> SBoxGenParams {
        SBoxGenParams {
            y0_base: 0.3,
            p: 0.47,
            n0: 500,
            zeta: 3,
            ..SBoxGenParams::default()
        }
    }

    /// Frozen output of generate_sbox(0.3, p=0.47, n0=500, zeta=3). Produced
    /// by an independent straight-line implementation whose first three
    /// swaps (k, m) = (256, 224), (255, 157), (254, 54) were verified by
    /// hand against the PWLCM recurrence from y = 0.7249399674187261.
    const REGRESSION_TABLE: [u8; 256] = [
        31, 136, 138, 165, 248, 219, 54, 236, 38, 197, 238, 119, 59, 162, 73, 217,
        182, 232, 123, 245, 255, 46, 142, 66, 113, 15, 244, 161, 47, 222, 53, 230,
        177, 156, 233, 97, 213, 110, 77, 7, 135, 93, 216, 164, 80, 4, 86, 208,
        5, 246, 242, 33, 163, 227, 67, 127, 74, 28, 128, 229, 130, 231, 3, 103,
        150, 249, 36, 168, 29, 22, 243, 223, 147, 187, 45, 192, 158, 58, 155, 111,
        48, 27, 78, 186, 61, 173, 62, 228, 50, 131, 220, 201, 169, 152, 174, 175,
        35, 204, 157, 237, 160, 109, 137, 221, 41, 209, 30, 178, 20, 247, 122, 32,
        19, 153, 214, 176, 202, 181, 82, 51, 18, 240, 234, 52, 16, 115, 57, 96,
        91, 194, 92, 154, 251, 145, 148, 253, 239, 65, 196, 190, 70, 146, 90, 203,
        100, 184, 133, 63, 193, 185, 139, 23, 215, 218, 24, 141, 167, 9, 198, 13,
        124, 6, 42, 134, 68, 250, 191, 56, 49, 10, 225, 180, 149, 151, 83, 99,
        26, 84, 39, 87, 126, 140, 69, 71, 114, 112, 224, 210, 75, 105, 101, 188,
        125, 60, 116, 25, 89, 55, 121, 129, 166, 11, 76, 189, 104, 206, 43, 252,
        21, 107, 235, 170, 81, 40, 241, 37, 12, 72, 85, 172, 171, 1, 118, 144,
        79, 143, 195, 17, 14, 98, 254, 106, 200, 179, 117, 120, 132, 64, 102, 212,
        8, 108, 183, 226, 211, 88, 44, 199, 207, 95, 205, 2, 94, 159, 34, 0,
    ];

    #[test]
    fn zeta_zero_is_identity() {
        let params = SBoxGenParams {
            zeta: 0,
            ..regression_params()
        };
        let sbox = generate_sbox(0.3, &params).unwrap();
        assert_eq!(sbox, SBox::identity());
    }

    #[test]
    fn generated_boxes_are_bijective() {
        for seed in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let sbox = generate_sbox(seed, &regression_params()).unwrap();
            assert!(sbox.is_bijective());
        }
    }

    #[test]
    fn frozen_regression_table() {
        let sbox = generate_sbox(0.3, &regression_params()).unwrap();
        assert_eq!(*sbox.table(), REGRESSION_TABLE);
    }

    #[test]
    fn adjacent_seeds_diverge() {
        let params = regression_params();
        let a = generate_sbox(0.3, &params).unwrap();
        let b = generate_sbox(guard(frac(0.3 + params.increment)), &params).unwrap();
        let diff = a
            .table()
            .iter()
            .zip(b.table().iter())
            .filter(|(x, y)| x != y)
            .count();
        // measured 254 once; floor leaves slack for the +-30 band
        assert!(diff >= 200, "adjacent seeds differ in only {diff} positions");
    }

    #[test]
    fn seed_outside_interval_rejected() {
        assert!(generate_sbox(0.0, &regression_params()).is_err());
        assert!(generate_sbox(1.0, &regression_params()).is_err());
    }

    #[test]
    fn lookup_row_major() {
        let id = SBox::identity();
        assert_eq!(id.lookup(1, 1).unwrap(), 0);
        assert_eq!(id.lookup(16, 16).unwrap(), 255);
        assert_eq!(id.lookup(2, 1).unwrap(), 16);
        assert!(id.lookup(0, 1).is_err());
        assert!(id.lookup(1, 17).is_err());
    }

    #[test]
    fn bank_of_one_equals_single_box() {
        let params = SBoxGenParams {
            count: 1,
            ..regression_params()
        };
        let bank = generate_bank(&params).unwrap();
        assert_eq!(bank.len(), 1);
        assert_eq!(bank.get(1).unwrap(), &generate_sbox(0.3, &params).unwrap());
    }

    #[test]
    fn bank_regenerates_identically() {
        let params = SBoxGenParams {
            count: 16,
            ..SBoxGenParams::default()
        };
        let a = generate_bank(&params).unwrap();
        let b = generate_bank(&params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bank_roundtrip_through_bytes() {
        let params = SBoxGenParams {
            count: 5,
            ..SBoxGenParams::default()
        };
        let bank = generate_bank(&params).unwrap();
        let bytes = bank.to_bytes();
        assert_eq!(bytes.len(), 10 + 5 * 256);
        let loaded = SBoxBank::from_bytes(&bytes).unwrap();
        assert_eq!(loaded.boxes(), bank.boxes());
        assert!(loaded.params().is_none());
    }

    #[test]
    fn bank_bytes_rejects_corruption() {
        let params = SBoxGenParams {
            count: 2,
            ..SBoxGenParams::default()
        };
        let bank = generate_bank(&params).unwrap();
        let good = bank.to_bytes();

        let mut bad_magic = good.clone();
        bad_magic[0] = b'X';
        assert!(SBoxBank::from_bytes(&bad_magic).is_err());

        let mut bad_version = good.clone();
        bad_version[4] = 99;
        assert!(SBoxBank::from_bytes(&bad_version).is_err());

        assert!(SBoxBank::from_bytes(&good[..good.len() - 1]).is_err());

        // duplicate a byte inside the first table: no longer a permutation
        let mut bad_table = good.clone();
        bad_table[10] = bad_table[11];
        assert!(SBoxBank::from_bytes(&bad_table).is_err());
    }
}
