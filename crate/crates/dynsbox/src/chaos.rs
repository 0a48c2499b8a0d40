//! Deterministic iteration of the logistic map and the piece-wise linear
//! chaotic map (PWLCM), plus the digit-extraction rules that turn chaotic
//! states into discrete indices.
//!
//! Floating-point contract: all map arithmetic is IEEE-754 binary64 with
//! round-to-nearest-even, no fused multiply-add, and the operation order
//! written below — this is what makes ciphertexts bit-identical across
//! platforms. Rust never contracts separate f64 ops into FMAs, so writing
//! the expressions literally is sufficient.

use crate::error::{Error, Result};

/// Fractional part via floor, mapping any finite value into [0, 1).
pub fn frac(v: f64) -> f64 {
    v - v.floor()
}

/// Remaps a raw map output into the open interval (0, 1).
///
/// Degenerate outputs (exactly 0.0 or 1.0, or anything outside the open
/// interval) are shifted by a fixed offset and wrapped; if that still
/// lands on a boundary the value falls back to a fixed interior point.
/// The escape is deterministic so both ends of the cipher agree on it.
pub fn guard(v: f64) -> f64 {
    if v > 0.0 && v < 1.0 {
        return v;
    }
    let shifted = frac(v + 0.123456789);
    if shifted > 0.0 && shifted < 1.0 {
        shifted
    } else {
        0.5000000001
    }
}

/// State of the logistic map x' = lambda * x * (1 - x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticState {
    x: f64,
    lambda: f64,
}

impl LogisticState {
    /// Requires x0 in (0, 1) and lambda in (3.57, 4), the chaotic regime.
    pub fn new(x0: f64, lambda: f64) -> Result<Self> {
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(Error::InvalidParam(format!(
                "logistic seed x0 must lie in (0, 1), got {x0}"
            )));
        }
        if !(lambda > 3.57 && lambda < 4.0) {
            return Err(Error::InvalidParam(format!(
                "logistic parameter lambda must lie in (3.57, 4), got {lambda}"
            )));
        }
        Ok(Self { x: x0, lambda })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// One iteration, literally lambda * x * (1 - x), then the guard.
    pub fn step(&mut self) -> f64 {
        self.x = guard(self.lambda * self.x * (1.0 - self.x));
        self.x
    }
}

/// State of the PWLCM y' = y/p for y <= p, else (1-y)/(1-p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PwlcmState {
    y: f64,
    p: f64,
}

impl PwlcmState {
    /// Requires y0 in (0, 1) and p in (0, 1).
    pub fn new(y0: f64, p: f64) -> Result<Self> {
        if !(y0 > 0.0 && y0 < 1.0) {
            return Err(Error::InvalidParam(format!(
                "PWLCM seed y0 must lie in (0, 1), got {y0}"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParam(format!(
                "PWLCM parameter p must lie in (0, 1), got {p}"
            )));
        }
        Ok(Self { y: y0, p })
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// One iteration of the two-branch map, then the guard. Note y = p
    /// falls in the first branch and produces raw 1.0, which the guard
    /// remaps into the open interval.
    pub fn step(&mut self) -> f64 {
        let raw = if self.y > 0.0 && self.y <= self.p {
            self.y / self.p
        } else {
            (1.0 - self.y) / (1.0 - self.p)
        };
        self.y = guard(raw);
        self.y
    }
}

/// Splits x in (0, 1) into three 5-digit groups of its first 15 decimals.
///
/// The digits are defined operationally through u = floor(x * 1e15)
/// evaluated in binary64: 1e15 < 2^53, so u is exact once the product is
/// rounded. This may differ by one from the true decimal expansion when
/// the product rounds across an integer boundary, which is fine — both
/// ends of the cipher compute the same u.
pub fn extract_digits(x: f64) -> (u32, u32, u32) {
    debug_assert!(x > 0.0 && x < 1.0);
    let u = (x * 1e15).floor() as u64;
    (
        (u / 10_000_000_000) as u32,
        ((u / 100_000) % 100_000) as u32,
        (u % 100_000) as u32,
    )
}

/// Extracts an index in [1, k] as floor(y * 1e10) mod k + 1.
pub fn extract_index(y: f64, k: u32) -> u32 {
    debug_assert!(k >= 1);
    debug_assert!(y > 0.0 && y < 1.0);
    ((y * 1e10).floor() as u64 % k as u64) as u32 + 1
}
