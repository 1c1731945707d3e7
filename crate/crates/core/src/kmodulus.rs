//! k-modulus quantization.
//!
//! Every sample is snapped to the nearest multiple of `k`. A residue of
//! exactly `k / 2` rounds down, and a sample whose nearest multiple would
//! exceed 255 is mapped to the largest multiple of `k` that fits in a byte.
//! Channels are quantized independently.

use thiserror::Error;

use crate::raster::{RasterError, RasterImage};

pub const MIN_K: u8 = 2;
pub const MAX_K: u8 = 25;
pub const DEFAULT_K: u8 = 10;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("k must be in {MIN_K}..={MAX_K}, got {0}")]
pub struct InvalidK(pub i64);

/// Quantization step, validated to lie in `2..=25`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KParameter(u8);

impl KParameter {
    pub fn new(k: i64) -> Result<Self, InvalidK> {
        if (MIN_K as i64..=MAX_K as i64).contains(&k) {
            Ok(Self(k as u8))
        } else {
            Err(InvalidK(k))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Every valid parameter in ascending order.
    pub fn all() -> impl Iterator<Item = KParameter> {
        (MIN_K..=MAX_K).map(KParameter)
    }
}

impl Default for KParameter {
    fn default() -> Self {
        Self(DEFAULT_K)
    }
}

impl std::fmt::Display for KParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::str::FromStr for KParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n: i64 = s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))?;
        KParameter::new(n).map_err(|e| e.to_string())
    }
}

/// Signed per-sample difference `original - transformed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualGrid {
    pub width: u32,
    pub height: u32,
    pub channels: crate::Channels,
    pub residuals: Vec<i16>,
}

impl ResidualGrid {
    pub fn max_abs(&self) -> u16 {
        self.residuals.iter().map(|r| r.unsigned_abs()).max().unwrap_or(0)
    }

    /// Inclusive `(min, max)` of the residuals; `(0, 0)` for an empty grid.
    pub fn range(&self) -> (i16, i16) {
        let min = self.residuals.iter().copied().min().unwrap_or(0);
        let max = self.residuals.iter().copied().max().unwrap_or(0);
        (min, max)
    }
}

/// Quantizes one sample to a multiple of `k`.
pub fn kmm_pixel(v: u8, k: KParameter) -> u8 {
    let k = u16::from(k.get());
    let v = u16::from(v);
    let residue = v % k;
    let lower = v - residue;
    // Ties (2 * residue == k) stay on the lower multiple.
    let nearest = if 2 * residue <= k { lower } else { lower + k };
    if nearest > 255 {
        lower as u8
    } else {
        nearest as u8
    }
}

/// 256-entry lookup table for `kmm_pixel` at a fixed `k`.
pub fn kmm_table(k: KParameter) -> [u8; 256] {
    let mut table = [0u8; 256];
    for (v, slot) in table.iter_mut().enumerate() {
        *slot = kmm_pixel(v as u8, k);
    }
    table
}

/// Returns a new image with every sample quantized by [`kmm_pixel`].
pub fn kmm_transform(img: &RasterImage, k: KParameter) -> RasterImage {
    let table = kmm_table(k);
    img.map_samples(|s| table[s as usize])
}

pub fn residual(original: &RasterImage, transformed: &RasterImage) -> Result<ResidualGrid, RasterError> {
    original.check_same_shape(transformed)?;
    let residuals = original
        .samples()
        .iter()
        .zip(transformed.samples())
        .map(|(&a, &b)| i16::from(a) - i16::from(b))
        .collect();
    Ok(ResidualGrid {
        width: original.width(),
        height: original.height(),
        channels: original.channels(),
        residuals,
    })
}
