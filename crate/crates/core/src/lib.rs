//! k-modulus quantization ahead of PNG encoding, with the codecs and
//! metrics needed to measure what it buys.
//!
//! The crate is organised bottom-up:
//!
//! * [`raster`] holds the shared [`RasterImage`] type.
//! * [`kmodulus`] snaps samples to multiples of `k`.
//! * [`flate`] is a zlib/DEFLATE codec with CRC-32 and Adler-32.
//! * [`png`] and [`bmp`] read and write the two container formats.
//! * [`metrics`] computes MSE, PSNR and SSIM.
//! * [`corpus`] generates deterministic synthetic test images and
//!   [`bench`] turns a set of images into size/quality report rows.

pub mod bench;
pub mod bmp;
pub mod corpus;
pub mod flate;
pub mod format;
pub mod kmodulus;
pub mod metrics;
pub mod png;
pub mod raster;

use thiserror::Error;

pub use bench::{BenchRecord, BenchSummary};
pub use corpus::{CorpusSpec, GeneratorKind};
pub use flate::CompressionLevel;
pub use kmodulus::{kmm_pixel, kmm_transform, residual, KParameter, ResidualGrid};
pub use metrics::{mse, psnr, ssim, QualityReport};
pub use png::{EncodeOptions, FilterStrategy, FilterType};
pub use raster::{Channels, RasterImage};

/// Any error produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Raster(#[from] raster::RasterError),
    #[error(transparent)]
    InvalidK(#[from] kmodulus::InvalidK),
    #[error(transparent)]
    Inflate(#[from] flate::InflateError),
    #[error(transparent)]
    Png(#[from] png::PngError),
    #[error(transparent)]
    Bmp(#[from] bmp::BmpError),
    #[error(transparent)]
    Metric(#[from] metrics::MetricError),
    #[error(transparent)]
    Format(#[from] format::FormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("no BMP files found in {}", .0.display())]
    EmptyCorpus(std::path::PathBuf),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
