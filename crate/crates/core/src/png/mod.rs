//! PNG encoder and decoder for 8-bit grayscale and truecolor images.
//!
//! Only non-interlaced images with bit depth 8 and color type 0 or 2 are
//! handled. The encoder writes IHDR, one or more IDAT chunks and IEND, and
//! nothing else; the decoder skips ancillary chunks it meets.

mod chunk;
mod filter;

use rayon::prelude::*;
use thiserror::Error;

use crate::flate::{deflate_compress, inflate, CompressionLevel, InflateError};
use crate::raster::{Channels, RasterImage};

pub use chunk::{PngChunk, MAX_CHUNK_LEN};
pub use filter::{apply_filter, choose_filter, paeth_predictor, unfilter, FilterType};

pub const SIGNATURE: [u8; 8] = [137, 80, 78, 71, 13, 10, 26, 10];

/// IDAT payloads are split at this size.
pub const IDAT_SPLIT: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PngError {
    #[error("not a PNG file (bad signature)")]
    BadSignature,
    #[error("PNG data ended unexpectedly")]
    Truncated,
    #[error("chunk length {0} exceeds the 2^31-1 limit")]
    ChunkTooLarge(usize),
    #[error("invalid chunk type {0:?}")]
    BadChunkType([u8; 4]),
    #[error("CRC mismatch in {chunk} chunk: stored {stored:#010x}, computed {computed:#010x}")]
    CrcMismatch { chunk: String, stored: u32, computed: u32 },
    #[error("first chunk must be IHDR")]
    MissingHeader,
    #[error("malformed IHDR: {0}")]
    BadHeader(String),
    #[error("unsupported PNG feature: {0}")]
    Unsupported(String),
    #[error("no IDAT chunk before IEND")]
    MissingData,
    #[error("decompressed image data is {actual} bytes, expected {expected}")]
    DataSize { expected: usize, actual: usize },
    #[error("invalid filter type byte {0}")]
    InvalidFilter(u8),
    #[error("row length {row} does not match prior row length {prior}")]
    RowLength { row: usize, prior: usize },
    #[error("zlib stream: {0}")]
    Zlib(#[from] InflateError),
}

/// Per-row filter selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FilterStrategy {
    Fixed(FilterType),
    /// Pick the filter with the smallest signed-magnitude sum for each row,
    /// falling back to a single fixed filter when that compresses smaller.
    #[default]
    Adaptive,
}

impl FilterStrategy {
    pub const ALL: [FilterStrategy; 6] = [
        FilterStrategy::Fixed(FilterType::None),
        FilterStrategy::Fixed(FilterType::Sub),
        FilterStrategy::Fixed(FilterType::Up),
        FilterStrategy::Fixed(FilterType::Average),
        FilterStrategy::Fixed(FilterType::Paeth),
        FilterStrategy::Adaptive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FilterStrategy::Fixed(t) => t.name(),
            FilterStrategy::Adaptive => "adaptive",
        }
    }
}

impl std::str::FromStr for FilterStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FilterStrategy::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown filter {s:?} (expected none, sub, up, average, paeth or adaptive)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EncodeOptions {
    pub level: CompressionLevel,
    pub filter: FilterStrategy,
}

impl EncodeOptions {
    pub fn new(level: CompressionLevel, filter: FilterStrategy) -> Self {
        Self { level, filter }
    }
}

fn color_type(channels: Channels) -> u8 {
    match channels {
        Channels::Gray => 0,
        Channels::Rgb => 2,
    }
}

/// Filter-type byte plus filtered bytes for every scanline.
pub fn filter_scanlines(img: &RasterImage, strategy: FilterStrategy) -> Vec<u8> {
    let bpp = img.channels().count();
    let row_len = img.row_len();
    let zero = vec![0u8; row_len];
    let mut out = Vec::with_capacity((row_len + 1) * img.height() as usize);
    let mut scratch = Vec::with_capacity(row_len);
    let mut prior: &[u8] = &zero;
    for row in img.rows() {
        let ftype = match strategy {
            FilterStrategy::Fixed(t) => t,
            FilterStrategy::Adaptive => choose_filter(row, prior, bpp),
        };
        filter::filter_into(row, prior, ftype, bpp, &mut scratch);
        out.push(ftype as u8);
        out.extend_from_slice(&scratch);
        prior = row;
    }
    out
}

/// zlib stream of the filtered image data.
///
/// Under [`FilterStrategy::Adaptive`] the per-row heuristic result competes
/// against each single fixed filter and the shortest stream is kept, so
/// adaptive output is never larger than the best fixed choice. Ties go to the
/// heuristic, then to the lowest filter type.
fn compress_scanlines(img: &RasterImage, options: &EncodeOptions) -> Vec<u8> {
    match options.filter {
        FilterStrategy::Fixed(_) => deflate_compress(&filter_scanlines(img, options.filter), options.level),
        FilterStrategy::Adaptive => {
            let candidates: Vec<Vec<u8>> = FilterStrategy::ALL
                .par_iter()
                .map(|&f| deflate_compress(&filter_scanlines(img, f), options.level))
                .collect();
            let (last, fixed) = candidates.split_last().expect("six candidates");
            let mut best = last;
            for c in fixed {
                if c.len() < best.len() {
                    best = c;
                }
            }
            best.clone()
        }
    }
}

pub fn encode_png(img: &RasterImage, options: &EncodeOptions) -> Vec<u8> {
    let mut ihdr = Vec::with_capacity(13);
    ihdr.extend_from_slice(&img.width().to_be_bytes());
    ihdr.extend_from_slice(&img.height().to_be_bytes());
    ihdr.extend_from_slice(&[8, color_type(img.channels()), 0, 0, 0]);

    let zlib = compress_scanlines(img, options);

    let mut out = Vec::with_capacity(zlib.len() + 64);
    out.extend_from_slice(&SIGNATURE);
    PngChunk::new(*b"IHDR", ihdr).write_to(&mut out);
    for part in zlib.chunks(IDAT_SPLIT) {
        PngChunk::new(*b"IDAT", part.to_vec()).write_to(&mut out);
    }
    PngChunk::new(*b"IEND", Vec::new()).write_to(&mut out);
    out
}

/// Parses a PNG into its chunks, verifying the signature and every CRC.
pub fn read_chunks(data: &[u8]) -> Result<Vec<PngChunk>, PngError> {
    if data.len() < SIGNATURE.len() || data[..8] != SIGNATURE {
        return Err(PngError::BadSignature);
    }
    let mut chunks = Vec::new();
    let mut pos = 8;
    loop {
        let (chunk, used) = PngChunk::parse(&data[pos..])?;
        pos += used;
        if !chunk.is_valid() {
            let computed = PngChunk::new(chunk.type_code, chunk.data.clone()).crc;
            return Err(PngError::CrcMismatch {
                chunk: chunk.type_str(),
                stored: chunk.crc,
                computed,
            });
        }
        let end = &chunk.type_code == b"IEND";
        chunks.push(chunk);
        if end {
            return Ok(chunks);
        }
    }
}

struct Header {
    width: u32,
    height: u32,
    channels: Channels,
}

fn parse_ihdr(chunk: &PngChunk) -> Result<Header, PngError> {
    if &chunk.type_code != b"IHDR" {
        return Err(PngError::MissingHeader);
    }
    let d = &chunk.data;
    if d.len() != 13 {
        return Err(PngError::BadHeader(format!("length {} (expected 13)", d.len())));
    }
    let width = u32::from_be_bytes([d[0], d[1], d[2], d[3]]);
    let height = u32::from_be_bytes([d[4], d[5], d[6], d[7]]);
    if width == 0 || height == 0 || width > i32::MAX as u32 || height > i32::MAX as u32 {
        return Err(PngError::BadHeader(format!("dimensions {width}x{height}")));
    }
    let (depth, ctype, compression, filter, interlace) = (d[8], d[9], d[10], d[11], d[12]);
    if depth != 8 {
        return Err(PngError::Unsupported(format!("bit depth {depth}")));
    }
    let channels = match ctype {
        0 => Channels::Gray,
        2 => Channels::Rgb,
        other => return Err(PngError::Unsupported(format!("color type {other}"))),
    };
    if compression != 0 {
        return Err(PngError::BadHeader(format!("compression method {compression}")));
    }
    if filter != 0 {
        return Err(PngError::BadHeader(format!("filter method {filter}")));
    }
    if interlace != 0 {
        return Err(PngError::Unsupported("interlaced images".into()));
    }
    Ok(Header { width, height, channels })
}

pub fn decode_png(data: &[u8]) -> Result<RasterImage, PngError> {
    let chunks = read_chunks(data)?;
    let header = parse_ihdr(chunks.first().ok_or(PngError::MissingHeader)?)?;

    let mut zlib = Vec::new();
    let mut seen_idat = false;
    for chunk in &chunks[1..] {
        match &chunk.type_code {
            b"IDAT" => {
                seen_idat = true;
                zlib.extend_from_slice(&chunk.data);
            }
            b"IEND" => {}
            // A suggested palette is legal for truecolor and can be ignored.
            b"PLTE" if header.channels == Channels::Rgb => {}
            b"IHDR" => return Err(PngError::BadHeader("duplicate IHDR".into())),
            _ if chunk.is_critical() => {
                return Err(PngError::Unsupported(format!("critical chunk {}", chunk.type_str())))
            }
            _ => {}
        }
    }
    if !seen_idat {
        return Err(PngError::MissingData);
    }

    let raw = inflate(&zlib)?;
    let bpp = header.channels.count();
    let row_len = header.width as usize * bpp;
    let expected = (row_len + 1) * header.height as usize;
    if raw.len() != expected {
        return Err(PngError::DataSize {
            expected,
            actual: raw.len(),
        });
    }

    let mut samples = vec![0u8; row_len * header.height as usize];
    let zero = vec![0u8; row_len];
    for (y, line) in raw.chunks_exact(row_len + 1).enumerate() {
        let ftype = FilterType::try_from(line[0])?;
        let (done, rest) = samples.split_at_mut(y * row_len);
        let row = &mut rest[..row_len];
        row.copy_from_slice(&line[1..]);
        let prior = if y == 0 { &zero[..] } else { &done[(y - 1) * row_len..] };
        filter::unfilter_in_place(row, prior, ftype, bpp);
    }
    RasterImage::new(header.width, header.height, header.channels, samples)
        .map_err(|e| PngError::BadHeader(e.to_string()))
}
