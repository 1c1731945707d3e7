//! Uncompressed 24-bit Windows BMP with a BITMAPINFOHEADER.

use thiserror::Error;

use crate::raster::{Channels, RasterImage};

pub const FILE_HEADER_LEN: usize = 14;
pub const INFO_HEADER_LEN: usize = 40;
pub const HEADER_LEN: usize = FILE_HEADER_LEN + INFO_HEADER_LEN;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BmpError {
    #[error("not a BMP file (missing \"BM\" magic)")]
    BadMagic,
    #[error("BMP data ended unexpectedly")]
    Truncated,
    #[error("unsupported DIB header of {0} bytes (only the 40-byte BITMAPINFOHEADER is supported)")]
    UnsupportedHeader(u32),
    #[error("unsupported bit depth {0} (only 24 is supported)")]
    UnsupportedBitDepth(u16),
    #[error("unsupported compression method {0} (only uncompressed is supported)")]
    UnsupportedCompression(u32),
    #[error("invalid BMP dimensions {width}x{height}")]
    InvalidDimensions { width: i32, height: i32 },
    #[error("pixel data offset {0} lies outside the file")]
    BadOffset(u32),
}

/// Fields of the file and info headers that matter for 24-bit images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmpHeader {
    pub file_size: u32,
    pub pixel_offset: u32,
    pub width: u32,
    pub height: u32,
    /// Rows are stored top row first (negative height on disk).
    pub top_down: bool,
    pub bpp: u16,
    pub compression: u32,
}

impl BmpHeader {
    pub fn stride(&self) -> usize {
        row_stride(self.width)
    }
}

/// Bytes per stored row: three per pixel, padded to a multiple of four.
pub fn row_stride(width: u32) -> usize {
    (width as usize * 3).div_ceil(4) * 4
}

/// Size of the file [`encode_bmp`] writes for a `width` x `height` image.
pub fn encoded_len(width: u32, height: u32) -> usize {
    HEADER_LEN + row_stride(width) * height as usize
}

fn u16_at(d: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([d[at], d[at + 1]])
}

fn u32_at(d: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([d[at], d[at + 1], d[at + 2], d[at + 3]])
}

pub fn parse_header(data: &[u8]) -> Result<BmpHeader, BmpError> {
    if data.len() < 2 || &data[..2] != b"BM" {
        return Err(BmpError::BadMagic);
    }
    if data.len() < FILE_HEADER_LEN + 4 {
        return Err(BmpError::Truncated);
    }
    let info_len = u32_at(data, 14);
    if info_len as usize != INFO_HEADER_LEN {
        return Err(BmpError::UnsupportedHeader(info_len));
    }
    if data.len() < HEADER_LEN {
        return Err(BmpError::Truncated);
    }
    let raw_width = u32_at(data, 18) as i32;
    let raw_height = u32_at(data, 22) as i32;
    let bpp = u16_at(data, 28);
    let compression = u32_at(data, 30);
    if bpp != 24 {
        return Err(BmpError::UnsupportedBitDepth(bpp));
    }
    if compression != 0 {
        return Err(BmpError::UnsupportedCompression(compression));
    }
    if raw_width <= 0 || raw_height == 0 || raw_height == i32::MIN {
        return Err(BmpError::InvalidDimensions {
            width: raw_width,
            height: raw_height,
        });
    }
    Ok(BmpHeader {
        file_size: u32_at(data, 2),
        pixel_offset: u32_at(data, 10),
        width: raw_width as u32,
        height: raw_height.unsigned_abs(),
        top_down: raw_height < 0,
        bpp,
        compression,
    })
}

/// Decodes to a top-down RGB image.
pub fn decode_bmp(data: &[u8]) -> Result<RasterImage, BmpError> {
    let header = parse_header(data)?;
    let offset = header.pixel_offset as usize;
    if offset < HEADER_LEN || offset > data.len() {
        return Err(BmpError::BadOffset(header.pixel_offset));
    }
    let stride = header.stride();
    let (w, h) = (header.width as usize, header.height as usize);
    let needed = stride.checked_mul(h).ok_or(BmpError::Truncated)?;
    let pixels = data.get(offset..offset + needed).ok_or(BmpError::Truncated)?;

    let mut samples = Vec::with_capacity(w * h * 3);
    for y in 0..h {
        let stored = if header.top_down { y } else { h - 1 - y };
        let row = &pixels[stored * stride..stored * stride + w * 3];
        for bgr in row.chunks_exact(3) {
            samples.extend_from_slice(&[bgr[2], bgr[1], bgr[0]]);
        }
    }
    RasterImage::new(header.width, header.height, Channels::Rgb, samples).map_err(|_| {
        BmpError::InvalidDimensions {
            width: header.width as i32,
            height: header.height as i32,
        }
    })
}

/// Writes a bottom-up 24-bit BMP. Grayscale input is written as equal RGB triples.
pub fn encode_bmp(img: &RasterImage) -> Vec<u8> {
    let rgb = img.to_rgb();
    let (w, h) = (rgb.width(), rgb.height());
    let stride = row_stride(w);
    let image_size = stride * h as usize;
    let file_size = HEADER_LEN + image_size;

    let mut out = Vec::with_capacity(file_size);
    out.extend_from_slice(b"BM");
    out.extend_from_slice(&(file_size as u32).to_le_bytes());
    out.extend_from_slice(&[0; 4]);
    out.extend_from_slice(&(HEADER_LEN as u32).to_le_bytes());

    out.extend_from_slice(&(INFO_HEADER_LEN as u32).to_le_bytes());
    out.extend_from_slice(&(w as i32).to_le_bytes());
    out.extend_from_slice(&(h as i32).to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&24u16.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&(image_size as u32).to_le_bytes());
    // 2835 pixels per metre is 72 DPI.
    out.extend_from_slice(&2835u32.to_le_bytes());
    out.extend_from_slice(&2835u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());

    let pad = stride - w as usize * 3;
    let rows: Vec<&[u8]> = rgb.rows().collect();
    for row in rows.iter().rev() {
        for px in row.chunks_exact(3) {
            out.extend_from_slice(&[px[2], px[1], px[0]]);
        }
        out.extend(std::iter::repeat_n(0, pad));
    }
    debug_assert_eq!(out.len(), file_size);
    out
}
