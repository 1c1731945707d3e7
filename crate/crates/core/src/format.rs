//! Container sniffing for inputs that may be BMP or PNG.

use std::path::Path;

use thiserror::Error;

use crate::raster::RasterImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Bmp,
    Png,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unrecognised image format (expected BMP or PNG)")]
pub struct FormatError;

pub fn detect(data: &[u8]) -> Option<ImageFormat> {
    if data.starts_with(&crate::png::SIGNATURE) {
        Some(ImageFormat::Png)
    } else if data.starts_with(b"BM") {
        Some(ImageFormat::Bmp)
    } else {
        None
    }
}

pub fn decode_image(data: &[u8]) -> crate::Result<RasterImage> {
    match detect(data) {
        Some(ImageFormat::Png) => Ok(crate::png::decode_png(data)?),
        Some(ImageFormat::Bmp) => Ok(crate::bmp::decode_bmp(data)?),
        None => Err(FormatError.into()),
    }
}

pub fn read_image(path: &Path) -> crate::Result<RasterImage> {
    decode_image(&std::fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffing() {
        assert_eq!(detect(b"BM\0\0"), Some(ImageFormat::Bmp));
        assert_eq!(detect(&crate::png::SIGNATURE), Some(ImageFormat::Png));
        assert_eq!(detect(b"\xff\xd8\xff"), None);
        assert!(matches!(decode_image(b"GIF89a"), Err(crate::Error::Format(_))));
    }
}
