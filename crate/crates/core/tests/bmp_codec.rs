mod common;

use common::{blocky_image, SplitMix};
use kpng::bmp::{decode_bmp, encode_bmp, encoded_len, parse_header, BmpError};
use kpng::format::{decode_image, detect, ImageFormat};
use kpng::png::encode_png;
use kpng::{Channels, EncodeOptions, RasterImage};

#[test]
fn standard_sizes() {
    assert_eq!(encoded_len(512, 512), 786_486);
    for (w, stride) in [(1u32, 4usize), (2, 8), (3, 12), (4, 12), (5, 16)] {
        let img = RasterImage::filled(w, 3, Channels::Rgb, 9).unwrap();
        let bytes = encode_bmp(&img);
        assert_eq!(bytes.len(), 54 + 3 * stride);
        assert_eq!(parse_header(&bytes).unwrap().stride(), stride);
    }
}

#[test]
fn gray_images_are_written_as_rgb() {
    let img = blocky_image(7, 5, Channels::Gray, &mut SplitMix(4));
    assert_eq!(decode_bmp(&encode_bmp(&img)).unwrap(), img.to_rgb());
}

#[test]
fn rejects_other_depths_and_compression() {
    let img = RasterImage::filled(2, 2, Channels::Rgb, 1).unwrap();
    let good = encode_bmp(&img);
    let mut depth = good.clone();
    depth[28] = 32;
    assert_eq!(decode_bmp(&depth), Err(BmpError::UnsupportedBitDepth(32)));
    let mut rle = good.clone();
    rle[30] = 1;
    assert_eq!(decode_bmp(&rle), Err(BmpError::UnsupportedCompression(1)));
    let mut v5 = good.clone();
    v5[14] = 124;
    assert_eq!(decode_bmp(&v5), Err(BmpError::UnsupportedHeader(124)));
    assert_eq!(decode_bmp(&good[..good.len() - 1]), Err(BmpError::Truncated));
    assert_eq!(decode_bmp(b"PK\x03\x04 not a bitmap at all, clearly not one"), Err(BmpError::BadMagic));
}

#[test]
fn format_detection() {
    let img = blocky_image(6, 6, Channels::Rgb, &mut SplitMix(2));
    let bmp = encode_bmp(&img);
    let png = encode_png(&img, &EncodeOptions::default());
    assert_eq!(detect(&bmp), Some(ImageFormat::Bmp));
    assert_eq!(detect(&png), Some(ImageFormat::Png));
    assert_eq!(detect(b"GIF89a"), None);
    assert_eq!(decode_image(&bmp).unwrap(), img);
    assert_eq!(decode_image(&png).unwrap(), img);
    assert!(decode_image(b"hello").is_err());
}
