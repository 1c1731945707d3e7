//! Full-reference quality measures: MSE, PSNR and SSIM.
//!
//! SSIM uses an 11x11 Gaussian window (sigma 1.5) evaluated at every fully
//! contained window position, with `C1 = (0.01 * 255)^2` and
//! `C2 = (0.03 * 255)^2`. Color images are scored per channel and the
//! channel scores averaged. MSE pools all channels.

use thiserror::Error;

use crate::raster::{RasterError, RasterImage};

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
pub const SSIM_C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

const PEAK_SQUARED: f64 = 255.0 * 255.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error(transparent)]
    Shape(#[from] RasterError),
    #[error("SSIM needs at least {window}x{window} pixels, image is {width}x{height}")]
    TooSmall { width: u32, height: u32, window: usize },
}

pub fn mse(a: &RasterImage, b: &RasterImage) -> Result<f64, MetricError> {
    a.check_same_shape(b)?;
    let sum: u64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum();
    Ok(sum as f64 / a.samples().len() as f64)
}

/// PSNR in decibels for a given MSE; `+inf` when the MSE is zero.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK_SQUARED / mse).log10()
    }
}

pub fn psnr(a: &RasterImage, b: &RasterImage) -> Result<f64, MetricError> {
    Ok(psnr_from_mse(mse(a, b)?))
}

/// Normalised 1-D Gaussian taps; the 2-D window is their outer product.
pub fn gaussian_taps() -> [f64; SSIM_WINDOW] {
    let mut taps = [0.0; SSIM_WINDOW];
    let centre = (SSIM_WINDOW / 2) as f64;
    for (i, t) in taps.iter_mut().enumerate() {
        let d = i as f64 - centre;
        *t = (-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= sum);
    taps
}

/// Separable "valid" convolution of a `w` x `h` plane.
fn blur_valid(plane: &[f64], w: usize, h: usize, taps: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let ow = w - SSIM_WINDOW + 1;
    let oh = h - SSIM_WINDOW + 1;
    let mut horiz = vec![0.0; ow * h];
    for y in 0..h {
        let row = &plane[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = taps.iter().zip(&row[x..x + SSIM_WINDOW]).map(|(t, v)| t * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            let mut acc = 0.0;
            for (k, t) in taps.iter().enumerate() {
                acc += t * horiz[(y + k) * ow + x];
            }
            out[y * ow + x] = acc;
        }
    }
    out
}

fn ssim_plane(x: &[f64], y: &[f64], w: usize, h: usize) -> f64 {
    let taps = gaussian_taps();
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(y).map(|(a, b)| a * b).collect();
    let mu_x = blur_valid(x, w, h, &taps);
    let mu_y = blur_valid(y, w, h, &taps);
    let e_xx = blur_valid(&xx, w, h, &taps);
    let e_yy = blur_valid(&yy, w, h, &taps);
    let e_xy = blur_valid(&xy, w, h, &taps);

    let mut total = 0.0;
    for i in 0..mu_x.len() {
        let (mx, my) = (mu_x[i], mu_y[i]);
        let var_x = e_xx[i] - mx * mx;
        let var_y = e_yy[i] - my * my;
        let cov = e_xy[i] - mx * my;
        let num = (2.0 * mx * my + SSIM_C1) * (2.0 * cov + SSIM_C2);
        let den = (mx * mx + my * my + SSIM_C1) * (var_x + var_y + SSIM_C2);
        total += num / den;
    }
    total / mu_x.len() as f64
}

pub fn ssim(a: &RasterImage, b: &RasterImage) -> Result<f64, MetricError> {
    a.check_same_shape(b)?;
    let (w, h) = (a.width() as usize, a.height() as usize);
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(MetricError::TooSmall {
            width: a.width(),
            height: a.height(),
            window: SSIM_WINDOW,
        });
    }
    let n = a.channels().count();
    let mut sum = 0.0;
    for c in 0..n {
        let plane = |img: &RasterImage| -> Vec<f64> {
            img.samples().iter().skip(c).step_by(n).map(|&v| f64::from(v)).collect()
        };
        sum += ssim_plane(&plane(a), &plane(b), w, h);
    }
    Ok(sum / n as f64)
}

/// MSE, PSNR and SSIM for one image pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr: f64,
    pub ssim: f64,
}

impl QualityReport {
    pub fn compute(a: &RasterImage, b: &RasterImage) -> Result<Self, MetricError> {
        let mse = mse(a, b)?;
        Ok(Self {
            mse,
            psnr: psnr_from_mse(mse),
            ssim: ssim(a, b)?,
        })
    }

    /// PSNR with four decimals, or `inf`.
    pub fn psnr_display(&self) -> String {
        format_db(self.psnr)
    }
}

pub fn format_db(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v:.4}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Channels;

    fn gray(w: u32, h: u32, samples: Vec<u8>) -> RasterImage {
        RasterImage::new(w, h, Channels::Gray, samples).unwrap()
    }

    #[test]
    fn mse_and_psnr_basics() {
        let a = gray(1, 1, vec![137]);
        let b = gray(1, 1, vec![140]);
        assert_eq!(mse(&a, &b).unwrap(), 9.0);
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
        assert!(psnr(&a, &a).unwrap().is_infinite());
        assert!((psnr_from_mse(25.0) - 34.1514).abs() < 1e-3);
    }

    #[test]
    fn psnr_decreases_with_mse() {
        let mut last = f64::INFINITY;
        for i in 1..200 {
            let p = psnr_from_mse(i as f64 * 0.37);
            assert!(p < last);
            last = p;
        }
    }

    #[test]
    fn shape_errors() {
        let a = gray(12, 12, vec![0; 144]);
        let b = gray(12, 11, vec![0; 132]);
        assert!(matches!(mse(&a, &b), Err(MetricError::Shape(_))));
        let small = gray(10, 12, vec![0; 120]);
        assert!(matches!(ssim(&small, &small), Err(MetricError::TooSmall { .. })));
    }

    #[test]
    fn ssim_identity_and_inversion() {
        let img = RasterImage::from_fn(24, 20, Channels::Rgb, |x, y| {
            [(x * 10) as u8, (y * 12) as u8, ((x + y) * 5) as u8]
        })
        .unwrap();
        assert!((ssim(&img, &img).unwrap() - 1.0).abs() < 1e-9);
        let inv = img.map_samples(|v| 255 - v);
        assert!(ssim(&img, &inv).unwrap() < -0.5);
    }

    #[test]
    fn taps_are_normalised() {
        let t = gaussian_taps();
        assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((t[0] - t[10]).abs() < 1e-18);
    }

    #[test]
    fn display_inf() {
        let r = QualityReport { mse: 0.0, psnr: f64::INFINITY, ssim: 1.0 };
        assert_eq!(r.psnr_display(), "inf");
        assert_eq!(format_db(34.15142), "34.1514");
    }
}
