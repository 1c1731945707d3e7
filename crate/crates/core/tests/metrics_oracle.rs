mod common;

use common::{blocky_image, naive_ssim, noise_image, SplitMix};
use kpng::metrics::{psnr_from_mse, MetricError};
use kpng::{kmm_transform, mse, psnr, ssim, Channels, KParameter, QualityReport, RasterImage};
use proptest::prelude::*;

#[test]
fn ssim_matches_direct_window_sum() {
    let mut rng = SplitMix(99);
    for &(w, h) in &[(11, 11), (12, 30), (40, 17)] {
        for ch in [Channels::Gray, Channels::Rgb] {
            let a = blocky_image(w, h, ch, &mut rng);
            let b = kmm_transform(&a, KParameter::new(7).unwrap());
            let c = noise_image(w, h, ch, &mut rng);
            for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
                let d = (ssim(x, y).unwrap() - naive_ssim(x, y)).abs();
                assert!(d < 1e-9, "{w}x{h} {ch:?}: {d:e}");
            }
        }
    }
}

#[test]
fn constant_images() {
    let a = RasterImage::filled(16, 16, Channels::Gray, 80).unwrap();
    let b = RasterImage::filled(16, 16, Channels::Gray, 90).unwrap();
    assert_eq!(mse(&a, &b).unwrap(), 100.0);
    assert!((psnr(&a, &b).unwrap() - 28.1308).abs() < 1e-4);
    // Only the luminance term departs from 1.
    let c1 = (0.01f64 * 255.0).powi(2);
    let expected = (2.0 * 80.0 * 90.0 + c1) / (80.0f64 * 80.0 + 90.0 * 90.0 + c1);
    assert!((ssim(&a, &b).unwrap() - expected).abs() < 1e-12);
}

#[test]
fn quality_report_for_identical_files() {
    let img = noise_image(20, 20, Channels::Rgb, &mut SplitMix(1));
    let r = QualityReport::compute(&img, &img).unwrap();
    assert_eq!(r.mse, 0.0);
    assert_eq!(r.psnr_display(), "inf");
    assert_eq!(r.ssim, 1.0);
}

#[test]
fn channel_mismatch_is_an_error() {
    let g = RasterImage::filled(12, 12, Channels::Gray, 0).unwrap();
    let c = RasterImage::filled(12, 12, Channels::Rgb, 0).unwrap();
    assert!(matches!(ssim(&g, &c), Err(MetricError::Shape(_))));
    assert!(mse(&g, &c).is_err());
}

#[test]
fn psnr_of_mse_25() {
    assert!((psnr_from_mse(25.0) - 34.1514).abs() < 5e-5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ssim_symmetric_and_bounded(seed in any::<u64>(), w in 11u32..24, h in 11u32..24) {
        let mut rng = SplitMix(seed);
        let a = noise_image(w, h, Channels::Rgb, &mut rng);
        let b = blocky_image(w, h, Channels::Rgb, &mut rng);
        let ab = ssim(&a, &b).unwrap();
        let ba = ssim(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&ab));
    }

    #[test]
    fn kmm_error_bounded_by_half_k(seed in any::<u64>(), k in 2i64..=25) {
        let img = noise_image(16, 16, Channels::Gray, &mut SplitMix(seed));
        let k = KParameter::new(k).unwrap();
        let m = mse(&img, &kmm_transform(&img, k)).unwrap();
        let half = f64::from(k.get()) / 2.0;
        prop_assert!(m <= half * half);
    }
}
