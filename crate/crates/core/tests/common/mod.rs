#![allow(dead_code)]

use kpng::{Channels, RasterImage};

/// 10x10 block of the Lena test image.
pub const LENA_BLOCK: [[u8; 10]; 10] = [
    [141, 128, 107, 84, 81, 81, 112, 136, 133, 72],
    [122, 106, 86, 80, 92, 107, 134, 140, 113, 67],
    [117, 98, 80, 76, 108, 138, 145, 137, 79, 66],
    [98, 92, 80, 83, 121, 154, 146, 130, 68, 64],
    [87, 81, 76, 92, 137, 156, 148, 90, 70, 83],
    [81, 74, 72, 99, 139, 147, 132, 72, 100, 132],
    [87, 73, 76, 107, 138, 144, 126, 103, 148, 162],
    [87, 77, 86, 133, 144, 139, 135, 152, 178, 179],
    [92, 79, 108, 142, 144, 134, 150, 184, 201, 185],
    [114, 89, 124, 145, 145, 128, 152, 197, 184, 172],
];

/// The same block after 10-modulus quantization.
pub const LENA_BLOCK_K10: [[u8; 10]; 10] = [
    [140, 130, 110, 80, 80, 80, 110, 140, 130, 70],
    [120, 110, 90, 80, 90, 110, 130, 140, 110, 70],
    [120, 100, 80, 80, 110, 140, 140, 140, 80, 70],
    [100, 90, 80, 80, 120, 150, 150, 130, 70, 60],
    [90, 80, 80, 90, 140, 160, 150, 90, 70, 80],
    [80, 70, 70, 100, 140, 150, 130, 70, 100, 130],
    [90, 70, 80, 110, 140, 140, 130, 100, 150, 160],
    [90, 80, 90, 130, 140, 140, 130, 150, 180, 180],
    [90, 80, 110, 140, 140, 130, 150, 180, 200, 180],
    [110, 90, 120, 140, 140, 130, 150, 200, 180, 170],
];

/// Original minus quantized.
pub const LENA_RESIDUALS: [[i16; 10]; 10] = [
    [1, -2, -3, 4, 1, 1, 2, -4, 3, 2],
    [2, -4, -4, 0, 2, -3, 4, 0, 3, -3],
    [-3, -2, 0, -4, -2, -2, 5, -3, -1, -4],
    [-2, 2, 0, 3, 1, 4, -4, 0, -2, 4],
    [-3, 1, -4, 2, -3, -4, -2, 0, 0, 3],
    [1, 4, 2, -1, -1, -3, 2, 2, 0, 2],
    [-3, 3, -4, -3, -2, 4, -4, 3, -2, 2],
    [-3, -3, -4, 3, 4, -1, 5, 2, -2, -1],
    [2, -1, -2, 2, 4, 4, 0, 4, 1, 5],
    [4, -1, 4, 5, 5, -2, 2, -3, 4, 2],
];

pub fn grid_image(grid: &[[u8; 10]; 10]) -> RasterImage {
    RasterImage::new(10, 10, Channels::Gray, grid.iter().flatten().copied().collect()).unwrap()
}

/// Small deterministic generator so fixtures do not depend on an RNG crate version.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn bytes(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| self.next_u64() as u8).collect()
    }
}

pub fn noise_image(w: u32, h: u32, channels: Channels, rng: &mut SplitMix) -> RasterImage {
    let n = w as usize * h as usize * channels.count();
    RasterImage::new(w, h, channels, rng.bytes(n)).unwrap()
}

/// Piecewise-flat blocks with occasional noise, exercising long matches and filters.
pub fn blocky_image(w: u32, h: u32, channels: Channels, rng: &mut SplitMix) -> RasterImage {
    let cell = 1 + rng.below(12) as u32;
    let seed = rng.next_u64();
    let noise_rate = rng.below(4);
    let mut local = SplitMix(seed);
    RasterImage::from_fn(w, h, channels, |x, y| {
        let key = seed ^ (u64::from(x / cell) << 20) ^ u64::from(y / cell);
        let mut cellrng = SplitMix(key);
        let mut px = [cellrng.next_u64() as u8, cellrng.next_u64() as u8, cellrng.next_u64() as u8];
        if noise_rate > 0 && local.below(16) < noise_rate {
            px[0] = px[0].wrapping_add(local.below(7) as u8);
        }
        px
    })
    .unwrap()
}

/// Direct SSIM: explicit 2-D Gaussian weights and two-pass moments for every
/// fully contained 11x11 window, channels averaged.
#[allow(clippy::needless_range_loop)]
pub fn naive_ssim(a: &RasterImage, b: &RasterImage) -> f64 {
    const WIN: usize = 11;
    let c1 = (0.01f64 * 255.0).powi(2);
    let c2 = (0.03f64 * 255.0).powi(2);
    let mut weights = [[0.0f64; WIN]; WIN];
    let mut total = 0.0;
    for (dy, row) in weights.iter_mut().enumerate() {
        for (dx, w) in row.iter_mut().enumerate() {
            let (fx, fy) = (dx as f64 - 5.0, dy as f64 - 5.0);
            *w = (-(fx * fx + fy * fy) / (2.0 * 1.5 * 1.5)).exp();
            total += *w;
        }
    }
    let (w, h, n) = (a.width() as usize, a.height() as usize, a.channels().count());
    let at = |img: &RasterImage, x: usize, y: usize, c: usize| f64::from(img.samples()[(y * w + x) * n + c]);
    let mut sum = 0.0;
    for c in 0..n {
        let mut plane_sum = 0.0;
        let mut count = 0usize;
        for y0 in 0..=h - WIN {
            for x0 in 0..=w - WIN {
                let (mut mx, mut my) = (0.0, 0.0);
                for dy in 0..WIN {
                    for dx in 0..WIN {
                        let wt = weights[dy][dx] / total;
                        mx += wt * at(a, x0 + dx, y0 + dy, c);
                        my += wt * at(b, x0 + dx, y0 + dy, c);
                    }
                }
                let (mut vx, mut vy, mut cov) = (0.0, 0.0, 0.0);
                for dy in 0..WIN {
                    for dx in 0..WIN {
                        let wt = weights[dy][dx] / total;
                        let ex = at(a, x0 + dx, y0 + dy, c) - mx;
                        let ey = at(b, x0 + dx, y0 + dy, c) - my;
                        vx += wt * ex * ex;
                        vy += wt * ey * ey;
                        cov += wt * ex * ey;
                    }
                }
                plane_sum += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
                count += 1;
            }
        }
        sum += plane_sum / count as f64;
    }
    sum / n as f64
}
