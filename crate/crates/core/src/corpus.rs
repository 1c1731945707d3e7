//! Deterministic synthetic test images.
//!
//! Four generators cover the regimes that matter for k-modulus
//! pre-quantization:
//!
//! * `flat-shapes`: axis-aligned rectangles over a background, at most
//!   eight distinct colors. Each region is a speckled fill of two shades a
//!   few levels apart, the kind of low-amplitude texture flat artwork picks
//!   up from scanning or lossy round trips. The two shades of a region
//!   always lie within the same band of ten levels, matching the default
//!   `k`.
//! * `gradient`: a horizontal 0..=255 ramp, which quantization bands.
//! * `noise`: independent uniform samples.
//! * `mixed`: flat shapes on the left, a smooth noisy photographic patch on
//!   the right.
//!
//! The same [`CorpusSpec`] always yields the same pixels.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::raster::{Channels, RasterImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    FlatShapes,
    Gradient,
    Noise,
    Mixed,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::FlatShapes,
        GeneratorKind::Gradient,
        GeneratorKind::Noise,
        GeneratorKind::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::FlatShapes => "flat-shapes",
            GeneratorKind::Gradient => "gradient",
            GeneratorKind::Noise => "noise",
            GeneratorKind::Mixed => "mixed",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown generator {s:?} (expected flat-shapes, gradient, noise or mixed)"))
    }
}

pub const MAX_FLAT_COLORS: u8 = 8;

/// Fraction of speckle-shade pixels inside a flat region.
const SPECKLE_RATE: f64 = 0.04;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorpusSpec {
    pub kind: GeneratorKind,
    pub width: u32,
    pub height: u32,
    /// Palette size for the shape generators, clamped to `1..=8`.
    pub colors: u8,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(kind: GeneratorKind, width: u32, height: u32, seed: u64) -> Self {
        Self {
            kind,
            width,
            height,
            colors: MAX_FLAT_COLORS,
            seed,
        }
    }

    /// File-name-safe identifier, e.g. `flat-shapes_512x512_s3`.
    pub fn name(&self) -> String {
        format!("{}_{}x{}_s{}", self.kind, self.width, self.height, self.seed)
    }

    pub fn generate(&self) -> RasterImage {
        assert!(self.width > 0 && self.height > 0, "corpus images need non-zero size");
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.kind.stream());
        match self.kind {
            GeneratorKind::FlatShapes => flat_shapes(self.width, self.height, self.colors, &mut rng),
            GeneratorKind::Gradient => gradient(self.width, self.height),
            GeneratorKind::Noise => noise(self.width, self.height, &mut rng),
            GeneratorKind::Mixed => mixed(self.width, self.height, self.colors, &mut rng),
        }
    }
}

/// The fixed corpus used by `bench --synthetic` and the acceptance suite.
pub fn standard_corpus() -> Vec<CorpusSpec> {
    let mut specs: Vec<CorpusSpec> = (1..=6)
        .map(|s| CorpusSpec::new(GeneratorKind::FlatShapes, 512, 512, s))
        .collect();
    specs.push(CorpusSpec::new(GeneratorKind::Mixed, 512, 512, 1));
    specs.push(CorpusSpec::new(GeneratorKind::Mixed, 384, 256, 2));
    specs.push(CorpusSpec::new(GeneratorKind::Noise, 256, 256, 1));
    specs.push(CorpusSpec::new(GeneratorKind::Gradient, 512, 512, 1));
    specs
}

#[derive(Clone, Copy)]
struct Fill {
    base: [u8; 3],
    shade: Option<[u8; 3]>,
}

impl Fill {
    fn sample(&self, rng: &mut ChaCha8Rng) -> [u8; 3] {
        match self.shade {
            Some(shade) if rng.gen_bool(SPECKLE_RATE) => shade,
            _ => self.base,
        }
    }
}

/// Builds `colors` distinct colors as speckle pairs (plus one plain fill if odd).
fn palette(colors: u8, rng: &mut ChaCha8Rng) -> Vec<Fill> {
    let colors = colors.clamp(1, MAX_FLAT_COLORS);
    let pairs = colors / 2;
    let mut fills: Vec<Fill> = Vec::new();
    let mut used: Vec<[u8; 3]> = Vec::new();
    while fills.len() < pairs as usize {
        let mut base = [0u8; 3];
        let mut shade = [0u8; 3];
        for c in 0..3 {
            // Centre of a ten-level band, then offsets inside [-4, +5].
            let centre = 10 * rng.gen_range(2i32..=24);
            let delta = rng.gen_range(1i32..=3);
            let lo = rng.gen_range(-4i32..=5 - delta);
            base[c] = (centre + lo) as u8;
            shade[c] = (centre + lo + delta) as u8;
        }
        if used.contains(&base) || used.contains(&shade) {
            continue;
        }
        used.extend([base, shade]);
        fills.push(Fill { base, shade: Some(shade) });
    }
    if colors % 2 == 1 {
        loop {
            let c = [rng.gen(), rng.gen(), rng.gen()];
            if !used.contains(&c) {
                fills.push(Fill { base: c, shade: None });
                break;
            }
        }
    }
    fills
}

struct Rect {
    x0: u32,
    y0: u32,
    x1: u32,
    y1: u32,
    fill: usize,
}

fn random_rects(width: u32, height: u32, fills: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Rect> {
    (0..count)
        .map(|_| {
            let rw = rng.gen_range(1..=(width / 2).max(1));
            let rh = rng.gen_range(1..=(height / 2).max(1));
            let x0 = rng.gen_range(0..=width - rw);
            let y0 = rng.gen_range(0..=height - rh);
            Rect {
                x0,
                y0,
                x1: x0 + rw,
                y1: y0 + rh,
                fill: if fills > 1 { rng.gen_range(1..fills) } else { 0 },
            }
        })
        .collect()
}

/// Index of the topmost rectangle covering `(x, y)`, or 0 for background.
fn region_at(rects: &[Rect], x: u32, y: u32) -> usize {
    rects
        .iter()
        .rev()
        .find(|r| x >= r.x0 && x < r.x1 && y >= r.y0 && y < r.y1)
        .map_or(0, |r| r.fill)
}

fn flat_shapes(width: u32, height: u32, colors: u8, rng: &mut ChaCha8Rng) -> RasterImage {
    let fills = palette(colors, rng);
    let count = rng.gen_range(6..=14);
    let rects = random_rects(width, height, fills.len(), count, rng);
    let mut samples = Vec::with_capacity(width as usize * height as usize * 3);
    for y in 0..height {
        for x in 0..width {
            let px = fills[region_at(&rects, x, y)].sample(rng);
            samples.extend_from_slice(&px);
        }
    }
    RasterImage::new(width, height, Channels::Rgb, samples).expect("generator shape")
}

fn gradient(width: u32, height: u32) -> RasterImage {
    let denom = (width - 1).max(1);
    RasterImage::from_fn(width, height, Channels::Rgb, |x, _| {
        let v = (x * 255 / denom) as u8;
        [v, v, v]
    })
    .expect("generator shape")
}

fn noise(width: u32, height: u32, rng: &mut ChaCha8Rng) -> RasterImage {
    let mut samples = vec![0u8; width as usize * height as usize * 3];
    rng.fill(&mut samples[..]);
    RasterImage::new(width, height, Channels::Rgb, samples).expect("generator shape")
}

fn mixed(width: u32, height: u32, colors: u8, rng: &mut ChaCha8Rng) -> RasterImage {
    let split = (width * 3 / 5).max(1);
    let fills = palette(colors, rng);
    let count = rng.gen_range(4..=10);
    let rects = random_rects(split, height, fills.len(), count, rng);
    let phase: [f64; 3] = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
    let mut samples = Vec::with_capacity(width as usize * height as usize * 3);
    for y in 0..height {
        for x in 0..width {
            if x < split {
                samples.extend_from_slice(&fills[region_at(&rects, x, y)].sample(rng));
            } else {
                for p in phase {
                    let smooth = 128.0
                        + 60.0 * ((f64::from(x) / 37.0 + p).sin() * (f64::from(y) / 29.0 + p).cos());
                    let v = smooth + f64::from(rng.gen_range(-8i32..=8));
                    samples.push(v.round().clamp(0.0, 255.0) as u8);
                }
            }
        }
    }
    RasterImage::new(width, height, Channels::Rgb, samples).expect("generator shape")
}
