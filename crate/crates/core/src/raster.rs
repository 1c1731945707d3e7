//! In-memory 8-bit pixel grid shared by every codec in the crate.

use thiserror::Error;

/// Sample layout of a [`RasterImage`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channels {
    Gray = 1,
    Rgb = 3,
}

impl Channels {
    pub fn count(self) -> usize {
        self as usize
    }

    pub fn from_count(n: usize) -> Option<Self> {
        match n {
            1 => Some(Channels::Gray),
            3 => Some(Channels::Rgb),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RasterError {
    #[error("image dimensions must be non-zero (got {width}x{height})")]
    EmptyDimensions { width: u32, height: u32 },
    #[error("expected {expected} samples for the declared shape, got {actual}")]
    SampleCount { expected: usize, actual: usize },
    #[error("image shapes differ: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },
}

/// Decoded image: row-major, channel-interleaved 8-bit samples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RasterImage {
    width: u32,
    height: u32,
    channels: Channels,
    samples: Vec<u8>,
}

impl RasterImage {
    pub fn new(
        width: u32,
        height: u32,
        channels: Channels,
        samples: Vec<u8>,
    ) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::EmptyDimensions { width, height });
        }
        let expected = width as usize * height as usize * channels.count();
        if samples.len() != expected {
            return Err(RasterError::SampleCount {
                expected,
                actual: samples.len(),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            samples,
        })
    }

    /// Image with every sample set to `value`.
    pub fn filled(width: u32, height: u32, channels: Channels, value: u8) -> Result<Self, RasterError> {
        let len = width as usize * height as usize * channels.count();
        Self::new(width, height, channels, vec![value; len])
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn<F>(width: u32, height: u32, channels: Channels, mut f: F) -> Result<Self, RasterError>
    where
        F: FnMut(u32, u32) -> [u8; 3],
    {
        let mut samples = Vec::with_capacity(width as usize * height as usize * channels.count());
        for y in 0..height {
            for x in 0..width {
                let px = f(x, y);
                samples.extend_from_slice(&px[..channels.count()]);
            }
        }
        Self::new(width, height, channels, samples)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> Channels {
        self.channels
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    /// Bytes per scanline.
    pub fn row_len(&self) -> usize {
        self.width as usize * self.channels.count()
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, u8> {
        self.samples.chunks_exact(self.row_len())
    }

    pub fn pixel(&self, x: u32, y: u32) -> &[u8] {
        let n = self.channels.count();
        let start = (y as usize * self.width as usize + x as usize) * n;
        &self.samples[start..start + n]
    }

    /// Returns a copy with `f` applied to every sample.
    pub fn map_samples<F: Fn(u8) -> u8>(&self, f: F) -> Self {
        Self {
            width: self.width,
            height: self.height,
            channels: self.channels,
            samples: self.samples.iter().map(|&s| f(s)).collect(),
        }
    }

    /// Expands grayscale to three equal channels; RGB images are cloned.
    pub fn to_rgb(&self) -> Self {
        match self.channels {
            Channels::Rgb => self.clone(),
            Channels::Gray => Self {
                width: self.width,
                height: self.height,
                channels: Channels::Rgb,
                samples: self.samples.iter().flat_map(|&s| [s, s, s]).collect(),
            },
        }
    }

    /// Number of distinct pixel values (colors) in the image.
    pub fn distinct_colors(&self) -> usize {
        let n = self.channels.count();
        let mut seen = std::collections::HashSet::new();
        for px in self.samples.chunks_exact(n) {
            seen.insert(px.to_vec());
        }
        seen.len()
    }

    pub fn shape(&self) -> (u32, u32, Channels) {
        (self.width, self.height, self.channels)
    }

    pub(crate) fn describe(&self) -> String {
        format!("{}x{}x{}", self.width, self.height, self.channels.count())
    }

    pub(crate) fn check_same_shape(&self, other: &RasterImage) -> Result<(), RasterError> {
        if self.shape() != other.shape() {
            return Err(RasterError::ShapeMismatch {
                left: self.describe(),
                right: other.describe(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Debug for RasterImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RasterImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("channels", &self.channels)
            .field("samples", &format_args!("[{} bytes]", self.samples.len()))
            .finish()
    }
}
