//! zlib-wrapped DEFLATE: LZ77 tokenization, Huffman block coding, and the
//! checksums used by PNG and zlib.

mod bits;
pub mod checksum;
mod deflate;
mod huffman;
mod inflate;
pub mod lz77;
mod tables;

use thiserror::Error;

pub use checksum::{adler32, crc32, Adler32, Crc32};
pub use deflate::deflate_compress;
pub use inflate::inflate;
pub use lz77::{lz77_tokenize, Token, TokenStream};

/// Encoder effort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CompressionLevel {
    /// Stored blocks only.
    Stored,
    /// Greedy matching, fixed Huffman codes.
    FixedGreedy,
    /// Greedy matching, per-block dynamic Huffman codes.
    DynamicGreedy,
    /// Lazy matching, per-block dynamic Huffman codes.
    #[default]
    DynamicLazy,
}

impl CompressionLevel {
    pub const ALL: [CompressionLevel; 4] = [
        CompressionLevel::Stored,
        CompressionLevel::FixedGreedy,
        CompressionLevel::DynamicGreedy,
        CompressionLevel::DynamicLazy,
    ];

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get(n as usize).copied()
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InflateError {
    #[error("compressed stream ended unexpectedly")]
    Truncated,
    #[error("bad zlib header: {0}")]
    BadHeader(&'static str),
    #[error("invalid block type 3")]
    InvalidBlockType,
    #[error("stored block length does not match its complement")]
    StoredLengthMismatch,
    #[error("corrupt Huffman code: {0}")]
    CorruptHuffman(&'static str),
    #[error("back-reference distance {distance} exceeds the {available} bytes decoded so far")]
    DistanceTooFar { distance: usize, available: usize },
    #[error("Adler-32 mismatch: stream says {expected:#010x}, data hashes to {actual:#010x}")]
    ChecksumMismatch { expected: u32, actual: u32 },
}
