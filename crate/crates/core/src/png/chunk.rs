use crate::flate::Crc32;

use super::PngError;

/// Largest chunk payload the container allows.
pub const MAX_CHUNK_LEN: usize = (1 << 31) - 1;

/// One length/type/data/CRC unit of a PNG stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PngChunk {
    pub type_code: [u8; 4],
    pub data: Vec<u8>,
    pub crc: u32,
}

impl PngChunk {
    pub fn new(type_code: [u8; 4], data: Vec<u8>) -> Self {
        let crc = chunk_crc(&type_code, &data);
        Self { type_code, data, crc }
    }

    pub fn is_valid(&self) -> bool {
        self.crc == chunk_crc(&self.type_code, &self.data)
    }

    /// Ancillary chunks have a lowercase first letter.
    pub fn is_critical(&self) -> bool {
        self.type_code[0].is_ascii_uppercase()
    }

    pub fn type_str(&self) -> String {
        String::from_utf8_lossy(&self.type_code).into_owned()
    }

    pub fn write_to(&self, out: &mut Vec<u8>) {
        debug_assert!(self.data.len() <= MAX_CHUNK_LEN);
        out.extend_from_slice(&(self.data.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.type_code);
        out.extend_from_slice(&self.data);
        out.extend_from_slice(&self.crc.to_be_bytes());
    }

    /// Parses one chunk at the start of `input`, returning it and the byte count consumed.
    /// The CRC is not checked here.
    pub fn parse(input: &[u8]) -> Result<(Self, usize), PngError> {
        if input.len() < 12 {
            return Err(PngError::Truncated);
        }
        let len = u32::from_be_bytes([input[0], input[1], input[2], input[3]]) as usize;
        if len > MAX_CHUNK_LEN {
            return Err(PngError::ChunkTooLarge(len));
        }
        let total = 12 + len;
        if input.len() < total {
            return Err(PngError::Truncated);
        }
        let type_code = [input[4], input[5], input[6], input[7]];
        if !type_code.iter().all(u8::is_ascii_alphabetic) {
            return Err(PngError::BadChunkType(type_code));
        }
        let data = input[8..8 + len].to_vec();
        let c = &input[8 + len..total];
        let crc = u32::from_be_bytes([c[0], c[1], c[2], c[3]]);
        Ok((Self { type_code, data, crc }, total))
    }
}

fn chunk_crc(type_code: &[u8; 4], data: &[u8]) -> u32 {
    let mut c = Crc32::new();
    c.update(type_code);
    c.update(data);
    c.finish()
}
