//! LSB-first bit packing as used by DEFLATE.

use super::InflateError;

#[derive(Debug, Default)]
pub struct BitWriter {
    out: Vec<u8>,
    acc: u64,
    nbits: u32,
}

impl BitWriter {
    pub fn with_bytes(out: Vec<u8>) -> Self {
        Self { out, acc: 0, nbits: 0 }
    }

    /// Writes the low `n` bits of `value`, least significant first.
    pub fn write_bits(&mut self, value: u32, n: u32) {
        debug_assert!(n <= 32);
        debug_assert!(n == 32 || value >> n == 0);
        self.acc |= u64::from(value) << self.nbits;
        self.nbits += n;
        while self.nbits >= 8 {
            self.out.push(self.acc as u8);
            self.acc >>= 8;
            self.nbits -= 8;
        }
    }

    pub fn align_to_byte(&mut self) {
        if self.nbits > 0 {
            self.out.push(self.acc as u8);
            self.acc = 0;
            self.nbits = 0;
        }
    }

    /// Appends raw bytes; the writer must be byte aligned.
    pub fn write_bytes(&mut self, bytes: &[u8]) {
        debug_assert_eq!(self.nbits, 0);
        self.out.extend_from_slice(bytes);
    }

    /// Total bits written so far.
    pub fn bit_len(&self) -> u64 {
        self.out.len() as u64 * 8 + u64::from(self.nbits)
    }

    pub fn finish(mut self) -> Vec<u8> {
        self.align_to_byte();
        self.out
    }
}

pub struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
    buf: u64,
    count: u32,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self {
            data,
            pos: 0,
            buf: 0,
            count: 0,
        }
    }

    fn refill(&mut self) {
        while self.count <= 56 {
            match self.data.get(self.pos) {
                Some(&b) => {
                    self.buf |= u64::from(b) << self.count;
                    self.pos += 1;
                    self.count += 8;
                }
                None => break,
            }
        }
    }

    /// Up to 32 upcoming bits; bits past the end of input read as zero.
    pub fn peek(&mut self, n: u32) -> u32 {
        if self.count < n {
            self.refill();
        }
        (self.buf & ((1u64 << n) - 1)) as u32
    }

    /// Bits currently available without running off the end of input.
    pub fn available(&mut self) -> u32 {
        self.refill();
        self.count
    }

    pub fn consume(&mut self, n: u32) -> Result<(), InflateError> {
        if self.count < n {
            self.refill();
            if self.count < n {
                return Err(InflateError::Truncated);
            }
        }
        self.buf >>= n;
        self.count -= n;
        Ok(())
    }

    pub fn read_bits(&mut self, n: u32) -> Result<u32, InflateError> {
        let v = self.peek(n);
        self.consume(n)?;
        Ok(v)
    }

    pub fn align_to_byte(&mut self) {
        let drop = self.count % 8;
        self.buf >>= drop;
        self.count -= drop;
    }

    /// Copies `n` bytes after aligning to a byte boundary.
    pub fn read_aligned(&mut self, mut n: usize, out: &mut Vec<u8>) -> Result<(), InflateError> {
        self.align_to_byte();
        while n > 0 && self.count >= 8 {
            out.push(self.buf as u8);
            self.buf >>= 8;
            self.count -= 8;
            n -= 1;
        }
        let end = self.pos.checked_add(n).ok_or(InflateError::Truncated)?;
        let src = self.data.get(self.pos..end).ok_or(InflateError::Truncated)?;
        out.extend_from_slice(src);
        self.pos = end;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writer_reader_agree() {
        let mut w = BitWriter::default();
        w.write_bits(1, 1);
        w.write_bits(0b10, 2);
        w.write_bits(0x1234, 16);
        w.write_bits(0x7f, 7);
        w.align_to_byte();
        w.write_bytes(&[0xAB, 0xCD]);
        let bytes = w.finish();
        let mut r = BitReader::new(&bytes);
        assert_eq!(r.read_bits(1).unwrap(), 1);
        assert_eq!(r.read_bits(2).unwrap(), 0b10);
        assert_eq!(r.read_bits(16).unwrap(), 0x1234);
        assert_eq!(r.read_bits(7).unwrap(), 0x7f);
        let mut out = Vec::new();
        r.read_aligned(2, &mut out).unwrap();
        assert_eq!(out, [0xAB, 0xCD]);
        assert_eq!(r.read_bits(1), Err(InflateError::Truncated));
    }
}
