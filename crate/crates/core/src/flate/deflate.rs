//! DEFLATE block encoder and zlib framing.

use super::bits::BitWriter;
use super::checksum::adler32;
use super::huffman::{code_lengths, HuffmanCode};
use super::lz77::{tokenize_with, MatchParams, Token};
use super::tables::*;
use super::CompressionLevel;

/// Input bytes covered by one compressed block.
const BLOCK_INPUT: usize = 64 * 1024;
const MAX_STORED: usize = 65535;

pub(crate) fn zlib_header(level: CompressionLevel) -> [u8; 2] {
    // CM = 8 (deflate), CINFO = 7 (32 KiB window).
    let cmf: u16 = 0x78;
    let flevel: u16 = match level {
        CompressionLevel::Stored => 0,
        CompressionLevel::FixedGreedy => 1,
        CompressionLevel::DynamicGreedy => 2,
        CompressionLevel::DynamicLazy => 3,
    };
    let mut flg = flevel << 6;
    let rem = (cmf << 8 | flg) % 31;
    if rem != 0 {
        flg += 31 - rem;
    }
    [cmf as u8, flg as u8]
}

/// Compresses `data` into a complete zlib stream.
pub fn deflate_compress(data: &[u8], level: CompressionLevel) -> Vec<u8> {
    let mut w = BitWriter::with_bytes(zlib_header(level).to_vec());
    match MatchParams::for_level(level) {
        None => write_stored_all(&mut w, data),
        Some(params) => {
            let tokens = tokenize_with(data, params);
            write_token_blocks(&mut w, data, &tokens, level);
        }
    }
    let mut out = w.finish();
    out.extend_from_slice(&adler32(data).to_be_bytes());
    out
}

fn write_stored_all(w: &mut BitWriter, data: &[u8]) {
    if data.is_empty() {
        write_stored_block(w, &[], true);
        return;
    }
    let mut chunks = data.chunks(MAX_STORED).peekable();
    while let Some(chunk) = chunks.next() {
        write_stored_block(w, chunk, chunks.peek().is_none());
    }
}

fn write_stored_block(w: &mut BitWriter, chunk: &[u8], last: bool) {
    debug_assert!(chunk.len() <= MAX_STORED);
    w.write_bits(u32::from(last), 1);
    w.write_bits(0b00, 2);
    w.align_to_byte();
    let len = chunk.len() as u16;
    w.write_bytes(&len.to_le_bytes());
    w.write_bytes(&(!len).to_le_bytes());
    w.write_bytes(chunk);
}

/// Bits needed to emit `raw` as stored blocks starting at bit offset `bit_pos`.
fn stored_cost(raw: &[u8], bit_pos: u64) -> u64 {
    let blocks = raw.len().div_ceil(MAX_STORED).max(1);
    let mut pos = bit_pos;
    for _ in 0..blocks {
        pos += 3;
        pos = pos.div_ceil(8) * 8;
        pos += 32;
    }
    pos + raw.len() as u64 * 8 - bit_pos
}

struct BlockStats {
    litlen: [u32; NUM_LITLEN],
    dist: [u32; NUM_DIST],
}

impl BlockStats {
    fn collect(tokens: &[Token]) -> Self {
        let mut s = Self {
            litlen: [0; NUM_LITLEN],
            dist: [0; NUM_DIST],
        };
        for t in tokens {
            match *t {
                Token::Literal(b) => s.litlen[b as usize] += 1,
                Token::Match { length, distance } => {
                    s.litlen[257 + length_code(length)] += 1;
                    s.dist[dist_code(distance)] += 1;
                }
            }
        }
        s.litlen[END_OF_BLOCK] += 1;
        s
    }

    fn data_bits(&self, litlen: &[u8], dist: &[u8]) -> u64 {
        let mut bits = 0u64;
        for (sym, &f) in self.litlen.iter().enumerate() {
            if f == 0 {
                continue;
            }
            let mut per = u64::from(litlen[sym]);
            if sym > END_OF_BLOCK {
                per += u64::from(LENGTH_EXTRA[sym - 257]);
            }
            bits += per * u64::from(f);
        }
        for (code, &f) in self.dist.iter().enumerate() {
            bits += (u64::from(dist[code]) + u64::from(DIST_EXTRA[code])) * u64::from(f);
        }
        bits
    }
}

/// A run-length encoded code-length sequence for a dynamic block header.
struct DynamicHeader {
    hlit: usize,
    hdist: usize,
    hclen: usize,
    // (symbol 0..=18, extra bits value)
    rle: Vec<(u8, u8)>,
    cl_code: HuffmanCode,
}

impl DynamicHeader {
    fn build(litlen: &[u8], dist: &[u8]) -> Self {
        let hlit = (257..=NUM_LITLEN).rev().find(|&n| litlen[n - 1] != 0).unwrap_or(257).max(257);
        let hdist = (1..=NUM_DIST).rev().find(|&n| dist[n - 1] != 0).unwrap_or(1);
        let mut seq = Vec::with_capacity(hlit + hdist);
        seq.extend_from_slice(&litlen[..hlit]);
        seq.extend_from_slice(&dist[..hdist]);
        let rle = rle_code_lengths(&seq);

        let mut freqs = [0u32; 19];
        for &(sym, _) in &rle {
            freqs[sym as usize] += 1;
        }
        let cl_lengths = code_lengths(&freqs, MAX_CODE_LENGTH_BITS);
        let hclen = (4..=19)
            .rev()
            .find(|&n| cl_lengths[CODE_LENGTH_ORDER[n - 1]] != 0)
            .unwrap_or(4);
        Self {
            hlit,
            hdist,
            hclen,
            rle,
            cl_code: HuffmanCode::from_lengths(&cl_lengths),
        }
    }

    fn bits(&self) -> u64 {
        let mut bits = 5 + 5 + 4 + 3 * self.hclen as u64;
        for &(sym, _) in &self.rle {
            bits += u64::from(self.cl_code.lengths[sym as usize]) + u64::from(rle_extra_bits(sym));
        }
        bits
    }

    fn write(&self, w: &mut BitWriter) {
        w.write_bits((self.hlit - 257) as u32, 5);
        w.write_bits((self.hdist - 1) as u32, 5);
        w.write_bits((self.hclen - 4) as u32, 4);
        for &sym in &CODE_LENGTH_ORDER[..self.hclen] {
            w.write_bits(u32::from(self.cl_code.lengths[sym]), 3);
        }
        for &(sym, extra) in &self.rle {
            let s = sym as usize;
            w.write_bits(u32::from(self.cl_code.codes[s]), u32::from(self.cl_code.lengths[s]));
            let n = rle_extra_bits(sym);
            if n > 0 {
                w.write_bits(u32::from(extra), n);
            }
        }
    }
}

fn rle_extra_bits(sym: u8) -> u32 {
    match sym {
        16 => 2,
        17 => 3,
        18 => 7,
        _ => 0,
    }
}

fn rle_code_lengths(seq: &[u8]) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let v = seq[i];
        let mut run = seq[i..].iter().take_while(|&&x| x == v).count();
        i += run;
        if v == 0 {
            while run >= 11 {
                let n = run.min(138);
                out.push((18, (n - 11) as u8));
                run -= n;
            }
            if run >= 3 {
                out.push((17, (run - 3) as u8));
                run = 0;
            }
        } else {
            out.push((v, 0));
            run -= 1;
            while run >= 3 {
                let n = run.min(6);
                out.push((16, (n - 3) as u8));
                run -= n;
            }
        }
        for _ in 0..run {
            out.push((v, 0));
        }
    }
    out
}

fn write_tokens(w: &mut BitWriter, tokens: &[Token], litlen: &HuffmanCode, dist: &HuffmanCode) {
    let emit = |w: &mut BitWriter, code: &HuffmanCode, sym: usize| {
        w.write_bits(u32::from(code.codes[sym]), u32::from(code.lengths[sym]));
    };
    for t in tokens {
        match *t {
            Token::Literal(b) => emit(w, litlen, b as usize),
            Token::Match { length, distance } => {
                let lc = length_code(length);
                emit(w, litlen, 257 + lc);
                let extra = LENGTH_EXTRA[lc];
                if extra > 0 {
                    w.write_bits(u32::from(length - LENGTH_BASE[lc]), u32::from(extra));
                }
                let dc = dist_code(distance);
                emit(w, dist, dc);
                let extra = DIST_EXTRA[dc];
                if extra > 0 {
                    w.write_bits(u32::from(distance - DIST_BASE[dc]), u32::from(extra));
                }
            }
        }
    }
    emit(w, litlen, END_OF_BLOCK);
}

enum BlockKind {
    Stored,
    Fixed,
    Dynamic(Box<(DynamicHeader, HuffmanCode, HuffmanCode)>),
}

fn write_token_blocks(w: &mut BitWriter, data: &[u8], tokens: &[Token], level: CompressionLevel) {
    let fixed_litlen = HuffmanCode::from_lengths(&fixed_litlen_lengths());
    let fixed_dist = HuffmanCode::from_lengths(&fixed_dist_lengths());
    let allow_dynamic = level != CompressionLevel::FixedGreedy;

    let mut blocks = split_blocks(tokens);
    if blocks.is_empty() {
        blocks.push((0, 0, 0));
    }
    let count = blocks.len();
    for (idx, (tok_start, tok_end, in_start)) in blocks.into_iter().enumerate() {
        let last = idx + 1 == count;
        let block_tokens = &tokens[tok_start..tok_end];
        let in_len: usize = block_tokens.iter().map(Token::span).sum();
        let raw = &data[in_start..in_start + in_len];
        let stats = BlockStats::collect(block_tokens);

        let fixed_bits = 3 + stats.data_bits(&fixed_litlen.lengths, &fixed_dist.lengths);
        let mut best = (fixed_bits, BlockKind::Fixed);
        if allow_dynamic {
            let litlen_lengths = code_lengths(&stats.litlen, MAX_BITS);
            let dist_lengths = code_lengths(&stats.dist, MAX_BITS);
            let mut dist_lengths = dist_lengths;
            if dist_lengths.iter().all(|&l| l == 0) {
                // A dynamic header must describe at least one distance code.
                dist_lengths[0] = 1;
                dist_lengths[1] = 1;
            }
            let header = DynamicHeader::build(&litlen_lengths, &dist_lengths);
            let dyn_bits = 3 + header.bits() + stats.data_bits(&litlen_lengths, &dist_lengths);
            if dyn_bits < best.0 {
                best = (
                    dyn_bits,
                    BlockKind::Dynamic(Box::new((
                        header,
                        HuffmanCode::from_lengths(&litlen_lengths),
                        HuffmanCode::from_lengths(&dist_lengths),
                    ))),
                );
            }
        }
        if stored_cost(raw, w.bit_len()) < best.0 {
            best.1 = BlockKind::Stored;
        }

        match best.1 {
            BlockKind::Stored => {
                if raw.is_empty() {
                    write_stored_block(w, raw, last);
                }
                let mut chunks = raw.chunks(MAX_STORED).peekable();
                while let Some(chunk) = chunks.next() {
                    write_stored_block(w, chunk, last && chunks.peek().is_none());
                }
            }
            BlockKind::Fixed => {
                w.write_bits(u32::from(last), 1);
                w.write_bits(0b01, 2);
                write_tokens(w, block_tokens, &fixed_litlen, &fixed_dist);
            }
            BlockKind::Dynamic(parts) => {
                let (header, litlen, dist) = *parts;
                w.write_bits(u32::from(last), 1);
                w.write_bits(0b10, 2);
                header.write(w);
                write_tokens(w, block_tokens, &litlen, &dist);
            }
        }
    }
}

/// Groups tokens so each block spans at least `BLOCK_INPUT` input bytes
/// (except the last). Returns `(token_start, token_end, input_start)`.
fn split_blocks(tokens: &[Token]) -> Vec<(usize, usize, usize)> {
    let mut blocks = Vec::new();
    let mut tok_start = 0;
    let mut in_start = 0;
    let mut in_pos = 0;
    for (i, t) in tokens.iter().enumerate() {
        in_pos += t.span();
        if in_pos - in_start >= BLOCK_INPUT {
            blocks.push((tok_start, i + 1, in_start));
            tok_start = i + 1;
            in_start = in_pos;
        }
    }
    if tok_start < tokens.len() {
        blocks.push((tok_start, tokens.len(), in_start));
    }
    blocks
}
