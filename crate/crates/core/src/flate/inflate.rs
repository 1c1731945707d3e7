use super::bits::BitReader;
use super::checksum::adler32;
use super::huffman::DecodeTable;
use super::tables::*;
use super::InflateError;

/// Decompresses a zlib stream and verifies its Adler-32 trailer.
pub fn inflate(data: &[u8]) -> Result<Vec<u8>, InflateError> {
    if data.len() < 2 {
        return Err(InflateError::Truncated);
    }
    let (cmf, flg) = (data[0], data[1]);
    if cmf & 0x0F != 8 {
        return Err(InflateError::BadHeader("compression method is not deflate"));
    }
    if cmf >> 4 > 7 {
        return Err(InflateError::BadHeader("window size exceeds 32 KiB"));
    }
    if (u16::from(cmf) << 8 | u16::from(flg)) % 31 != 0 {
        return Err(InflateError::BadHeader("header check bits do not match"));
    }
    if flg & 0x20 != 0 {
        return Err(InflateError::BadHeader("preset dictionaries are not supported"));
    }

    let mut bits = BitReader::new(&data[2..]);
    let mut out = Vec::new();
    inflate_blocks(&mut bits, &mut out)?;

    let mut trailer = Vec::with_capacity(4);
    bits.read_aligned(4, &mut trailer)?;
    let expected = u32::from_be_bytes([trailer[0], trailer[1], trailer[2], trailer[3]]);
    let actual = adler32(&out);
    if expected != actual {
        return Err(InflateError::ChecksumMismatch { expected, actual });
    }
    Ok(out)
}

fn inflate_blocks(bits: &mut BitReader<'_>, out: &mut Vec<u8>) -> Result<(), InflateError> {
    let fixed = (
        DecodeTable::from_lengths(&fixed_litlen_lengths())?,
        DecodeTable::from_lengths(&fixed_dist_lengths())?,
    );
    loop {
        let last = bits.read_bits(1)? == 1;
        match bits.read_bits(2)? {
            0 => {
                let mut hdr = Vec::with_capacity(4);
                bits.read_aligned(4, &mut hdr)?;
                let len = u16::from_le_bytes([hdr[0], hdr[1]]);
                let nlen = u16::from_le_bytes([hdr[2], hdr[3]]);
                if len != !nlen {
                    return Err(InflateError::StoredLengthMismatch);
                }
                bits.read_aligned(len as usize, out)?;
            }
            1 => inflate_huffman(bits, out, &fixed.0, &fixed.1)?,
            2 => {
                let (litlen, dist) = read_dynamic_tables(bits)?;
                inflate_huffman(bits, out, &litlen, &dist)?;
            }
            _ => return Err(InflateError::InvalidBlockType),
        }
        if last {
            return Ok(());
        }
    }
}

fn read_dynamic_tables(bits: &mut BitReader<'_>) -> Result<(DecodeTable, DecodeTable), InflateError> {
    let hlit = bits.read_bits(5)? as usize + 257;
    let hdist = bits.read_bits(5)? as usize + 1;
    let hclen = bits.read_bits(4)? as usize + 4;
    if hlit > NUM_LITLEN || hdist > NUM_DIST {
        return Err(InflateError::CorruptHuffman("too many length or distance codes"));
    }
    let mut cl_lengths = [0u8; 19];
    for &sym in &CODE_LENGTH_ORDER[..hclen] {
        cl_lengths[sym] = bits.read_bits(3)? as u8;
    }
    let cl_table = DecodeTable::from_lengths(&cl_lengths)?;

    let total = hlit + hdist;
    let mut lengths = Vec::with_capacity(total);
    while lengths.len() < total {
        let sym = cl_table.decode(bits)?;
        let (value, repeat) = match sym {
            0..=15 => (sym as u8, 1),
            16 => {
                let prev = *lengths
                    .last()
                    .ok_or(InflateError::CorruptHuffman("repeat with no previous length"))?;
                (prev, 3 + bits.read_bits(2)? as usize)
            }
            17 => (0, 3 + bits.read_bits(3)? as usize),
            18 => (0, 11 + bits.read_bits(7)? as usize),
            _ => return Err(InflateError::CorruptHuffman("invalid code-length symbol")),
        };
        if lengths.len() + repeat > total {
            return Err(InflateError::CorruptHuffman("code lengths overrun the header"));
        }
        lengths.extend(std::iter::repeat_n(value, repeat));
    }
    if lengths[END_OF_BLOCK] == 0 {
        return Err(InflateError::CorruptHuffman("missing end-of-block code"));
    }
    Ok((
        DecodeTable::from_lengths(&lengths[..hlit])?,
        DecodeTable::from_lengths(&lengths[hlit..])?,
    ))
}

fn inflate_huffman(
    bits: &mut BitReader<'_>,
    out: &mut Vec<u8>,
    litlen: &DecodeTable,
    dist: &DecodeTable,
) -> Result<(), InflateError> {
    loop {
        let sym = litlen.decode(bits)? as usize;
        if sym < 256 {
            out.push(sym as u8);
            continue;
        }
        if sym == END_OF_BLOCK {
            return Ok(());
        }
        let lc = sym - 257;
        if lc >= LENGTH_BASE.len() {
            return Err(InflateError::CorruptHuffman("invalid length symbol"));
        }
        let length = LENGTH_BASE[lc] as usize + bits.read_bits(u32::from(LENGTH_EXTRA[lc]))? as usize;
        let dc = dist.decode(bits)? as usize;
        if dc >= DIST_BASE.len() {
            return Err(InflateError::CorruptHuffman("invalid distance symbol"));
        }
        let distance = DIST_BASE[dc] as usize + bits.read_bits(u32::from(DIST_EXTRA[dc]))? as usize;
        if distance > out.len() {
            return Err(InflateError::DistanceTooFar {
                distance,
                available: out.len(),
            });
        }
        let start = out.len() - distance;
        if distance >= length {
            out.extend_from_within(start..start + length);
        } else {
            for i in 0..length {
                let b = out[start + i];
                out.push(b);
            }
        }
    }
}
