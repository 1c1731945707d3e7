//! Length-limited Huffman code construction and canonical decoding tables.

use super::InflateError;

/// Optimal code lengths bounded by `max_bits`, via package-merge.
///
/// Symbols with zero frequency get length 0. When only one symbol is used a
/// second one is given length 1 as well so the resulting code is complete.
pub fn code_lengths(freqs: &[u32], max_bits: u8) -> Vec<u8> {
    let mut lengths = vec![0u8; freqs.len()];
    let mut leaves: Vec<(u64, usize)> = freqs
        .iter()
        .enumerate()
        .filter(|(_, &f)| f > 0)
        .map(|(s, &f)| (u64::from(f), s))
        .collect();
    match leaves.len() {
        0 => return lengths,
        1 => {
            let used = leaves[0].1;
            let partner = if used == 0 { 1 } else { 0 };
            lengths[used] = 1;
            if partner < lengths.len() {
                lengths[partner] = 1;
            }
            return lengths;
        }
        _ => {}
    }
    assert!(
        leaves.len() <= 1usize << max_bits,
        "{} symbols cannot fit in {max_bits}-bit codes",
        leaves.len()
    );
    leaves.sort_unstable();

    struct Item {
        weight: u64,
        leaves: Vec<u16>,
    }
    let originals: Vec<Item> = leaves
        .iter()
        .enumerate()
        .map(|(i, &(w, _))| Item {
            weight: w,
            leaves: vec![i as u16],
        })
        .collect();

    let clone_items = |items: &[Item]| -> Vec<Item> {
        items
            .iter()
            .map(|it| Item {
                weight: it.weight,
                leaves: it.leaves.clone(),
            })
            .collect()
    };

    let mut current = clone_items(&originals);
    for _ in 1..max_bits {
        let packages: Vec<Item> = current
            .chunks_exact(2)
            .map(|pair| {
                let mut l = pair[0].leaves.clone();
                l.extend_from_slice(&pair[1].leaves);
                Item {
                    weight: pair[0].weight + pair[1].weight,
                    leaves: l,
                }
            })
            .collect();
        let mut merged = Vec::with_capacity(originals.len() + packages.len());
        let mut a = clone_items(&originals).into_iter().peekable();
        let mut b = packages.into_iter().peekable();
        loop {
            let take_a = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => x.weight <= y.weight,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            merged.push(if take_a { a.next() } else { b.next() }.unwrap());
        }
        current = merged;
    }

    let n = leaves.len();
    for item in &current[..2 * n - 2] {
        for &leaf in &item.leaves {
            lengths[leaves[leaf as usize].1] += 1;
        }
    }
    lengths
}

/// Canonical codes for `lengths`, bit-reversed for LSB-first emission.
pub fn canonical_codes(lengths: &[u8]) -> Vec<u16> {
    let max = lengths.iter().copied().max().unwrap_or(0) as usize;
    let mut bl_count = vec![0u16; max + 1];
    for &l in lengths {
        if l > 0 {
            bl_count[l as usize] += 1;
        }
    }
    let mut next_code = vec![0u16; max + 2];
    let mut code = 0u16;
    for bits in 1..=max {
        code = (code + bl_count[bits - 1]) << 1;
        next_code[bits] = code;
    }
    lengths
        .iter()
        .map(|&l| {
            if l == 0 {
                return 0;
            }
            let c = next_code[l as usize];
            next_code[l as usize] += 1;
            reverse_bits(c, l)
        })
        .collect()
}

fn reverse_bits(code: u16, len: u8) -> u16 {
    code.reverse_bits() >> (16 - u32::from(len))
}

/// Encoder-side code: bit-reversed codes plus their lengths.
#[derive(Debug, Clone)]
pub struct HuffmanCode {
    pub codes: Vec<u16>,
    pub lengths: Vec<u8>,
}

impl HuffmanCode {
    pub fn from_lengths(lengths: &[u8]) -> Self {
        Self {
            codes: canonical_codes(lengths),
            lengths: lengths.to_vec(),
        }
    }
}

/// Single-level decoding table indexed by the next `max_len` input bits.
#[derive(Debug, Clone)]
pub struct DecodeTable {
    // symbol << 4 | length; length 0 marks an unassigned bit pattern.
    entries: Vec<u16>,
    max_len: u32,
}

impl DecodeTable {
    /// Rejects over-subscribed length sets. Incomplete sets are accepted;
    /// hitting an unassigned pattern is reported at decode time.
    pub fn from_lengths(lengths: &[u8]) -> Result<Self, InflateError> {
        let max_len = lengths.iter().copied().max().unwrap_or(0);
        if max_len > 15 {
            return Err(InflateError::CorruptHuffman("code length exceeds 15"));
        }
        let mut kraft: u32 = 0;
        for &l in lengths.iter().filter(|&&l| l > 0) {
            kraft += 1 << (15 - l);
        }
        if kraft > 1 << 15 {
            return Err(InflateError::CorruptHuffman("over-subscribed code"));
        }
        let max_len = u32::from(max_len.max(1));
        let mut entries = vec![0u16; 1 << max_len];
        let codes = canonical_codes(lengths);
        for (sym, (&len, &code)) in lengths.iter().zip(&codes).enumerate() {
            if len == 0 {
                continue;
            }
            let entry = (sym as u16) << 4 | u16::from(len);
            let step = 1usize << len;
            let mut idx = code as usize;
            while idx < entries.len() {
                entries[idx] = entry;
                idx += step;
            }
        }
        Ok(Self { entries, max_len })
    }

    pub fn decode(&self, bits: &mut super::bits::BitReader<'_>) -> Result<u16, InflateError> {
        let peeked = bits.peek(self.max_len);
        let entry = self.entries[peeked as usize];
        let len = u32::from(entry & 0xF);
        if len == 0 {
            // Either a genuinely unassigned pattern or zero padding past the end.
            return if bits.available() < self.max_len {
                Err(InflateError::Truncated)
            } else {
                Err(InflateError::CorruptHuffman("invalid code"))
            };
        }
        bits.consume(len)?;
        Ok(entry >> 4)
    }
}
