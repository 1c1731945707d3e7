//! Fixed tables from the DEFLATE format.

pub const LENGTH_BASE: [u16; 29] = [
    3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 23, 27, 31, 35, 43, 51, 59, 67, 83, 99, 115, 131,
    163, 195, 227, 258,
];
pub const LENGTH_EXTRA: [u8; 29] = [
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0,
];
pub const DIST_BASE: [u16; 30] = [
    1, 2, 3, 4, 5, 7, 9, 13, 17, 25, 33, 49, 65, 97, 129, 193, 257, 385, 513, 769, 1025, 1537,
    2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577,
];
pub const DIST_EXTRA: [u8; 30] = [
    0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13,
    13,
];

/// Transmission order of the code-length alphabet in a dynamic block header.
pub const CODE_LENGTH_ORDER: [usize; 19] = [
    16, 17, 18, 0, 8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13, 2, 14, 1, 15,
];

pub const END_OF_BLOCK: usize = 256;
pub const NUM_LITLEN: usize = 286;
pub const NUM_DIST: usize = 30;
pub const MAX_BITS: u8 = 15;
pub const MAX_CODE_LENGTH_BITS: u8 = 7;

pub const MIN_MATCH: usize = 3;
pub const MAX_MATCH: usize = 258;
pub const WINDOW_SIZE: usize = 32768;

/// Index into `LENGTH_BASE` for a match length in 3..=258.
pub fn length_code(length: u16) -> usize {
    LENGTH_BASE.partition_point(|&b| b <= length) - 1
}

/// Index into `DIST_BASE` for a distance in 1..=32768.
pub fn dist_code(distance: u16) -> usize {
    DIST_BASE.partition_point(|&b| b <= distance) - 1
}

pub fn fixed_litlen_lengths() -> [u8; 288] {
    let mut l = [0u8; 288];
    l[..144].fill(8);
    l[144..256].fill(9);
    l[256..280].fill(7);
    l[280..].fill(8);
    l
}

pub fn fixed_dist_lengths() -> [u8; 30] {
    [5; 30]
}
