//! Scanline prediction filters.

use super::PngError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum FilterType {
    None = 0,
    Sub = 1,
    Up = 2,
    Average = 3,
    Paeth = 4,
}

impl FilterType {
    pub const ALL: [FilterType; 5] = [
        FilterType::None,
        FilterType::Sub,
        FilterType::Up,
        FilterType::Average,
        FilterType::Paeth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FilterType::None => "none",
            FilterType::Sub => "sub",
            FilterType::Up => "up",
            FilterType::Average => "average",
            FilterType::Paeth => "paeth",
        }
    }
}

impl TryFrom<u8> for FilterType {
    type Error = PngError;

    fn try_from(v: u8) -> Result<Self, PngError> {
        FilterType::ALL
            .get(v as usize)
            .copied()
            .ok_or(PngError::InvalidFilter(v))
    }
}

/// Picks whichever of left, above, upper-left is nearest to `a + b - c`.
/// Ties resolve in the order a, b, c.
#[inline]
pub fn paeth_predictor(a: u8, b: u8, c: u8) -> u8 {
    let p = i16::from(a) + i16::from(b) - i16::from(c);
    let pa = (p - i16::from(a)).abs();
    let pb = (p - i16::from(b)).abs();
    let pc = (p - i16::from(c)).abs();
    if pa <= pb && pa <= pc {
        a
    } else if pb <= pc {
        b
    } else {
        c
    }
}

fn check_lengths(row: &[u8], prior: &[u8], bpp: usize) -> Result<(), PngError> {
    if row.len() != prior.len() {
        return Err(PngError::RowLength {
            row: row.len(),
            prior: prior.len(),
        });
    }
    if bpp == 0 {
        return Err(PngError::RowLength { row: row.len(), prior: 0 });
    }
    Ok(())
}

/// Filters `row` into `out` (cleared first). Lengths must already agree.
pub(crate) fn filter_into(row: &[u8], prior: &[u8], ftype: FilterType, bpp: usize, out: &mut Vec<u8>) {
    out.clear();
    out.reserve(row.len());
    match ftype {
        FilterType::None => out.extend_from_slice(row),
        FilterType::Sub => {
            for i in 0..row.len() {
                let left = if i >= bpp { row[i - bpp] } else { 0 };
                out.push(row[i].wrapping_sub(left));
            }
        }
        FilterType::Up => out.extend(row.iter().zip(prior).map(|(&x, &b)| x.wrapping_sub(b))),
        FilterType::Average => {
            for i in 0..row.len() {
                let left = if i >= bpp { row[i - bpp] } else { 0 };
                let avg = ((u16::from(left) + u16::from(prior[i])) / 2) as u8;
                out.push(row[i].wrapping_sub(avg));
            }
        }
        FilterType::Paeth => {
            for i in 0..row.len() {
                let (left, corner) = if i >= bpp { (row[i - bpp], prior[i - bpp]) } else { (0, 0) };
                out.push(row[i].wrapping_sub(paeth_predictor(left, prior[i], corner)));
            }
        }
    }
}

pub fn apply_filter(row: &[u8], prior_row: &[u8], ftype: FilterType, bytes_per_pixel: usize) -> Result<Vec<u8>, PngError> {
    check_lengths(row, prior_row, bytes_per_pixel)?;
    let mut out = Vec::with_capacity(row.len());
    filter_into(row, prior_row, ftype, bytes_per_pixel, &mut out);
    Ok(out)
}

/// Reverses a filter in place; `prior` is the already-reconstructed row above.
pub(crate) fn unfilter_in_place(row: &mut [u8], prior: &[u8], ftype: FilterType, bpp: usize) {
    match ftype {
        FilterType::None => {}
        FilterType::Sub => {
            for i in bpp..row.len() {
                row[i] = row[i].wrapping_add(row[i - bpp]);
            }
        }
        FilterType::Up => {
            for (x, &b) in row.iter_mut().zip(prior) {
                *x = x.wrapping_add(b);
            }
        }
        FilterType::Average => {
            for i in 0..row.len() {
                let left = if i >= bpp { row[i - bpp] } else { 0 };
                row[i] = row[i].wrapping_add(((u16::from(left) + u16::from(prior[i])) / 2) as u8);
            }
        }
        FilterType::Paeth => {
            for i in 0..row.len() {
                let (left, corner) = if i >= bpp { (row[i - bpp], prior[i - bpp]) } else { (0, 0) };
                row[i] = row[i].wrapping_add(paeth_predictor(left, prior[i], corner));
            }
        }
    }
}

pub fn unfilter(filtered: &[u8], prior_row: &[u8], ftype: FilterType, bytes_per_pixel: usize) -> Result<Vec<u8>, PngError> {
    check_lengths(filtered, prior_row, bytes_per_pixel)?;
    let mut row = filtered.to_vec();
    unfilter_in_place(&mut row, prior_row, ftype, bytes_per_pixel);
    Ok(row)
}

/// Sum of filtered bytes read as signed magnitudes.
pub(crate) fn score(filtered: &[u8]) -> u64 {
    filtered.iter().map(|&b| u64::from((b as i8).unsigned_abs())).sum()
}

/// Minimum-sum-of-absolute-differences heuristic; ties go to the lower type.
pub fn choose_filter(row: &[u8], prior_row: &[u8], bytes_per_pixel: usize) -> FilterType {
    let mut scratch = Vec::with_capacity(row.len());
    let mut best = (u64::MAX, FilterType::None);
    for ftype in FilterType::ALL {
        filter_into(row, prior_row, ftype, bytes_per_pixel, &mut scratch);
        let s = score(&scratch);
        if s < best.0 {
            best = (s, ftype);
        }
    }
    best.1
}
