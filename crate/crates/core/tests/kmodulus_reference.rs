mod common;

use common::*;
use kpng::{kmm_transform, metrics, residual, KParameter};

#[test]
fn lena_block_quantizes_to_reference_grid() {
    let out = kmm_transform(&grid_image(&LENA_BLOCK), KParameter::default());
    assert_eq!(out, grid_image(&LENA_BLOCK_K10));
}

#[test]
fn lena_residuals_match_reference_grid() {
    let r = residual(&grid_image(&LENA_BLOCK), &grid_image(&LENA_BLOCK_K10)).unwrap();
    let expected: Vec<i16> = LENA_RESIDUALS.iter().flatten().copied().collect();
    assert_eq!(r.residuals, expected);
    assert_eq!(r.range(), (-4, 5));
}

#[test]
fn lena_block_mse_is_mean_squared_residual() {
    // Sum of squared residuals over the block is 815.
    let sq: i32 = LENA_RESIDUALS.iter().flatten().map(|&r| i32::from(r) * i32::from(r)).sum();
    assert_eq!(sq, 815);
    let m = metrics::mse(&grid_image(&LENA_BLOCK), &grid_image(&LENA_BLOCK_K10)).unwrap();
    assert_eq!(m, 8.15);
}
