//! Mean squared error and peak signal-to-noise ratio against a reference.

use crate::error::Result;
use crate::image::Image;

/// Peak value of an 8-bit image, squared.
const PEAK_SQUARED: f64 = 255.0 * 255.0;

/// MSE and PSNR of one candidate. `psnr_db` is `f64::INFINITY` exactly when
/// the images are identical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityScore {
    pub mse: f64,
    pub psnr_db: f64,
}

impl QualityScore {
    pub fn from_mse(mse: f64) -> Self {
        QualityScore { mse, psnr_db: psnr_from_mse(mse) }
    }

    pub fn is_perfect(&self) -> bool {
        self.mse == 0.0
    }
}

/// Sum of squared pixel differences, accumulated exactly.
pub fn squared_error_sum(reference: &Image, candidate: &Image) -> Result<u64> {
    reference.check_same_size(candidate)?;
    Ok(reference
        .pixels()
        .iter()
        .zip(candidate.pixels())
        .map(|(&a, &b)| {
            let d = u64::from(a.abs_diff(b));
            d * d
        })
        .sum())
}

pub fn mse(reference: &Image, candidate: &Image) -> Result<f64> {
    let total = squared_error_sum(reference, candidate)?;
    Ok(total as f64 / reference.len() as f64)
}

/// `10 log10(255^2 / mse)`, infinite for a zero error.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * libm::log10(PEAK_SQUARED / mse)
    }
}

pub fn psnr(reference: &Image, candidate: &Image) -> Result<QualityScore> {
    mse(reference, candidate).map(QualityScore::from_mse)
}
