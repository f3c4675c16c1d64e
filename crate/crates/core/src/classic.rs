//! Single-pass filters: standard median, center-weighted median and the
//! tri-state median that switches between them.

use alloc::vec::Vec;

use crate::error::Result;
use crate::image::Image;
use crate::window::{check_weight, fill_window, median_in_place, WindowSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicConfig {
    pub window: WindowSpec,
    /// How many times the center pixel enters the CWM multiset. Must be odd.
    pub center_weight: usize,
    /// Tri-state threshold on `|pixel - filtered|`.
    pub tsm_threshold: u8,
}

impl Default for ClassicConfig {
    fn default() -> Self {
        ClassicConfig { window: WindowSpec::THREE, center_weight: 3, tsm_threshold: 20 }
    }
}

impl ClassicConfig {
    pub fn validate(&self) -> Result<()> {
        check_weight(self.center_weight)
    }
}

/// Replaces every pixel by the median of its window.
pub fn filter_sm(image: &Image, window: WindowSpec) -> Image {
    let mut buf = Vec::with_capacity(window.area());
    image.map_pixels(|row, col| {
        fill_window(image, row, col, window, &mut buf);
        median_in_place(&mut buf)
    })
}

/// Replaces every pixel by the median of its window with the center pixel
/// counted `center_weight` times.
pub fn filter_cwmf(image: &Image, config: &ClassicConfig) -> Result<Image> {
    config.validate()?;
    Ok(cwm_unchecked(image, config.window, config.center_weight))
}

fn cwm_unchecked(image: &Image, window: WindowSpec, weight: usize) -> Image {
    let mut buf = Vec::with_capacity(window.area() + weight);
    image.map_pixels(|row, col| {
        fill_window(image, row, col, window, &mut buf);
        // the window already holds the center once
        let center = image.get(row, col);
        buf.extend(core::iter::repeat(center).take(weight - 1));
        median_in_place(&mut buf)
    })
}

/// Chooses between the original, CWM and SM values for one pixel.
///
/// Keeps the pixel when `threshold >= |pixel - sm|`, takes the CWM value when
/// `|pixel - cwm| <= threshold`, and the SM value otherwise.
#[inline]
pub fn tri_state(pixel: u8, sm: u8, cwm: u8, threshold: u8) -> u8 {
    let d1 = pixel.abs_diff(sm);
    let d2 = pixel.abs_diff(cwm);
    if threshold >= d1 {
        pixel
    } else if d2 <= threshold {
        cwm
    } else {
        sm
    }
}

/// Tri-state median filter. Both sub-filters run on the input image.
pub fn filter_tsmf(image: &Image, config: &ClassicConfig) -> Result<Image> {
    config.validate()?;
    let sm = filter_sm(image, config.window);
    let cwm = cwm_unchecked(image, config.window, config.center_weight);
    let pixels = image
        .pixels()
        .iter()
        .zip(sm.pixels().iter().zip(cwm.pixels()))
        .map(|(&p, (&s, &c))| tri_state(p, s, c, config.tsm_threshold))
        .collect();
    Ok(image.with_pixels(pixels))
}
