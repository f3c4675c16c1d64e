//! Decision filters: the conventional adaptive median (AMF), the
//! decision-based median (DBMF) and the adaptive decision-based median (ADBMF).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::Image;
use crate::window::{fill_window, stats_in_place, WindowSpec, WindowStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdaptiveConfig {
    pub start_window: WindowSpec,
    pub max_window: WindowSpec,
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        AdaptiveConfig {
            start_window: WindowSpec::THREE,
            max_window: WindowSpec::new(9).expect("9 is a valid window"),
        }
    }
}

impl AdaptiveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_window < self.start_window {
            return Err(Error::param("max window", "must be at least the start window"));
        }
        Ok(())
    }
}

/// A window median counts as noise-free when it lies strictly between the
/// window extremes, or strictly between the impulse values 0 and 255.
#[inline]
pub fn median_is_clean(stats: &WindowStats) -> bool {
    stats.strictly_inside(stats.median) || (0 < stats.median && stats.median < 255)
}

/// Adaptive median filter over the unmodified input.
///
/// The window grows from `start_window` until its median lies strictly inside
/// `(min, max)`. The pixel is then kept if it too lies strictly inside,
/// otherwise it takes that median. If no window up to `max_window` qualifies,
/// the median of the largest window is used.
pub fn filter_amf(image: &Image, config: &AdaptiveConfig) -> Result<Image> {
    config.validate()?;
    let mut buf = Vec::with_capacity(config.max_window.area());
    Ok(image.map_pixels(|row, col| {
        let pixel = image.get(row, col);
        let mut window = config.start_window;
        loop {
            fill_window(image, row, col, window, &mut buf);
            let stats = stats_in_place(&mut buf);
            if stats.strictly_inside(stats.median) {
                // level B
                return if stats.strictly_inside(pixel) { pixel } else { stats.median };
            }
            if window >= config.max_window {
                return stats.median;
            }
            window = window.grown();
        }
    }))
}

/// Decision-based median filter with a fixed window.
///
/// A pixel is noise-free when it lies strictly between its window's min and
/// max, or strictly between 0 and 255; such pixels are kept. A noisy pixel
/// takes the window median when that median is clean, otherwise the value
/// already written for its left neighbor (the pixel above in column 0, the
/// median itself at the origin). Window statistics are read from the input;
/// the fallback reads the output, which is filled in raster order.
pub fn filter_dbmf(image: &Image, window: WindowSpec) -> Image {
    decision_scan(image, window, window)
}

/// Adaptive decision-based median filter. Same as [`filter_dbmf`], except a
/// noisy median makes the window grow by 2 until a clean median appears or
/// `max_window` is reached; only then does the left-neighbor fallback apply.
pub fn filter_adbmf(image: &Image, config: &AdaptiveConfig) -> Result<Image> {
    config.validate()?;
    Ok(decision_scan(image, config.start_window, config.max_window))
}

/// True when the pixel under test is taken as noise-free.
#[inline]
pub fn pixel_is_clean(stats: &WindowStats, pixel: u8) -> bool {
    stats.strictly_inside(pixel) || (0 < pixel && pixel < 255)
}

fn decision_scan(image: &Image, start: WindowSpec, max: WindowSpec) -> Image {
    let mut out = image.clone();
    let mut buf = Vec::with_capacity(max.area());
    for row in 0..image.height() {
        for col in 0..image.width() {
            let pixel = image.get(row, col);
            let mut window = start;
            fill_window(image, row, col, window, &mut buf);
            let mut stats = stats_in_place(&mut buf);
            if pixel_is_clean(&stats, pixel) {
                continue;
            }
            while !median_is_clean(&stats) && window < max {
                window = window.grown();
                fill_window(image, row, col, window, &mut buf);
                stats = stats_in_place(&mut buf);
            }
            let value = if median_is_clean(&stats) {
                stats.median
            } else if col > 0 {
                out.get(row, col - 1)
            } else if row > 0 {
                out.get(row - 1, col)
            } else {
                stats.median
            };
            out.set(row, col, value);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn patch(vals: &[i64], side: usize) -> Image {
        Image::from_values(side, side, vals).unwrap()
    }

    #[test]
    fn amf_constant_field() {
        let flat = Image::filled(9, 9, 100).unwrap();
        assert_eq!(filter_amf(&flat, &AdaptiveConfig::default()).unwrap(), flat);
    }

    #[test]
    fn amf_replaces_pepper_with_window_median() {
        let img = patch(&[95, 101, 99, 103, 0, 97, 105, 100, 98], 3);
        let out = filter_amf(&img, &AdaptiveConfig::default()).unwrap();
        // sorted window: 0 95 97 98 99 100 101 103 105 -> median 99
        assert_eq!(out.get(1, 1), 99);
    }

    #[test]
    fn dbmf_salt_in_textured_patch() {
        let img = patch(&[90, 110, 104, 96, 255, 92, 108, 100, 95], 3);
        let out = filter_dbmf(&img, WindowSpec::THREE);
        // sorted: 90 92 95 96 100 104 108 110 255 -> median 100
        assert_eq!(out.get(1, 1), 100);
    }

    #[test]
    fn dbmf_left_neighbor_fallback() {
        // (0,0) = 128 sits strictly inside its window and survives. The salt
        // at (0,1) then sees 0 128 128 255 255 255 255 255 255: median 255.
        let img = Image::from_values(3, 2, &[128, 255, 255, 0, 255, 255]).unwrap();
        let out = filter_dbmf(&img, WindowSpec::THREE);
        assert_eq!(out.get(0, 0), 128);
        assert_eq!(out.get(0, 1), 128);
    }

    #[test]
    fn adbmf_grows_to_find_clean_median() {
        // The padded 3x3 window at the origin is five 255s and four 0s; the
        // padded 5x5 window is six 0s, nine 100s and ten 255s: median 100.
        let img = patch(&[255, 0, 100, 0, 255, 100, 100, 100, 100], 3);
        let cfg = AdaptiveConfig { start_window: WindowSpec::THREE, max_window: WindowSpec::new(5).unwrap() };
        assert_eq!(filter_adbmf(&img, &cfg).unwrap().get(0, 0), 100);
        // DBMF cannot grow and has no left neighbor at the origin: median 255
        assert_eq!(filter_dbmf(&img, WindowSpec::THREE).get(0, 0), 255);
    }

    #[test]
    fn config_rejects_small_max() {
        let cfg = AdaptiveConfig { start_window: WindowSpec::new(5).unwrap(), max_window: WindowSpec::THREE };
        assert!(filter_amf(&Image::filled(3, 3, 1).unwrap(), &cfg).is_err());
        assert!(filter_adbmf(&Image::filled(3, 3, 1).unwrap(), &cfg).is_err());
    }
}
