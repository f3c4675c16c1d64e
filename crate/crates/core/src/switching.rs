//! Progressive switching median filters (PSMF and its adaptive variant APSMF).
//!
//! Both run in two phases. Detection repeats a fixed number of rounds, each
//! comparing every pixel against its window median and flagging outliers;
//! newly flagged pixels take the median value for the following round.
//! Filtering then starts again from the noisy input and repeatedly replaces
//! flagged pixels by the median of their unflagged neighbors, clearing the
//! flag, until nothing is flagged. Every round reads a frozen snapshot of the
//! previous round's image and flags.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::Image;
use crate::noise::FlagMap;
use crate::window::{fill_unflagged, fill_window, median_in_place, stats_in_place, WindowSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwitchingConfig {
    pub window: WindowSpec,
    /// A pixel is flagged once `|pixel - median| >= detect_threshold`.
    pub detect_threshold: u8,
    pub detect_iterations: usize,
    /// Largest window APSMF filtering may grow to.
    pub max_window: WindowSpec,
    /// Upper bound on filtering rounds before the fallback fills what is left.
    pub filter_iteration_cap: usize,
}

impl Default for SwitchingConfig {
    fn default() -> Self {
        SwitchingConfig {
            window: WindowSpec::THREE,
            detect_threshold: 40,
            detect_iterations: 3,
            max_window: WindowSpec::new(15).expect("15 is a valid window"),
            filter_iteration_cap: 100,
        }
    }
}

impl SwitchingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_window < self.window {
            return Err(Error::param("max window", "must be at least the start window"));
        }
        if self.detect_iterations == 0 {
            return Err(Error::param("detection iterations", "must be at least 1"));
        }
        if self.filter_iteration_cap == 0 {
            return Err(Error::param("filter iteration cap", "must be at least 1"));
        }
        Ok(())
    }
}

/// Which of the two switching filters a phase follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchingVariant {
    /// Flag on median deviation alone; fill from any unflagged neighbor.
    Progressive,
    /// Also flag when the median sits at the window's min or max; fill only
    /// from windows that are at least half clean, growing the window if not.
    Adaptive,
}

/// One detection round over a snapshot. Returns the next image and flags.
pub fn detection_round(
    image: &Image,
    flags: &FlagMap,
    config: &SwitchingConfig,
    variant: SwitchingVariant,
) -> (Image, FlagMap) {
    let mut buf = Vec::with_capacity(config.window.area());
    let mut next_flags = flags.clone();
    let width = image.width();
    let next = image.map_pixels(|row, col| {
        let pixel = image.get(row, col);
        fill_window(image, row, col, config.window, &mut buf);
        let stats = stats_in_place(&mut buf);
        let close = pixel.abs_diff(stats.median) < config.detect_threshold;
        let keep = match variant {
            SwitchingVariant::Progressive => close,
            SwitchingVariant::Adaptive => close && stats.strictly_inside(stats.median),
        };
        let was_flagged = flags.as_slice()[row * width + col];
        if !keep && !was_flagged {
            next_flags.set(row, col, true);
            stats.median
        } else {
            pixel
        }
    });
    (next, next_flags)
}

fn detect(image: &Image, config: &SwitchingConfig, variant: SwitchingVariant) -> Result<(Image, FlagMap)> {
    config.validate()?;
    let mut current = image.clone();
    let mut flags = FlagMap::for_image(image);
    for _ in 0..config.detect_iterations {
        (current, flags) = detection_round(&current, &flags, config, variant);
    }
    Ok((current, flags))
}

/// PSMF impulse detection: `detect_iterations` rounds of median-deviation tests.
pub fn psmf_detect(image: &Image, config: &SwitchingConfig) -> Result<(Image, FlagMap)> {
    detect(image, config, SwitchingVariant::Progressive)
}

/// APSMF impulse detection, which additionally flags pixels whose window
/// median equals the window min or max.
pub fn apsmf_detect(image: &Image, config: &SwitchingConfig) -> Result<(Image, FlagMap)> {
    detect(image, config, SwitchingVariant::Adaptive)
}

/// One filtering round over a snapshot. Flagged pixels with usable clean
/// neighbors are replaced by their median and unflagged.
pub fn filtering_round(
    image: &Image,
    flags: &FlagMap,
    config: &SwitchingConfig,
    variant: SwitchingVariant,
) -> (Image, FlagMap) {
    let mut buf = Vec::with_capacity(config.max_window.area());
    let mut next_flags = flags.clone();
    let width = image.width();
    let next = image.map_pixels(|row, col| {
        let pixel = image.get(row, col);
        if !flags.as_slice()[row * width + col] {
            return pixel;
        }
        let replacement = match variant {
            SwitchingVariant::Progressive => {
                fill_unflagged(image, flags, row, col, config.window, &mut buf);
                (!buf.is_empty()).then(|| median_in_place(&mut buf))
            }
            SwitchingVariant::Adaptive => adaptive_fill(image, flags, row, col, config, &mut buf),
        };
        match replacement {
            Some(value) => {
                next_flags.set(row, col, false);
                value
            }
            None => pixel,
        }
    });
    (next, next_flags)
}

fn adaptive_fill(
    image: &Image,
    flags: &FlagMap,
    row: usize,
    col: usize,
    config: &SwitchingConfig,
    buf: &mut Vec<u8>,
) -> Option<u8> {
    let mut window = config.window;
    loop {
        fill_unflagged(image, flags, row, col, window, buf);
        let clean = buf.len();
        if window >= config.max_window {
            return (clean > 0).then(|| median_in_place(buf));
        }
        if 2 * clean >= window.area() {
            return Some(median_in_place(buf));
        }
        window = window.grown();
    }
}

/// Result of a filtering phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteringReport {
    pub image: Image,
    /// Filtering rounds executed, at most `filter_iteration_cap`.
    pub rounds: usize,
    /// Pixels still flagged when the rounds ended, filled by the plain
    /// window median instead.
    pub fallback_pixels: usize,
}

/// Runs the filtering phase from `corrupted` with the detection flags.
///
/// Stops when no flag remains, when `filter_iteration_cap` rounds have run, or
/// when a round changes nothing (every later round would be identical). Any
/// pixel still flagged then receives the unrestricted median of its window.
pub fn run_filtering(
    corrupted: &Image,
    flags: &FlagMap,
    config: &SwitchingConfig,
    variant: SwitchingVariant,
) -> Result<FilteringReport> {
    config.validate()?;
    if (flags.width(), flags.height()) != corrupted.dimensions() {
        return Err(Error::SizeMismatch {
            left: corrupted.dimensions(),
            right: (flags.width(), flags.height()),
        });
    }
    let mut image = corrupted.clone();
    let mut flags = flags.clone();
    let mut rounds = 0;
    while flags.any() && rounds < config.filter_iteration_cap {
        let (next_image, next_flags) = filtering_round(&image, &flags, config, variant);
        rounds += 1;
        let stalled = next_flags == flags;
        image = next_image;
        flags = next_flags;
        if stalled {
            break;
        }
    }
    let fallback_pixels = flags.count();
    if fallback_pixels > 0 {
        let mut buf = Vec::with_capacity(config.window.area());
        let marks = flags.as_slice();
        let width = image.width();
        image = image.map_pixels(|row, col| {
            if marks[row * width + col] {
                fill_window(&image, row, col, config.window, &mut buf);
                median_in_place(&mut buf)
            } else {
                image.get(row, col)
            }
        });
    }
    Ok(FilteringReport { image, rounds, fallback_pixels })
}

/// PSMF filtering phase.
pub fn psmf_filter(corrupted: &Image, flags: &FlagMap, config: &SwitchingConfig) -> Result<Image> {
    run_filtering(corrupted, flags, config, SwitchingVariant::Progressive).map(|r| r.image)
}

/// APSMF filtering phase.
pub fn apsmf_filter(corrupted: &Image, flags: &FlagMap, config: &SwitchingConfig) -> Result<Image> {
    run_filtering(corrupted, flags, config, SwitchingVariant::Adaptive).map(|r| r.image)
}

/// Progressive switching median filter. The filtering phase starts from the
/// noisy input; the detection phase only contributes its flags.
pub fn filter_psmf(image: &Image, config: &SwitchingConfig) -> Result<Image> {
    let (_, flags) = psmf_detect(image, config)?;
    psmf_filter(image, &flags, config)
}

/// Adaptive progressive switching median filter.
pub fn filter_apsmf(image: &Image, config: &SwitchingConfig) -> Result<Image> {
    let (_, flags) = apsmf_detect(image, config)?;
    apsmf_filter(image, &flags, config)
}
