//! Square neighborhoods with replicate padding, and the order statistics the
//! filters are built from.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::Image;
use crate::noise::FlagMap;

/// Side length of an odd square window, at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindowSpec(usize);

impl WindowSpec {
    pub const THREE: WindowSpec = WindowSpec(3);

    pub fn new(size: usize) -> Result<Self> {
        if size < 3 {
            return Err(Error::param("window size", "must be at least 3"));
        }
        if size % 2 == 0 {
            return Err(Error::param("window size", "must be odd"));
        }
        Ok(WindowSpec(size))
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0
    }

    #[inline]
    pub fn radius(self) -> usize {
        self.0 / 2
    }

    /// Number of pixels covered by the window.
    #[inline]
    pub fn area(self) -> usize {
        self.0 * self.0
    }

    /// The window grown by one pixel on every side.
    #[inline]
    pub fn grown(self) -> WindowSpec {
        WindowSpec(self.0 + 2)
    }

    /// `self, self+2, ...` up to and including `max`.
    pub fn chain_to(self, max: WindowSpec) -> impl Iterator<Item = WindowSpec> {
        (self.0..=max.0).step_by(2).map(WindowSpec)
    }
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec::THREE
    }
}

/// Minimum, maximum and median of one window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowStats {
    pub min: u8,
    pub max: u8,
    pub median: u8,
}

impl WindowStats {
    /// True when `value` lies strictly inside `(min, max)`.
    #[inline]
    pub fn strictly_inside(&self, value: u8) -> bool {
        self.min < value && value < self.max
    }
}

/// Returns the `size * size` window centered on `(row, col)` in row-major
/// order. Coordinates past the border are clamped to the nearest edge pixel.
pub fn extract_window(image: &Image, row: usize, col: usize, spec: WindowSpec) -> Result<Vec<u8>> {
    if row >= image.height() || col >= image.width() {
        return Err(Error::Coordinate {
            row,
            col,
            width: image.width(),
            height: image.height(),
        });
    }
    let mut out = Vec::with_capacity(spec.area());
    fill_window(image, row, col, spec, &mut out);
    Ok(out)
}

/// Lower-middle element of the sorted sequence.
pub fn median_of(values: &[u8]) -> Result<u8> {
    if values.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut sorted = values.to_vec();
    Ok(median_in_place(&mut sorted))
}

pub fn window_stats(values: &[u8]) -> Result<WindowStats> {
    if values.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut sorted = values.to_vec();
    Ok(stats_in_place(&mut sorted))
}

/// Median of `neighbors` together with `center` repeated `weight` times.
pub fn weighted_median(neighbors: &[u8], center: u8, weight: usize) -> Result<u8> {
    check_weight(weight)?;
    let mut expanded = Vec::with_capacity(neighbors.len() + weight);
    expanded.extend_from_slice(neighbors);
    expanded.extend(core::iter::repeat(center).take(weight));
    Ok(median_in_place(&mut expanded))
}

pub(crate) fn check_weight(weight: usize) -> Result<()> {
    if weight == 0 || weight % 2 == 0 {
        return Err(Error::param("center weight", "must be odd and positive"));
    }
    Ok(())
}

#[inline]
fn clamp_offset(center: usize, offset: isize, len: usize) -> usize {
    let pos = center as isize + offset;
    pos.clamp(0, len as isize - 1) as usize
}

/// Appends the clamped window around `(row, col)` to `out` after clearing it.
pub(crate) fn fill_window(image: &Image, row: usize, col: usize, spec: WindowSpec, out: &mut Vec<u8>) {
    out.clear();
    let r = spec.radius() as isize;
    let (width, height) = image.dimensions();
    let pixels = image.pixels();
    for dr in -r..=r {
        let base = clamp_offset(row, dr, height) * width;
        for dc in -r..=r {
            out.push(pixels[base + clamp_offset(col, dc, width)]);
        }
    }
}

/// Like [`fill_window`], but keeps only positions whose flag is clear.
pub(crate) fn fill_unflagged(
    image: &Image,
    flags: &FlagMap,
    row: usize,
    col: usize,
    spec: WindowSpec,
    out: &mut Vec<u8>,
) {
    out.clear();
    let r = spec.radius() as isize;
    let (width, height) = image.dimensions();
    let pixels = image.pixels();
    let marks = flags.as_slice();
    for dr in -r..=r {
        let base = clamp_offset(row, dr, height) * width;
        for dc in -r..=r {
            let idx = base + clamp_offset(col, dc, width);
            if !marks[idx] {
                out.push(pixels[idx]);
            }
        }
    }
}

/// Median of a non-empty slice, reordering it.
#[inline]
pub(crate) fn median_in_place(values: &mut [u8]) -> u8 {
    let mid = (values.len() - 1) / 2;
    *values.select_nth_unstable(mid).1
}

/// Stats of a non-empty slice, reordering it.
#[inline]
pub(crate) fn stats_in_place(values: &mut [u8]) -> WindowStats {
    values.sort_unstable();
    WindowStats {
        min: values[0],
        max: values[values.len() - 1],
        median: values[(values.len() - 1) / 2],
    }
}
