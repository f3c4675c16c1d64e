use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An 8-bit grayscale image stored row-major with a top-left origin.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl Image {
    /// Wraps a row-major raster. Fails if the raster length is not `width * height`.
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        let expected = width.checked_mul(height).ok_or(Error::Dimensions {
            expected: usize::MAX,
            actual: pixels.len(),
        })?;
        if pixels.len() != expected {
            return Err(Error::Dimensions { expected, actual: pixels.len() });
        }
        Ok(Image { width, height, pixels })
    }

    /// Builds an image from wide integers, rejecting anything outside `0..=255`.
    pub fn from_values(width: usize, height: usize, values: &[i64]) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        if values.len() != width * height {
            return Err(Error::Dimensions { expected: width * height, actual: values.len() });
        }
        let pixels = values
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u8::try_from(value).map_err(|_| Error::PixelRange { index, value })
            })
            .collect::<Result<Vec<u8>>>()?;
        Image::new(width, height, pixels)
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Image::new(width, height, alloc::vec![value; width * height])
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false; images hold at least one pixel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Pixel at `(row, col)`. Panics when out of bounds.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        assert!(row < self.height && col < self.width, "pixel ({row}, {col}) out of bounds");
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    /// Builds a same-sized image by evaluating `f(row, col)` for every pixel.
    pub(crate) fn map_pixels<F>(&self, mut f: F) -> Image
    where
        F: FnMut(usize, usize) -> u8,
    {
        let mut pixels = Vec::with_capacity(self.len());
        for row in 0..self.height {
            for col in 0..self.width {
                pixels.push(f(row, col));
            }
        }
        Image { width: self.width, height: self.height, pixels }
    }

    /// Same-sized image over a new raster of matching length.
    pub(crate) fn with_pixels(&self, pixels: Vec<u8>) -> Image {
        debug_assert_eq!(pixels.len(), self.len());
        Image { width: self.width, height: self.height, pixels }
    }

    pub(crate) fn check_same_size(&self, other: &Image) -> Result<()> {
        if self.dimensions() != other.dimensions() {
            return Err(Error::SizeMismatch { left: self.dimensions(), right: other.dimensions() });
        }
        Ok(())
    }
}

impl core::fmt::Debug for Image {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.len() <= 64 {
            f.debug_struct("Image")
                .field("width", &self.width)
                .field("height", &self.height)
                .field("pixels", &self.pixels)
                .finish()
        } else {
            f.debug_struct("Image")
                .field("width", &self.width)
                .field("height", &self.height)
                .finish_non_exhaustive()
        }
    }
}
