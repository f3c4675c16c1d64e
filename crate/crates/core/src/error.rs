use core::fmt;

/// Errors produced by the filter core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Pixel count does not match `width * height`.
    Dimensions { expected: usize, actual: usize },
    /// Width or height is zero.
    EmptyImage,
    /// A pixel value outside `0..=255`.
    PixelRange { index: usize, value: i64 },
    /// Window center outside the image.
    Coordinate { row: usize, col: usize, width: usize, height: usize },
    /// Order statistic requested over an empty sequence.
    EmptyWindow,
    /// Two images that must share dimensions do not.
    SizeMismatch { left: (usize, usize), right: (usize, usize) },
    /// Invalid filter or noise parameter.
    Parameter { name: &'static str, reason: &'static str },
}

impl Error {
    pub(crate) const fn param(name: &'static str, reason: &'static str) -> Self {
        Error::Parameter { name, reason }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimensions { expected, actual } => {
                write!(f, "expected {expected} pixels, got {actual}")
            }
            Error::EmptyImage => f.write_str("image width and height must be at least 1"),
            Error::PixelRange { index, value } => {
                write!(f, "pixel {index} has value {value}, outside 0..=255")
            }
            Error::Coordinate { row, col, width, height } => {
                write!(f, "({row}, {col}) lies outside the {width}x{height} image")
            }
            Error::EmptyWindow => f.write_str("order statistic of an empty window"),
            Error::SizeMismatch { left, right } => write!(
                f,
                "image sizes differ: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::Parameter { name, reason } => write!(f, "invalid {name}: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
