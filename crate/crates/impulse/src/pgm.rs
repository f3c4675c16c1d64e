//! Binary PGM (`P5`) with a maxval of 255.
//!
//! Header tokens are separated by whitespace and may be interleaved with `#`
//! comments running to the end of the line. Exactly one whitespace byte
//! separates the maxval from the raster.

use std::fs;
use std::io;
use std::path::Path;

use impulse_core::Image;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PgmError {
    #[error("not a binary PGM: {0}")]
    Format(&'static str),
    #[error("unsupported maxval {0}, only 255 is supported")]
    UnsupportedMaxval(u32),
    #[error("raster truncated: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error(transparent)]
    Image(#[from] impulse_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &'static str) -> Result<u32, PgmError> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PgmError::Format(what));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(PgmError::Format(what))
    }
}

/// Decodes a binary PGM.
pub fn read_pgm(bytes: &[u8]) -> Result<Image, PgmError> {
    if !bytes.starts_with(b"P5") {
        return Err(PgmError::Format("missing P5 magic"));
    }
    let mut header = Header { bytes, pos: 2 };
    if !header.bytes.get(2).is_some_and(|&b| b.is_ascii_whitespace() || b == b'#') {
        return Err(PgmError::Format("missing P5 magic"));
    }
    let width = header.number("bad width")? as usize;
    let height = header.number("bad height")? as usize;
    let maxval = header.number("bad maxval")?;
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval(maxval));
    }
    match bytes.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => {}
        _ => return Err(PgmError::Format("no whitespace after maxval")),
    }
    let raster = &bytes[header.pos + 1..];
    let expected = width * height;
    if raster.len() < expected {
        return Err(PgmError::Truncated { expected, actual: raster.len() });
    }
    Ok(Image::new(width, height, raster[..expected].to_vec())?)
}

/// Encodes `image` as `P5\n{width} {height}\n255\n` followed by the raster.
pub fn write_pgm(image: &Image) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.pixels());
    out
}

pub fn load(path: impl AsRef<Path>) -> Result<Image, PgmError> {
    read_pgm(&fs::read(path)?)
}

pub fn save(path: impl AsRef<Path>, image: &Image) -> io::Result<()> {
    fs::write(path, write_pgm(image))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_minimal_files() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend([0, 255, 128, 7]);
        assert_eq!(read_pgm(&bytes).unwrap().pixels(), &[0, 255, 128, 7]);

        let mut bytes = b"P5\n# c\n1 1\n255\n".to_vec();
        bytes.push(9);
        let img = read_pgm(&bytes).unwrap();
        assert_eq!((img.width(), img.height(), img.pixels()), (1, 1, &[9u8][..]));
    }

    #[test]
    fn comments_between_tokens() {
        let mut bytes = b"P5 # made by hand\n3 # width\n# height next\n1\n255\n".to_vec();
        bytes.extend([1, 2, 3]);
        assert_eq!(read_pgm(&bytes).unwrap().pixels(), &[1, 2, 3]);
    }

    #[test]
    fn raster_may_start_with_whitespace_bytes() {
        let mut bytes = b"P5\n2 1\n255\n".to_vec();
        bytes.extend(*b"\n ");
        assert_eq!(read_pgm(&bytes).unwrap().pixels(), b"\n ");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(read_pgm(b"P2\n1 1\n255\n0\n"), Err(PgmError::Format(_))));
        assert!(matches!(read_pgm(b"P5\n1 1\n65535\n\0\0"), Err(PgmError::UnsupportedMaxval(65535))));
        assert!(matches!(
            read_pgm(b"P5\n2 2\n255\n\x01\x02"),
            Err(PgmError::Truncated { expected: 4, actual: 2 })
        ));
        assert!(matches!(read_pgm(b"P5\n0 2\n255\n"), Err(PgmError::Image(_))));
        assert!(matches!(read_pgm(b"P5\nx 2\n255\n"), Err(PgmError::Format(_))));
    }

    #[test]
    fn writes_exact_header() {
        let img = Image::from_values(1, 1, &[0]).unwrap();
        assert_eq!(write_pgm(&img), b"P5\n1 1\n255\n\0");
        let img = Image::from_values(2, 1, &[255, 0]).unwrap();
        assert_eq!(write_pgm(&img), b"P5\n2 1\n255\n\xff\0");
    }
}
