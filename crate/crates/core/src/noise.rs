//! Salt-and-pepper corruption.
//!
//! Every pixel draws one uniform `u` in `[0, 1)`: `u < p_pepper` gives 0,
//! `u < p_pepper + p_salt` gives 255, otherwise the pixel is kept. The draw for
//! pixel `i` (row-major index) is the `i`-th output of a SplitMix64 generator
//! seeded with the noise seed, mapped to a double by its top 53 bits. Since
//! SplitMix64's `n`-th output is a pure function of `seed + (n + 1) * γ`, each
//! pixel is computed independently of traversal order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::Image;

pub const PEPPER: u8 = 0;
pub const SALT: u8 = 255;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `index`-th output (0-based) of SplitMix64 seeded with `seed`.
#[inline]
pub fn splitmix64_at(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Uniform double in `[0, 1)` for pixel `index`.
#[inline]
pub fn uniform_at(seed: u64, index: u64) -> f64 {
    (splitmix64_at(seed, index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Noise density, its even salt/pepper split, and the seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    density: f64,
    pepper_prob: f64,
    salt_prob: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(density: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::param("noise density", "must lie in [0, 1]"));
        }
        let half = density / 2.0;
        Ok(NoiseSpec { density, pepper_prob: half, salt_prob: half, seed })
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn pepper_prob(&self) -> f64 {
        self.pepper_prob
    }

    pub fn salt_prob(&self) -> f64 {
        self.salt_prob
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Per-pixel corrupted/clean markers, row-major. `true` means flagged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagMap {
    width: usize,
    height: usize,
    flags: Vec<bool>,
}

impl FlagMap {
    /// All-clear map for a `width` x `height` grid.
    pub fn new(width: usize, height: usize) -> Self {
        FlagMap { width, height, flags: vec![false; width * height] }
    }

    pub fn for_image(image: &Image) -> Self {
        FlagMap::new(image.width(), image.height())
    }

    pub fn from_flags(width: usize, height: usize, flags: Vec<bool>) -> Result<Self> {
        if flags.len() != width * height {
            return Err(Error::Dimensions { expected: width * height, actual: flags.len() });
        }
        Ok(FlagMap { width, height, flags })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.height && col < self.width, "flag ({row}, {col}) out of bounds");
        self.flags[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.height && col < self.width, "flag ({row}, {col}) out of bounds");
        self.flags[row * self.width + col] = value;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.flags
    }

    /// Number of set flags.
    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn any(&self) -> bool {
        self.flags.iter().any(|&f| f)
    }

    /// True when every flag set in `self` is also set in `later`.
    pub fn is_subset_of(&self, later: &FlagMap) -> bool {
        self.flags.len() == later.flags.len()
            && self.flags.iter().zip(&later.flags).all(|(&a, &b)| !a || b)
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [bool] {
        &mut self.flags
    }
}

/// Corrupts `image` per `spec`, returning the noisy image and the mask of
/// pixels that were overwritten with 0 or 255.
pub fn inject_impulse(image: &Image, spec: &NoiseSpec) -> (Image, FlagMap) {
    let mut mask = FlagMap::for_image(image);
    let salt_cut = spec.pepper_prob + spec.salt_prob;
    let pixels: Vec<u8> = image
        .pixels()
        .iter()
        .zip(mask.as_mut_slice())
        .enumerate()
        .map(|(i, (&clean, flag))| {
            let u = uniform_at(spec.seed, i as u64);
            if u < spec.pepper_prob {
                *flag = true;
                PEPPER
            } else if u < salt_cut {
                *flag = true;
                SALT
            } else {
                clean
            }
        })
        .collect();
    let noisy = Image::new(image.width(), image.height(), pixels)
        .expect("dimensions copied from a valid image");
    (noisy, mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_outputs() {
        // First outputs of SplitMix64 seeded with 1234567 (reference sequence
        // published with the Java SplittableRandom / Vigna C implementation).
        assert_eq!(splitmix64_at(1234567, 0), 6457827717110365317);
        assert_eq!(splitmix64_at(1234567, 1), 3203168211198807973);
        assert_eq!(splitmix64_at(1234567, 2), 9817491932198370423);
    }

    #[test]
    fn spec_validation() {
        assert!(NoiseSpec::new(-0.01, 0).is_err());
        assert!(NoiseSpec::new(1.01, 0).is_err());
        assert!(NoiseSpec::new(f64::NAN, 0).is_err());
        let spec = NoiseSpec::new(0.3, 9).unwrap();
        assert_eq!(spec.pepper_prob(), spec.salt_prob());
        assert!((spec.pepper_prob() + spec.salt_prob() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn zero_density_is_identity() {
        let img = Image::from_values(3, 2, &[1, 2, 3, 4, 5, 6]).unwrap();
        let (out, mask) = inject_impulse(&img, &NoiseSpec::new(0.0, 77).unwrap());
        assert_eq!(out, img);
        assert!(!mask.any());
    }

    #[test]
    fn full_density_corrupts_everything() {
        let img = Image::filled(16, 16, 128).unwrap();
        let (out, mask) = inject_impulse(&img, &NoiseSpec::new(1.0, 3).unwrap());
        assert!(out.pixels().iter().all(|&p| p == PEPPER || p == SALT));
        assert_eq!(mask.count(), 256);
    }

    #[test]
    fn half_density_concentration() {
        let img = Image::filled(512, 512, 128).unwrap();
        let (out, mask) = inject_impulse(&img, &NoiseSpec::new(0.5, 42).unwrap());
        let n = 512.0 * 512.0;
        let sigma = (n * 0.25f64).sqrt();
        let corrupted = mask.count() as f64;
        assert!((corrupted - 0.5 * n).abs() <= 4.0 * sigma, "{corrupted}");
        // salt count given corruption is Binomial(corrupted, 1/2)
        let salt = out.pixels().iter().filter(|&&p| p == SALT).count() as f64;
        let sigma_salt = (corrupted * 0.25).sqrt();
        assert!((salt - corrupted / 2.0).abs() <= 4.0 * sigma_salt, "{salt}");
    }
}
