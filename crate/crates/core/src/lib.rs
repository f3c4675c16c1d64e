//! Median-filter family for removing salt-and-pepper impulse noise from 8-bit
//! grayscale images, with a seeded noise model and MSE/PSNR scoring.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the benchmark
//! harness and the command line live in the `impulse` crate.
//!
//! Filters:
//!
//! | id      | function                      | family     |
//! |---------|-------------------------------|------------|
//! | `sm`    | [`classic::filter_sm`]        | classic    |
//! | `cwmf`  | [`classic::filter_cwmf`]      | classic    |
//! | `tsmf`  | [`classic::filter_tsmf`]      | classic    |
//! | `psmf`  | [`switching::filter_psmf`]    | switching  |
//! | `apsmf` | [`switching::filter_apsmf`]   | switching  |
//! | `amf`   | [`decision::filter_amf`]      | decision   |
//! | `dbmf`  | [`decision::filter_dbmf`]     | decision   |
//! | `adbmf` | [`decision::filter_adbmf`]    | decision   |
//!
//! All windows are odd squares with replicate (clamp-to-edge) padding.
#![no_std]

extern crate alloc;

pub mod classic;
pub mod decision;
mod error;
pub mod filter;
mod image;
pub mod metrics;
pub mod noise;
pub mod switching;
pub mod window;

pub use error::{Error, Result};
pub use filter::{FilterKind, FilterParams};
pub use image::Image;
pub use metrics::QualityScore;
pub use noise::{inject_impulse, FlagMap, NoiseSpec};
pub use window::{WindowSpec, WindowStats};
