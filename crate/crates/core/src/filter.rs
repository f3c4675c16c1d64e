//! Uniform dispatch over the eight filters.

use core::fmt;
use core::str::FromStr;

use crate::classic::{filter_cwmf, filter_sm, filter_tsmf, ClassicConfig};
use crate::decision::{filter_adbmf, filter_amf, filter_dbmf, AdaptiveConfig};
use crate::error::{Error, Result};
use crate::image::Image;
use crate::switching::{filter_apsmf, filter_psmf, SwitchingConfig};
use crate::window::WindowSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FilterKind {
    Sm,
    Cwmf,
    Tsmf,
    Psmf,
    Apsmf,
    Amf,
    Dbmf,
    Adbmf,
}

impl FilterKind {
    pub const ALL: [FilterKind; 8] = [
        FilterKind::Sm,
        FilterKind::Cwmf,
        FilterKind::Tsmf,
        FilterKind::Psmf,
        FilterKind::Apsmf,
        FilterKind::Amf,
        FilterKind::Dbmf,
        FilterKind::Adbmf,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FilterKind::Sm => "sm",
            FilterKind::Cwmf => "cwmf",
            FilterKind::Tsmf => "tsmf",
            FilterKind::Psmf => "psmf",
            FilterKind::Apsmf => "apsmf",
            FilterKind::Amf => "amf",
            FilterKind::Dbmf => "dbmf",
            FilterKind::Adbmf => "adbmf",
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FilterKind::ALL
            .into_iter()
            .find(|k| k.id().eq_ignore_ascii_case(s))
            .ok_or(Error::param("filter", "expected one of sm, cwmf, tsmf, psmf, apsmf, amf, dbmf, adbmf"))
    }
}

/// Parameters for every filter family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FilterParams {
    pub classic: ClassicConfig,
    pub switching: SwitchingConfig,
    pub adaptive: AdaptiveConfig,
}

impl FilterParams {
    /// Sets the base window of every family.
    pub fn with_window(mut self, window: WindowSpec) -> Self {
        self.classic.window = window;
        self.switching.window = window;
        self.adaptive.start_window = window;
        self
    }

    /// Sets the growth limit of the adaptive filters.
    pub fn with_max_window(mut self, max_window: WindowSpec) -> Self {
        self.switching.max_window = max_window;
        self.adaptive.max_window = max_window;
        self
    }

    pub fn validate(&self, kind: FilterKind) -> Result<()> {
        match kind {
            FilterKind::Sm | FilterKind::Dbmf => Ok(()),
            FilterKind::Cwmf | FilterKind::Tsmf => self.classic.validate(),
            FilterKind::Psmf | FilterKind::Apsmf => self.switching.validate(),
            FilterKind::Amf | FilterKind::Adbmf => self.adaptive.validate(),
        }
    }

    pub fn apply(&self, kind: FilterKind, image: &Image) -> Result<Image> {
        match kind {
            FilterKind::Sm => Ok(filter_sm(image, self.classic.window)),
            FilterKind::Cwmf => filter_cwmf(image, &self.classic),
            FilterKind::Tsmf => filter_tsmf(image, &self.classic),
            FilterKind::Psmf => filter_psmf(image, &self.switching),
            FilterKind::Apsmf => filter_apsmf(image, &self.switching),
            FilterKind::Amf => filter_amf(image, &self.adaptive),
            FilterKind::Dbmf => Ok(filter_dbmf(image, self.adaptive.start_window)),
            FilterKind::Adbmf => filter_adbmf(image, &self.adaptive),
        }
    }

    /// Writes the parameters that influence `kind` as `key=value` pairs
    /// separated by `;`.
    pub fn describe(&self, kind: FilterKind, out: &mut impl fmt::Write) -> fmt::Result {
        let c = &self.classic;
        let s = &self.switching;
        let a = &self.adaptive;
        match kind {
            FilterKind::Sm => write!(out, "window={}", c.window.size()),
            FilterKind::Cwmf => write!(out, "window={};weight={}", c.window.size(), c.center_weight),
            FilterKind::Tsmf => write!(
                out,
                "window={};weight={};threshold={}",
                c.window.size(),
                c.center_weight,
                c.tsm_threshold
            ),
            FilterKind::Psmf => write!(
                out,
                "window={};detect_threshold={};detect_iters={};iter_cap={}",
                s.window.size(),
                s.detect_threshold,
                s.detect_iterations,
                s.filter_iteration_cap
            ),
            FilterKind::Apsmf => write!(
                out,
                "window={};detect_threshold={};detect_iters={};max_window={};iter_cap={}",
                s.window.size(),
                s.detect_threshold,
                s.detect_iterations,
                s.max_window.size(),
                s.filter_iteration_cap
            ),
            FilterKind::Dbmf => write!(out, "window={}", a.start_window.size()),
            FilterKind::Amf | FilterKind::Adbmf => {
                write!(out, "window={};max_window={}", a.start_window.size(), a.max_window.size())
            }
        }
    }
}
