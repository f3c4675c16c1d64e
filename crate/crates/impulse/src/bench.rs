//! Density sweeps: corrupt a clean image at each density and seed, run each
//! filter, and score the result against the clean original.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use impulse_core::noise::splitmix64_at;
use impulse_core::{inject_impulse, metrics, FilterKind, FilterParams, Image, NoiseSpec};
use rayon::prelude::*;
use thiserror::Error;

use crate::pgm::{self, PgmError};

pub const CSV_HEADER: &str = "image,filter,density,seed,mse,psnr_db,wall_time_ms,config_digest";

/// Densities of the low/medium-noise sweep (5% to 50%).
pub const TABLE_DENSITIES: [f64; 6] = [0.05, 0.10, 0.20, 0.30, 0.40, 0.50];
/// Densities of the high-noise sweep (60% to 90%).
pub const HIGH_DENSITIES: [f64; 4] = [0.60, 0.70, 0.80, 0.90];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot read {}: {source}", path.display())]
    Image { path: PathBuf, source: PgmError },
    #[error("invalid plan: {0}")]
    Plan(&'static str),
    #[error("{filter}: {source}")]
    Filter { filter: FilterKind, source: impulse_core::Error },
    #[error("results mix images {0:?} and {1:?}")]
    MixedImages(String, String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub image_path: PathBuf,
    pub filters: Vec<FilterKind>,
    /// Strictly increasing, each in `[0, 1]`.
    pub densities: Vec<f64>,
    pub seeds: Vec<u64>,
    pub params: FilterParams,
}

impl BenchPlan {
    pub fn new(image_path: impl Into<PathBuf>) -> Self {
        BenchPlan {
            image_path: image_path.into(),
            filters: FilterKind::ALL.to_vec(),
            densities: TABLE_DENSITIES.to_vec(),
            seeds: (0..5).collect(),
            params: FilterParams::default(),
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.filters.is_empty() || self.densities.is_empty() || self.seeds.is_empty() {
            return Err(BenchError::Plan("need at least one filter, density and seed"));
        }
        if self.densities.iter().any(|d| !(0.0..=1.0).contains(d)) {
            return Err(BenchError::Plan("densities must lie in [0, 1]"));
        }
        if self.densities.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BenchError::Plan("densities must be strictly increasing"));
        }
        let mut filters = self.filters.clone();
        filters.sort();
        filters.dedup();
        if filters.len() != self.filters.len() {
            return Err(BenchError::Plan("filters must be distinct"));
        }
        let mut seeds = self.seeds.clone();
        seeds.sort_unstable();
        seeds.dedup();
        if seeds.len() != self.seeds.len() {
            return Err(BenchError::Plan("seeds must be distinct"));
        }
        for &filter in &self.filters {
            self.params
                .validate(filter)
                .map_err(|source| BenchError::Filter { filter, source })?;
        }
        Ok(())
    }
}

/// One (image, filter, density, seed) trial.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub image_name: String,
    pub filter: FilterKind,
    pub density: f64,
    pub seed: u64,
    pub mse: f64,
    /// `f64::INFINITY` for a perfect reconstruction.
    pub psnr_db: f64,
    pub wall_time_ms: f64,
    /// Filter parameters and the derived noise seed, `key=value;...`.
    pub config_digest: String,
}

/// Noise seed for one trial, a pure function of the plan seed and the
/// trial's position in the sweep.
pub fn trial_seed(seed: u64, density_index: usize, trial_index: usize) -> u64 {
    splitmix64_at(splitmix64_at(seed, density_index as u64), trial_index as u64)
}

/// Runs the plan against the image at `plan.image_path`.
pub fn run_benchmark(plan: &BenchPlan) -> Result<Vec<BenchResult>, BenchError> {
    plan.validate()?;
    let image = pgm::load(&plan.image_path)
        .map_err(|source| BenchError::Image { path: plan.image_path.clone(), source })?;
    run_on_image(&image_name(&plan.image_path), &image, plan)
}

pub fn image_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs the plan against an in-memory clean image. Trials run in parallel;
/// results come back ordered by density, then filter (plan order), then seed
/// (plan order).
pub fn run_on_image(name: &str, clean: &Image, plan: &BenchPlan) -> Result<Vec<BenchResult>, BenchError> {
    plan.validate()?;
    let mut jobs = Vec::new();
    for di in 0..plan.densities.len() {
        for fi in 0..plan.filters.len() {
            for si in 0..plan.seeds.len() {
                jobs.push((di, fi, si));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(di, fi, si)| {
            let filter = plan.filters[fi];
            let density = plan.densities[di];
            let seed = plan.seeds[si];
            let noise_seed = trial_seed(seed, di, si);
            let spec = NoiseSpec::new(density, noise_seed)
                .map_err(|source| BenchError::Filter { filter, source })?;
            let (noisy, _) = inject_impulse(clean, &spec);
            let start = Instant::now();
            let filtered = plan
                .params
                .apply(filter, &noisy)
                .map_err(|source| BenchError::Filter { filter, source })?;
            let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            let score = metrics::psnr(clean, &filtered)
                .map_err(|source| BenchError::Filter { filter, source })?;
            let mut config_digest = String::new();
            plan.params
                .describe(filter, &mut config_digest)
                .expect("writing to a String cannot fail");
            write!(config_digest, ";noise_seed={noise_seed:#018x}").unwrap();
            Ok(BenchResult {
                image_name: name.to_owned(),
                filter,
                density,
                seed,
                mse: score.mse,
                psnr_db: score.psnr_db,
                wall_time_ms,
                config_digest,
            })
        })
        .collect()
}

/// Noisy and filtered images for the first seed at every density, written as
/// `{image}_{density}_noisy.pgm` and `{image}_{density}_{filter}.pgm`.
pub fn save_examples(dir: &Path, name: &str, clean: &Image, plan: &BenchPlan) -> Result<(), BenchError> {
    plan.validate()?;
    std::fs::create_dir_all(dir)?;
    for (di, &density) in plan.densities.iter().enumerate() {
        let spec = NoiseSpec::new(density, trial_seed(plan.seeds[0], di, 0))
            .map_err(|_| BenchError::Plan("densities must lie in [0, 1]"))?;
        let (noisy, _) = inject_impulse(clean, &spec);
        let tag = format!("{name}_{:03}", (density * 100.0).round() as u32);
        pgm::save(dir.join(format!("{tag}_noisy.pgm")), &noisy)?;
        for &filter in &plan.filters {
            let out = plan
                .params
                .apply(filter, &noisy)
                .map_err(|source| BenchError::Filter { filter, source })?;
            pgm::save(dir.join(format!("{tag}_{filter}.pgm")), &out)?;
        }
    }
    Ok(())
}

/// Two decimals, or more when two would not round-trip.
fn format_density(d: f64) -> String {
    let short = format!("{d:.2}");
    if short.parse::<f64>() == Ok(d) {
        short
    } else {
        format!("{d}")
    }
}

fn format_psnr(psnr: f64) -> String {
    if psnr.is_infinite() {
        "inf".to_owned()
    } else {
        format!("{psnr:.2}")
    }
}

/// Serializes results as CSV under [`CSV_HEADER`], one row per result.
pub fn emit_csv(results: &[BenchResult]) -> String {
    let mut out = String::with_capacity(64 * (results.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in results {
        writeln!(
            out,
            "{},{},{},{},{:.4},{},{:.3},{}",
            r.image_name,
            r.filter,
            format_density(r.density),
            r.seed,
            r.mse,
            format_psnr(r.psnr_db),
            r.wall_time_ms,
            r.config_digest
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Psnr,
    Mse,
}

impl Metric {
    fn label(self) -> &'static str {
        match self {
            Metric::Psnr => "PSNR (dB)",
            Metric::Mse => "MSE",
        }
    }
}

/// Seed-averaged cells keyed by density index and filter.
struct Aggregate {
    image: String,
    filters: Vec<FilterKind>,
    densities: Vec<f64>,
    cells: BTreeMap<(usize, FilterKind), (f64, f64, usize)>,
    seeds: usize,
}

impl Aggregate {
    fn build(results: &[BenchResult]) -> Result<Self, BenchError> {
        let image = results.first().map(|r| r.image_name.clone()).unwrap_or_default();
        let mut filters = Vec::new();
        let mut densities: Vec<f64> = Vec::new();
        let mut seeds = Vec::new();
        for r in results {
            if r.image_name != image {
                return Err(BenchError::MixedImages(image, r.image_name.clone()));
            }
            if !filters.contains(&r.filter) {
                filters.push(r.filter);
            }
            if !densities.contains(&r.density) {
                densities.push(r.density);
            }
            if !seeds.contains(&r.seed) {
                seeds.push(r.seed);
            }
        }
        densities.sort_by(f64::total_cmp);
        let mut cells = BTreeMap::new();
        for r in results {
            let di = densities.iter().position(|&d| d == r.density).unwrap();
            let cell = cells.entry((di, r.filter)).or_insert((0.0, 0.0, 0));
            cell.0 += r.mse;
            cell.1 += r.psnr_db;
            cell.2 += 1;
        }
        Ok(Aggregate { image, filters, densities, cells, seeds: seeds.len() })
    }

    fn mean(&self, di: usize, filter: FilterKind, metric: Metric) -> Option<f64> {
        self.cells.get(&(di, filter)).map(|&(mse, psnr, n)| match metric {
            Metric::Mse => mse / n as f64,
            Metric::Psnr => psnr / n as f64,
        })
    }
}

/// One table row: a density and the per-filter means at it.
pub type TableRow = (f64, Vec<(FilterKind, f64)>);

/// Seed-averaged mean of `metric` per (density, filter). Rows follow
/// increasing density, columns follow first appearance of each filter.
pub fn mean_table(results: &[BenchResult], metric: Metric) -> Result<Vec<TableRow>, BenchError> {
    let agg = Aggregate::build(results)?;
    Ok(agg
        .densities
        .iter()
        .enumerate()
        .map(|(di, &d)| {
            let row = agg
                .filters
                .iter()
                .filter_map(|&f| agg.mean(di, f, metric).map(|m| (f, m)))
                .collect();
            (d, row)
        })
        .collect())
}

/// Plain-text matrix of seed-averaged values: one row per density, one
/// column per filter, two decimals.
pub fn emit_table(results: &[BenchResult], metric: Metric) -> Result<String, BenchError> {
    let agg = Aggregate::build(results)?;
    let mut out = String::new();
    writeln!(out, "# {} for {}, mean over {} seed(s)", metric.label(), agg.image, agg.seeds).unwrap();
    write!(out, "{:>8}", "density").unwrap();
    for f in &agg.filters {
        write!(out, " {:>9}", f.id()).unwrap();
    }
    out.push('\n');
    for (di, &d) in agg.densities.iter().enumerate() {
        write!(out, "{:>8}", format_density(d)).unwrap();
        for &f in &agg.filters {
            let cell = match agg.mean(di, f, metric) {
                Some(v) if v.is_infinite() => "inf".to_owned(),
                Some(v) => format!("{v:.2}"),
                None => "-".to_owned(),
            };
            write!(out, " {cell:>9}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Per-filter (density, MSE, PSNR) series for plotting, as CSV.
pub fn emit_series(results: &[BenchResult]) -> Result<String, BenchError> {
    let agg = Aggregate::build(results)?;
    let mut out = String::from("filter,density,mse,psnr_db\n");
    for &f in &agg.filters {
        for (di, &d) in agg.densities.iter().enumerate() {
            if let (Some(mse), Some(psnr)) = (agg.mean(di, f, Metric::Mse), agg.mean(di, f, Metric::Psnr)) {
                writeln!(out, "{f},{},{mse:.4},{}", format_density(d), format_psnr(psnr)).unwrap();
            }
        }
    }
    Ok(out)
}
