//! Command-line surface: `noise`, `denoise`, `score` and `bench`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use impulse_core::{inject_impulse, metrics, FilterKind, FilterParams, NoiseSpec, WindowSpec};

use crate::bench::{self, BenchPlan, Metric};
use crate::pgm;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

/// A validated invocation.
#[derive(Debug, Clone)]
pub enum Command {
    Noise { input: PathBuf, output: PathBuf, density: f64, seed: u64 },
    Denoise { input: PathBuf, output: PathBuf, filter: FilterKind, params: FilterParams },
    Score { reference: PathBuf, candidate: PathBuf },
    Bench {
        plan: BenchPlan,
        csv: PathBuf,
        table: Option<PathBuf>,
        series: Option<PathBuf>,
        save_images: Option<PathBuf>,
    },
}

#[derive(Parser)]
#[command(name = "impulse", version, about = "Salt-and-pepper noise removal with median filters")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Corrupt a PGM with salt-and-pepper noise
    Noise {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Fraction of corrupted pixels, split evenly between 0 and 255
        #[arg(long, value_parser = parse_density)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Filter a PGM
    Denoise {
        #[arg(long, value_parser = parse_filter)]
        filter: FilterKind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Print MSE and PSNR of a candidate against a reference
    Score {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Sweep noise densities over filters and seeds
    Bench {
        /// Clean reference image
        #[arg(long)]
        image: PathBuf,
        /// Comma-separated filter ids
        #[arg(long, value_delimiter = ',', value_parser = parse_filter,
              default_value = "sm,cwmf,tsmf,psmf,apsmf,amf,dbmf,adbmf")]
        filters: Vec<FilterKind>,
        /// Comma-separated, strictly increasing densities
        #[arg(long, value_delimiter = ',', value_parser = parse_density,
              default_value = "0.05,0.10,0.20,0.30,0.40,0.50")]
        densities: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
        seeds: Vec<u64>,
        /// Per-trial results
        #[arg(long)]
        csv: PathBuf,
        /// Seed-averaged PSNR and MSE tables
        #[arg(long)]
        table: Option<PathBuf>,
        /// Per-filter (density, MSE, PSNR) plot series
        #[arg(long)]
        series: Option<PathBuf>,
        /// Directory for noisy and filtered images of the first seed
        #[arg(long)]
        save_images: Option<PathBuf>,
        #[command(flatten)]
        params: ParamFlags,
    },
}

#[derive(Args)]
struct ParamFlags {
    /// Base window side (odd, >= 3)
    #[arg(long, value_parser = parse_window, default_value = "3")]
    window: WindowSpec,
    /// CWMF center weight (odd)
    #[arg(long, default_value_t = 3)]
    weight: usize,
    /// TSMF threshold
    #[arg(long, default_value_t = 20)]
    threshold: u8,
    /// PSMF/APSMF detection threshold
    #[arg(long, default_value_t = 40)]
    detect_threshold: u8,
    /// PSMF/APSMF detection rounds
    #[arg(long, default_value_t = 3)]
    detect_iters: usize,
    /// Largest window for APSMF, AMF and ADBMF (odd) [default: 15 for APSMF, 9 for AMF/ADBMF]
    #[arg(long, value_parser = parse_window)]
    max_window: Option<WindowSpec>,
    /// PSMF/APSMF filtering round cap
    #[arg(long, default_value_t = 100)]
    iter_cap: usize,
}

impl ParamFlags {
    fn into_params(self, filters: &[FilterKind]) -> Result<FilterParams, clap::Error> {
        let mut params = FilterParams::default().with_window(self.window);
        if let Some(max_window) = self.max_window {
            params = params.with_max_window(max_window);
        }
        params.classic.center_weight = self.weight;
        params.classic.tsm_threshold = self.threshold;
        params.switching.detect_threshold = self.detect_threshold;
        params.switching.detect_iterations = self.detect_iters;
        params.switching.filter_iteration_cap = self.iter_cap;
        for &f in filters {
            params.validate(f).map_err(|e| {
                Cli::command().error(ErrorKind::ValueValidation, format!("{f}: {e}"))
            })?;
        }
        Ok(params)
    }
}

fn parse_density(s: &str) -> Result<f64, String> {
    let d: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&d) {
        Ok(d)
    } else {
        Err(format!("{d} is outside [0, 1]"))
    }
}

fn parse_window(s: &str) -> Result<WindowSpec, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a window size"))?;
    WindowSpec::new(n).map_err(|e| e.to_string())
}

fn parse_filter(s: &str) -> Result<FilterKind, String> {
    s.parse().map_err(|e: impulse_core::Error| e.to_string())
}

/// Parses arguments, excluding the program name.
pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("impulse")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args)?;
    Ok(match cli.command {
        Sub::Noise { input, output, density, seed } => Command::Noise { input, output, density, seed },
        Sub::Denoise { filter, input, output, params } => Command::Denoise {
            input,
            output,
            filter,
            params: params.into_params(&[filter])?,
        },
        Sub::Score { reference, candidate } => Command::Score { reference, candidate },
        Sub::Bench { image, filters, densities, seeds, csv, table, series, save_images, params } => {
            let params = params.into_params(&filters)?;
            let plan = BenchPlan { image_path: image, filters, densities, seeds, params };
            plan.validate()
                .map_err(|e| Cli::command().error(ErrorKind::ValueValidation, e.to_string()))?;
            Command::Bench { plan, csv, table, series, save_images }
        }
    })
}

/// Executes a command. `out` receives the one-line report of `score`.
pub fn run(command: Command, out: &mut impl Write) -> anyhow::Result<()> {
    match command {
        Command::Noise { input, output, density, seed } => {
            let image = pgm::load(&input).with_context(|| format!("reading {}", input.display()))?;
            let (noisy, _) = inject_impulse(&image, &NoiseSpec::new(density, seed)?);
            pgm::save(&output, &noisy).with_context(|| format!("writing {}", output.display()))?;
        }
        Command::Denoise { input, output, filter, params } => {
            let image = pgm::load(&input).with_context(|| format!("reading {}", input.display()))?;
            let filtered = params.apply(filter, &image).with_context(|| format!("running {filter}"))?;
            pgm::save(&output, &filtered).with_context(|| format!("writing {}", output.display()))?;
        }
        Command::Score { reference, candidate } => {
            let a = pgm::load(&reference).with_context(|| format!("reading {}", reference.display()))?;
            let b = pgm::load(&candidate).with_context(|| format!("reading {}", candidate.display()))?;
            let score = metrics::psnr(&a, &b)?;
            if score.psnr_db.is_infinite() {
                writeln!(out, "mse={:.6} psnr_db=inf", score.mse)?;
            } else {
                writeln!(out, "mse={:.6} psnr_db={:.4}", score.mse, score.psnr_db)?;
            }
        }
        Command::Bench { plan, csv, table, series, save_images } => {
            let results = bench::run_benchmark(&plan)?;
            std::fs::write(&csv, bench::emit_csv(&results))
                .with_context(|| format!("writing {}", csv.display()))?;
            if let Some(path) = table {
                let text = format!(
                    "{}\n{}",
                    bench::emit_table(&results, Metric::Psnr)?,
                    bench::emit_table(&results, Metric::Mse)?
                );
                std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = series {
                std::fs::write(&path, bench::emit_series(&results)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(dir) = save_images {
                let clean = pgm::load(&plan.image_path)?;
                let name = bench::image_name(&plan.image_path);
                bench::save_examples(&dir, &name, &clean, &plan)?;
            }
        }
    }
    Ok(())
}
