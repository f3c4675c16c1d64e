//! File formats, benchmark harness and command line for `impulse-core`.

pub mod bench;
pub mod cli;
pub mod pgm;

pub use bench::{BenchPlan, BenchResult, Metric};
pub use pgm::{read_pgm, write_pgm, PgmError};
