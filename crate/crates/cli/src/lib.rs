//! Stream driver behind the `impurity-stream` binary: input parsing, the run
//! loop, state snapshots and the update-cost benchmark.

pub mod bench;
pub mod config;
pub mod engine;
pub mod error;
pub mod hexfloat;
pub mod record;
pub mod run;
pub mod snapshot;

pub use config::{InputFormat, MetricSelect, Mode, RunConfig};
pub use engine::{Engine, Session};
pub use error::{CliError, Result};
pub use run::{format_row, run_stream, RunSummary};
