use std::fmt;
use std::str::FromStr;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Window,
    Fading,
    Exact,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Window => "window",
            Mode::Fading => "fading",
            Mode::Exact => "exact",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "window" => Ok(Mode::Window),
            "fading" => Ok(Mode::Fading),
            "exact" => Ok(Mode::Exact),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Which metric columns appear in the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricSelect {
    Gini,
    Entropy,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// One label per line.
    Lines,
    /// Comma-separated fields; the label is taken from one column.
    Csv { column: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub metric: MetricSelect,
    pub window_size: Option<usize>,
    pub alpha: Option<f64>,
    pub refresh_period: u64,
    pub emit_every: u64,
    pub format: InputFormat,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        RunConfig {
            mode,
            metric: MetricSelect::Both,
            window_size: None,
            alpha: None,
            refresh_period: 0,
            emit_every: 1,
            format: InputFormat::Lines,
        }
    }

    pub fn window(window_size: usize) -> Self {
        RunConfig {
            window_size: Some(window_size),
            ..Self::new(Mode::Window)
        }
    }

    pub fn fading(alpha: f64) -> Self {
        RunConfig {
            alpha: Some(alpha),
            ..Self::new(Mode::Fading)
        }
    }

    /// Checks the parameters required by the selected mode. When
    /// `resuming` is set the estimator parameters come from a snapshot and
    /// need not be given.
    pub fn validate(&self, resuming: bool) -> Result<()> {
        if self.emit_every == 0 {
            return Err(CliError::Usage("--emit-every must be at least 1".into()));
        }
        match self.mode {
            Mode::Window => match self.window_size {
                Some(0) => Err(CliError::Usage("--window-size must be at least 1".into())),
                None if !resuming => Err(CliError::Usage(
                    "window mode requires --window-size".into(),
                )),
                _ => Ok(()),
            },
            Mode::Fading => match self.alpha {
                Some(a) if !(a > 0.0 && a <= 1.0) => Err(CliError::Usage(format!(
                    "--alpha must lie in (0, 1], got {a}"
                ))),
                None if !resuming => Err(CliError::Usage("fading mode requires --alpha".into())),
                _ => Ok(()),
            },
            Mode::Exact => Ok(()),
        }
    }
}
