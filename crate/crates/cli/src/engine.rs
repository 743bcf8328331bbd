use impurity_core::{
    ClassCounts, ClassId, FadingEstimator, LabelInterner, Metrics, SlidingWindowEstimator,
};

use crate::config::{Mode, RunConfig};
use crate::error::{CliError, Result};

/// The estimator driven by a run.
#[derive(Debug, Clone, PartialEq)]
pub enum Engine {
    Window(SlidingWindowEstimator),
    Fading(FadingEstimator),
    /// Unbounded counts; metrics are evaluated from scratch when read.
    Exact(ClassCounts),
}

impl Engine {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        let engine = match cfg.mode {
            Mode::Window => {
                let w = cfg
                    .window_size
                    .ok_or_else(|| CliError::Usage("window mode requires --window-size".into()))?;
                Engine::Window(
                    SlidingWindowEstimator::new(w, cfg.refresh_period)
                        .map_err(|e| CliError::Usage(e.to_string()))?,
                )
            }
            Mode::Fading => {
                let alpha = cfg
                    .alpha
                    .ok_or_else(|| CliError::Usage("fading mode requires --alpha".into()))?;
                Engine::Fading(
                    FadingEstimator::new(alpha).map_err(|e| CliError::Usage(e.to_string()))?,
                )
            }
            Mode::Exact => Engine::Exact(ClassCounts::new()),
        };
        Ok(engine)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Engine::Window(_) => Mode::Window,
            Engine::Fading(_) => Mode::Fading,
            Engine::Exact(_) => Mode::Exact,
        }
    }

    pub fn observe(&mut self, class: ClassId) {
        match self {
            Engine::Window(est) => est.observe(class),
            Engine::Fading(est) => est.observe(class),
            Engine::Exact(counts) => {
                counts.increment(class);
            }
        }
    }

    pub fn metrics(&self) -> Metrics {
        match self {
            Engine::Window(est) => est.metrics(),
            Engine::Fading(est) => est.metrics(),
            Engine::Exact(counts) => Metrics::from_counts(counts),
        }
    }
}

/// Everything needed to continue a stream: the estimator, the label table
/// and the number of events consumed so far.
#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub engine: Engine,
    pub interner: LabelInterner,
    pub events: u64,
}

impl Session {
    pub fn new(engine: Engine) -> Self {
        Session {
            engine,
            interner: LabelInterner::new(),
            events: 0,
        }
    }

    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        Ok(Self::new(Engine::from_config(cfg)?))
    }

    /// Rejects a loaded session whose estimator parameters conflict with the
    /// ones given on the command line. The mode itself is checked on load.
    pub fn check_compatible(&self, cfg: &RunConfig) -> Result<()> {
        match &self.engine {
            Engine::Window(est) => {
                if cfg.window_size.is_some_and(|w| w != est.capacity()) {
                    return Err(CliError::Usage(format!(
                        "--window-size conflicts with snapshot window size {}",
                        est.capacity()
                    )));
                }
            }
            Engine::Fading(est) => {
                if cfg.alpha.is_some_and(|a| a != est.alpha()) {
                    return Err(CliError::Usage(format!(
                        "--alpha conflicts with snapshot alpha {}",
                        est.alpha()
                    )));
                }
            }
            Engine::Exact(_) => {}
        }
        Ok(())
    }
}
