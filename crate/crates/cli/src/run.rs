use std::io::{BufRead, Write};

use impurity_core::Metrics;
use log::debug;

use crate::config::{MetricSelect, RunConfig};
use crate::engine::Session;
use crate::error::{CliError, Result};
use crate::record::parse_record;

/// Statistics reported once the input is exhausted.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    /// Events consumed by this run.
    pub events: u64,
    /// Events consumed over the session, including restored history.
    pub total_events: u64,
    pub distinct_classes: usize,
    pub metrics: Metrics,
    pub rows: u64,
}

/// Formats one output row: `index<TAB>gini<TAB>entropy`, 9 decimals.
pub fn format_row(index: u64, metrics: Metrics, select: MetricSelect) -> String {
    // adding 0.0 turns -0.0 into 0.0
    let metrics = Metrics {
        gini: metrics.gini + 0.0,
        entropy: metrics.entropy + 0.0,
    };
    match select {
        MetricSelect::Both => format!("{index}\t{:.9}\t{:.9}", metrics.gini, metrics.entropy),
        MetricSelect::Gini => format!("{index}\t{:.9}", metrics.gini),
        MetricSelect::Entropy => format!("{index}\t{:.9}", metrics.entropy),
    }
}

/// Feeds every line of `input` through the session's estimator, writing a
/// row every `emit_every` events (counted over the whole session) and a
/// final row for the last event if it was not already emitted.
pub fn run_stream<R: BufRead, W: Write>(
    cfg: &RunConfig,
    session: &mut Session,
    input: R,
    mut output: W,
) -> Result<RunSummary> {
    let mut consumed = 0u64;
    let mut rows = 0u64;
    let mut last_emitted = None;

    for (line_no, line) in input.lines().enumerate() {
        let line = line?;
        let index = session.events;
        let record = parse_record(&line, cfg.format, index, &mut session.interner).map_err(
            |message| CliError::Record {
                line: line_no as u64 + 1,
                message,
            },
        )?;
        session.engine.observe(record.label);
        session.events += 1;
        consumed += 1;

        if session.events.is_multiple_of(cfg.emit_every) {
            writeln!(output, "{}", format_row(index, session.engine.metrics(), cfg.metric))?;
            rows += 1;
            last_emitted = Some(index);
        }
    }

    let metrics = session.engine.metrics();
    if consumed > 0 {
        let last = session.events - 1;
        if last_emitted != Some(last) {
            writeln!(output, "{}", format_row(last, metrics, cfg.metric))?;
            rows += 1;
        }
    }
    output.flush()?;
    debug!("wrote {rows} rows");

    Ok(RunSummary {
        events: consumed,
        total_events: session.events,
        distinct_classes: session.interner.len(),
        metrics,
        rows,
    })
}
