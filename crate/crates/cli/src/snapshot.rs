//! Versioned text snapshots of a [`Session`].
//!
//! ```text
//! impurity-stream-snapshot 1
//! mode window
//! events 3
//! labels 2
//! label a
//! label b
//! capacity 2
//! refresh-period 0
//! events-since-refresh 0
//! gini 0x1p+1 0x1p-1
//! entropy 0x1p+1 0x1p+0
//! window 2
//! 1
//! 0
//! end
//! ```
//!
//! Floating-point fields are hexadecimal float literals so that a restored
//! estimator continues bit-for-bit. Fading and exact snapshots replace the
//! window section with `alpha`/`gini`/`entropy` scalars and a `counts` list.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use impurity_core::{
    ClassCounts, ClassId, EntropyState, FadingEstimator, GiniState, LabelInterner,
    SlidingWindowEstimator,
};

use crate::config::Mode;
use crate::engine::{Engine, Session};
use crate::error::{CliError, Result};
use crate::hexfloat;

pub const MAGIC: &str = "impurity-stream-snapshot";
pub const VERSION: u32 = 1;

pub fn encode(session: &Session) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("{MAGIC} {VERSION}"));
    line(format!("mode {}", session.engine.mode()));
    line(format!("events {}", session.events));
    line(format!("labels {}", session.interner.len()));
    for label in session.interner.labels() {
        line(format!("label {label}"));
    }
    match &session.engine {
        Engine::Window(est) => {
            line(format!("capacity {}", est.capacity()));
            line(format!("refresh-period {}", est.refresh_period()));
            line(format!("events-since-refresh {}", est.events_since_refresh()));
            let g = est.gini_state();
            let h = est.entropy_state();
            line(format!(
                "gini {} {}",
                hexfloat::format(g.total()),
                hexfloat::format(g.raw_value())
            ));
            line(format!(
                "entropy {} {}",
                hexfloat::format(h.total()),
                hexfloat::format(h.raw_value())
            ));
            let mut window = format!("window {}\n", est.len());
            for class in est.window() {
                let _ = writeln!(window, "{}", class.index());
            }
            window.pop();
            line(window);
        }
        Engine::Fading(est) => {
            line(format!("alpha {}", hexfloat::format(est.alpha())));
            line(format!("gini {}", hexfloat::format(est.raw_gini())));
            line(format!("entropy {}", hexfloat::format(est.raw_entropy())));
            let counts: Vec<(usize, u64)> = est
                .class_counts()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i, c))
                .collect();
            line(format!("counts {}", counts.len()));
            for (i, c) in counts {
                line(format!("count {i} {c}"));
            }
        }
        Engine::Exact(counts) => {
            line(format!("counts {}", counts.num_classes()));
            for (class, c) in counts.iter() {
                line(format!("count {} {}", class.index(), c as u64));
            }
        }
    }
    line("end".into());
    out
}

pub fn save(session: &Session, path: &Path) -> Result<()> {
    fs::write(path, encode(session))
        .map_err(|e| CliError::snapshot(path, format!("cannot write: {e}")))
}

/// Loads a snapshot, requiring it to hold an estimator of `expected` mode.
pub fn load(path: &Path, expected: Mode) -> Result<Session> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::snapshot(path, format!("cannot read: {e}")))?;
    let session = decode(&text).map_err(|m| CliError::snapshot(path, m))?;
    if session.engine.mode() != expected {
        return Err(CliError::snapshot(
            path,
            format!(
                "holds a {} estimator but mode {} was requested",
                session.engine.mode(),
                expected
            ),
        ));
    }
    Ok(session)
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Result<(usize, &'a str), String> {
        self.inner
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| "unexpected end of file".to_string())
    }

    /// Reads a `key value` line and returns `value`.
    fn field(&mut self, key: &str) -> Result<&'a str, String> {
        let (n, line) = self.next_line()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .ok_or_else(|| format!("line {n}: expected `{key} ...`, found `{line}`"))
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, String> {
        let raw = self.field(key)?;
        raw.parse()
            .map_err(|_| format!("invalid value `{raw}` for `{key}`"))
    }

    fn float(&mut self, key: &str) -> Result<f64, String> {
        let raw = self.field(key)?;
        parse_float(raw)
    }

    fn float_pair(&mut self, key: &str) -> Result<(f64, f64), String> {
        let raw = self.field(key)?;
        let (a, b) = raw
            .split_once(' ')
            .ok_or_else(|| format!("`{key}` needs two values"))?;
        Ok((parse_float(a)?, parse_float(b)?))
    }
}

fn parse_float(raw: &str) -> Result<f64, String> {
    hexfloat::parse(raw).ok_or_else(|| format!("invalid hexadecimal float `{raw}`"))
}

fn class_id(raw: &str, labels: usize) -> Result<ClassId, String> {
    let idx: u32 = raw
        .parse()
        .map_err(|_| format!("invalid class id `{raw}`"))?;
    if idx as usize >= labels {
        return Err(format!("class id {idx} has no label"));
    }
    Ok(ClassId::new(idx))
}

fn read_counts(lines: &mut Lines<'_>, labels: usize) -> Result<Vec<(ClassId, u64)>, String> {
    let n: usize = lines.number("counts")?;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let raw = lines.field("count")?;
        let (id, c) = raw
            .split_once(' ')
            .ok_or_else(|| format!("malformed count entry `{raw}`"))?;
        let id = class_id(id, labels)?;
        let c: u64 = c.parse().map_err(|_| format!("invalid count `{c}`"))?;
        if c == 0 || out.iter().any(|&(seen, _)| seen == id) {
            return Err(format!("invalid count entry `{raw}`"));
        }
        out.push((id, c));
    }
    Ok(out)
}

pub fn decode(text: &str) -> Result<Session, String> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let version: u32 = lines.number(MAGIC)?;
    if version != VERSION {
        return Err(format!("unsupported snapshot version {version}"));
    }
    let mode: Mode = lines.field("mode")?.parse()?;
    let events: u64 = lines.number("events")?;
    let n_labels: usize = lines.number("labels")?;
    let mut labels = Vec::with_capacity(n_labels);
    for _ in 0..n_labels {
        labels.push(lines.field("label")?.to_owned());
    }
    let interner =
        LabelInterner::from_labels(labels).ok_or_else(|| "duplicate label".to_string())?;

    let engine = match mode {
        Mode::Window => {
            let capacity: usize = lines.number("capacity")?;
            let refresh: u64 = lines.number("refresh-period")?;
            let since: u64 = lines.number("events-since-refresh")?;
            let (gt, gv) = lines.float_pair("gini")?;
            let (ht, hv) = lines.float_pair("entropy")?;
            let len: usize = lines.number("window")?;
            let mut window = Vec::with_capacity(len.min(capacity));
            for _ in 0..len {
                let (_, raw) = lines.next_line()?;
                window.push(class_id(raw, n_labels)?);
            }
            let est = SlidingWindowEstimator::from_parts(
                capacity,
                refresh,
                since,
                window,
                GiniState::from_raw(gt, gv),
                EntropyState::from_raw(ht, hv),
            )
            .map_err(|e| e.to_string())?;
            Engine::Window(est)
        }
        Mode::Fading => {
            let alpha = lines.float("alpha")?;
            let g = lines.float("gini")?;
            let h = lines.float("entropy")?;
            let mut counts = vec![0u64; n_labels];
            for (id, c) in read_counts(&mut lines, n_labels)? {
                counts[id.index()] = c;
            }
            Engine::Fading(FadingEstimator::from_parts(alpha, counts, g, h).map_err(|e| e.to_string())?)
        }
        Mode::Exact => {
            let counts = read_counts(&mut lines, n_labels)?;
            let counts = ClassCounts::from_pairs(counts.into_iter().map(|(id, c)| (id, c as f64)))
                .map_err(|e| e.to_string())?;
            Engine::Exact(counts)
        }
    };

    let (n, last) = lines.next_line()?;
    if last != "end" {
        return Err(format!("line {n}: expected `end`, found `{last}`"));
    }
    if let Some((n, extra)) = lines.inner.next() {
        return Err(format!("line {}: trailing content `{extra}`", n + 1));
    }
    Ok(Session {
        engine,
        interner,
        events,
    })
}
