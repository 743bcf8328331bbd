use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, LevelFilter};

use impurity_stream::bench::{self, BenchConfig, BenchMode, REPORT_HEADER};
use impurity_stream::{
    run_stream, snapshot, CliError, InputFormat, MetricSelect, Mode, Result, RunConfig, Session,
};

const LOG_ENV: &str = "IMPURITY_STREAM_LOG";

#[derive(Parser)]
#[command(name = "impurity-stream", version, about = "Streaming Gini index and entropy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute metric traces over a labeled stream.
    Run(RunArgs),
    /// Time incremental updates against full recomputation.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Window,
    Fading,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Gini,
    Entropy,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Lines,
    Csv,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "both")]
    metric: MetricArg,
    #[arg(long)]
    window_size: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Recompute window metrics exactly every R events (0 disables).
    #[arg(long, default_value_t = 0)]
    refresh_every: u64,
    #[arg(long, default_value_t = 1)]
    emit_every: u64,
    #[arg(long, value_enum, default_value = "lines")]
    format: FormatArg,
    /// Label column for csv input (0-based).
    #[arg(long, default_value_t = 0)]
    column: usize,
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value = "-")]
    output: String,
    #[arg(long)]
    save_state: Option<PathBuf>,
    #[arg(long)]
    load_state: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    classes: usize,
    #[arg(long)]
    events: usize,
    /// Incremental estimators to time.
    #[arg(long, value_delimiter = ',', default_value = "window,fading")]
    modes: Vec<String>,
    #[arg(long, default_value_t = 1_000)]
    window_size: usize,
    #[arg(long, default_value_t = 0.99)]
    alpha: f64,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            mode: match self.mode {
                ModeArg::Window => Mode::Window,
                ModeArg::Fading => Mode::Fading,
                ModeArg::Exact => Mode::Exact,
            },
            metric: match self.metric {
                MetricArg::Gini => MetricSelect::Gini,
                MetricArg::Entropy => MetricSelect::Entropy,
                MetricArg::Both => MetricSelect::Both,
            },
            window_size: self.window_size,
            alpha: self.alpha,
            refresh_period: self.refresh_every,
            emit_every: self.emit_every,
            format: match self.format {
                FormatArg::Lines => InputFormat::Lines,
                FormatArg::Csv => InputFormat::Csv {
                    column: self.column,
                },
            },
        }
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>> {
    if path == "-" {
        Ok(Box::new(io::stdin().lock()))
    } else {
        let file = File::open(path)
            .map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("{path}: {e}"))))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

fn open_output(path: &str) -> Result<Box<dyn Write>> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file = File::create(path)
            .map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("{path}: {e}"))))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn run(args: RunArgs) -> Result<()> {
    let cfg = args.config();
    cfg.validate(args.load_state.is_some())?;
    let mut session = match &args.load_state {
        Some(path) => {
            let session = snapshot::load(path, cfg.mode)?;
            session.check_compatible(&cfg)?;
            info!("resuming from {} after {} events", path.display(), session.events);
            session
        }
        None => Session::from_config(&cfg)?,
    };

    let input = open_input(&args.input)?;
    let output = open_output(&args.output)?;
    let summary = run_stream(&cfg, &mut session, input, output)?;

    info!(
        "events={} total_events={} classes={} gini={:.9} entropy={:.9}",
        summary.events,
        summary.total_events,
        summary.distinct_classes,
        summary.metrics.gini,
        summary.metrics.entropy
    );
    if let Some(path) = &args.save_state {
        snapshot::save(&session, path)?;
        info!("saved state to {}", path.display());
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let modes = args
        .modes
        .iter()
        .map(|m| m.parse::<BenchMode>().map_err(CliError::Usage))
        .collect::<Result<Vec<_>>>()?;
    let cfg = BenchConfig {
        modes,
        window_size: args.window_size,
        alpha: args.alpha,
        repeats: args.repeats,
        ..BenchConfig::new(args.classes, args.events)
    };
    let rows = bench::bench(&cfg)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{REPORT_HEADER}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn init_logging() {
    let level = match std::env::var(LOG_ENV).as_deref() {
        Ok("quiet") => LevelFilter::Off,
        Ok("debug") => LevelFilter::Debug,
        _ => LevelFilter::Info,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .format_target(false)
        .init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("impurity-stream: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
