//! Command-line interface: `decode`, `simulate`, `tau-profile`, `code-info`.
//!
//! Exit codes: 0 success, 1 usage/configuration error, 2 decode failure
//! (decode subcommand only). All results go to stdout; progress and
//! errors go to stderr, so stdout is byte-stable under a fixed seed.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eedec_core::bch::{word_to_string, BchCode};
use eedec_core::channel::{hard_decide, Awgn, SoftFrame};
use eedec_core::pgf::{hoeffding_window, DEFAULT_PRECISION};
use eedec_core::strategy::{build_profile, erase_and_decode, erase_most_unreliable, ErasingMode};

use crate::format::{fmt_float, write_csv, write_json, write_tau_profile_json, write_tau_profile_text};
use crate::runner::{run_sweep_with, tau_profile};
use crate::{SimConfig, SimError, SnrGrid, StrategyKind};

#[derive(Debug)]
enum CliError {
    Usage(String),
    Sim(SimError),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Sim(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Sim(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Parser)]
#[command(
    name = "eedec",
    version,
    about = "Adaptive single-trial error/erasure decoding of binary BCH codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode one received frame (a file of n whitespace-separated reals)
    Decode(DecodeArgs),
    /// Monte Carlo frame-error-rate sweep over an SNR grid
    Simulate(SimulateArgs),
    /// Distribution of the chosen erasure count at one SNR
    TauProfile(TauProfileArgs),
    /// Print code parameters and the generator polynomial
    CodeInfo(CodeInfoArgs),
}

#[derive(Clone, Copy, Debug)]
struct CodeParam {
    m: u32,
    d: usize,
}

fn parse_code(s: &str) -> Result<CodeParam, String> {
    let (m, d) = s
        .split_once(',')
        .ok_or_else(|| format!("expected m,d (e.g. 5,7), got {s:?}"))?;
    Ok(CodeParam {
        m: m.trim().parse().map_err(|e| format!("bad m: {e}"))?,
        d: d.trim().parse().map_err(|e| format!("bad d: {e}"))?,
    })
}

fn parse_grid(s: &str) -> Result<SnrGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:step in dB, got {s:?}"));
    }
    let parse = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad value {p:?}: {e}"));
    Ok(SnrGrid {
        start_db: parse(parts[0])?,
        stop_db: parse(parts[1])?,
        step_db: parse(parts[2])?,
    })
}

fn parse_strategy(s: &str) -> Result<StrategyKind, String> {
    StrategyKind::from_str(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct DecodeArgs {
    /// File with n whitespace-separated real received values
    input: PathBuf,
    /// Code parameters m,d (length 2^m - 1, designed distance d)
    #[arg(long, value_parser = parse_code, value_name = "M,D")]
    code: CodeParam,
    /// Channel SNR in dB (exclusive with --sigma)
    #[arg(long, value_name = "DB")]
    snr_db: Option<f64>,
    /// Channel noise standard deviation (exclusive with --snr-db)
    #[arg(long, value_name = "SIGMA")]
    sigma: Option<f64>,
    /// Decoding strategy (exactly one)
    #[arg(
        long,
        value_parser = parse_strategy,
        value_delimiter = ',',
        default_value = "adaptive-exact"
    )]
    strategies: Vec<StrategyKind>,
    /// Precision goal for the approximation window
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: f64,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_parser = parse_code, value_name = "M,D")]
    code: CodeParam,
    /// SNR grid start:stop:step in dB
    #[arg(long, value_parser = parse_grid, value_name = "START:STOP:STEP")]
    snr: SnrGrid,
    /// Comma-separated strategies (errors-only, fixed:<tau>,
    /// adaptive-exact, adaptive-approx)
    #[arg(long, value_parser = parse_strategy, value_delimiter = ',', required = true)]
    strategies: Vec<StrategyKind>,
    /// Frames per (snr, strategy) point
    #[arg(long, default_value_t = 10_000)]
    frames: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: f64,
    /// Stop a point early after this many frame errors (0 disables)
    #[arg(long, default_value_t = 100, value_name = "N")]
    target_errors: u64,
    /// Capture wall-clock selection times (makes output timing-dependent)
    #[arg(long)]
    timing: bool,
    /// Write results here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct TauProfileArgs {
    #[arg(long, value_parser = parse_code, value_name = "M,D")]
    code: CodeParam,
    #[arg(long, value_name = "DB")]
    snr_db: f64,
    /// One adaptive strategy
    #[arg(long, value_parser = parse_strategy, value_delimiter = ',', required = true)]
    strategies: Vec<StrategyKind>,
    #[arg(long, default_value_t = 10_000)]
    frames: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: f64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct CodeInfoArgs {
    #[arg(long, value_parser = parse_code, value_name = "M,D")]
    code: CodeParam,
}

/// Runs the CLI against explicit argument and output streams; returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version as "errors" too; those exit 0.
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 1;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    let result = match cli.command {
        Command::Decode(args) => cmd_decode(args, out),
        Command::Simulate(args) => cmd_simulate(args, out, err),
        Command::TauProfile(args) => cmd_tau_profile(args, out),
        Command::CodeInfo(args) => cmd_code_info(args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn cmd_decode(args: DecodeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let channel = match (args.sigma, args.snr_db) {
        (Some(sigma), None) => Awgn::new(sigma)
            .map_err(|e| CliError::Usage(e.to_string()))?,
        (None, Some(snr_db)) => Awgn::from_snr_db(snr_db),
        _ => {
            return Err(CliError::Usage(
                "exactly one of --sigma and --snr-db is required".into(),
            ))
        }
    };
    if args.strategies.len() != 1 {
        return Err(CliError::Usage(format!(
            "decode needs exactly one strategy, got {}",
            args.strategies.len()
        )));
    }
    let code = BchCode::new(args.code.m, args.code.d).map_err(SimError::from)?;
    let mode = resolve_mode(args.strategies[0], &code, args.precision)?;

    let text = fs::read_to_string(&args.input)?;
    let mut values = Vec::new();
    for token in text.split_whitespace() {
        values.push(token.parse::<f64>().map_err(|e| {
            CliError::Usage(format!("bad received value {token:?}: {e}"))
        })?);
    }
    if values.len() != code.n() {
        return Err(CliError::Usage(format!(
            "expected {} received values, got {}",
            code.n(),
            values.len()
        )));
    }
    let frame = SoftFrame::new(values).map_err(|e| CliError::Usage(e.to_string()))?;

    let result = erase_and_decode(&frame, &channel, &code, mode).map_err(SimError::from)?;
    let profile = build_profile(&frame, &channel);
    let bits: Vec<u8> = frame.values().iter().map(|&y| hard_decide(y)).collect();
    let erased = erase_most_unreliable(&profile, &bits, result.tau_star);

    writeln!(out, "strategy={}", args.strategies[0])?;
    writeln!(out, "tau_star={}", result.tau_star)?;
    writeln!(out, "residual={}", fmt_float(result.residual))?;
    writeln!(out, "erased={}", word_to_string(&erased))?;
    match result.outcome.codeword() {
        Some(codeword) => {
            let info: String = code.info_bits(codeword).iter().map(|b| (b + b'0') as char).collect();
            writeln!(out, "info={info}")?;
            Ok(0)
        }
        None => {
            writeln!(out, "info=FAIL")?;
            Ok(2)
        }
    }
}

fn resolve_mode(
    kind: StrategyKind,
    code: &BchCode,
    precision: f64,
) -> Result<ErasingMode, CliError> {
    Ok(match kind {
        StrategyKind::ErrorsOnly => ErasingMode::ErrorsOnly,
        StrategyKind::Fixed(tau) => {
            if tau > code.d_min() - 1 {
                return Err(CliError::Usage(format!(
                    "fixed erasure count {tau} exceeds d_min - 1 = {}",
                    code.d_min() - 1
                )));
            }
            ErasingMode::Fixed(tau)
        }
        StrategyKind::AdaptiveExact => ErasingMode::AdaptiveExact,
        StrategyKind::AdaptiveApprox => ErasingMode::AdaptiveApprox {
            s0: hoeffding_window(code.n(), precision).map_err(SimError::from)?,
        },
    })
}

fn cmd_simulate(
    args: SimulateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let cfg = SimConfig {
        m: args.code.m,
        designed_distance: args.code.d,
        snr: args.snr,
        strategies: args.strategies,
        frames: args.frames,
        seed: args.seed,
        precision: args.precision,
        target_errors: (args.target_errors > 0).then_some(args.target_errors),
        time_selection: args.timing,
    };
    cfg.validate()?;
    let total = cfg.snr.points().len() * cfg.strategies.len();
    let mut done = 0usize;
    let rows = run_sweep_with(&cfg, |point| {
        done += 1;
        let _ = writeln!(
            err,
            "[{done}/{total}] snr={} dB strategy={} fer={:.3e} ({}/{} frames)",
            point.snr_db, point.strategy, point.fer, point.frame_errors, point.frames
        );
    })?;
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(&mut *out),
    };
    match args.format {
        OutputFormat::Csv => write_csv(&rows, &mut sink)?,
        OutputFormat::Json => write_json(&rows, &mut sink)?,
    }
    Ok(0)
}

fn cmd_tau_profile(args: TauProfileArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut cfg = SimConfig::new(args.code.m, args.code.d, SnrGrid::single(args.snr_db));
    cfg.strategies = args.strategies;
    cfg.frames = args.frames;
    cfg.seed = args.seed;
    cfg.precision = args.precision;
    let profile = tau_profile(&cfg)?;
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(&mut *out),
    };
    match args.format {
        OutputFormat::Csv => write_tau_profile_text(&profile, &mut sink)?,
        OutputFormat::Json => write_tau_profile_json(&profile, &mut sink)?,
    }
    Ok(0)
}

fn cmd_code_info(args: CodeInfoArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let code = BchCode::new(args.code.m, args.code.d).map_err(SimError::from)?;
    writeln!(out, "n={} k={} d={}", code.n(), code.k(), code.d_min())?;
    writeln!(out, "generator={}", code.generator())?;
    Ok(0)
}
