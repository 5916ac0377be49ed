//! Monte Carlo frame-error-rate estimation for adaptive single-trial
//! error/erasure decoding, plus the file formats and CLI around it.
//!
//! A simulation sweep runs a grid of (SNR, strategy) cells. Every frame of
//! every cell owns an RNG stream derived from (seed, snr index, strategy
//! index, frame index), so results are bit-identical regardless of how
//! many worker threads execute the frames or in which order the cells run.

pub mod cli;
pub mod diagnostics;
pub mod format;
pub mod runner;
pub mod seeding;

use std::fmt;
use std::num::ParseIntError;
use std::str::FromStr;

use eedec_core::bch::{BchCode, BchError};
use eedec_core::pgf::{PgfError, DEFAULT_PRECISION};
use eedec_core::strategy::StrategyError;

pub use runner::{run_point, run_sweep, tau_profile, PointResult, TauProfile};

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("{0}")]
    Bch(#[from] BchError),
    #[error("{0}")]
    Pgf(#[from] PgfError),
    #[error("{0}")]
    Strategy(#[from] StrategyError),
    #[error("invalid SNR grid: start {start} dB, stop {stop} dB, step {step} dB")]
    InvalidGrid { start: f64, stop: f64, step: f64 },
    #[error("frames must be at least 1")]
    ZeroFrames,
    #[error("at least one strategy is required")]
    NoStrategies,
    #[error("precision must lie in (0, 1), got {0}")]
    InvalidPrecision(f64),
    #[error("unknown strategy {token:?} (expected errors-only, fixed:<tau>, adaptive-exact or adaptive-approx)")]
    UnknownStrategy { token: String },
    #[error("this operation needs a single (snr, strategy) cell, got {snrs} SNRs x {strategies} strategies")]
    NotSingleCell { snrs: usize, strategies: usize },
    #[error("strategy {0} is not adaptive")]
    StrategyNotAdaptive(StrategyKind),
    #[error("window calibration did not reach precision {precision} within {doublings} doublings (achieved {achieved})")]
    CalibrationDiverged {
        precision: f64,
        doublings: u32,
        achieved: f64,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Stable strategy identifiers: `errors-only`, `fixed:<tau>`,
/// `adaptive-exact`, `adaptive-approx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    ErrorsOnly,
    Fixed(usize),
    AdaptiveExact,
    AdaptiveApprox,
}

impl StrategyKind {
    pub fn is_adaptive(&self) -> bool {
        matches!(self, StrategyKind::AdaptiveExact | StrategyKind::AdaptiveApprox)
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyKind::ErrorsOnly => write!(f, "errors-only"),
            StrategyKind::Fixed(tau) => write!(f, "fixed:{tau}"),
            StrategyKind::AdaptiveExact => write!(f, "adaptive-exact"),
            StrategyKind::AdaptiveApprox => write!(f, "adaptive-approx"),
        }
    }
}

impl FromStr for StrategyKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        let unknown = || SimError::UnknownStrategy {
            token: s.to_string(),
        };
        match s {
            "errors-only" => Ok(StrategyKind::ErrorsOnly),
            "adaptive-exact" => Ok(StrategyKind::AdaptiveExact),
            "adaptive-approx" => Ok(StrategyKind::AdaptiveApprox),
            _ => match s.strip_prefix("fixed:") {
                Some(tau) => tau
                    .parse()
                    .map(StrategyKind::Fixed)
                    .map_err(|_: ParseIntError| unknown()),
                None => Err(unknown()),
            },
        }
    }
}

/// SNR grid in dB: `start, start + step, ...` up to and including `stop`
/// (within a 1e-9 dB tolerance for the float endpoint).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrGrid {
    pub start_db: f64,
    pub stop_db: f64,
    pub step_db: f64,
}

impl SnrGrid {
    pub fn single(snr_db: f64) -> Self {
        SnrGrid {
            start_db: snr_db,
            stop_db: snr_db,
            step_db: 1.0,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.step_db > 0.0
            && self.stop_db >= self.start_db
            && self.start_db.is_finite()
            && self.stop_db.is_finite()
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop_db - self.start_db) / self.step_db + 1e-9) as usize + 1;
        (0..count)
            .map(|i| self.start_db + i as f64 * self.step_db)
            .collect()
    }
}

/// Full description of a simulation run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Field extension degree m (code length is 2^m - 1).
    pub m: u32,
    /// Designed minimum distance of the BCH code.
    pub designed_distance: usize,
    pub snr: SnrGrid,
    pub strategies: Vec<StrategyKind>,
    /// Frames per (snr, strategy) cell.
    pub frames: u64,
    pub seed: u64,
    /// Precision goal driving the approximation window s0.
    pub precision: f64,
    /// Early stop once a cell has seen this many frame errors
    /// (`None` runs all frames; the default is 100). The stop point is
    /// evaluated in frame order, so it does not depend on worker
    /// scheduling.
    pub target_errors: Option<u64>,
    /// Capture wall-clock selection times. Off by default so that
    /// repeated runs produce byte-identical output.
    pub time_selection: bool,
}

impl SimConfig {
    pub fn new(m: u32, designed_distance: usize, snr: SnrGrid) -> Self {
        SimConfig {
            m,
            designed_distance,
            snr,
            strategies: vec![StrategyKind::AdaptiveExact],
            frames: 1000,
            seed: 0,
            precision: DEFAULT_PRECISION,
            target_errors: Some(100),
            time_selection: false,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.frames == 0 {
            return Err(SimError::ZeroFrames);
        }
        if self.strategies.is_empty() {
            return Err(SimError::NoStrategies);
        }
        if !self.snr.is_valid() {
            return Err(SimError::InvalidGrid {
                start: self.snr.start_db,
                stop: self.snr.stop_db,
                step: self.snr.step_db,
            });
        }
        if !(self.precision > 0.0 && self.precision < 1.0) {
            return Err(SimError::InvalidPrecision(self.precision));
        }
        self.build_code().map(|_| ())
    }

    pub fn build_code(&self) -> Result<BchCode, SimError> {
        Ok(BchCode::new(self.m, self.designed_distance)?)
    }
}
