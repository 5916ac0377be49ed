//! Frame-error-rate simulation over (SNR, strategy) grids.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use eedec_core::bch::{BchCode, DecodeOutcome};
use eedec_core::channel::{hard_decide, transmit, Awgn};
use eedec_core::pgf::hoeffding_window;
use eedec_core::strategy::{
    build_profile, erase_most_unreliable, select_tau_approx, select_tau_exact,
};

use crate::seeding::frame_seed;
use crate::{SimConfig, SimError, StrategyKind};

/// 97.5% quantile of the standard normal, for 95% Wilson intervals.
const Z95: f64 = 1.959963984540054;

/// Frames are simulated in fixed-size chunks; the early-stop point is
/// located by scanning each chunk in frame order, which keeps results
/// independent of worker scheduling.
const CHUNK_FRAMES: u64 = 1024;

/// Aggregated results of one (snr, strategy) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub snr_db: f64,
    pub strategy: StrategyKind,
    /// Frames actually simulated (early stop may cut the budget short).
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_tau_star: f64,
    /// Count of chosen tau per value, indexed 0..d_min.
    pub tau_histogram: Vec<u64>,
    /// Mean wall-clock time of the tau selection sweep per frame
    /// (0 unless the config enables timing).
    pub mean_select_seconds: f64,
}

/// Empirical distribution of the chosen erasure count at one SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct TauProfile {
    pub snr_db: f64,
    pub strategy: StrategyKind,
    pub frames: u64,
    pub histogram: Vec<u64>,
    pub mean_tau_star: f64,
    /// Smallest tau attaining the highest count.
    pub mode_tau_star: usize,
}

struct FrameRecord {
    error: bool,
    tau_star: u16,
    select_seconds: f64,
}

/// 95% Wilson score interval for `errors` out of `frames`; behaves
/// correctly at zero observed errors.
pub fn wilson_interval(errors: u64, frames: u64) -> (f64, f64) {
    if frames == 0 {
        return (0.0, 1.0);
    }
    let n = frames as f64;
    let p = errors as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // The analytic bounds are exactly 0 at p = 0 and 1 at p = 1; pin them
    // so rounding never pushes an endpoint past the point estimate.
    let low = if errors == 0 {
        0.0
    } else {
        ((center - half) / denom).clamp(0.0, p)
    };
    let high = if errors == frames {
        1.0
    } else {
        ((center + half) / denom).clamp(p, 1.0)
    };
    (low, high)
}

fn simulate_frame(
    code: &BchCode,
    channel: &Awgn,
    strategy: StrategyKind,
    s0: usize,
    time_selection: bool,
    stream_seed: u64,
) -> FrameRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
    let info: Vec<u8> = (0..code.k()).map(|_| rng.gen_range(0..=1)).collect();
    let codeword = code.encode(&info).expect("info has length k");
    let frame = transmit(&codeword, channel, &mut rng);

    let profile = build_profile(&frame, channel);
    let d_min = code.d_min();
    let lambda = code.capability().lambda();

    let started = time_selection.then(Instant::now);
    let tau_star = match strategy {
        StrategyKind::ErrorsOnly => 0,
        StrategyKind::Fixed(tau) => tau, // run_cell validated tau <= d_min - 1
        StrategyKind::AdaptiveExact => {
            select_tau_exact(&profile, d_min, lambda)
                .expect("profile and code are consistent")
                .0
        }
        StrategyKind::AdaptiveApprox => {
            select_tau_approx(&profile, d_min, lambda, s0)
                .expect("profile and code are consistent")
                .0
        }
    };
    let select_seconds = started.map_or(0.0, |t| t.elapsed().as_secs_f64());

    let bits: Vec<u8> = frame.values().iter().map(|&y| hard_decide(y)).collect();
    let erased = erase_most_unreliable(&profile, &bits, tau_star);
    let outcome = code.decode_ee(&erased).expect("tau_star <= d_min - 1");
    // Failures and miscorrections both count as frame errors.
    let error = match outcome {
        DecodeOutcome::Decoded(word) => word != codeword,
        DecodeOutcome::Failure => true,
    };
    FrameRecord {
        error,
        tau_star: tau_star as u16,
        select_seconds,
    }
}

fn run_cell(
    cfg: &SimConfig,
    code: &BchCode,
    snr_db: f64,
    snr_index: u64,
    strategy_index: u64,
    strategy: StrategyKind,
) -> Result<PointResult, SimError> {
    if let StrategyKind::Fixed(tau) = strategy {
        if tau > code.d_min() - 1 {
            return Err(SimError::Strategy(
                eedec_core::strategy::StrategyError::FixedTauOutOfRange {
                    tau,
                    max: code.d_min() - 1,
                },
            ));
        }
    }
    let channel = Awgn::from_snr_db(snr_db);
    let s0 = hoeffding_window(code.n(), cfg.precision)?;

    let mut records: Vec<FrameRecord> = Vec::new();
    let mut errors_so_far = 0u64;
    let mut next_frame = 0u64;
    'frames: while next_frame < cfg.frames {
        let count = CHUNK_FRAMES.min(cfg.frames - next_frame);
        let chunk: Vec<FrameRecord> = (0..count)
            .into_par_iter()
            .map(|offset| {
                let stream = frame_seed(cfg.seed, snr_index, strategy_index, next_frame + offset);
                simulate_frame(code, &channel, strategy, s0, cfg.time_selection, stream)
            })
            .collect();
        next_frame += count;
        for record in chunk {
            errors_so_far += record.error as u64;
            records.push(record);
            if cfg.target_errors.is_some_and(|t| errors_so_far >= t) {
                break 'frames;
            }
        }
    }

    let frames = records.len() as u64;
    let frame_errors = records.iter().filter(|r| r.error).count() as u64;
    let fer = frame_errors as f64 / frames as f64;
    let (ci_low, ci_high) = wilson_interval(frame_errors, frames);
    let mut tau_histogram = vec![0u64; code.d_min()];
    let mut tau_sum = 0u64;
    let mut select_sum = 0.0;
    for record in &records {
        tau_histogram[record.tau_star as usize] += 1;
        tau_sum += record.tau_star as u64;
        select_sum += record.select_seconds;
    }
    Ok(PointResult {
        snr_db,
        strategy,
        frames,
        frame_errors,
        fer,
        ci_low,
        ci_high,
        mean_tau_star: tau_sum as f64 / frames as f64,
        tau_histogram,
        mean_select_seconds: select_sum / frames as f64,
    })
}

/// Runs the full (SNR x strategy) grid, SNR-major. Each cell derives its
/// frame seeds from the cell's grid position, so rows do not depend on
/// execution order.
pub fn run_sweep(cfg: &SimConfig) -> Result<Vec<PointResult>, SimError> {
    run_sweep_with(cfg, |_| {})
}

/// [`run_sweep`] with a callback invoked after every finished cell
/// (progress reporting).
pub fn run_sweep_with<F: FnMut(&PointResult)>(
    cfg: &SimConfig,
    mut on_point: F,
) -> Result<Vec<PointResult>, SimError> {
    cfg.validate()?;
    let code = cfg.build_code()?;
    let mut rows = Vec::new();
    for (snr_index, snr_db) in cfg.snr.points().into_iter().enumerate() {
        for (strategy_index, &strategy) in cfg.strategies.iter().enumerate() {
            let row = run_cell(
                cfg,
                &code,
                snr_db,
                snr_index as u64,
                strategy_index as u64,
                strategy,
            )?;
            on_point(&row);
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Simulates a config restricted to exactly one (snr, strategy) cell.
pub fn run_point(cfg: &SimConfig) -> Result<PointResult, SimError> {
    cfg.validate()?;
    let snrs = cfg.snr.points();
    if snrs.len() != 1 || cfg.strategies.len() != 1 {
        return Err(SimError::NotSingleCell {
            snrs: snrs.len(),
            strategies: cfg.strategies.len(),
        });
    }
    let code = cfg.build_code()?;
    run_cell(cfg, &code, snrs[0], 0, 0, cfg.strategies[0])
}

/// Distribution of the chosen erasure count for an adaptive strategy at
/// one SNR. Runs the full frame budget (no early stop), so the histogram
/// sums to `cfg.frames`.
pub fn tau_profile(cfg: &SimConfig) -> Result<TauProfile, SimError> {
    cfg.validate()?;
    let snrs = cfg.snr.points();
    if snrs.len() != 1 || cfg.strategies.len() != 1 {
        return Err(SimError::NotSingleCell {
            snrs: snrs.len(),
            strategies: cfg.strategies.len(),
        });
    }
    let strategy = cfg.strategies[0];
    if !strategy.is_adaptive() {
        return Err(SimError::StrategyNotAdaptive(strategy));
    }
    let mut full = cfg.clone();
    full.target_errors = None;
    let point = run_point(&full)?;
    let mode_tau_star = point
        .tau_histogram
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.cmp(b).then(ib.cmp(ia)))
        .map(|(tau, _)| tau)
        .unwrap_or(0);
    Ok(TauProfile {
        snr_db: point.snr_db,
        strategy,
        frames: point.frames,
        histogram: point.tau_histogram,
        mean_tau_star: point.mean_tau_star,
        mode_tau_star,
    })
}
