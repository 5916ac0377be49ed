//! Validation of the windowed approximation against the exact sweep.
//!
//! The Hoeffding-style window formula can undershoot at low SNR (its
//! derivation over-promises; the measured tail mass is what counts), so
//! this module measures the achieved |approx - exact| on a batch of
//! simulated frames and, when asked, widens the window by doubling until
//! the precision goal is met. The widening is a diagnostic: nothing in the
//! simulator engages it unless explicitly requested.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eedec_core::bch::BchCode;
use eedec_core::channel::{transmit, Awgn};
use eedec_core::pgf::hoeffding_window;
use eedec_core::strategy::{build_profile, select_tau_approx, select_tau_exact};

use crate::seeding::mix64;
use crate::SimError;

/// Outcome of a window calibration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowCalibration {
    /// Window from the closed-form formula.
    pub formula_s0: usize,
    /// Achieved max |approx - exact| with the formula window.
    pub formula_error: f64,
    /// Smallest doubled window meeting the precision goal.
    pub s0: usize,
    /// Achieved error at that window.
    pub achieved: f64,
    /// Number of doublings applied (0 when the formula already meets the
    /// goal).
    pub doublings: u32,
}

/// Max over frames and tau of |approx(tau) - exact(tau)| for a fixed
/// window half-width, over `frames` simulated transmissions.
pub fn measure_window_error(
    code: &BchCode,
    channel: &Awgn,
    frames: u64,
    s0: usize,
    seed: u64,
) -> Result<f64, SimError> {
    let d_min = code.d_min();
    let lambda = code.capability().lambda();
    let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed ^ 0x77A5_D1A6_4001_C0DE));
    let mut worst = 0.0f64;
    for _ in 0..frames {
        let info: Vec<u8> = (0..code.k()).map(|_| rng.gen_range(0..=1)).collect();
        let codeword = code.encode(&info)?;
        let frame = transmit(&codeword, channel, &mut rng);
        let profile = build_profile(&frame, channel);
        let (_, exact) = select_tau_exact(&profile, d_min, lambda)?;
        let (_, approx) = select_tau_approx(&profile, d_min, lambda, s0)?;
        for tau in 0..d_min {
            worst = worst.max((exact.get(tau) - approx.get(tau)).abs());
        }
    }
    Ok(worst)
}

/// Starts from the formula window for `precision` and doubles it until a
/// validation batch stays within the goal.
pub fn calibrate_window(
    code: &BchCode,
    channel: &Awgn,
    frames: u64,
    precision: f64,
    seed: u64,
    max_doublings: u32,
) -> Result<WindowCalibration, SimError> {
    let formula_s0 = hoeffding_window(code.n(), precision)?;
    let formula_error = measure_window_error(code, channel, frames, formula_s0, seed)?;
    let mut s0 = formula_s0;
    let mut achieved = formula_error;
    let mut doublings = 0;
    while achieved >= precision {
        if doublings == max_doublings {
            return Err(SimError::CalibrationDiverged {
                precision,
                doublings,
                achieved,
            });
        }
        s0 *= 2;
        doublings += 1;
        achieved = measure_window_error(code, channel, frames, s0, seed)?;
    }
    Ok(WindowCalibration {
        formula_s0,
        formula_error,
        s0,
        achieved,
        doublings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_windows_are_error_free() {
        let code = BchCode::new(5, 7).unwrap();
        let channel = Awgn::from_snr_db(2.0);
        let err = measure_window_error(&code, &channel, 50, 31, 3).unwrap();
        assert_eq!(err, 0.0);
    }

    #[test]
    fn calibration_terminates_at_short_lengths() {
        // At n = 31 the formula window (s0 = 4) already covers the whole
        // decoder budget, so no doubling is needed.
        let code = BchCode::new(5, 7).unwrap();
        let channel = Awgn::from_snr_db(1.0);
        let cal = calibrate_window(&code, &channel, 100, 1e-2, 5, 4).unwrap();
        assert_eq!(cal.formula_s0, 4);
        assert_eq!(cal.doublings, 0);
        assert!(cal.achieved < 1e-2);
    }
}
