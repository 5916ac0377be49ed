//! BPSK signaling over memoryless soft-output channels.
//!
//! Bits map to antipodal signals x = (-1)^c, the channel disturbs them to
//! real received values, and each received value carries a Bayes
//! unreliability: the posterior probability that its hard decision is
//! wrong, assuming equiprobable transmitted symbols. AWGN is the shipped
//! channel; anything memoryless with a known unreliability plugs in via
//! [`SoftChannel`].

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelError {
    /// Noise standard deviation must be positive and finite.
    InvalidSigma { sigma: f64 },
    /// Received values must be finite.
    NonFiniteValue { index: usize },
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelError::InvalidSigma { sigma } => {
                write!(f, "noise standard deviation must be positive, got {sigma}")
            }
            ChannelError::NonFiniteValue { index } => {
                write!(f, "received value at index {index} is not finite")
            }
        }
    }
}

impl core::error::Error for ChannelError {}

/// Antipodal mapping x = (-1)^c of a bit.
#[inline]
pub fn bpsk(bit: u8) -> f64 {
    if bit & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Sign extractor: -1 for y <= 0, +1 for y > 0.
#[inline]
pub fn sign(y: f64) -> f64 {
    if y <= 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Hard decision on a received value: bit 1 for y <= 0, bit 0 for y > 0
/// (the boundary y = 0 goes to -1 and hence bit 1).
#[inline]
pub fn hard_decide(y: f64) -> u8 {
    if y <= 0.0 {
        1
    } else {
        0
    }
}

/// A memoryless channel with soft output under BPSK signaling.
pub trait SoftChannel {
    /// Posterior probability that the hard decision on `y` is wrong.
    /// Implementations must return a value in [0, 1].
    fn unreliability(&self, y: f64) -> f64;

    /// One channel use: the received value for the antipodal symbol `x`.
    fn disturb<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> f64;
}

/// AWGN channel state: zero-mean Gaussian noise with standard deviation
/// `sigma` per real dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Awgn {
    sigma: f64,
}

impl Awgn {
    pub fn new(sigma: f64) -> Result<Self, ChannelError> {
        if sigma > 0.0 && sigma.is_finite() {
            Ok(Awgn { sigma })
        } else {
            Err(ChannelError::InvalidSigma { sigma })
        }
    }

    /// Channel state for a given SNR in dB: sigma = sqrt(0.5 * 10^(-SNR/10)).
    ///
    /// This is the convention of the reference simulations, taken as-is
    /// (it is not reinterpreted as an Eb/N0 ratio).
    pub fn from_snr_db(snr_db: f64) -> Self {
        let sigma = libm::sqrt(0.5 * libm::pow(10.0, -snr_db / 10.0));
        Awgn { sigma }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl SoftChannel for Awgn {
    /// h(y) = 1 / (1 + exp(2 y sign(y) / sigma^2)); since sign(0) = -1,
    /// y * sign(y) = |y| for every y, so h lies in (0, 0.5].
    fn unreliability(&self, y: f64) -> f64 {
        1.0 / (1.0 + libm::exp(2.0 * libm::fabs(y) / (self.sigma * self.sigma)))
    }

    /// y = x + g with g drawn from N(0, sigma^2) via the ziggurat sampler
    /// of `rand_distr::StandardNormal`; deterministic for a given RNG state.
    fn disturb<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> f64 {
        let g: f64 = rng.sample(StandardNormal);
        x + self.sigma * g
    }
}

/// A received frame of real values, in transmission order.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftFrame {
    y: Vec<f64>,
}

impl SoftFrame {
    /// Wraps raw received values, rejecting non-finite entries.
    pub fn new(y: Vec<f64>) -> Result<Self, ChannelError> {
        if let Some(index) = y.iter().position(|v| !v.is_finite()) {
            return Err(ChannelError::NonFiniteValue { index });
        }
        Ok(SoftFrame { y })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }
}

/// Transmits a codeword over the channel: BPSK-maps every bit and disturbs
/// it with an independent channel use.
pub fn transmit<C: SoftChannel, R: Rng + ?Sized>(
    codeword: &[u8],
    channel: &C,
    rng: &mut R,
) -> SoftFrame {
    SoftFrame {
        y: codeword.iter().map(|&c| channel.disturb(bpsk(c), rng)).collect(),
    }
}
