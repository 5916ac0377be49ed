//! Probability generating functions of the error count among non-erased
//! symbols.
//!
//! With the received symbols sorted by decreasing unreliability `h`, the
//! number of errors among the symbols that survive erasing the `tau` most
//! unreliable ones is a Poisson-binomial variable `Y_tau`. Its PGF is the
//! product of one degree-1 polynomial `1 - h_i + rho h_i` per surviving
//! symbol, and its coefficients are exactly the probabilities
//! `Pr(Y_tau = eps)`. Everything here works on those truncated coefficient
//! vectors: derivative evaluation at 0 is coefficient lookup, so the
//! products are computed once per frame by schoolbook degree-1
//! multiplication and shared across all `tau`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PgfError {
    /// A probability outside [0, 1].
    InvalidProbability { value: f64 },
    /// d_min exceeds the profile length.
    DistanceExceedsLength { d_min: usize, n: usize },
    /// tau outside 0..=d_min-1.
    TauOutOfRange { tau: usize, max: usize },
    /// lambda outside (1, 2].
    InvalidLambda { lambda: f64 },
    /// The window half-width must be at least 1.
    WindowTooSmall { s0: usize },
    /// Precision goal outside (0, 1), or n = 0.
    InvalidWindowParams,
    /// The polynomial was truncated below a coefficient the sum needs.
    TruncatedBelowNeed { needed: usize, available: usize },
}

impl fmt::Display for PgfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgfError::InvalidProbability { value } => {
                write!(f, "probability {value} outside [0, 1]")
            }
            PgfError::DistanceExceedsLength { d_min, n } => {
                write!(f, "d_min = {d_min} exceeds profile length n = {n}")
            }
            PgfError::TauOutOfRange { tau, max } => {
                write!(f, "tau = {tau} outside 0..={max}")
            }
            PgfError::InvalidLambda { lambda } => {
                write!(f, "lambda = {lambda} outside (1, 2]")
            }
            PgfError::WindowTooSmall { s0 } => write!(f, "window half-width s0 = {s0} < 1"),
            PgfError::InvalidWindowParams => {
                write!(f, "window needs n >= 1 and precision in (0, 1)")
            }
            PgfError::TruncatedBelowNeed { needed, available } => {
                write!(
                    f,
                    "coefficient {needed} requested but the PGF is truncated at degree {available}"
                )
            }
        }
    }
}

impl core::error::Error for PgfError {}

fn check_probability(h: f64) -> Result<f64, PgfError> {
    if (0.0..=1.0).contains(&h) {
        Ok(h)
    } else {
        Err(PgfError::InvalidProbability { value: h })
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<(), PgfError> {
    if lambda > 1.0 && lambda <= 2.0 {
        Ok(())
    } else {
        Err(PgfError::InvalidLambda { lambda })
    }
}

/// Per-symbol unreliabilities sorted non-increasing, with the permutation
/// back to the original symbol order and precomputed suffix sums.
#[derive(Debug, Clone, PartialEq)]
pub struct UnreliabilityProfile {
    sorted: Vec<f64>,
    perm: Vec<usize>,
    suffix: Vec<f64>,
}

impl UnreliabilityProfile {
    /// Sorts the given per-symbol unreliabilities (original order)
    /// non-increasingly. The sort is stable, so equal values keep their
    /// ascending original index.
    pub fn new(h: &[f64]) -> Result<Self, PgfError> {
        for &value in h {
            check_probability(value)?;
        }
        let mut perm: Vec<usize> = (0..h.len()).collect();
        perm.sort_by(|&a, &b| h[b].total_cmp(&h[a]));
        let sorted: Vec<f64> = perm.iter().map(|&i| h[i]).collect();
        let mut suffix = vec![0.0; sorted.len() + 1];
        for i in (0..sorted.len()).rev() {
            suffix[i] = suffix[i + 1] + sorted[i];
        }
        Ok(UnreliabilityProfile {
            sorted,
            perm,
            suffix,
        })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Unreliabilities in non-increasing order.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Original index of the symbol with the given unreliability rank
    /// (rank 0 = most unreliable).
    pub fn original_index(&self, rank: usize) -> usize {
        self.perm[rank]
    }

    /// The full rank -> original index permutation.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// E{Y_tau} = sum of the unreliabilities of the symbols surviving
    /// `tau` erasures; a suffix-sum lookup, O(1) per query.
    pub fn expected_errors(&self, tau: usize) -> f64 {
        self.suffix[tau.min(self.sorted.len())]
    }
}

/// Expected number of errors among symbols `tau..` of an arbitrary
/// unreliability sequence (the sum of the Bernoulli means, which equals
/// the derivative of the product PGF at 1).
pub fn expectation(h: &[f64], tau: usize) -> f64 {
    h.iter().skip(tau).sum()
}

/// Truncated PGF of `Y_tau`: coefficient `eps` holds `Pr(Y_tau = eps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PgfPoly {
    coeffs: Vec<f64>,
    tau: usize,
    truncated: bool,
}

impl PgfPoly {
    /// PGF of a single symbol: [1 - h, h].
    pub fn bernoulli(h: f64) -> Result<Self, PgfError> {
        let h = check_probability(h)?;
        Ok(PgfPoly {
            coeffs: vec![1.0 - h, h],
            tau: 0,
            truncated: false,
        })
    }

    /// Product PGF over the suffix `h[tau..]` of a sorted unreliability
    /// vector, truncated at degree `t_max`. Factors are multiplied from the
    /// least unreliable symbol inward, matching [`pgf_family`] bit for bit.
    pub fn from_suffix(h: &[f64], tau: usize, t_max: usize) -> Result<Self, PgfError> {
        for &value in &h[tau.min(h.len())..] {
            check_probability(value)?;
        }
        let mut coeffs = vec![1.0];
        for i in (tau..h.len()).rev() {
            mul_bernoulli(&mut coeffs, h[i], t_max);
        }
        Ok(PgfPoly {
            coeffs,
            tau,
            truncated: t_max < h.len().saturating_sub(tau),
        })
    }

    /// Number of leading (most unreliable) symbols excluded from the sum.
    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Highest stored degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when coefficients beyond [`Self::degree`] were dropped.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// `Pr(Y_tau = eps)`, 0 beyond the stored (or truncated) degree.
    #[inline]
    pub fn prob(&self, eps: usize) -> f64 {
        self.coeffs.get(eps).copied().unwrap_or(0.0)
    }

    /// The coefficient as far as it is known: `None` flags a query beyond
    /// the truncation point, where the true value is unknown.
    pub fn coeff(&self, eps: usize) -> Option<f64> {
        match self.coeffs.get(eps) {
            Some(&c) => Some(c),
            None if !self.truncated => Some(0.0),
            None => None,
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// Multiplies the coefficient vector by `1 - h + rho h`, truncating at
/// degree `t_max`.
pub(crate) fn mul_bernoulli(coeffs: &mut Vec<f64>, h: f64, t_max: usize) {
    let q = 1.0 - h;
    if coeffs.len() <= t_max {
        coeffs.push(0.0);
    }
    for j in (0..coeffs.len()).rev() {
        let lower = if j > 0 { coeffs[j - 1] } else { 0.0 };
        coeffs[j] = coeffs[j] * q + lower * h;
    }
}

/// The PGFs of `Y_tau` for every `tau = 0..d_min-1`, each truncated at
/// `t_max`, computed incrementally from `tau = d_min - 1` downward by
/// multiplying in one degree-1 factor per step.
pub fn pgf_family(
    profile: &UnreliabilityProfile,
    d_min: usize,
    t_max: usize,
) -> Result<Vec<PgfPoly>, PgfError> {
    let n = profile.len();
    if d_min == 0 || d_min > n {
        return Err(PgfError::DistanceExceedsLength { d_min, n });
    }
    let h = profile.sorted();
    let mut family: Vec<Option<PgfPoly>> = (0..d_min).map(|_| None).collect();
    let mut acc = vec![1.0];
    for i in (0..n).rev() {
        mul_bernoulli(&mut acc, h[i], t_max);
        if i < d_min {
            family[i] = Some(PgfPoly {
                coeffs: acc.clone(),
                tau: i,
                truncated: t_max < n - i,
            });
        }
    }
    Ok(family.into_iter().map(|g| g.expect("filled")).collect())
}

/// Largest error count the decoder can absorb alongside `tau` erasures.
#[inline]
pub fn error_budget(d_min: usize, tau: usize, lambda: f64) -> usize {
    libm::floor((d_min - 1 - tau) as f64 / lambda) as usize
}

/// Exact residual codeword error probability after erasing `tau` symbols:
/// `P(tau) = 1 - sum_{eps=0}^{floor((d_min-1-tau)/lambda)} Pr(Y_tau = eps)`,
/// clamped to [0, 1] against rounding drift.
pub fn residual_exact(g: &PgfPoly, d_min: usize, lambda: f64) -> Result<f64, PgfError> {
    check_lambda(lambda)?;
    let tau = g.tau();
    if tau >= d_min {
        return Err(PgfError::TauOutOfRange {
            tau,
            max: d_min - 1,
        });
    }
    let budget = error_budget(d_min, tau, lambda);
    if g.is_truncated() && budget > g.degree() {
        return Err(PgfError::TruncatedBelowNeed {
            needed: budget,
            available: g.degree(),
        });
    }
    Ok(residual_exact_from_coeffs(g.coeffs(), tau, d_min, lambda))
}

/// Summation core of [`residual_exact`], on a raw coefficient slice whose
/// truncation the caller has already checked.
pub(crate) fn residual_exact_from_coeffs(
    coeffs: &[f64],
    tau: usize,
    d_min: usize,
    lambda: f64,
) -> f64 {
    let budget = error_budget(d_min, tau, lambda);
    let upper = budget.min(coeffs.len() - 1);
    let mass: f64 = coeffs[..=upper].iter().sum();
    (1.0 - mass).clamp(0.0, 1.0)
}

/// Hoeffding-justified half-width of the summation window around
/// `E{Y_tau}`: `s0 = floor(sqrt(-ln(precision/2)/2 * sqrt(n))) + 1`.
///
/// `precision` defaults to 1e-2 throughout the crate; the window bounds
/// the neglected tail mass of the Poisson-binomial sum by it.
pub fn hoeffding_window(n: usize, precision: f64) -> Result<usize, PgfError> {
    if n == 0 || !(precision > 0.0 && precision < 1.0) {
        return Err(PgfError::InvalidWindowParams);
    }
    let s = libm::sqrt(-libm::log(precision / 2.0) / 2.0 * libm::sqrt(n as f64));
    Ok(libm::floor(s) as usize + 1)
}

/// Default precision goal for the windowed approximation.
pub const DEFAULT_PRECISION: f64 = 1e-2;

/// Windowed approximation of the residual error probability: the sum runs
/// only over `max(ceil(E) - s0, 0) ..= floor(min(E + s0, budget))` where
/// `E` is `E{Y_tau}`. An empty window yields 1.
pub fn residual_approx(
    g: &PgfPoly,
    d_min: usize,
    lambda: f64,
    expected: f64,
    s0: usize,
) -> Result<f64, PgfError> {
    check_lambda(lambda)?;
    if s0 < 1 {
        return Err(PgfError::WindowTooSmall { s0 });
    }
    let tau = g.tau();
    if tau >= d_min {
        return Err(PgfError::TauOutOfRange {
            tau,
            max: d_min - 1,
        });
    }
    let budget = error_budget(d_min, tau, lambda);
    let lower = libm::ceil(expected) as i64 - s0 as i64;
    let lower = lower.max(0) as usize;
    let upper = libm::floor((expected + s0 as f64).min((d_min - 1 - tau) as f64 / lambda));
    if (upper as i64) < lower as i64 {
        return Ok(1.0);
    }
    let upper = (upper as usize).min(budget);
    if g.is_truncated() && upper > g.degree() {
        return Err(PgfError::TruncatedBelowNeed {
            needed: upper,
            available: g.degree(),
        });
    }
    Ok(residual_approx_from_coeffs(
        g.coeffs(),
        tau,
        d_min,
        lambda,
        expected,
        s0,
    ))
}

/// Summation core of [`residual_approx`], on a raw coefficient slice whose
/// truncation the caller has already checked.
pub(crate) fn residual_approx_from_coeffs(
    coeffs: &[f64],
    tau: usize,
    d_min: usize,
    lambda: f64,
    expected: f64,
    s0: usize,
) -> f64 {
    let budget = error_budget(d_min, tau, lambda);
    let lower = (libm::ceil(expected) as i64 - s0 as i64).max(0) as usize;
    let upper = libm::floor((expected + s0 as f64).min((d_min - 1 - tau) as f64 / lambda));
    if (upper as i64) < lower as i64 {
        return 1.0;
    }
    let upper = (upper as usize).min(budget).min(coeffs.len() - 1);
    if upper < lower {
        // The whole window sits past the stored degree, where the
        // probabilities are zero.
        return 1.0;
    }
    let mass: f64 = coeffs[lower..=upper].iter().sum();
    (1.0 - mass).clamp(0.0, 1.0)
}

/// Residual error probabilities for every `tau = 0..d_min-1`, labelled by
/// how they were computed.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualProfile {
    values: Vec<f64>,
    kind: ResidualKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualKind {
    Exact,
    Approximate,
}

impl ResidualProfile {
    pub fn new(values: Vec<f64>, kind: ResidualKind) -> Self {
        debug_assert!(values.iter().all(|p| (0.0..=1.0).contains(p)));
        ResidualProfile { values, kind }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> ResidualKind {
        self.kind
    }

    pub fn get(&self, tau: usize) -> f64 {
        self.values[tau]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
