//! Binary narrow-sense BCH codes with a bounded minimum distance
//! errors-and-erasures decoder.
//!
//! The decoder corrects any pattern of `eps` errors and `tau` erasures with
//! `lambda * eps + tau <= d_min - 1` where `lambda = 2` (a traditional BMD
//! errors/erasures decoder). Outside that region it either reports failure
//! or may return some other codeword; callers that care must treat both as
//! a frame error.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::galois::{BinaryPoly, Field, GaloisError};

/// Largest code dimension accepted by [`BchCode::brute_force_nearest`].
pub const MAX_BRUTE_FORCE_DIMENSION: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BchError {
    Galois(GaloisError),
    /// Designed distance must be odd and in 3..=n.
    InvalidDistance { designed: usize, n: usize },
    /// Construction left no information symbols.
    DegenerateDimension,
    /// Input vector length does not match the expected length.
    WrongLength { expected: usize, got: usize },
    /// More than d_min - 1 erasures; outside the decoder contract.
    TooManyErasures { tau: usize, max: usize },
    /// Dimension too large for exhaustive codebook enumeration.
    DimensionTooLarge { k: usize, max: usize },
    /// Lambda outside the (1, 2] tradeoff range.
    InvalidLambda,
    /// Unknown character in a codeword string.
    BadSymbolChar { ch: char },
}

impl fmt::Display for BchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BchError::Galois(e) => write!(f, "{e}"),
            BchError::InvalidDistance { designed, n } => {
                write!(f, "designed distance {designed} invalid for length {n} (need odd, 3..=n)")
            }
            BchError::DegenerateDimension => write!(f, "code has no information symbols"),
            BchError::WrongLength { expected, got } => {
                write!(f, "expected vector of length {expected}, got {got}")
            }
            BchError::TooManyErasures { tau, max } => {
                write!(f, "{tau} erasures exceed the decoder contract (max {max})")
            }
            BchError::DimensionTooLarge { k, max } => {
                write!(f, "dimension {k} too large for brute force (max {max})")
            }
            BchError::InvalidLambda => write!(f, "lambda must lie in (1, 2]"),
            BchError::BadSymbolChar { ch } => {
                write!(f, "invalid symbol character {ch:?} (expected '0', '1' or '?')")
            }
        }
    }
}

impl core::error::Error for BchError {}

impl From<GaloisError> for BchError {
    fn from(e: GaloisError) -> Self {
        BchError::Galois(e)
    }
}

/// Error/erasure tradeoff declared by a decoder: success is guaranteed
/// whenever `lambda * errors + erasures <= d_min - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderCapability {
    lambda: f64,
}

impl DecoderCapability {
    pub fn new(lambda: f64) -> Result<Self, BchError> {
        if lambda > 1.0 && lambda <= 2.0 {
            Ok(DecoderCapability { lambda })
        } else {
            Err(BchError::InvalidLambda)
        }
    }

    /// A traditional bounded-minimum-distance errors/erasures decoder.
    pub fn bmd() -> Self {
        DecoderCapability { lambda: 2.0 }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Hard-decision channel symbol: a bit or an erasure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardSymbol {
    Zero,
    One,
    Erased,
}

impl HardSymbol {
    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 1 {
            HardSymbol::One
        } else {
            HardSymbol::Zero
        }
    }

    /// The bit value, or `None` for an erasure.
    pub fn bit(&self) -> Option<u8> {
        match self {
            HardSymbol::Zero => Some(0),
            HardSymbol::One => Some(1),
            HardSymbol::Erased => None,
        }
    }

    pub fn is_erased(&self) -> bool {
        matches!(self, HardSymbol::Erased)
    }
}

/// Serializes a hard-symbol word as '0'/'1'/'?' characters.
pub fn word_to_string(word: &[HardSymbol]) -> String {
    word.iter()
        .map(|s| match s {
            HardSymbol::Zero => '0',
            HardSymbol::One => '1',
            HardSymbol::Erased => '?',
        })
        .collect()
}

/// Parses a '0'/'1'/'?' string into hard symbols.
pub fn word_from_str(s: &str) -> Result<Vec<HardSymbol>, BchError> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(HardSymbol::Zero),
            '1' => Ok(HardSymbol::One),
            '?' => Ok(HardSymbol::Erased),
            _ => Err(BchError::BadSymbolChar { ch }),
        })
        .collect()
}

/// Result of a decoding attempt: a codeword of the code, or failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded(Vec<u8>),
    Failure,
}

impl DecodeOutcome {
    pub fn codeword(&self) -> Option<&[u8]> {
        match self {
            DecodeOutcome::Decoded(c) => Some(c),
            DecodeOutcome::Failure => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, DecodeOutcome::Failure)
    }
}

/// A narrow-sense binary BCH code of length 2^m - 1 together with its
/// errors/erasures decoder.
#[derive(Debug, Clone)]
pub struct BchCode {
    field: Field,
    n: usize,
    k: usize,
    d_min: usize,
    generator: BinaryPoly,
    capability: DecoderCapability,
}

impl BchCode {
    /// Constructs the code with designed distance `designed_distance`: the
    /// generator is the least common multiple of the minimal polynomials of
    /// alpha^1 .. alpha^(designed_distance - 1).
    ///
    /// The reported `d_min` is the designed distance — the decoder contract
    /// is defined by it even when the true distance is larger.
    pub fn new(m: u32, designed_distance: usize) -> Result<Self, BchError> {
        let field = Field::new(m)?;
        let n = field.order();
        if designed_distance < 3 || designed_distance > n || designed_distance.is_multiple_of(2) {
            return Err(BchError::InvalidDistance {
                designed: designed_distance,
                n,
            });
        }
        let mut covered = vec![false; n];
        let mut generator = BinaryPoly::one();
        for e in 1..designed_distance {
            if covered[e] {
                continue;
            }
            for c in field.conjugacy_class(e) {
                covered[c] = true;
            }
            generator = generator.mul(&field.minimal_polynomial(e));
        }
        let k = n - generator.degree().expect("generator is nonzero");
        if k == 0 {
            return Err(BchError::DegenerateDimension);
        }
        Ok(BchCode {
            field,
            n,
            k,
            d_min: designed_distance,
            generator,
            capability: DecoderCapability::bmd(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_min(&self) -> usize {
        self.d_min
    }

    pub fn generator(&self) -> &BinaryPoly {
        &self.generator
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn capability(&self) -> DecoderCapability {
        self.capability
    }

    /// Systematic encoding: the information bits appear verbatim in the
    /// high-degree positions `n-k..n`, the parity (remainder of
    /// `info(x) * x^(n-k)` by the generator) fills positions `0..n-k`.
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>, BchError> {
        if info.len() != self.k {
            return Err(BchError::WrongLength {
                expected: self.k,
                got: info.len(),
            });
        }
        let nk = self.n - self.k;
        let g = self.generator.coeffs();
        let mut cw = vec![0u8; self.n];
        for (j, &b) in info.iter().enumerate() {
            cw[nk + j] = b & 1;
        }
        // LFSR division of info(x) * x^(n-k) by the (monic) generator.
        let mut reg = vec![0u8; nk];
        for i in (0..self.k).rev() {
            let feedback = (info[i] & 1) ^ reg[nk - 1];
            for j in (1..nk).rev() {
                reg[j] = reg[j - 1] ^ (feedback & g[j]);
            }
            reg[0] = feedback & g[0];
        }
        cw[..nk].copy_from_slice(&reg);
        Ok(cw)
    }

    /// The information bits of a systematic codeword.
    pub fn info_bits<'a>(&self, codeword: &'a [u8]) -> &'a [u8] {
        &codeword[self.n - self.k..]
    }

    /// True when `word` has all-zero syndromes (equivalently, its
    /// polynomial is divisible by the generator).
    pub fn is_codeword(&self, word: &[u8]) -> bool {
        word.len() == self.n && (1..self.d_min).all(|j| self.syndrome(word, j) == 0)
    }

    fn syndrome(&self, bits: &[u8], j: usize) -> u16 {
        let mut s = 0u16;
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                s ^= self.field.alpha_pow(i * j);
            }
        }
        s
    }

    /// Errors-and-erasures decoding of a hard-decision word.
    ///
    /// Erasure positions are filled with 0, the erasure locator absorbs
    /// them, Berlekamp–Massey on the Forney syndromes finds the error
    /// locator, Chien search the error positions, and Forney's formula the
    /// errata values (which must be binary). Returns `Ok(Failure)` whenever
    /// any consistency check fails; `Err` only on contract misuse.
    pub fn decode_ee(&self, r: &[HardSymbol]) -> Result<DecodeOutcome, BchError> {
        if r.len() != self.n {
            return Err(BchError::WrongLength {
                expected: self.n,
                got: r.len(),
            });
        }
        let erasures: Vec<usize> = r
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.is_erased().then_some(i))
            .collect();
        let tau = erasures.len();
        if tau > self.d_min - 1 {
            return Err(BchError::TooManyErasures {
                tau,
                max: self.d_min - 1,
            });
        }

        let f = &self.field;
        let mut bits: Vec<u8> = r.iter().map(|s| s.bit().unwrap_or(0)).collect();

        // Syndromes S_j = r(alpha^j), j = 1..d_min-1, as the coefficient
        // vector of S(x) = sum_j S_j x^(j-1).
        let ns = self.d_min - 1;
        let synd: Vec<u16> = (1..=ns).map(|j| self.syndrome(&bits, j)).collect();
        if synd.iter().all(|&s| s == 0) {
            // Zero-filling the erasures already gives a codeword.
            return Ok(DecodeOutcome::Decoded(bits));
        }

        // Erasure locator Gamma(x) = prod (1 + alpha^p x).
        let mut gamma: Vec<u16> = vec![1];
        for &p in &erasures {
            let root = f.alpha_pow(p);
            let mut next = vec![0u16; gamma.len() + 1];
            for (i, &g) in gamma.iter().enumerate() {
                next[i] ^= g;
                next[i + 1] ^= f.mul(g, root);
            }
            gamma = next;
        }

        // Modified syndromes Xi = S * Gamma mod x^(d-1); the Forney
        // syndromes are their upper d-1-tau coefficients.
        let xi = poly_mul_mod(f, &synd, &gamma, ns);
        let forney_synd = &xi[tau..];

        let (err_locator, num_errors) = berlekamp_massey(f, forney_synd);
        let within_capability = self.capability.lambda * num_errors as f64 + tau as f64
            <= (self.d_min - 1) as f64 + 1e-9;
        if !within_capability || poly_degree(&err_locator) != Some(num_errors) {
            return Ok(DecodeOutcome::Failure);
        }

        // Chien search: position i is an error iff Lambda(alpha^-i) = 0.
        let mut error_pos = Vec::with_capacity(num_errors);
        if num_errors > 0 {
            for i in 0..self.n {
                let x_inv = f.alpha_pow(self.n - i);
                if poly_eval(f, &err_locator, x_inv) == 0 {
                    error_pos.push(i);
                }
            }
            if error_pos.len() != num_errors || error_pos.iter().any(|p| erasures.contains(p)) {
                return Ok(DecodeOutcome::Failure);
            }
        }

        // Errata locator and evaluator; Forney's formula gives the values.
        let phi = poly_mul_mod(f, &err_locator, &gamma, err_locator.len() + gamma.len() - 1);
        let omega = poly_mul_mod(f, &synd, &phi, ns);
        for (&p, is_erasure) in error_pos
            .iter()
            .map(|p| (p, false))
            .chain(erasures.iter().map(|p| (p, true)))
        {
            let x_inv = f.alpha_pow(self.n - p);
            let num = poly_eval(f, &omega, x_inv);
            let den = poly_eval_odd_derivative(f, &phi, x_inv);
            if den == 0 {
                return Ok(DecodeOutcome::Failure);
            }
            let value = f.div(num, den)?;
            match (value, is_erasure) {
                (0, true) => {}                    // erased bit was really 0
                (1, true) => bits[p] = 1,          // erased bit was 1
                (1, false) => bits[p] ^= 1,        // flip the error
                _ => return Ok(DecodeOutcome::Failure), // non-binary value
            }
        }

        if self.is_codeword(&bits) {
            Ok(DecodeOutcome::Decoded(bits))
        } else {
            Ok(DecodeOutcome::Failure)
        }
    }

    /// Exhaustive nearest-codeword search over the non-erased positions;
    /// ties break to the lexicographically smaller codeword. Test oracle
    /// for [`Self::decode_ee`], usable while `k <= 20`.
    pub fn brute_force_nearest(&self, r: &[HardSymbol]) -> Result<DecodeOutcome, BchError> {
        if self.k > MAX_BRUTE_FORCE_DIMENSION {
            return Err(BchError::DimensionTooLarge {
                k: self.k,
                max: MAX_BRUTE_FORCE_DIMENSION,
            });
        }
        if r.len() != self.n {
            return Err(BchError::WrongLength {
                expected: self.n,
                got: r.len(),
            });
        }
        let mut best: Option<(usize, Vec<u8>)> = None;
        let mut info = vec![0u8; self.k];
        for word in 0u64..(1u64 << self.k) {
            for (j, b) in info.iter_mut().enumerate() {
                *b = ((word >> j) & 1) as u8;
            }
            let cw = self.encode(&info)?;
            let dist = r
                .iter()
                .zip(&cw)
                .filter(|(s, &c)| s.bit().is_some_and(|b| b != c))
                .count();
            let better = match &best {
                None => true,
                Some((bd, bc)) => dist < *bd || (dist == *bd && cw < *bc),
            };
            if better {
                best = Some((dist, cw));
            }
        }
        Ok(DecodeOutcome::Decoded(best.expect("codebook nonempty").1))
    }
}

/// (a * b) mod x^truncate, over GF(2^m) coefficient vectors.
fn poly_mul_mod(f: &Field, a: &[u16], b: &[u16], truncate: usize) -> Vec<u16> {
    let len = truncate.min(a.len() + b.len() - 1).max(1);
    let mut out = vec![0u16; len];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 || i >= len {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] ^= f.mul(ai, bj);
        }
    }
    out
}

fn poly_degree(p: &[u16]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

fn poly_eval(f: &Field, p: &[u16], x: u16) -> u16 {
    let mut acc = 0u16;
    for &c in p.iter().rev() {
        acc = f.mul(acc, x) ^ c;
    }
    acc
}

/// Formal derivative evaluated at `x`; in characteristic 2 only the odd
/// coefficients survive.
fn poly_eval_odd_derivative(f: &Field, p: &[u16], x: u16) -> u16 {
    let x2 = f.mul(x, x);
    let mut acc = 0u16;
    let mut pow = 1u16; // x^(i-1) for i = 1, 3, 5, ...
    let mut i = 1;
    while i < p.len() {
        acc ^= f.mul(p[i], pow);
        pow = f.mul(pow, x2);
        i += 2;
    }
    acc
}

/// Shortest LFSR (error locator, lowest coefficient 1) generating the
/// syndrome sequence, and its length.
fn berlekamp_massey(f: &Field, s: &[u16]) -> (Vec<u16>, usize) {
    let mut lambda: Vec<u16> = vec![1];
    let mut prev: Vec<u16> = vec![1];
    let mut l = 0usize;
    let mut gap = 1usize;
    let mut prev_delta = 1u16;
    for i in 0..s.len() {
        let mut delta = s[i];
        for j in 1..=l.min(lambda.len() - 1) {
            delta ^= f.mul(lambda[j], s[i - j]);
        }
        if delta == 0 {
            gap += 1;
            continue;
        }
        let coef = f.div(delta, prev_delta).expect("prev_delta nonzero");
        let shifted_len = prev.len() + gap;
        if lambda.len() < shifted_len {
            lambda.resize(shifted_len, 0);
        }
        if 2 * l <= i {
            let snapshot = lambda.clone();
            for (j, &pj) in prev.iter().enumerate() {
                lambda[j + gap] ^= f.mul(coef, pj);
            }
            l = i + 1 - l;
            prev = snapshot;
            prev_delta = delta;
            gap = 1;
        } else {
            for (j, &pj) in prev.iter().enumerate() {
                lambda[j + gap] ^= f.mul(coef, pj);
            }
            gap += 1;
        }
    }
    while lambda.last() == Some(&0) {
        lambda.pop();
    }
    (lambda, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn erase_free(bits: &[u8]) -> Vec<HardSymbol> {
        bits.iter().map(|&b| HardSymbol::from_bit(b)).collect()
    }

    #[test]
    fn code_parameters_match_known_codes() {
        let c31 = BchCode::new(5, 7).unwrap();
        assert_eq!((c31.n(), c31.k(), c31.d_min()), (31, 16, 7));
        let c127 = BchCode::new(7, 31).unwrap();
        assert_eq!((c127.n(), c127.k(), c127.d_min()), (127, 36, 31));
        // Degenerate corner: lcm of the minimal polynomials of alpha,
        // alpha^3, alpha^5 has degree 6, leaving the repetition code.
        let c7 = BchCode::new(3, 7).unwrap();
        assert_eq!((c7.n(), c7.k(), c7.d_min()), (7, 1, 7));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(
            BchCode::new(5, 40),
            Err(BchError::InvalidDistance { .. })
        ));
        assert!(matches!(
            BchCode::new(5, 6),
            Err(BchError::InvalidDistance { .. })
        ));
        assert!(matches!(
            BchCode::new(5, 1),
            Err(BchError::InvalidDistance { .. })
        ));
        assert!(matches!(BchCode::new(1, 3), Err(BchError::Galois(_))));
    }

    #[test]
    fn generator_divides_x_n_minus_1() {
        for (m, d) in [(3, 7), (4, 7), (5, 7), (7, 31)] {
            let code = BchCode::new(m, d).unwrap();
            let xn1 = BinaryPoly::x_pow(code.n()).add(&BinaryPoly::one());
            assert!(code.generator().divides(&xn1), "m={m} d={d}");
            assert_eq!(code.n() - code.generator().degree().unwrap(), code.k());
        }
    }

    #[test]
    fn encoding_is_systematic_and_divisible() {
        let code = BchCode::new(5, 7).unwrap();
        assert_eq!(code.encode(&[0; 16]).unwrap(), vec![0; 32 - 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let info: Vec<u8> = (0..16).map(|_| rng.gen_range(0..=1)).collect();
            let cw = code.encode(&info).unwrap();
            assert_eq!(code.info_bits(&cw), &info[..]);
            assert!(code.is_codeword(&cw));
            // Cross-check the LFSR parity against plain polynomial division.
            let cpoly = BinaryPoly::from_coeffs(cw.iter().copied());
            assert!(code.generator().divides(&cpoly));
        }
        assert!(matches!(
            code.encode(&[1, 0, 1]),
            Err(BchError::WrongLength { expected: 16, got: 3 })
        ));
    }

    #[test]
    fn unit_vector_codewords_are_divisible_by_generator() {
        let code = BchCode::new(5, 7).unwrap();
        for j in 0..code.k() {
            let mut info = vec![0u8; code.k()];
            info[j] = 1;
            let cw = code.encode(&info).unwrap();
            assert!(code.is_codeword(&cw));
            assert_eq!(cw[code.n() - code.k() + j], 1);
        }
    }

    #[test]
    fn minimum_weight_of_c_15_5_7_is_7() {
        let code = BchCode::new(4, 7).unwrap();
        let mut min_weight = usize::MAX;
        for w in 1u32..(1 << code.k()) {
            let info: Vec<u8> = (0..code.k()).map(|j| ((w >> j) & 1) as u8).collect();
            let weight = code.encode(&info).unwrap().iter().filter(|&&b| b == 1).count();
            min_weight = min_weight.min(weight);
        }
        assert_eq!(min_weight, 7);
    }

    #[test]
    fn clean_word_decodes_to_itself() {
        let code = BchCode::new(5, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let info: Vec<u8> = (0..16).map(|_| rng.gen_range(0..=1)).collect();
        let cw = code.encode(&info).unwrap();
        let out = code.decode_ee(&erase_free(&cw)).unwrap();
        assert_eq!(out.codeword().unwrap(), &cw[..]);
    }

    #[test]
    fn maximal_erasure_load_is_recovered() {
        // eps = 0, tau = d_min - 1: the far corner of the contract.
        let code = BchCode::new(5, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let info: Vec<u8> = (0..16).map(|_| rng.gen_range(0..=1)).collect();
            let cw = code.encode(&info).unwrap();
            let mut r = erase_free(&cw);
            for p in rand::seq::index::sample(&mut rng, 31, 6) {
                r[p] = HardSymbol::Erased;
            }
            let out = code.decode_ee(&r).unwrap();
            assert_eq!(out.codeword().unwrap(), &cw[..]);
        }
    }

    #[test]
    fn guarantee_region_randomized() {
        let code = BchCode::new(5, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..2000 {
            let info: Vec<u8> = (0..16).map(|_| rng.gen_range(0..=1)).collect();
            let cw = code.encode(&info).unwrap();
            let tau = rng.gen_range(0..=6);
            let eps = rng.gen_range(0..=(6 - tau) / 2);
            let mut r = erase_free(&cw);
            let positions = rand::seq::index::sample(&mut rng, 31, tau + eps).into_vec();
            for &p in &positions[..tau] {
                r[p] = HardSymbol::Erased;
            }
            for &p in &positions[tau..] {
                r[p] = HardSymbol::from_bit(cw[p] ^ 1);
            }
            let out = code.decode_ee(&r).unwrap();
            assert_eq!(
                out.codeword(),
                Some(&cw[..]),
                "trial {trial}: eps={eps} tau={tau} failed"
            );
        }
    }

    #[test]
    fn beyond_the_bound_stays_sane() {
        // 2*eps + tau = d_min: no guarantee, but no panic and any returned
        // word must be a codeword.
        let code = BchCode::new(5, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let info: Vec<u8> = (0..16).map(|_| rng.gen_range(0..=1)).collect();
            let cw = code.encode(&info).unwrap();
            // Odd tau <= d_min - 1, so eps = (d_min - tau) / 2 is integral.
            let tau = rng.gen_range(0..=2) * 2 + 1;
            let eps = (7 - tau) / 2;
            let mut r = erase_free(&cw);
            let positions = rand::seq::index::sample(&mut rng, 31, tau + eps).into_vec();
            for &p in &positions[..tau] {
                r[p] = HardSymbol::Erased;
            }
            for &p in &positions[tau..] {
                r[p] = HardSymbol::from_bit(cw[p] ^ 1);
            }
            if let DecodeOutcome::Decoded(word) = code.decode_ee(&r).unwrap() {
                assert!(code.is_codeword(&word));
            }
        }
    }

    #[test]
    fn too_many_erasures_is_contract_misuse() {
        let code = BchCode::new(5, 7).unwrap();
        let mut r = erase_free(&code.encode(&[0; 16]).unwrap());
        for sym in r.iter_mut().take(7) {
            *sym = HardSymbol::Erased;
        }
        assert!(matches!(
            code.decode_ee(&r),
            Err(BchError::TooManyErasures { tau: 7, max: 6 })
        ));
    }

    #[test]
    fn brute_force_returns_exact_match_and_breaks_ties_low() {
        let code = BchCode::new(3, 7).unwrap(); // {0000000, 1111111}
        let ones = code.encode(&[1]).unwrap();
        assert_eq!(ones, vec![1; 7]);
        let r = erase_free(&ones);
        assert_eq!(
            code.brute_force_nearest(&r).unwrap().codeword().unwrap(),
            &ones[..]
        );
        // One erasure plus three flips leaves both codewords at distance 3:
        // the tie must go to the lexicographically smaller (all-zero) word.
        let mut tied = erase_free(&ones);
        tied[0] = HardSymbol::Erased;
        for sym in tied.iter_mut().skip(1).take(3) {
            *sym = HardSymbol::Zero;
        }
        assert_eq!(
            code.brute_force_nearest(&tied).unwrap().codeword().unwrap(),
            &vec![0u8; 7][..]
        );
    }

    #[test]
    fn brute_force_rejects_large_dimensions() {
        let code = BchCode::new(7, 31).unwrap(); // k = 36
        let r = vec![HardSymbol::Zero; 127];
        assert!(matches!(
            code.brute_force_nearest(&r),
            Err(BchError::DimensionTooLarge { k: 36, max: 20 })
        ));
    }

    #[test]
    fn decoder_agrees_with_brute_force_inside_guarantee_region() {
        let code = BchCode::new(4, 7).unwrap(); // C(15, 5, 7)
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for tau in 0..=6usize {
            for eps in 0..=(6 - tau) / 2 {
                for _ in 0..200 {
                    let info: Vec<u8> = (0..5).map(|_| rng.gen_range(0..=1)).collect();
                    let cw = code.encode(&info).unwrap();
                    let mut r = erase_free(&cw);
                    let positions =
                        rand::seq::index::sample(&mut rng, 15, tau + eps).into_vec();
                    for &p in &positions[..tau] {
                        r[p] = HardSymbol::Erased;
                    }
                    for &p in &positions[tau..] {
                        r[p] = HardSymbol::from_bit(cw[p] ^ 1);
                    }
                    let ee = code.decode_ee(&r).unwrap();
                    let bf = code.brute_force_nearest(&r).unwrap();
                    assert_eq!(ee, bf, "eps={eps} tau={tau}");
                }
            }
        }
    }

    #[test]
    fn word_round_trips_through_text() {
        let word = vec![
            HardSymbol::Zero,
            HardSymbol::One,
            HardSymbol::Erased,
            HardSymbol::One,
        ];
        let s = word_to_string(&word);
        assert_eq!(s, "01?1");
        assert_eq!(word_from_str(&s).unwrap(), word);
        assert!(matches!(
            word_from_str("01x"),
            Err(BchError::BadSymbolChar { ch: 'x' })
        ));
    }

    #[test]
    fn capability_range_is_enforced() {
        assert!(DecoderCapability::new(2.0).is_ok());
        assert!(DecoderCapability::new(1.5).is_ok());
        assert!(DecoderCapability::new(1.0).is_err());
        assert!(DecoderCapability::new(2.1).is_err());
        assert_eq!(DecoderCapability::bmd().lambda(), 2.0);
    }

    #[test]
    fn generator_prints_as_bit_string() {
        // C(7,1,7): generator is 1 + x + ... + x^6.
        let code = BchCode::new(3, 7).unwrap();
        assert_eq!(code.generator().to_string(), "1111111");
    }
}
