//! Arithmetic over GF(2^m) and binary polynomials.
//!
//! Fields are built from a fixed table of published primitive polynomials
//! (one per extension degree), so a given `m` always yields the same field
//! and therefore the same BCH code. Elements are `u16` coefficient vectors
//! of the polynomial basis; multiplication goes through discrete exp/log
//! tables of the primitive element.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Smallest supported extension degree.
pub const MIN_EXTENSION_DEGREE: u32 = 2;
/// Largest supported extension degree (tables stay below 2 * 2^16 entries).
pub const MAX_EXTENSION_DEGREE: u32 = 16;

/// Default primitive polynomials for m = 2..=16, bit i = coefficient of x^i.
///
/// m=3 is x^3+x+1, m=4 is x^4+x+1, m=5 is x^5+x^2+1, m=7 is x^7+x^3+1; the
/// remaining entries follow the same widely published table.
const PRIMITIVE_POLYS: [u32; 15] = [
    0x7,     // m=2:  x^2 + x + 1
    0xB,     // m=3:  x^3 + x + 1
    0x13,    // m=4:  x^4 + x + 1
    0x25,    // m=5:  x^5 + x^2 + 1
    0x43,    // m=6:  x^6 + x + 1
    0x89,    // m=7:  x^7 + x^3 + 1
    0x11D,   // m=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // m=9:  x^9 + x^4 + 1
    0x409,   // m=10: x^10 + x^3 + 1
    0x805,   // m=11: x^11 + x^2 + 1
    0x1053,  // m=12: x^12 + x^6 + x^4 + x + 1
    0x201B,  // m=13: x^13 + x^4 + x^3 + x + 1
    0x4443,  // m=14: x^14 + x^10 + x^6 + x + 1
    0x8003,  // m=15: x^15 + x + 1
    0x1100B, // m=16: x^16 + x^12 + x^3 + x + 1
];

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaloisError {
    /// Extension degree outside 2..=16.
    UnsupportedDegree { m: u32 },
    /// Multiplicative inverse of zero requested.
    DivisionByZero,
}

impl fmt::Display for GaloisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisError::UnsupportedDegree { m } => write!(
                f,
                "unsupported extension degree m={m} (supported: {MIN_EXTENSION_DEGREE}..={MAX_EXTENSION_DEGREE})"
            ),
            GaloisError::DivisionByZero => write!(f, "division by zero in GF(2^m)"),
        }
    }
}

impl core::error::Error for GaloisError {}

/// GF(2^m) with exp/log tables of the primitive element alpha.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone)]
pub struct Field {
    m: u32,
    primitive_poly: u32,
    /// exp[i] = alpha^i for i in 0..n, n = 2^m - 1.
    exp: Vec<u16>,
    /// log[a] = i with alpha^i = a, for a in 1..=n. log[0] is unused.
    log: Vec<u16>,
}

impl Field {
    /// Builds GF(2^m) from the published primitive polynomial for `m`.
    pub fn new(m: u32) -> Result<Self, GaloisError> {
        if !(MIN_EXTENSION_DEGREE..=MAX_EXTENSION_DEGREE).contains(&m) {
            return Err(GaloisError::UnsupportedDegree { m });
        }
        let primitive_poly = PRIMITIVE_POLYS[(m - MIN_EXTENSION_DEGREE) as usize];
        let n = (1usize << m) - 1;
        let mut exp = vec![0u16; n];
        let mut log = vec![0u16; n + 1];
        let mut x: u32 = 1;
        for i in 0..n {
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= primitive_poly;
            }
            // A primitive polynomial cycles through all nonzero elements;
            // returning to 1 early would mean the table entry is wrong.
            debug_assert!(x != 1 || i == n - 1);
        }
        Ok(Field {
            m,
            primitive_poly,
            exp,
            log,
        })
    }

    /// Extension degree m.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Multiplicative group order n = 2^m - 1 (also the BCH code length).
    pub fn order(&self) -> usize {
        self.exp.len()
    }

    /// The defining primitive polynomial, bit i = coefficient of x^i.
    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Addition (= subtraction) is carry-less XOR.
    #[inline]
    pub fn add(a: u16, b: u16) -> u16 {
        a ^ b
    }

    /// Product of two field elements.
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order();
        let i = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[if i >= n { i - n } else { i }]
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: u16) -> Result<u16, GaloisError> {
        if a == 0 {
            return Err(GaloisError::DivisionByZero);
        }
        let n = self.order();
        let i = (n - self.log[a as usize] as usize) % n;
        Ok(self.exp[i])
    }

    /// a / b.
    pub fn div(&self, a: u16, b: u16) -> Result<u16, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// alpha^e (the exponent is reduced mod 2^m - 1).
    #[inline]
    pub fn alpha_pow(&self, e: usize) -> u16 {
        self.exp[e % self.order()]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u16) -> Option<usize> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize] as usize)
        }
    }

    /// Conjugacy class of alpha^e under squaring: {e, 2e, 4e, ...} mod n.
    pub fn conjugacy_class(&self, e: usize) -> Vec<usize> {
        let n = self.order();
        let e = e % n;
        let mut class = vec![e];
        let mut c = (e * 2) % n;
        while c != e {
            class.push(c);
            c = (c * 2) % n;
        }
        class
    }

    /// Minimal polynomial of alpha^e over GF(2): the product of
    /// (x + alpha^c) over the conjugacy class of e.
    pub fn minimal_polynomial(&self, e: usize) -> BinaryPoly {
        let class = self.conjugacy_class(e);
        // Coefficients live in GF(2^m) during the expansion and collapse
        // to {0, 1} once the whole class has been multiplied in.
        let mut poly: Vec<u16> = vec![1];
        for &c in &class {
            let root = self.alpha_pow(c);
            let mut next = vec![0u16; poly.len() + 1];
            for (i, &p) in poly.iter().enumerate() {
                next[i + 1] ^= p;
                next[i] ^= self.mul(p, root);
            }
            poly = next;
        }
        debug_assert!(poly.iter().all(|&c| c <= 1));
        BinaryPoly::from_coeffs(poly.iter().map(|&c| (c & 1) as u8))
    }
}

/// Polynomial over GF(2), coefficients lowest degree first.
///
/// The zero polynomial is the empty coefficient vector and reports its
/// degree as `None`; a nonzero polynomial always has leading coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryPoly {
    coeffs: Vec<u8>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        BinaryPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BinaryPoly { coeffs: vec![1] }
    }

    /// x^k.
    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![0u8; k + 1];
        coeffs[k] = 1;
        BinaryPoly { coeffs }
    }

    /// Builds from a coefficient sequence (lowest degree first); nonzero
    /// entries are taken as 1 and trailing zeros are trimmed.
    pub fn from_coeffs<I: IntoIterator<Item = u8>>(coeffs: I) -> Self {
        let mut coeffs: Vec<u8> = coeffs.into_iter().map(|c| c & 1).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        BinaryPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (0 beyond the stored length).
    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Coefficients lowest degree first (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn add(&self, other: &BinaryPoly) -> BinaryPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        BinaryPoly::from_coeffs((0..len).map(|i| self.coeff(i) ^ other.coeff(i)))
    }

    pub fn mul(&self, other: &BinaryPoly) -> BinaryPoly {
        if self.is_zero() || other.is_zero() {
            return BinaryPoly::zero();
        }
        let mut out = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= b;
            }
        }
        BinaryPoly::from_coeffs(out)
    }

    /// Remainder of `self` divided by `modulus`.
    ///
    /// Panics if `modulus` is zero.
    pub fn rem(&self, modulus: &BinaryPoly) -> BinaryPoly {
        let md = modulus.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        while rem.len() > md {
            let lead = rem.len() - 1;
            if rem[lead] == 1 {
                for (j, &g) in modulus.coeffs.iter().enumerate() {
                    rem[lead - md + j] ^= g;
                }
            }
            rem.pop();
        }
        BinaryPoly::from_coeffs(rem)
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &BinaryPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Evaluation at a point of GF(2^m), by Horner's rule.
    pub fn eval(&self, field: &Field, x: u16) -> u16 {
        let mut acc = 0u16;
        for &c in self.coeffs.iter().rev() {
            acc = field.mul(acc, x) ^ c as u16;
        }
        acc
    }
}

/// Formats as the coefficient bit string, lowest degree first
/// (e.g. x^3 + x + 1 prints as "1101").
impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for &c in &self.coeffs {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
